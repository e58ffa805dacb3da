#include "chaoskit/multi_index.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace chaoskit {

MultiIndex::MultiIndex(std::vector<unsigned> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    degree_ = std::accumulate(components_.begin(), components_.end(), 0u);
}

MultiIndex::MultiIndex(std::initializer_list<unsigned> components)
    : MultiIndex(std::vector<unsigned>(components)) {}

MultiIndex MultiIndex::zero(std::size_t d) { return MultiIndex(std::vector<unsigned>(d, 0u)); }

double MultiIndex::log_factorial() const {
    double s = 0.0;
    for (unsigned a : components_) s += std::lgamma(static_cast<double>(a) + 1.0);
    return s;
}

double MultiIndex::factorial() const {
    double f = 1.0;
    for (unsigned a : components_)
        for (unsigned k = 2; k <= a; ++k) f *= k;
    return f;
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(components_[i]);
    }
    return s + ")";
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    if (auto c = a.components_.size() <=> b.components_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.components_.size(); ++i)
        if (auto c = b.components_[i] <=> a.components_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

namespace {

void fill_homogeneous(std::size_t d, unsigned remaining, std::size_t pos, std::vector<unsigned>& cur,
                      std::vector<MultiIndex>& out) {
    if (pos + 1 == d) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
        cur[pos] = k;
        fill_homogeneous(d, remaining - k, pos + 1, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_homogeneous(std::size_t d, unsigned degree) {
    if (d == 0) throw std::invalid_argument("enumerate_homogeneous: dimension must be >= 1");
    std::vector<MultiIndex> out;
    std::vector<unsigned> cur(d, 0u);
    fill_homogeneous(d, degree, 0, cur, out);
    return out;
}

std::vector<MultiIndex> enumerate_multi_indices(std::size_t d, unsigned max_degree) {
    std::vector<MultiIndex> out;
    for (unsigned n = 0; n <= max_degree; ++n) {
        auto layer = enumerate_homogeneous(d, n);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

double count_homogeneous(std::size_t d, unsigned n) {
    // C(n + d - 1, d - 1)
    double c = 1.0;
    for (std::size_t k = 1; k < d; ++k) c = c * static_cast<double>(n + k) / static_cast<double>(k);
    return c;
}

double monomial(const MultiIndex& alpha, std::span<const double> z) {
    if (alpha.dim() != z.size()) throw std::invalid_argument("monomial: dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (unsigned k = 0; k < alpha[i]; ++k) v *= z[i];
    return v;
}

}  // namespace chaoskit
