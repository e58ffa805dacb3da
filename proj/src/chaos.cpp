#include "chaoskit/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "chaoskit/hermite.hpp"
#include "chaoskit/quadrature.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

namespace {

constexpr double refine_tolerance = 1e-9;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

// ---------------------------------------------------------------------------
// HermiteSeries

HermiteSeries::HermiteSeries(double t, std::size_t d) : t_(t), d_(d) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("HermiteSeries: reference time must be > 0");
    if (d == 0) throw std::invalid_argument("HermiteSeries: dimension must be >= 1");
}

void HermiteSeries::set(const MultiIndex& alpha, double b) {
    if (alpha.dim() != d_)
        throw std::invalid_argument("HermiteSeries::set: index " + alpha.to_string() + " has wrong dimension");
    require_finite(b, "HermiteSeries coefficient");
    if (b == 0.0)
        terms_.erase(alpha);
    else
        terms_[alpha] = b;
}

double HermiteSeries::coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? 0.0 : it->second;
}

unsigned HermiteSeries::max_degree() const noexcept {
    unsigned m = 0;
    for (const auto& [alpha, b] : terms_) m = std::max(m, alpha.degree());
    return m;
}

bool HermiteSeries::is_homogeneous(unsigned n) const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [n](const auto& kv) { return kv.first.degree() == n; });
}

HermiteSeries HermiteSeries::at_time(double s) const {
    HermiteSeries out(s, d_);
    out.terms_ = terms_;
    return out;
}

HermiteSeries HermiteSeries::homogeneous_part(unsigned n) const {
    HermiteSeries out(t_, d_);
    for (const auto& [alpha, b] : terms_)
        if (alpha.degree() == n) out.terms_.emplace(alpha, b);
    return out;
}

double HermiteSeries::evaluate(std::span<const double> x) const {
    if (x.size() != d_) throw std::invalid_argument("HermiteSeries::evaluate: dimension mismatch");
    const unsigned deg = max_degree();
    std::vector<double> table(d_ * (deg + 1));
    for (std::size_t i = 0; i < d_; ++i) hermite_table(t_, x[i], std::span(table).subspan(i * (deg + 1), deg + 1));
    double sum = 0.0;
    for (const auto& [alpha, b] : terms_) {
        double term = b;
        for (std::size_t i = 0; i < d_; ++i) term *= table[i * (deg + 1) + alpha[i]];
        sum += term;
    }
    return sum;
}

double HermiteSeries::l2_norm_squared() const {
    double s = 0.0;
    for (const auto& [alpha, b] : terms_)
        s += b * b * std::exp(alpha.log_factorial() + alpha.degree() * std::log(t_));
    return s;
}

HermiteSeries HermiteSeries::read(std::istream& in) {
    std::string line;
    double t = 0.0;
    std::size_t d = 0;
    bool have_header = false;
    std::size_t line_no = 0;
    std::vector<std::pair<MultiIndex, double>> terms;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tt, dd;
            ls >> tt >> dd;
            if (tt.rfind("t=", 0) != 0 || dd.rfind("d=", 0) != 0)
                throw std::invalid_argument("HermiteSeries::read: expected header `t=<value> d=<value>`");
            try {
                t = std::stod(tt.substr(2));
                d = std::stoul(dd.substr(2));
            } catch (const std::exception&) {
                throw std::invalid_argument("HermiteSeries::read: malformed header");
            }
            have_header = true;
            continue;
        }
        std::vector<unsigned> alpha(d);
        for (auto& a : alpha) {
            long v = -1;
            if (!(ls >> v) || v < 0)
                throw std::invalid_argument("HermiteSeries::read: bad multi-index on line " + std::to_string(line_no));
            a = static_cast<unsigned>(v);
        }
        double b = 0.0;
        std::string extra;
        if (!(ls >> b) || (ls >> extra))
            throw std::invalid_argument("HermiteSeries::read: expected d indices and one coefficient on line " +
                                        std::to_string(line_no));
        terms.emplace_back(MultiIndex(std::move(alpha)), b);
    }
    if (!have_header) throw std::invalid_argument("HermiteSeries::read: missing header");
    HermiteSeries s(t, d);
    for (const auto& [alpha, b] : terms) {
        if (s.terms_.count(alpha)) throw std::invalid_argument("HermiteSeries::read: repeated index " + alpha.to_string());
        s.set(alpha, b);
    }
    return s;
}

HermiteSeries HermiteSeries::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("HermiteSeries::load: cannot open " + path.string());
    return read(in);
}

void HermiteSeries::write(std::ostream& out) const {
    out << "t=" << fmt(t_) << " d=" << d_ << '\n';
    for (const auto& [alpha, b] : terms_) {
        for (std::size_t i = 0; i < d_; ++i) out << alpha[i] << ' ';
        out << fmt(b) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Norms. Everything below works at t = 1: H_alpha(t, x) = t^{|alpha|/2}
// He_alpha(x / sqrt(t)), so c_alpha = b_alpha t^{|alpha|/2} against He.

namespace {

struct StdTerm {
    std::vector<unsigned> alpha;
    double c;
};

struct Standardized {
    std::size_t d = 0;
    unsigned degree = 0;
    std::vector<StdTerm> terms;
};

Standardized standardize(const HermiteSeries& v) {
    Standardized s;
    s.d = v.dim();
    const double half_log_t = 0.5 * std::log(v.time());
    for (const auto& [alpha, b] : v.terms()) {
        s.terms.push_back({std::vector<unsigned>(alpha.components().begin(), alpha.components().end()),
                           b * std::exp(half_log_t * alpha.degree())});
        s.degree = std::max(s.degree, alpha.degree());
    }
    return s;
}

/// sum_k c_k He_k(y) and its derivative.
std::pair<double, double> he_series_value(std::span<const double> c, double y) {
    double h_prev = 0.0, h = 1.0;
    double val = c.empty() ? 0.0 : c[0];
    double der = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        const double h_next = y * h - static_cast<double>(k - 1) * h_prev;
        der += c[k] * static_cast<double>(k) * h;
        val += c[k] * h_next;
        h_prev = h;
        h = h_next;
    }
    return {val, der};
}

/// Effective degree after dropping negligible leading coefficients, measured
/// in the orthonormal basis psi_k = He_k / sqrt(k!).
std::size_t effective_degree(std::span<const double> c, std::vector<double>& a) {
    a.resize(c.size());
    double amax = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        a[k] = c[k] * std::exp(0.5 * std::lgamma(static_cast<double>(k) + 1.0));
        amax = std::max(amax, std::abs(a[k]));
    }
    std::size_t n = c.size();
    while (n > 0 && std::abs(a[n - 1]) <= 1e-13 * amax) --n;
    return n == 0 ? 0 : n - 1;
}

double norm_pdf(double y) { return std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi); }

/// E|P(Y)|^p, Y ~ N(0, 1), P = sum_k c_k He_k, by panels split at the real
/// parts of the roots of P near the real axis.
double root_split_moment(std::span<const double> c, double p, std::size_t order) {
    std::vector<double> a;
    const std::size_t n = effective_degree(c, a);
    if (n == 0) return c.empty() ? 0.0 : std::pow(std::abs(c[0]), p);
    const std::span<const double> cs = c.first(n + 1);
    const double L = std::sqrt(p * static_cast<double>(n)) + 10.0;
    std::vector<double> breaks{-L, L};
    for (double r : hermite_series_roots(cs, 1.0))
        if (r > -L && r < L) breaks.push_back(r);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto f = [&](double y) {
        const double v = he_series_value(cs, y).first;
        if (v == 0.0) return 0.0;
        return std::exp(p * std::log(std::abs(v)) - 0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi);
    };
    return panel_integral(f, breaks, 1.0, order);
}

/// Tensor Gauss-Hermite estimate of E|V|^p with n nodes per axis.
double tensor_moment(const Standardized& s, double p, std::size_t n) {
    const auto& rule = gauss_hermite(n);
    const std::size_t stride = s.degree + 1;
    std::vector<double> table(n * stride);
    for (std::size_t j = 0; j < n; ++j) hermite_table(1.0, rule.nodes[j], std::span(table).subspan(j * stride, stride));
    std::vector<std::size_t> idx(s.d, 0);
    std::vector<double> contributions;
    std::size_t total = 1;
    for (std::size_t i = 0; i < s.d; ++i) total *= n;
    contributions.reserve(total);
    for (std::size_t count = 0; count < total; ++count) {
        double logw = 0.0;
        for (std::size_t i = 0; i < s.d; ++i) logw += rule.log_weights[idx[i]];
        double val = 0.0;
        for (const auto& term : s.terms) {
            double prod = term.c;
            for (std::size_t i = 0; i < s.d; ++i) prod *= table[idx[i] * stride + term.alpha[i]];
            val += prod;
        }
        contributions.push_back(val == 0.0 ? 0.0 : std::exp(logw + p * std::log(std::abs(val))));
        for (std::size_t i = 0; i < s.d; ++i) {
            if (++idx[i] < n) break;
            idx[i] = 0;
        }
    }
    return pairwise_sum(contributions);
}

/// Inner polynomial in y0 for fixed y1: coefficients of He_k(y0).
class InnerSlice {
public:
    explicit InnerSlice(const Standardized& s) : s_(s) {
        unsigned deg0 = 0, deg1 = 0;
        for (const auto& term : s.terms) {
            deg0 = std::max(deg0, term.alpha[0]);
            deg1 = std::max(deg1, term.alpha[1]);
        }
        he_.resize(deg1 + 1);
        inner_.resize(deg0 + 1);
    }

    std::span<const double> at(double y1) {
        hermite_table(1.0, y1, he_);
        std::fill(inner_.begin(), inner_.end(), 0.0);
        for (const auto& term : s_.terms) inner_[term.alpha[0]] += term.c * he_[term.alpha[1]];
        return inner_;
    }

private:
    const Standardized& s_;
    std::vector<double> he_;
    std::vector<double> inner_;
};

/// Outer breakpoints for d = 2: values of y1 where the number of real roots
/// of the inner polynomial changes, i.e. where the zero curve of V has a
/// vertical tangent. The inner moment is only algebraically smooth there.
std::vector<double> outer_breakpoints(const Standardized& s, double L) {
    InnerSlice slice(s);
    auto count = [&](double y1) { return hermite_series_roots(slice.at(y1)).size(); };
    constexpr double h = 0.05;
    const auto steps = static_cast<std::size_t>(std::ceil(2.0 * L / h));
    std::vector<double> breaks{-L, L};
    double lo = -L;
    std::size_t c_lo = count(lo);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double hi = std::min(L, -L + h * static_cast<double>(k));
        const std::size_t c_hi = count(hi);
        if (c_hi != c_lo) {
            double a = lo, b = hi;
            for (int it = 0; it < 50 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
                const double mid = 0.5 * (a + b);
                (count(mid) == c_lo ? a : b) = mid;
            }
            breaks.push_back(0.5 * (a + b));
        }
        lo = hi;
        c_lo = c_hi;
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return breaks;
}

/// E|V|^p for d = 2: root splitting along y0 for each y1, then adaptive
/// panels in y1 split at the tangency points. The fine pass doubles both the
/// inner and the outer rule.
RefinedIntegral iterated_moment(const Standardized& s, double p, std::span<const double> outer_breaks,
                                std::size_t order) {
    InnerSlice slice(s);
    auto g = [&](double y1, bool fine) {
        return root_split_moment(slice.at(y1), p, fine ? 2 * order : order) * norm_pdf(y1);
    };
    return adaptive_panel_integral(g, outer_breaks, 1.0, 12, 1e-11);
}

bool is_even_integer(double p) { return p == std::floor(p) && std::fmod(p, 2.0) == 0.0; }

NormResult finish(double coarse_moment, double fine_moment, double p, std::string method) {
    NormResult r;
    const double coarse = std::pow(coarse_moment, 1.0 / p);
    r.value = std::pow(fine_moment, 1.0 / p);
    r.relative_change = r.value == 0.0 ? std::abs(coarse) : std::abs(r.value - coarse) / r.value;
    r.converged = std::isfinite(r.value) && r.relative_change < refine_tolerance;
    r.method = std::move(method);
    return r;
}

/// ||He_k(Y)||_p for one coordinate, with its refinement change.
std::pair<double, double> single_norm_1d(unsigned k, double p, std::size_t order) {
    if (k == 0) return {1.0, 0.0};
    std::vector<double> c(k + 1, 0.0);
    c[k] = 1.0;
    if (is_even_integer(p)) {
        const auto n = static_cast<std::size_t>(p * k / 2) + 1;
        Standardized s{1, k, {{{k}, 1.0}}};
        const double a = std::pow(tensor_moment(s, p, n), 1.0 / p);
        const double b = std::pow(tensor_moment(s, p, 2 * n), 1.0 / p);
        return {b, std::abs(a - b) / b};
    }
    const double a = std::pow(root_split_moment(c, p, order), 1.0 / p);
    const double b = std::pow(root_split_moment(c, p, 2 * order), 1.0 / p);
    return {b, std::abs(a - b) / b};
}

}  // namespace

std::vector<double> hermite_series_roots(std::span<const double> c, double imag_cutoff) {
    std::vector<double> a;
    const std::size_t n = effective_degree(c, a);
    std::vector<double> roots;
    if (n == 0) return roots;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double off = std::sqrt(static_cast<double>(k + 1));
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1)) = off;
        m(static_cast<Eigen::Index>(k + 1), static_cast<Eigen::Index>(k)) = off;
    }
    const double scale = std::sqrt(static_cast<double>(n)) / a[n];
    for (std::size_t k = 0; k < n; ++k) m(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(k)) -= scale * a[k];
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    const std::span<const double> cs = c.first(n + 1);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const auto z = es.eigenvalues()[i];
        const double re = z.real();
        const double im = std::abs(z.imag());
        const bool real_root = im <= 1e-7 * (1.0 + std::abs(re));
        if (!real_root && im >= imag_cutoff) continue;
        double y = re;
        if (real_root) {
            for (int it = 0; it < 8; ++it) {
                const auto [v, dv] = he_series_value(cs, y);
                if (dv == 0.0) break;
                const double step = v / dv;
                y -= step;
                if (std::abs(step) <= 1e-15 * (1.0 + std::abs(y))) break;
            }
            if (!std::isfinite(y) || std::abs(y - re) > 1e-3 * (1.0 + std::abs(re))) y = re;
        }
        roots.push_back(y);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::size_t default_norm_nodes(unsigned max_degree) { return 2 * static_cast<std::size_t>(max_degree) + 40; }

NormResult lp_norm_hermite_functional(const HermiteSeries& v, double p, std::size_t nodes) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm_hermite_functional: p must be >= 1");
    const unsigned deg = v.max_degree();
    if (nodes == 0) nodes = default_norm_nodes(deg);
    if (nodes < default_norm_nodes(deg))
        throw std::invalid_argument("lp_norm_hermite_functional: need at least " +
                                    std::to_string(default_norm_nodes(deg)) + " nodes for degree " +
                                    std::to_string(deg));
    if (v.empty()) return {0.0, 0.0, true, "empty"};
    const Standardized s = standardize(v);
    const std::size_t order = std::max<std::size_t>(16, nodes / 4);

    if (deg == 0) return {std::abs(s.terms.front().c), 0.0, true, "constant"};

    if (is_even_integer(p)) {
        const auto n = static_cast<std::size_t>(p * deg / 2) + 1;
        return finish(tensor_moment(s, p, n), tensor_moment(s, p, 2 * n), p, "gauss-hermite-exact");
    }

    if (s.terms.size() == 1) {
        const auto& term = s.terms.front();
        NormResult r;
        r.value = std::abs(term.c);
        for (unsigned k : term.alpha) {
            const auto [norm, change] = single_norm_1d(k, p, order);
            r.value *= norm;
            r.relative_change = std::max(r.relative_change, change);
        }
        r.converged = std::isfinite(r.value) && r.relative_change < refine_tolerance;
        r.method = "product-root-split";
        return r;
    }

    if (s.d == 1) {
        std::vector<double> c(deg + 1, 0.0);
        for (const auto& term : s.terms) c[term.alpha[0]] = term.c;
        return finish(root_split_moment(c, p, order), root_split_moment(c, p, 2 * order), p, "root-split");
    }

    if (s.d == 2) {
        const auto breaks = outer_breakpoints(s, std::sqrt(p * static_cast<double>(deg)) + 10.0);
        const RefinedIntegral m = iterated_moment(s, p, breaks, order);
        return finish(m.coarse, m.fine, p, "iterated-root-split");
    }

    return finish(tensor_moment(s, p, nodes), tensor_moment(s, p, 2 * nodes), p, "gauss-hermite");
}

HermiteSeries ou_apply(const HermiteSeries& v, double s) {
    if (!(s >= 0.0)) throw std::invalid_argument("ou_apply: s must be >= 0");
    HermiteSeries out(v.time(), v.dim());
    for (const auto& [alpha, b] : v.terms()) out.set(alpha, b * std::exp(-s * alpha.degree()));
    return out;
}

HermiteSeries chaos_project(const HermiteSeries& v, unsigned n) { return v.homogeneous_part(n); }

namespace {

std::vector<std::pair<std::string, std::string>> series_inputs(const HermiteSeries& v) {
    return {{"t", fmt(v.time())}, {"d", std::to_string(v.dim())}, {"terms", std::to_string(v.size())},
            {"degree", std::to_string(v.max_degree())}};
}

void mark_unconverged(CheckRecord& r, std::initializer_list<const NormResult*> norms) {
    for (const NormResult* n : norms) {
        if (!n->converged) {
            r.status = Status::unconverged;
            r.note += (r.note.empty() ? "" : "; ") + std::string("refinement change ") + fmt(n->relative_change) +
                      " (" + n->method + ")";
        }
    }
}

}  // namespace

CheckReport check_hypercontractivity(const HermiteSeries& v, double p, double q, double s, std::size_t nodes) {
    if (!(p > 1.0) || !(q > p)) throw std::invalid_argument("check_hypercontractivity: need 1 < p < q");
    CheckReport report{"hypercontractivity", {}};
    const double threshold = 0.5 * std::log((q - 1.0) / (p - 1.0));
    const NormResult lhs = lp_norm_hermite_functional(ou_apply(v, s), q, nodes);
    const NormResult rhs = lp_norm_hermite_functional(v, p, nodes);
    CheckRecord r = record_le("ou-contraction", lhs.value, rhs.value, 1.0 + 1e-9);
    r.inputs = series_inputs(v);
    r.inputs.insert(r.inputs.end(), {{"p", fmt(p)}, {"q", fmt(q)}, {"s", fmt(s)}, {"s_min", fmt(threshold)}});
    mark_unconverged(r, {&lhs, &rhs});
    if (s < threshold * (1.0 - 1e-12)) {
        r.status = Status::inapplicable;
        r.note = "s below the hypercontractivity threshold; no claim";
    }
    report.records.push_back(std::move(r));
    return report;
}

CheckReport check_chaos_norm_lemmas(const HermiteSeries& v, double p, double q, std::size_t nodes) {
    if (!(p >= 1.0) || !(q >= p)) throw std::invalid_argument("check_chaos_norm_lemmas: need 1 <= p <= q");
    const unsigned n = v.empty() ? 0 : v.terms().begin()->first.degree();
    if (!v.is_homogeneous(n))
        throw std::invalid_argument("check_chaos_norm_lemmas: series is not homogeneous; apply chaos_project first");
    CheckReport report{"chaos-norm-bounds", {}};
    const NormResult n1 = lp_norm_hermite_functional(v, 1.0, nodes);
    const NormResult np = lp_norm_hermite_functional(v, p, nodes);
    const NormResult nq = lp_norm_hermite_functional(v, q, nodes);
    auto inputs = series_inputs(v);
    inputs.insert(inputs.end(), {{"n", std::to_string(n)}, {"p", fmt(p)}, {"q", fmt(q)}});
    const double tol = 1.0 + 1e-9;

    {
        const double factor = p > 1.0 ? std::pow((q - 1.0) / (p - 1.0), 0.5 * n) : 0.0;
        CheckRecord r = record_le("chaos-lq-by-lp", nq.value, factor * np.value, tol);
        r.inputs = inputs;
        mark_unconverged(r, {&np, &nq});
        if (p == 1.0) {
            r.status = Status::inapplicable;
            r.note = "requires p > 1";
        }
        report.records.push_back(std::move(r));
    }
    {
        CheckRecord r = record_le("chaos-lp-by-l1", np.value, std::exp(0.5 * n * p) * n1.value, tol);
        r.inputs = inputs;
        mark_unconverged(r, {&n1, &np});
        report.records.push_back(std::move(r));
    }
    {
        CheckRecord r = record_le("norm-monotonicity", n1.value, np.value, tol);
        r.inputs = inputs;
        mark_unconverged(r, {&n1, &np});
        report.records.push_back(std::move(r));
        CheckRecord r2 = record_le("norm-monotonicity", np.value, nq.value, tol);
        r2.inputs = inputs;
        mark_unconverged(r2, {&np, &nq});
        report.records.push_back(std::move(r2));
    }
    if (v.is_single_term()) {
        const auto& [alpha, b] = *v.terms().begin();
        const double l2 = std::abs(b) * std::exp(0.5 * (alpha.log_factorial() + alpha.degree() * std::log(v.time())));
        CheckRecord upper = record_le("hermite-lp-upper", np.value, std::exp(0.5 * alpha.degree() * p) * l2, tol);
        upper.inputs = inputs;
        upper.inputs.emplace_back("alpha", alpha.to_string());
        mark_unconverged(upper, {&np});
        if (p < 2.0) {
            upper.status = Status::inapplicable;
            upper.note = "requires p >= 2";
        }
        report.records.push_back(std::move(upper));
        // e^{-|alpha|/2} ||H_alpha||_2 <= ||H_alpha||_1
        CheckRecord lower = record_le("hermite-l1-lower", std::exp(-0.5 * alpha.degree()) * l2, n1.value, tol);
        lower.inputs = inputs;
        lower.inputs.emplace_back("alpha", alpha.to_string());
        mark_unconverged(lower, {&n1});
        report.records.push_back(std::move(lower));
    }
    return report;
}

namespace {

HermiteSeries random_from(std::uint64_t seed, double t, std::size_t d, std::vector<MultiIndex> candidates,
                          std::size_t terms) {
    rng::Philox gen(rng::StreamKey(seed).child(0x63686173ull));
    HermiteSeries s(t, d);
    terms = std::min(terms, candidates.size());
    for (std::size_t i = 0; i < terms; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen.uniform() * static_cast<double>(candidates.size() - i));
        std::swap(candidates[i], candidates[j]);
        double b = 0.0;
        while (b == 0.0) b = 2.0 * gen.uniform() - 1.0;
        s.set(candidates[i], b);
    }
    return s;
}

}  // namespace

HermiteSeries random_series(std::uint64_t seed, double t, std::size_t d, unsigned max_degree, std::size_t terms) {
    return random_from(seed, t, d, enumerate_multi_indices(d, max_degree), terms);
}

HermiteSeries random_homogeneous_series(std::uint64_t seed, double t, std::size_t d, unsigned n, std::size_t terms) {
    return random_from(seed, t, d, enumerate_homogeneous(d, n), terms);
}

}  // namespace chaoskit
