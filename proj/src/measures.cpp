#include "chaoskit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "chaoskit/quadrature.hpp"
#include "chaoskit/rng.hpp"

namespace chaoskit {

SignedAtomicMeasure::SignedAtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("SignedAtomicMeasure: at least one atom required");
    dim_ = atoms_.front().location.size();
    if (dim_ == 0) throw std::invalid_argument("SignedAtomicMeasure: atoms must have dimension >= 1");
    for (const auto& a : atoms_) {
        if (a.location.size() != dim_) throw std::invalid_argument("SignedAtomicMeasure: mixed atom dimensions");
        if (!std::isfinite(a.weight) || a.weight == 0.0)
            throw std::invalid_argument("SignedAtomicMeasure: weights must be finite and nonzero");
        for (double v : a.location)
            if (!std::isfinite(v)) throw std::invalid_argument("SignedAtomicMeasure: non-finite location");
    }
    std::vector<const Atom*> order(atoms_.size());
    std::transform(atoms_.begin(), atoms_.end(), order.begin(), [](const Atom& a) { return &a; });
    std::sort(order.begin(), order.end(), [](const Atom* a, const Atom* b) { return a->location < b->location; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i - 1]->location == order[i]->location)
            throw std::invalid_argument("SignedAtomicMeasure: atom locations must be pairwise distinct");
}

SignedAtomicMeasure SignedAtomicMeasure::from_points_1d(std::span<const double> locations,
                                                        std::span<const double> weights) {
    if (locations.size() != weights.size())
        throw std::invalid_argument("from_points_1d: locations and weights differ in length");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < locations.size(); ++i) atoms.push_back({{locations[i]}, weights[i]});
    return SignedAtomicMeasure(std::move(atoms));
}

bool SignedAtomicMeasure::is_positive() const noexcept {
    return std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.weight > 0.0; });
}

bool SignedAtomicMeasure::is_probability() const noexcept {
    if (atoms_.empty() || !is_positive()) return false;
    double mass = 0.0;
    for (const auto& a : atoms_) mass += a.weight;
    return std::abs(mass - 1.0) <= 1e-12;
}

SignedAtomicMeasure SignedAtomicMeasure::read(std::istream& in) {
    std::vector<Atom> atoms;
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        Atom atom;
        if (!(fields >> atom.weight))
            throw std::invalid_argument("measure file line " + std::to_string(line_no) + ": cannot parse weight");
        double v = 0.0;
        while (fields >> v) atom.location.push_back(v);
        if (!fields.eof())
            throw std::invalid_argument("measure file line " + std::to_string(line_no) + ": trailing garbage");
        if (atom.location.empty())
            throw std::invalid_argument("measure file line " + std::to_string(line_no) + ": missing location");
        if (dim == 0) dim = atom.location.size();
        if (atom.location.size() != dim)
            throw std::invalid_argument("measure file line " + std::to_string(line_no) + ": expected dimension " +
                                        std::to_string(dim));
        atoms.push_back(std::move(atom));
    }
    return SignedAtomicMeasure(std::move(atoms));
}

SignedAtomicMeasure SignedAtomicMeasure::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open measure file " + path.string());
    return read(in);
}

void SignedAtomicMeasure::write(std::ostream& out) const {
    out << "# w v_1 ... v_d\n" << std::setprecision(17);
    for (const auto& a : atoms_) {
        out << a.weight;
        for (double v : a.location) out << ' ' << v;
        out << '\n';
    }
}

double total_variation(const SignedAtomicMeasure& mu) {
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += std::abs(a.weight);
    return s;
}

JordanDecomposition jordan_decompose(const SignedAtomicMeasure& mu) {
    using Tag = SignedAtomicMeasure::EmptyTag;
    JordanDecomposition out{SignedAtomicMeasure(Tag{}, mu.dim()), SignedAtomicMeasure(Tag{}, mu.dim())};
    for (const auto& a : mu.atoms()) {
        if (a.weight > 0.0)
            out.positive.atoms_.push_back(a);
        else
            out.negative.atoms_.push_back({a.location, -a.weight});
    }
    return out;
}

double moment(const SignedAtomicMeasure& mu, const MultiIndex& alpha) {
    if (alpha.dim() != mu.dim()) throw std::invalid_argument("moment: dimension mismatch");
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.weight * monomial(alpha, a.location);
    return s;
}

namespace {

double squared_norm(std::span<const double> v) {
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

}  // namespace

double log_quad_exp_moment(const SignedAtomicMeasure& mu, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("quad_exp_moment: lambda must be >= 0");
    if (mu.empty()) return -std::numeric_limits<double>::infinity();
    std::vector<double> exps;
    exps.reserve(mu.size());
    for (const auto& a : mu.atoms()) exps.push_back(std::log(std::abs(a.weight)) + lambda * squared_norm(a.location));
    const double top = *std::max_element(exps.begin(), exps.end());
    double s = 0.0;
    for (double e : exps) s += std::exp(e - top);
    return top + std::log(s);
}

double quad_exp_moment(const SignedAtomicMeasure& mu, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("quad_exp_moment: lambda must be >= 0");
    double max_exponent = 0.0;
    for (const auto& a : mu.atoms()) max_exponent = std::max(max_exponent, lambda * squared_norm(a.location));
    if (max_exponent <= 700.0) {
        double s = 0.0;
        for (const auto& a : mu.atoms()) s += std::abs(a.weight) * std::exp(lambda * squared_norm(a.location));
        return s;
    }
    const double log_value = log_quad_exp_moment(mu, lambda);
    if (log_value > std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("quad_exp_moment: value exceeds double range (log = " + std::to_string(log_value) +
                                  "); use log_quad_exp_moment");
    return std::exp(log_value);
}

double tail_mass(const SignedAtomicMeasure& mu, double K) {
    if (!mu.is_positive()) throw std::invalid_argument("tail_mass: measure must be positive");
    double s = 0.0;
    for (const auto& a : mu.atoms())
        if (squared_norm(a.location) > K) s += a.weight;
    return s;
}

SignedAtomicMeasure discretize_gaussian(std::span<const double> mean, std::span<const double> variance,
                                        std::span<const std::size_t> nodes) {
    const std::size_t d = mean.size();
    if (d == 0 || variance.size() != d || nodes.size() != d)
        throw std::invalid_argument("discretize_gaussian: mean, variance and nodes must share a dimension >= 1");
    for (std::size_t k = 0; k < d; ++k) {
        if (!(variance[k] > 0.0)) throw std::invalid_argument("discretize_gaussian: variance must be positive");
        if (nodes[k] < 2) throw std::invalid_argument("discretize_gaussian: nodes must be >= 2");
    }
    std::vector<const GaussHermiteRule*> rules;
    for (std::size_t k = 0; k < d; ++k) rules.push_back(&gauss_hermite(nodes[k]));
    std::vector<Atom> atoms;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        Atom atom;
        atom.location.resize(d);
        double log_w = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            atom.location[k] = mean[k] + std::sqrt(variance[k]) * rules[k]->nodes[idx[k]];
            log_w += rules[k]->log_weights[idx[k]];
        }
        atom.weight = std::exp(log_w);
        if (atom.weight > 0.0) atoms.push_back(std::move(atom));
        std::size_t k = 0;
        while (k < d && ++idx[k] == nodes[k]) idx[k++] = 0;
        if (k == d) break;
    }
    return SignedAtomicMeasure(std::move(atoms));
}

RefinementProbe gaussian_quad_exp_moment_probe(double variance, double lambda, std::size_t nodes,
                                               double tolerance) {
    const double mean[1] = {0.0};
    const double var[1] = {variance};
    const std::size_t coarse_n[1] = {nodes};
    const std::size_t fine_n[1] = {2 * nodes};
    RefinementProbe probe;
    probe.coarse = std::exp(log_quad_exp_moment(discretize_gaussian(mean, var, coarse_n), lambda));
    probe.fine = std::exp(log_quad_exp_moment(discretize_gaussian(mean, var, fine_n), lambda));
    probe.relative_change = std::abs(probe.fine - probe.coarse) / std::abs(probe.fine);
    probe.converged = probe.relative_change <= tolerance;
    return probe;
}

SignedAtomicMeasure random_measure(std::uint64_t seed, std::size_t dim, std::size_t max_atoms, double radius,
                                   bool signed_weights) {
    if (dim == 0 || max_atoms == 0) throw std::invalid_argument("random_measure: dim and max_atoms must be >= 1");
    rng::Philox gen(rng::StreamKey(seed).child(0x6D656173ull));
    const std::size_t n = 1 + static_cast<std::size_t>(gen.uniform() * static_cast<double>(max_atoms));
    std::vector<Atom> atoms;
    double mass = 0.0;
    while (atoms.size() < std::min(n, max_atoms)) {
        Atom a;
        a.location.resize(dim);
        for (auto& v : a.location) v = radius * (2.0 * gen.uniform() - 1.0);
        if (squared_norm(a.location) > radius * radius) continue;
        a.weight = 0.1 + 0.9 * gen.uniform();
        if (signed_weights && gen.uniform() < 0.5) a.weight = -a.weight;
        mass += std::abs(a.weight);
        atoms.push_back(std::move(a));
    }
    if (!signed_weights)
        for (auto& a : atoms) a.weight /= mass;
    return SignedAtomicMeasure(std::move(atoms));
}

}  // namespace chaoskit
