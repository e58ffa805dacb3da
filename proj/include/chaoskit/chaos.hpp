#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chaoskit/multi_index.hpp"
#include "chaoskit/report.hpp"

namespace chaoskit {

/// Finite expansion V = sum_alpha b_alpha H_alpha(t, X_t) at a fixed
/// reference time t > 0 in dimension d. Zero coefficients are not stored.
class HermiteSeries {
public:
    HermiteSeries(double t, std::size_t d);

    double time() const noexcept { return t_; }
    std::size_t dim() const noexcept { return d_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::map<MultiIndex, double>& terms() const noexcept { return terms_; }

    /// Sets b_alpha; a zero value erases the term. Throws on a dimension
    /// mismatch or a non-finite value.
    void set(const MultiIndex& alpha, double b);
    double coefficient(const MultiIndex& alpha) const;
    unsigned max_degree() const noexcept;
    /// True when every term has total degree n (the empty series counts).
    bool is_homogeneous(unsigned n) const noexcept;
    bool is_single_term() const noexcept { return terms_.size() == 1; }

    /// Same coefficients against H_alpha(s, .) instead of H_alpha(t, .).
    HermiteSeries at_time(double s) const;
    /// Terms of total degree n only.
    HermiteSeries homogeneous_part(unsigned n) const;

    /// sum_alpha b_alpha H_alpha(t, x).
    double evaluate(std::span<const double> x) const;
    /// ||V||_2^2 = sum_alpha b_alpha^2 alpha! t^|alpha|.
    double l2_norm_squared() const;

    /// Text format: header line `t=<value> d=<value>`, then one term per line
    /// `alpha_1 ... alpha_d b`. `#` starts a comment line.
    static HermiteSeries read(std::istream& in);
    static HermiteSeries load(const std::filesystem::path& path);
    void write(std::ostream& out) const;

private:
    double t_;
    std::size_t d_;
    std::map<MultiIndex, double> terms_;
};

/// Result of an L^p norm evaluation. `relative_change` compares the value with
/// a rerun at doubled resolution; `converged` is false when it exceeds the
/// refinement tolerance.
struct NormResult {
    double value = 0.0;
    double relative_change = 0.0;
    bool converged = true;
    std::string method;
};

/// Smallest admissible node count for a series of the given degree.
std::size_t default_norm_nodes(unsigned max_degree);

/// ||V||_p = E[|V|^p]^{1/p}, p >= 1, for V built from H_alpha(t, X_t).
///
/// Even integer p: tensor Gauss-Hermite, exact for the polynomial |V|^p.
/// Otherwise: single-term series factor into one-dimensional norms; d = 1
/// splits the real line at the real roots of V and integrates panels with a
/// smoothstep-mapped Gauss-Legendre rule; d = 2 integrates the inner
/// coordinate that way and the outer one adaptively; d >= 3 falls back to
/// tensor Gauss-Hermite. Every route is rerun at doubled resolution.
/// Throws std::invalid_argument for p < 1 or nodes < default_norm_nodes.
/// nodes = 0 selects the default.
NormResult lp_norm_hermite_functional(const HermiteSeries& v, double p, std::size_t nodes = 0);

/// Real roots of sum_k c_k He_k(y) (probabilists' Hermite, t = 1), sorted.
/// Found from the eigenvalues of the colleague matrix and Newton-polished.
/// Complex roots with |Im| < imag_cutoff are returned by their real part.
std::vector<double> hermite_series_roots(std::span<const double> c, double imag_cutoff = 0.0);

/// Ornstein-Uhlenbeck semigroup on the chaos: b_alpha -> e^{-s|alpha|} b_alpha.
HermiteSeries ou_apply(const HermiteSeries& v, double s);

/// Projection onto the chaos of order n (terms with |alpha| = n).
HermiteSeries chaos_project(const HermiteSeries& v, unsigned n);

/// ||P_s V||_q <= ||V||_p for e^s >= sqrt((q-1)/(p-1)), 1 < p < q. Below the
/// threshold the record is reported as inapplicable.
CheckReport check_hypercontractivity(const HermiteSeries& v, double p, double q, double s, std::size_t nodes = 0);

/// Chaos norm bounds for V homogeneous of order n:
///   ||V||_q <= ((q-1)/(p-1))^{n/2} ||V||_p   (1 < p <= q),
///   ||V||_p <= e^{np/2} ||V||_1               (p > 1),
/// and, when V is a single term b H_alpha:
///   ||V||_p <= e^{|alpha|p/2} |b| (alpha! t^|alpha|)^{1/2}   (p >= 2),
///   ||V||_1 >= e^{-|alpha|/2} |b| (alpha! t^|alpha|)^{1/2}.
/// Throws std::invalid_argument if V is not homogeneous.
CheckReport check_chaos_norm_lemmas(const HermiteSeries& v, double p, double q, std::size_t nodes = 0);

/// Seeded random series: `terms` multi-indices of degree <= max_degree with
/// coefficients uniform in [-1, 1].
HermiteSeries random_series(std::uint64_t seed, double t, std::size_t d, unsigned max_degree, std::size_t terms);

/// Seeded random homogeneous series of order n.
HermiteSeries random_homogeneous_series(std::uint64_t seed, double t, std::size_t d, unsigned n, std::size_t terms);

}  // namespace chaoskit
