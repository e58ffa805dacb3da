#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/measures.hpp"
#include "chaoskit/report.hpp"
#include "chaoskit/stochastic.hpp"

namespace chaoskit {

enum class Provenance { measure_backed, closed_form, conditional_quadrature };

std::string_view to_string(Provenance p) noexcept;

/// A Brownian martingale M_t = g(t, X_t) in L^p up to the horizon T.
struct MartingaleSpec {
    std::function<double(double, std::span<const double>)> g;
    std::size_t dim = 1;
    double p = 2.0;
    double horizon = std::numeric_limits<double>::infinity();
    Provenance provenance = Provenance::closed_form;
    std::string label;
    /// Set for measure-backed martingales.
    std::optional<SignedAtomicMeasure> measure;

    /// Outcome of the p-th moment certification done by make_martingale.
    bool moment_certified = false;
    double moment_relative_change = 0.0;

    double evaluate(double t, std::span<const double> x) const { return g(t, x); }
};

/// Builds a spec and certifies E|g(t, X_t)|^p < inf numerically: the moment is
/// computed by tensor Gauss-Hermite at n and 2n nodes for t in {T/4, T/2, T}
/// (or {1, 4} when T is infinite) and certified when every relative change is
/// below 1e-6. A failed certification is recorded, not thrown.
MartingaleSpec make_martingale(std::string label, std::function<double(double, std::span<const double>)> g,
                               std::size_t dim, double p, double horizon, Provenance provenance,
                               std::size_t nodes = 64);

/// g(t, x) = E[F(x + sqrt(T - t) xi)], xi ~ N(0, I_d), by tensor Gauss-Hermite.
MartingaleSpec conditional_martingale(std::string label, std::function<double(std::span<const double>)> terminal,
                                      std::size_t dim, double p, double horizon, std::size_t nodes = 48);

struct CoefficientResult {
    HermiteSeries series;
    /// Largest change of b_alpha sqrt(alpha! t^|alpha|) between n and 2n
    /// nodes, relative to ||M_t||_2.
    double relative_change = 0.0;
    bool converged = false;
};

/// b_alpha = E[M_t H_alpha(t, X_t)] / (alpha! t^|alpha|) for |alpha| <= N by
/// tensor Gauss-Hermite, contracted one axis at a time. nodes = 0 selects
/// 2N + 40. Converged when relative_change < 1e-10.
CoefficientResult coefficients_from_martingale(const MartingaleSpec& m, double t, unsigned cutoff,
                                               std::size_t nodes = 0);

/// ||M_t||_p by tensor Gauss-Hermite at n and 2n nodes.
NormResult martingale_lp_norm(const MartingaleSpec& m, double t, double p, std::size_t nodes = 64);

/// Tail majorant sum_{n > N} K (d sqrt(c / t) |z|)^n / sqrt(n!),
/// c = max(1 / (p - 1), 1), for the power series of f.
double series_tail_bound(std::size_t d, double p, double t, double K, unsigned cutoff, double z_norm);

/// Smallest N >= 24, stepping by 4, whose tail majorant is <= tolerance.
unsigned choose_truncation(std::size_t d, double p, double t, double K, double z_norm, double tolerance = 1e-10);

struct TailModel {
    double p = 2.0;
    double K = 1.0;  // ||M_t||_p
    double tolerance = 1e-10;
    /// Degree the series was truncated at. Coefficients below the drop
    /// threshold may make max_degree() smaller; defaults to max_degree().
    std::optional<unsigned> cutoff;
};

struct AnalyticValue {
    std::complex<double> value;
    double tail_bound = 0.0;  // NaN when no TailModel was given
    bool tail_ok = true;
};

/// f(z) = sum_alpha b_alpha z^alpha over the stored terms.
std::complex<double> analytic_eval(const HermiteSeries& series, std::span<const std::complex<double>> z);
/// Same, with the tail majorant of the truncated series reported.
AnalyticValue analytic_eval(const HermiteSeries& series, std::span<const std::complex<double>> z,
                            const TailModel& tail);

struct ComplexQuadrature {
    std::complex<double> value;
    double relative_change = 0.0;
    bool converged = false;
};

/// E[M_t exp((z . X_t - z^T z / 2) / t)] by tensor Gauss-Hermite at n and 2n
/// nodes (converged below 1e-10 relative change). z^T z has no conjugation.
ComplexQuadrature analytic_eval_integral(const MartingaleSpec& m, double t, std::span<const std::complex<double>> z,
                                         std::size_t nodes = 64);

using AnalyticFunction = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

/// Wraps analytic_eval of a fixed series.
AnalyticFunction series_function(HermiteSeries series);

/// |f(z)| <= K exp(((p*-1)|Re z|^2 + |Im z|^2) / (2t)) <= K exp(max(p*-1, 1) |z|^2 / (2t))
/// on every grid point, K = ||M_t||_p, with f from the series of M at time t.
CheckReport check_growth_order(const MartingaleSpec& m, double t, double p,
                               std::span<const std::vector<std::complex<double>>> z_grid, std::size_t nodes = 64);

struct FProjectionOptions {
    std::vector<std::vector<double>> x_grid;  // conditioning points
    std::size_t y_nodes = 40;                  // Gauss-Hermite nodes for Y_s
    double tolerance = 1e-8;                   // exact branch, relative to max(1, |g|)
    bool monte_carlo = true;
};

/// E[f(x + i Y_s)] = g(s, x) with Y_s ~ N(0, s I_d): exactly by Gauss-Hermite
/// over Y_s, and by Monte Carlo over conformal increments (config.n_outer
/// sampled X_s, config.n_paths Y_s each). Throws std::invalid_argument unless
/// s <= 0.9 T / max(p, p*).
CheckReport check_f_projection(const MartingaleSpec& m, const AnalyticFunction& f, double s, double p,
                               const McConfig& config, const FProjectionOptions& options);

/// Majorant for the time-s series: with r = e^{p/2} d sqrt(s/t) and
/// K = max_alpha |b_alpha| ||H_alpha(t, X_t)||_1, asserts r < 1, each degree
/// block sum_{|alpha|=n} |b_alpha| ||H_alpha(s, X_s)||_p <= K r^n, and the
/// partial sums <= K sum_{k<=n} r^k. For s >= t / (d^2 e^p) the records are
/// marked inapplicable.
CheckReport check_l1_to_lp_transfer(const HermiteSeries& series, double p, double s);

/// E[M_t^2] - sum_{|alpha|<=N} b_alpha^2 alpha! t^|alpha| for N = 0..cutoff,
/// i.e. the squared L^2 error of the degree-N truncation.
std::vector<double> l2_truncation_residuals(const MartingaleSpec& m, double t, const HermiteSeries& series,
                                            std::size_t nodes = 64);

}  // namespace chaoskit
