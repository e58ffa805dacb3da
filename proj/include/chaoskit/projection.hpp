#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chaoskit/multi_index.hpp"
#include "chaoskit/report.hpp"
#include "chaoskit/rng.hpp"
#include "chaoskit/stochastic.hpp"

namespace chaoskit {

/// Projection checks share the generic report type. Monte Carlo records pass
/// when |estimate - reference| <= c * std_error + allowance.
using ProjectionReport = CheckReport;

struct ProjectionEstimate {
    std::complex<double> estimate;
    double std_error = 0.0;       // of the complex mean, sqrt(se_re^2 + se_im^2)
    double std_error_real = 0.0;
    double std_error_imag = 0.0;
};

using PathFunctional = std::function<std::complex<double>(const ConformalPath&)>;
/// Writes several outputs for one conformal path into the span.
using MultiPathFunctional = std::function<void(const ConformalPath&, std::span<std::complex<double>>)>;

/// E[F(Z) | X] at the fixed X path: the mean of F over m fresh Y paths on the
/// X path's grid. Resample j draws Y from key.child(j), and the sum is reduced
/// in index order, so the result does not depend on `workers`. Throws
/// std::invalid_argument for m < 100.
ProjectionEstimate conditional_projection_mc(const PathFunctional& f, const BrownianPath& x_path, std::size_t m,
                                             rng::StreamKey key, unsigned workers = 1);

/// Same for a functional with `outputs` values per path, sharing the Y paths.
std::vector<ProjectionEstimate> conditional_projection_mc(const MultiPathFunctional& f, std::size_t outputs,
                                                          const BrownianPath& x_path, std::size_t m,
                                                          rng::StreamKey key, unsigned workers = 1);

/// E[Z_t^alpha | X] = H_alpha(t, X_t). Exact branch on x_grid:
/// |complex_power_expectation - hermite_multi| <= 1e-10 max(|H_alpha|, M)
/// with M = hermite_magnitude, the size of the terms that cancel. Monte Carlo
/// branch (when monte_carlo is set): config.n_outer sampled X_t, config.n_paths
/// Y resamples each.
ProjectionReport check_power_projection(const MultiIndex& alpha, double t, std::span<const std::vector<double>> x_grid,
                                        const McConfig& config, bool monte_carlo = true);

/// E[e^{a . Z_t} | X] = exp(a . X_t - |a|^2 t / 2). Exact branch: the Gaussian
/// characteristic function E[e^{i a . Y_t}] by Gauss-Hermite against
/// e^{-|a|^2 t / 2}, to 1e-12. Monte Carlo branch as in check_power_projection.
ProjectionReport check_exponential_projection(std::span<const double> a, double t, const McConfig& config);

/// Delta-t halving study for the Ito sums of H_{n-1}(s, X_s) against
/// H_n(t, X_t) / n, on one set of paths sampled at the finest step and
/// subsampled to the coarser ones.
struct IntegralCalibration {
    std::vector<double> dts;                // coarse to fine, each a quarter of the previous
    std::vector<std::vector<double>> rms;   // [n - 1][dt index], raw gap
    std::vector<std::vector<double>> scaled_rms;  // [n - 1][dt index], gap / (sqrt(dt) path factor)
    std::vector<double> rate;               // least-squares slope of log rms against log dt
    std::vector<double> b;                  // allowance constant per degree
};

/// Path factor of the left-endpoint Ito sum error for H_{n-1}(s, X_s):
/// (n - 1) / sqrt(2) (sum_k H_{n-2}(t_k, X_k)^2 dt_k)^{1/2}. Times sqrt(dt) it
/// is the conditional standard deviation of the leading error term
/// -(n-1)/2 sum_k H_{n-2}(t_k, X_k) ((dX_k)^2 - dt_k). Zero for n = 1.
double ito_error_scale(unsigned n, const BrownianPath& x);

IntegralCalibration calibrate_integral_projection(unsigned max_degree, double t, std::size_t paths,
                                                  std::uint64_t master_seed, double confidence, unsigned workers = 1);

/// Three-way agreement for H_s = Z_s^{n-1}, per sampled X path: (i) the Y
/// average of Re conformal_integral, (ii) ito_integral of H_{n-1}(s, X_s),
/// (iii) H_n(t, X_t) / n. Pairs involving (iii) get the discretization
/// allowance b sqrt(dt) ito_error_scale, b from the calibration study;
/// (i) and (ii) have equal conditional means, so that pair gets c * stderr
/// only. Also asserts the observed dt rate >= 0.4 and the quartering shrink
/// factor >= 1.7. At least 99% of comparisons must pass first time; failed
/// Monte Carlo comparisons are rerun with 2 * n_paths and must then pass.
ProjectionReport check_integral_projection(unsigned n, double t, const McConfig& config);

/// check_integral_projection for n = 1..max_degree on shared paths.
ProjectionReport check_integral_projection_family(unsigned max_degree, double t, const McConfig& config);

}  // namespace chaoskit
