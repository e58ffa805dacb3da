#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/measures.hpp"
#include "chaoskit/report.hpp"
#include "chaoskit/series.hpp"

namespace chaoskit {

/// Widder checks share the generic report type.
using WidderReport = CheckReport;

/// g(t, x) = sum_j w_j exp(v_j . x - |v_j|^2 t / 2), evaluated with the
/// largest exponent factored out.
double widder_martingale(const SignedAtomicMeasure& mu, double t, std::span<const double> x);

/// (t + 1)^{-1/2} exp(x^2 / (2 (t + 1))): the Widder martingale of N(0, 1).
double pollard_closed_form(double t, double x);

/// Measure-backed MartingaleSpec for mu.
MartingaleSpec widder_martingale_spec(const SignedAtomicMeasure& mu, double p,
                                      double horizon = std::numeric_limits<double>::infinity(),
                                      std::string label = "widder");

/// Closed-form spec for Pollard's martingale (d = 1).
MartingaleSpec pollard_spec(double p, double horizon);

/// f(z) = sum_j w_j exp(v_j . z), the entire function attached to mu.
AnalyticFunction laplace_function(const SignedAtomicMeasure& mu);

/// ||M_t||_1 = E|g(t, X_t)|. For d = 1 the density sum_j w_j phi_t(x - v_j t)
/// is integrated in absolute value between its sign changes; otherwise tensor
/// Gauss-Hermite. Both are rerun at doubled resolution.
NormResult widder_l1_norm(const SignedAtomicMeasure& mu, double t, std::size_t nodes = 64);

/// For each t: E[g] = mu(R^d), ||M_t||_1 <= ||mu||, equality for positive mu,
/// and ||mu|| - ||M_t||_1 <= 2 sum_{i in +, j in -} of the overlap integral
/// of w_i phi(x - v_i t) and |w_j| phi(x - v_j t), the atom separation rate
/// (decays like Phi(-|v_i - v_j| sqrt(t) / 2)). At the largest t
/// the gap must be below terminal_tolerance (not asserted when infinite).
WidderReport check_l1_norm_identity(const SignedAtomicMeasure& mu, std::span<const double> t_grid,
                                    double terminal_tolerance = 1e-6, std::size_t nodes = 64);

struct CfRecovery {
    std::complex<double> value;      // at t
    std::complex<double> value_2t;   // same identity at 2t
    double relative_change = 0.0;    // node doubling at t
    bool converged = false;
};

/// phi_mu(u) = E[g(t, X_t) exp(i u . X_t / t)] exp(|u|^2 / (2t)), also at 2t.
/// Throws std::invalid_argument unless g(0, 0) = 1 and the spec is positive
/// where that is known (measure-backed).
CfRecovery recover_measure_cf(const MartingaleSpec& m, double t, std::span<const double> u, std::size_t nodes = 64);

/// Indicator-martingale construction for sin(kx): (a) every probability
/// measure in `measures` satisfies E[sin(k X_t) N_t] >= -e^{-k^2 t/2} - 1e-9;
/// (b) m(t, x) = P(X_T in A | X_t = x) / P(A), A = {sin(k y) < -e^{-k^2 T/2}},
/// gives E[sin(k X_t) m(t, X_t)] < -e^{-k^2 t/2}. Throws for P(A) < 1e-12.
WidderReport separation_example(double k, double T, double t, std::span<const SignedAtomicMeasure> measures,
                                 std::size_t nodes = 64);

/// E[sin(k X_t) m(t, X_t)] for the indicator martingale above, by panel
/// quadrature; exposed for tests.
double separation_indicator_value(double k, double T, double t);

/// b_alpha = moment(mu, alpha) / alpha! for |alpha| <= N, stored against
/// reference time t.
HermiteSeries coefficients_from_measure(const SignedAtomicMeasure& mu, unsigned cutoff, double t = 1.0);

/// C_t = sum_ij w_i w_j exp(t v_i . v_j) = E[g(t, X_t)^2].
double second_moment_constant(const SignedAtomicMeasure& mu, double t);

/// Tail bounds for positive mu by exhaustive atom (pair) enumeration, for
/// each (t, K): (mu x mu)(v . w > K) <= C_t e^{-tK}; the worst orthant
/// bound mu(|v_i| > sqrt K, sign v = eps) <= C_t^{1/2} e^{-tK/2} with
/// sign(0) = +1; and mu(|v|^2 > K) <= d 2^d C_t^{1/2} e^{-tK/(2d)}. Also checks
/// C_t against Gauss-Hermite quadrature of E[g^2].
WidderReport check_moment_characterization(const SignedAtomicMeasure& mu, std::span<const double> t_list,
                                           std::span<const double> K_list);

/// b_{2k} ||H_{2k}(t, X_t)||_1 with b_{2k} = 1 / (2^k k!).
double pollard_l1_term(double t, unsigned k);

/// Growth of the L1 family for k in [k_lo, k_hi]: strictly increasing and
/// final / initial > 1e6 (inapplicable unless t > e), the norm lower bound
/// for every k, and divergence of the lambda = 1/2 quadratic exponential
/// moment detected by node doubling.
WidderReport check_pollard_divergence(double t, unsigned k_lo = 5, unsigned k_hi = 30);

/// Closed form against widder_martingale of the n-node Gauss-Hermite
/// discretization of N(0, 1), relative tolerance 1e-6.
WidderReport check_pollard_closed_form(std::span<const double> t_grid, std::span<const double> x_grid,
                                       std::size_t nodes = 64);

}  // namespace chaoskit
