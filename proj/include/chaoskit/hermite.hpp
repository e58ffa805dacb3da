#pragma once

#include <span>

#include "chaoskit/multi_index.hpp"

namespace chaoskit {

// Heat-Hermite polynomials H_n(t, x): monic in x, H_0 = 1, H_1 = x,
// H_{n+1} = x H_n - n t H_{n-1}. H_n(t, X_t) is a Brownian martingale and
// H_n(0, x) = x^n.

/// Degree-n heat-Hermite polynomial at (t, x).
double hermite_1d(unsigned n, double t, double x);

/// Value of H_n(t, x) as sign * exp(log_abs); used when the value overflows.
struct LogValue {
    double log_abs = 0.0;
    int sign = 1;  // -1, 0 or +1
};

/// Same recurrence as hermite_1d, with the running magnitude renormalized so
/// that arbitrarily large degrees can be evaluated.
LogValue hermite_1d_log(unsigned n, double t, double x);

/// H_alpha(t, x) = prod_i H_{alpha_i}(t, x_i). Throws std::invalid_argument on
/// a dimension mismatch.
double hermite_multi(const MultiIndex& alpha, double t, std::span<const double> x);

/// E[prod_j (x_j + i Y_j)^{alpha_j}] with Y_j ~ N(0, t) independent, by binomial
/// expansion and the even Gaussian moments (2m-1)!! t^m. The imaginary part
/// vanishes identically; only the real part is returned.
double complex_power_expectation(const MultiIndex& alpha, double t, std::span<const double> x);

/// E[(|x| + Y)^n] with Y ~ N(0, t): the sum of absolute values of the terms of
/// the binomial expansion, i.e. the natural magnitude scale of H_n(t, x).
double hermite_magnitude_1d(unsigned n, double t, double x);

/// Product of hermite_magnitude_1d over coordinates.
double hermite_magnitude(const MultiIndex& alpha, double t, std::span<const double> x);

/// sum_{n <= cutoff} a^n H_n(t, x) / n!, which tends to exp(a x - a^2 t / 2).
double generating_partial_sum(double a, double t, double x, unsigned cutoff);

/// Values H_0(t, x), ..., H_max(t, x) written into out (size max + 1).
void hermite_table(double t, double x, std::span<double> out);

}  // namespace chaoskit
