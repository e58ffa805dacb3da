#include "chaoskit/hermite.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace chaoskit {

namespace {

constexpr unsigned kLogDomainDegree = 150;

void require_same_dim(const MultiIndex& alpha, std::span<const double> x, const char* who) {
    if (alpha.dim() != x.size())
        throw std::invalid_argument(std::string(who) + ": multi-index dimension " +
                                    std::to_string(alpha.dim()) + " != point dimension " +
                                    std::to_string(x.size()));
}

// Terms of E[(x + iY)^n]: C(n, 2m) (2m-1)!! t^m x^{n-2m} (-1)^m for m = 0..n/2.
// With signed = false the (-1)^m is dropped and |x| used, giving E[(|x| + Y)^n].
template <class Visit>
void visit_binomial_terms(unsigned n, double t, double x, Visit&& visit) {
    std::vector<double> xpow(n + 1, 1.0);
    for (unsigned k = 1; k <= n; ++k) xpow[k] = xpow[k - 1] * x;
    double c = 1.0;  // C(n, 2m) (2m-1)!! t^m
    for (unsigned m = 0; 2 * m <= n; ++m) {
        visit(m, c * xpow[n - 2 * m]);
        const double a = static_cast<double>(n - 2 * m);
        c *= a * (a - 1.0) / (2.0 * (m + 1)) * t;
    }
}

std::complex<double> complex_power_expectation_1d(unsigned n, double t, double x) {
    // Expand (x + iY)^n = sum_k C(n,k) x^{n-k} i^k Y^k and take E termwise.
    // Odd k contribute E[Y^k] = 0, so only k = 2m survive with i^{2m} = (-1)^m.
    std::complex<double> sum{0.0, 0.0};
    visit_binomial_terms(n, t, x, [&](unsigned m, double term) {
        const std::complex<double> i_pow = (m % 2 == 0) ? std::complex<double>{1.0, 0.0}
                                                        : std::complex<double>{-1.0, 0.0};
        sum += i_pow * term;
    });
    return sum;
}

}  // namespace

double hermite_1d(unsigned n, double t, double x) {
    if (n == 0) return 1.0;
    if (t == 0.0) return std::pow(x, static_cast<double>(n));
    if (n > kLogDomainDegree) {
        const LogValue lv = hermite_1d_log(n, t, x);
        return lv.sign == 0 ? 0.0 : lv.sign * std::exp(lv.log_abs);
    }
    double prev = 1.0;
    double cur = x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = x * cur - static_cast<double>(k) * t * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

LogValue hermite_1d_log(unsigned n, double t, double x) {
    double prev = 1.0;
    double cur = (n == 0) ? 1.0 : x;
    double log_scale = 0.0;
    for (unsigned k = 1; k < n; ++k) {
        const double next = x * cur - static_cast<double>(k) * t * prev;
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(cur), std::abs(prev));
        if (mag > 0x1p+500 || (mag > 0.0 && mag < 0x1p-500)) {
            int e = 0;
            std::frexp(mag, &e);
            cur = std::ldexp(cur, -e);
            prev = std::ldexp(prev, -e);
            log_scale += e * std::log(2.0);
        }
    }
    if (cur == 0.0) return {-INFINITY, 0};
    return {std::log(std::abs(cur)) + log_scale, cur > 0 ? 1 : -1};
}

double hermite_multi(const MultiIndex& alpha, double t, std::span<const double> x) {
    require_same_dim(alpha, x, "hermite_multi");
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) v *= hermite_1d(alpha[i], t, x[i]);
    return v;
}

double complex_power_expectation(const MultiIndex& alpha, double t, std::span<const double> x) {
    require_same_dim(alpha, x, "complex_power_expectation");
    std::complex<double> v{1.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) v *= complex_power_expectation_1d(alpha[i], t, x[i]);
    if (v.imag() != 0.0)
        throw std::logic_error("complex_power_expectation: non-vanishing imaginary part");
    return v.real();
}

double hermite_magnitude_1d(unsigned n, double t, double x) {
    double sum = 0.0;
    visit_binomial_terms(n, t, std::abs(x), [&](unsigned, double term) { sum += term; });
    return sum;
}

double hermite_magnitude(const MultiIndex& alpha, double t, std::span<const double> x) {
    require_same_dim(alpha, x, "hermite_magnitude");
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) v *= hermite_magnitude_1d(alpha[i], t, x[i]);
    return v;
}

double generating_partial_sum(double a, double t, double x, unsigned cutoff) {
    // h_n = a^n H_n / n! obeys h_{n+1} = (a x h_n - a^2 t h_{n-1}) / (n + 1).
    double prev = 1.0;
    double sum = 1.0;
    if (cutoff == 0) return sum;
    double cur = a * x;
    sum += cur;
    for (unsigned k = 1; k < cutoff; ++k) {
        const double next = (a * x * cur - a * a * t * prev) / static_cast<double>(k + 1);
        prev = cur;
        cur = next;
        sum += cur;
    }
    return sum;
}

void hermite_table(double t, double x, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = x;
    for (std::size_t k = 1; k + 1 < out.size(); ++k)
        out[k + 1] = x * out[k] - static_cast<double>(k) * t * out[k - 1];
}

}  // namespace chaoskit
