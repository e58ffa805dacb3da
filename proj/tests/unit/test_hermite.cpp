#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "chaoskit/hermite.hpp"
#include "chaoskit/multi_index.hpp"
#include "chaoskit/quadrature.hpp"

using namespace chaoskit;

namespace {

// Explicit sum H_n(t, x) = sum_k n! / (k! (n - 2k)!) (-t/2)^k x^(n - 2k) in long double.
long double explicit_hermite(unsigned n, long double t, long double x) {
    long double sum = 0.0L;
    for (unsigned k = 0; 2 * k <= n; ++k) {
        long double c = std::tgamma(static_cast<long double>(n + 1)) /
                        (std::tgamma(static_cast<long double>(k + 1)) * std::tgamma(static_cast<long double>(n - 2 * k + 1)));
        sum += c * std::pow(-t / 2.0L, static_cast<long double>(k)) * std::pow(x, static_cast<long double>(n - 2 * k));
    }
    return sum;
}

}  // namespace

TEST_CASE("low degree heat-Hermite polynomials") {
    const double t = 1.7, x = -0.6;
    CHECK(hermite_1d(0, t, x) == 1.0);
    CHECK(hermite_1d(1, t, x) == x);
    CHECK(hermite_1d(2, t, x) == doctest::Approx(x * x - t).epsilon(1e-15));
    CHECK(hermite_1d(3, t, x) == doctest::Approx(x * x * x - 3 * t * x).epsilon(1e-15));
    CHECK(hermite_1d(4, t, x) == doctest::Approx(std::pow(x, 4) - 6 * t * x * x + 3 * t * t).epsilon(1e-14));
}

TEST_CASE("recurrence matches the explicit sum") {
    for (unsigned n = 0; n <= 24; ++n)
        for (double t : {0.5, 1.0, 2.0})
            for (double x : {-4.0, -1.3, 0.0, 0.7, 3.5}) {
                const double h = hermite_1d(n, t, x);
                const double scale = hermite_magnitude_1d(n, t, x);
                CHECK(std::abs(h - static_cast<double>(explicit_hermite(n, t, x))) <= 1e-12 * std::max(1.0, scale));
            }
}

TEST_CASE("log-domain evaluation agrees with the direct one and does not overflow") {
    for (unsigned n : {3u, 10u, 40u})
        for (double x : {-2.5, 0.4, 6.0}) {
            const LogValue lv = hermite_1d_log(n, 1.3, x);
            const double h = hermite_1d(n, 1.3, x);
            CHECK(lv.sign == (h > 0) - (h < 0));
            CHECK(std::exp(lv.log_abs) == doctest::Approx(std::abs(h)).epsilon(1e-11));
        }
    const LogValue big = hermite_1d_log(400, 2.0, 3.0);
    CHECK(std::isfinite(big.log_abs));
    CHECK(big.log_abs > 300.0);
}

TEST_CASE("multi-index product and the complex moment identity") {
    const MultiIndex a{1, 2};
    const std::vector<double> x{1.0, 1.0};
    // H_1(2, 1) H_2(2, 1) = 1 * (1 - 2)
    CHECK(hermite_multi(a, 2.0, x) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(complex_power_expectation(a, 2.0, x) == doctest::Approx(-1.0).epsilon(1e-14));
    const MultiIndex zero = MultiIndex::zero(3);
    const std::vector<double> y{0.3, -2.0, 5.0};
    CHECK(hermite_multi(zero, 1.0, y) == 1.0);
    CHECK(complex_power_expectation(zero, 1.0, y) == 1.0);
}

TEST_CASE("complex moments: E[(x + iY)^n] with Y ~ N(0, t) by quadrature") {
    // independent oracle: Gauss-Hermite integration of Re (x + i y)^n
    for (unsigned n = 0; n <= 10; ++n) {
        const double t = 0.8, x = 1.4;
        const std::function<double(std::span<const double>)> f = [&](std::span<const double> y) {
            return std::real(std::pow(std::complex<double>(x, y[0]), static_cast<int>(n)));
        };
        const double q = gaussian_expectation(1, t, 20, f);
        CHECK(complex_power_expectation(MultiIndex{n}, t, std::vector<double>{x}) ==
              doctest::Approx(q).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("martingale property: E[H_n(t + s, x + W_s)] = H_n(t, x)") {
    for (unsigned n : {1u, 4u, 7u}) {
        const double t = 0.6, s = 1.1, x = -0.9;
        const std::function<double(std::span<const double>)> f = [&](std::span<const double> w) {
            return hermite_1d(n, t + s, x + w[0]);
        };
        CHECK(gaussian_expectation(1, s, 16, f) == doctest::Approx(hermite_1d(n, t, x)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("table and generating function") {
    std::vector<double> table(12);
    hermite_table(0.9, 1.7, table);
    for (unsigned n = 0; n < table.size(); ++n) CHECK(table[n] == doctest::Approx(hermite_1d(n, 0.9, 1.7)).epsilon(1e-15));
    // sum_n a^n / n! H_n(t, x) = exp(a x - a^2 t / 2)
    const double a = 0.7, t = 1.2, x = 0.4;
    CHECK(generating_partial_sum(a, t, x, 40) == doctest::Approx(std::exp(a * x - 0.5 * a * a * t)).epsilon(1e-14));
}

TEST_CASE("cancellation scale bounds the value") {
    for (unsigned n = 0; n <= 12; ++n)
        for (double x : {-3.0, 0.0, 2.0}) CHECK(std::abs(hermite_1d(n, 1.5, x)) <= hermite_magnitude_1d(n, 1.5, x) * (1 + 1e-14));
}
