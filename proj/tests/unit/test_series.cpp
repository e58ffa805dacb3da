#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chaoskit/series.hpp"
#include "chaoskit/widder.hpp"

using namespace chaoskit;

namespace {
SignedAtomicMeasure two_atom() {
    const double v[] = {-1.0, 1.0};
    const double w[] = {0.5, 0.5};
    return SignedAtomicMeasure::from_points_1d(v, w);
}
MartingaleSpec cosh_spec() {
    return make_martingale(
        "cosh", [](double t, std::span<const double> x) { return std::exp(-0.5 * t) * std::cosh(x[0]); }, 1, 2.0,
        std::numeric_limits<double>::infinity(), Provenance::closed_form);
}
double factorial(unsigned n) { return std::tgamma(n + 1.0); }
}  // namespace

TEST_CASE("cosh martingale has coefficients 1/n! on even degrees at every t") {
    const auto spec = cosh_spec();
    for (double t : {0.5, 1.0, 2.0}) {
        const auto c = coefficients_from_martingale(spec, t, 14);
        CHECK(c.converged);
        for (unsigned n = 0; n <= 14; ++n) {
            const double expected = n % 2 ? 0.0 : 1.0 / factorial(n);
            CHECK(std::abs(c.series.coefficient(MultiIndex{n}) - expected) < 1e-12);
        }
    }
}

TEST_CASE("coefficients are moments over factorials") {
    const auto mu = random_measure(3, 2, 4, 1.2);
    const auto h = coefficients_from_measure(mu, 6);
    for (const auto& [a, b] : h.terms()) CHECK(b == doctest::Approx(moment(mu, a) / a.factorial()).epsilon(1e-14));
}

TEST_CASE("analytic extension of the cosh series") {
    const auto spec = cosh_spec();
    const auto c = coefficients_from_martingale(spec, 1.0, 40);
    for (std::complex<double> z : {std::complex<double>(0.3, 1.2), std::complex<double>(-1.5, -0.4)}) {
        const std::vector<std::complex<double>> zz{z};
        CHECK(std::abs(analytic_eval(c.series, zz) - std::cosh(z)) < 1e-12);
        const auto integral = analytic_eval_integral(spec, 1.0, zz);
        CHECK(integral.converged);
        CHECK(std::abs(integral.value - std::cosh(z)) < 1e-10);
    }
}

TEST_CASE("tail bound decreases and the chosen truncation meets it") {
    double prev = INFINITY;
    for (unsigned n = 5; n < 60; n += 5) {
        const double b = series_tail_bound(1, 2.0, 1.0, 3.0, n, 2.0);
        CHECK(b <= prev);
        prev = b;
    }
    // searched upward from 24 in steps of 4
    const unsigned N = choose_truncation(1, 2.0, 1.0, 3.0, 4.0, 1e-10);
    CHECK(N > 24);
    CHECK(series_tail_bound(1, 2.0, 1.0, 3.0, N, 4.0) <= 1e-10);
    CHECK(series_tail_bound(1, 2.0, 1.0, 3.0, N - 4, 4.0) > 1e-10);
}

TEST_CASE("growth bound for cosh") {
    std::vector<std::vector<std::complex<double>>> grid;
    for (double r : {0.5, 1.5, 3.0})
        for (int k = 0; k < 6; ++k) grid.push_back({std::polar(r, k * std::numbers::pi / 3)});
    const auto rep = check_growth_order(cosh_spec(), 1.0, 2.0, grid);
    CHECK(rep.passed());
    CHECK(rep.records.size() == 2 * grid.size());
}

TEST_CASE("f-projection recovers the martingale") {
    const auto mu = two_atom();
    const auto spec = widder_martingale_spec(mu, 2.0, 2.0, "two-atom");
    FProjectionOptions opt;
    opt.x_grid = {{-2.0}, {0.0}, {1.3}};
    opt.monte_carlo = false;
    McConfig cfg;
    const AnalyticFunction f = [](std::span<const std::complex<double>> z) { return std::cosh(z[0]); };
    const auto rep = check_f_projection(spec, f, 0.4, 2.0, cfg, opt);
    CHECK(rep.passed());
    CHECK_THROWS_AS(check_f_projection(spec, f, 1.0, 2.0, cfg, opt), std::invalid_argument);
}

TEST_CASE("L1 to Lp transfer: applicable only below t / (d^2 e^p)") {
    const auto series = coefficients_from_measure(two_atom(), 20, 1.0);
    const auto ok = check_l1_to_lp_transfer(series, 2.0, 0.9 / std::exp(2.0));
    CHECK(ok.passed());
    CHECK(ok.count(Status::inapplicable) == 0);
    const auto no = check_l1_to_lp_transfer(series, 2.0, 1.0);
    CHECK(no.count(Status::inapplicable) == no.records.size());
}

TEST_CASE("L2 truncation residuals decrease to zero") {
    const auto spec = cosh_spec();
    const auto c = coefficients_from_martingale(spec, 1.0, 30);
    const auto res = l2_truncation_residuals(spec, 1.0, c.series);
    REQUIRE(res.size() > 2);
    // E[M_1^2] = e^{-1} E cosh^2(X_1) = (1 + e^2) e^{-1} / 2 ... total at N = -1 is E M^2
    for (std::size_t k = 1; k < res.size(); ++k) CHECK(res[k] <= res[k - 1] + 1e-14);
    CHECK(res.back() < 1e-12);
}
