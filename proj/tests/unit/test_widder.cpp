#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "chaoskit/widder.hpp"

using namespace chaoskit;

namespace {
SignedAtomicMeasure make1(std::vector<double> v, std::vector<double> w) {
    return SignedAtomicMeasure::from_points_1d(v, w);
}
double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
}  // namespace

TEST_CASE("closed forms of Widder martingales") {
    const auto delta0 = make1({0.0}, {1.0});
    const auto pair = make1({-1.0, 1.0}, {0.5, 0.5});
    for (double t : {0.0, 0.7, 3.0})
        for (double x : {-2.0, 0.0, 1.1}) {
            const double xs[] = {x};
            CHECK(widder_martingale(delta0, t, xs) == 1.0);
            CHECK(widder_martingale(pair, t, xs) == doctest::Approx(std::exp(-t / 2) * std::cosh(x)).epsilon(1e-15));
        }
    // large exponents stay finite through log-sum-exp
    const auto far = make1({30.0, -30.0}, {0.5, 0.5});
    const double x0[] = {0.0};
    CHECK(std::isfinite(widder_martingale(far, 1.0, x0)));
}

TEST_CASE("Pollard closed form") {
    for (double t : {0.25, 2.0})
        for (double x : {-1.0, 2.5})
            CHECK(pollard_closed_form(t, x) == doctest::Approx(std::exp(x * x / (2 * (t + 1))) / std::sqrt(t + 1)));
}

TEST_CASE("L1 norm of the dipole martingale") {
    // ||M_t||_1 = int |phi_t(x - t) - phi_t(x + t)| dx = 2 (2 Phi(sqrt t) - 1)
    const auto mu = make1({1.0, -1.0}, {1.0, -1.0});
    for (double t : {0.5, 2.0, 10.0}) {
        const auto r = widder_l1_norm(mu, t);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(2.0 * (2.0 * Phi(std::sqrt(t)) - 1.0)).epsilon(1e-10));
    }
    const auto pos = random_measure(4, 2, 4, 0.8);
    CHECK(widder_l1_norm(pos, 1.0).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("L1 identity report") {
    const auto mu = make1({1.0, -1.0}, {1.0, -1.0});
    const std::vector<double> grid{0.5, 5.0, 50.0};
    const auto rep = check_l1_norm_identity(mu, grid, 1e-6);
    CHECK(rep.passed());
    bool terminal = false;
    for (const auto& r : rep.records) terminal = terminal || r.name == "terminal-gap";
    CHECK(terminal);
}

TEST_CASE("characteristic function recovery") {
    const auto pair = make1({-1.0, 1.0}, {0.5, 0.5});
    const auto spec = widder_martingale_spec(pair, 2.0);
    for (double u : {-4.0, 0.0, 2.5}) {
        const double us[] = {u};
        const auto r = recover_measure_cf(spec, 1.0, us);
        CHECK(r.converged);
        CHECK(std::abs(r.value - std::cos(u)) < 1e-9);
        CHECK(std::abs(r.value_2t - std::cos(u)) < 1e-9);
    }
    const auto signed_spec = widder_martingale_spec(make1({1.0, -1.0}, {1.0, -1.0}), 2.0);
    const double u0[] = {1.0};
    CHECK_THROWS(recover_measure_cf(signed_spec, 1.0, u0));
}

TEST_CASE("separation example at the horizon") {
    std::vector<SignedAtomicMeasure> ms{make1({0.0}, {1.0}), make1({-0.5, 1.0}, {0.3, 0.7})};
    const auto rep = separation_example(2.0, 1.0, 1.0, ms);
    CHECK(rep.passed());
    // E[sin(kX_t) 1_A(X_T)] is a plain Gaussian integral at t = T
    CHECK(separation_indicator_value(2.0, 1.0, 1.0) < -std::exp(-2.0));
}

TEST_CASE("second moment constant and moment tails") {
    const auto mu = make1({-0.5, 1.5}, {0.4, 0.6});
    const double t = 1.3;
    double expected = 0.0;
    for (const auto& a : mu.atoms())
        for (const auto& b : mu.atoms()) expected += a.weight * b.weight * std::exp(t * a.location[0] * b.location[0]);
    CHECK(second_moment_constant(mu, t) == doctest::Approx(expected).epsilon(1e-14));
    const std::vector<double> ts{0.5, 1.0}, ks{0.5, 2.0, 8.0};
    CHECK(check_moment_characterization(mu, ts, ks).passed());
}

TEST_CASE("Pollard divergence") {
    for (unsigned k = 5; k < 30; ++k) CHECK(pollard_l1_term(8.0, k + 1) > pollard_l1_term(8.0, k));
    const auto rep = check_pollard_divergence(8.0, 5, 30);
    CHECK(rep.passed());
    const std::vector<double> ts{0.5, 4.0}, xs{-3.0, 0.0, 3.0};
    CHECK(check_pollard_closed_form(ts, xs).passed());
}
