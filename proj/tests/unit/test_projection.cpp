#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "chaoskit/projection.hpp"

using namespace chaoskit;

namespace {
BrownianPath one_step_path(double t, double x) {
    auto grid = std::make_shared<const TimeGrid>(std::vector<double>{0.0, t});
    BrownianPath p(grid, 1);
    p.at(1)[0] = x;
    return p;
}
}  // namespace

TEST_CASE("conditional projection of Y-independent and Y-linear functionals") {
    const auto x = one_step_path(1.0, 0.8);
    const auto key = rng::StreamKey(17);
    const auto fx = conditional_projection_mc([](const ConformalPath& z) { return std::complex<double>(z.x.terminal()[0]); },
                                              x, 1000, key);
    CHECK(fx.estimate.real() == 0.8);
    CHECK(fx.std_error == 0.0);
    const auto fy = conditional_projection_mc([](const ConformalPath& z) { return std::complex<double>(z.y.terminal()[0]); },
                                              x, 20000, key);
    CHECK(std::abs(fy.estimate.real()) <= 4.0 * fy.std_error_real);
    CHECK(fy.std_error_real == doctest::Approx(1.0 / std::sqrt(20000.0)).epsilon(0.05));
    CHECK_THROWS_AS(conditional_projection_mc([](const ConformalPath&) { return std::complex<double>(0.0); }, x, 50, key),
                    std::invalid_argument);
}

TEST_CASE("Z_t^2 projects to X_t^2 - t and is worker independent") {
    const auto x = one_step_path(1.0, 1.3);
    const PathFunctional f = [](const ConformalPath& z) {
        const auto v = z.z(1, 0);
        return v * v;
    };
    const auto a = conditional_projection_mc(f, x, 40000, rng::StreamKey(5), 1);
    const auto b = conditional_projection_mc(f, x, 40000, rng::StreamKey(5), 3);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(std::abs(a.estimate.real() - (1.3 * 1.3 - 1.0)) <= 4.0 * a.std_error_real);
}

TEST_CASE("power and exponential projection checks") {
    McConfig cfg;
    cfg.n_paths = 2000;
    cfg.n_outer = 4;
    const std::vector<std::vector<double>> grid{{-2.0}, {0.0}, {3.0}};
    const auto rep = check_power_projection(MultiIndex{2}, 1.0, grid, cfg, true);
    CHECK(rep.passed());
    const auto exact = check_power_projection(MultiIndex{0, 0}, 2.0, std::vector<std::vector<double>>{{1.0, 1.0}}, cfg, false);
    CHECK(exact.passed());
    const double a0[] = {0.0};
    CHECK(check_exponential_projection(a0, 1.0, cfg).passed());
    const double a2[] = {0.5, -0.3};
    CHECK(check_exponential_projection(a2, 2.0, cfg).passed());
}

TEST_CASE("Ito error scale") {
    const auto x = one_step_path(1.0, 0.5);
    CHECK(ito_error_scale(1, x) == 0.0);
    // n = 2: (1/sqrt 2) sqrt(H_0^2 dt) over one step of length 1
    CHECK(ito_error_scale(2, x) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("integral projection at small scale") {
    McConfig cfg;
    cfg.n_paths = 200;
    cfg.n_outer = 20;
    cfg.dt = 1e-2;
    const auto rep = check_integral_projection(1, 1.0, cfg);
    CHECK(rep.passed());
}
