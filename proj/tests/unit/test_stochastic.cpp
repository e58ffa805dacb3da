#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "chaoskit/stochastic.hpp"

using namespace chaoskit;

TEST_CASE("uniform time grid") {
    const auto g = TimeGrid::uniform(1.0, 0.25);
    CHECK(g.steps() == 4);
    CHECK(g.horizon() == 1.0);
    CHECK(g.step(2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(TimeGrid(std::vector<double>{0.0, 0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("Brownian paths are reproducible and start at 0") {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(1.0, 0.01));
    const auto key = stream(99, StreamTag::x_path);
    const auto a = sample_bm(2, grid, key);
    const auto b = sample_bm(2, grid, key);
    CHECK(a.at(0, 0) == 0.0);
    CHECK(a.at(0, 1) == 0.0);
    for (std::size_t k = 0; k < grid->size(); ++k) CHECK(a.at(k, 1) == b.at(k, 1));
    const auto c = sample_bm(2, grid, stream(100, StreamTag::x_path));
    CHECK(c.at(50, 0) != a.at(50, 0));
}

TEST_CASE("terminal values have variance t") {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(2.0, 0.5));
    const int n = 20000;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto p = sample_bm(1, grid, stream(1, StreamTag::x_path).child(i));
        s2 += p.terminal()[0] * p.terminal()[0];
    }
    CHECK(std::abs(s2 / n - 2.0) < 5 * 2.0 * std::sqrt(2.0 / n));
}

TEST_CASE("integrals of constants reproduce the driver") {
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(1.0, 0.1));
    const auto z = sample_conformal(1, grid, stream(5, StreamTag::y_path));
    const std::vector<double> ones(grid->steps(), 1.0);
    CHECK(ito_integral(ones, z.x) == doctest::Approx(z.x.terminal()[0]).epsilon(1e-14));
    const std::vector<std::complex<double>> c1(grid->steps(), 1.0);
    const std::vector<std::complex<double>> ci(grid->steps(), std::complex<double>(0.0, 1.0));
    const auto zt = z.z(grid->steps(), 0);
    CHECK(std::abs(conformal_integral(c1, z) - zt) < 1e-13);
    CHECK(std::abs(conformal_integral(ci, z) - std::complex<double>(0.0, 1.0) * zt) < 1e-13);
}

TEST_CASE("discrete Ito sum of X against X") {
    // left-endpoint sum: 2 sum X_k dX_k = X_t^2 - sum (dX_k)^2
    auto grid = std::make_shared<const TimeGrid>(TimeGrid::uniform(1.0, 0.01));
    const auto x = sample_bm(1, grid, stream(3, StreamTag::x_path));
    std::vector<double> integrand(grid->steps());
    double qv = 0.0;
    for (std::size_t k = 0; k < grid->steps(); ++k) {
        integrand[k] = x.at(k, 0);
        const double dx = x.at(k + 1, 0) - x.at(k, 0);
        qv += dx * dx;
    }
    const double xt = x.terminal()[0];
    CHECK(ito_integral(integrand, x) == doctest::Approx(0.5 * (xt * xt - qv)).epsilon(1e-12));
}

TEST_CASE("stochastic exponential and config validation") {
    const double a[] = {1.0, -2.0};
    const double x[] = {0.5, 0.25};
    CHECK(stochastic_exponential(a, x, 2.0) == doctest::Approx(std::exp(0.5 - 0.5 - 5.0)));
    McConfig c;
    CHECK_NOTHROW(c.validate());
    c.dt = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
