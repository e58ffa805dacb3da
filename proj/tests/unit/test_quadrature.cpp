#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "chaoskit/multi_index.hpp"
#include "chaoskit/quadrature.hpp"

using namespace chaoskit;

TEST_CASE("Gauss-Hermite rules integrate Gaussian moments exactly") {
    for (std::size_t n : {4u, 10u, 33u, 80u}) {
        const auto& r = gauss_hermite(n);
        REQUIRE(r.size() == n);
        double mass = 0.0;
        for (double w : r.weights) mass += w;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
        // E X^(2k) = (2k - 1)!! for 2k <= 2n - 1
        double dfact = 1.0;
        for (unsigned k = 1; 2 * k <= std::min<std::size_t>(2 * n - 1, 20); ++k) {
            dfact *= 2.0 * k - 1.0;
            double m = 0.0;
            for (std::size_t j = 0; j < n; ++j) m += r.weights[j] * std::pow(r.nodes[j], 2.0 * k);
            CHECK(m == doctest::Approx(dfact).epsilon(1e-12));
        }
        for (std::size_t j = 0; j < n; ++j) CHECK(std::log(r.weights[j]) == doctest::Approx(r.log_weights[j]).epsilon(1e-10));
    }
}

TEST_CASE("high-order rules stay finite in log domain") {
    const auto& r = gauss_hermite(400);
    for (double lw : r.log_weights) CHECK(std::isfinite(lw));
    CHECK(r.nodes.back() > 25.0);
}

TEST_CASE("Gauss-Legendre integrates polynomials on [-1, 1]") {
    const auto& r = gauss_legendre(12);
    for (int k = 0; k <= 22; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * std::pow(r.nodes[j], k);
        CHECK(s == doctest::Approx(k % 2 ? 0.0 : 2.0 / (k + 1)).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("tensor expectation of a product factorizes") {
    const std::function<double(std::span<const double>)> f = [](std::span<const double> x) {
        return x[0] * x[0] * std::cos(x[1]);
    };
    // E[X^2] E[cos Y] = t e^{-t/2}
    CHECK(gaussian_expectation(2, 1.5, 40, f) == doctest::Approx(1.5 * std::exp(-0.75)).epsilon(1e-13));
    std::size_t visits = 0;
    for_each_tensor_node(3, 1.0, gauss_hermite(5), [&](std::span<const double>, double) { ++visits; });
    CHECK(visits == 125);
}

TEST_CASE("panel integration with breakpoints at kinks") {
    const std::vector<double> breaks{-2.0, 0.0, 2.0};
    const double v = panel_integral([](double x) { return std::abs(x); }, breaks, 0.5, 8);
    CHECK(v == doctest::Approx(4.0).epsilon(1e-14));
    const auto r = adaptive_panel_integral([](double x, bool) { return std::exp(-x * x); }, std::vector<double>{-8.0, 8.0},
                                           1.0, 10, 1e-13);
    CHECK(r.fine == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("pairwise sum is exact on representable data and order fixed") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("multi-index enumeration and factorials") {
    CHECK(enumerate_multi_indices(2, 3).size() == 10);
    CHECK(enumerate_homogeneous(3, 2).size() == 6);
    CHECK(count_homogeneous(3, 2) == 6.0);
    const MultiIndex a{3, 0, 2};
    CHECK(a.degree() == 5);
    CHECK(a.factorial() == 12.0);
    CHECK(a.log_factorial() == doctest::Approx(std::log(12.0)));
    const std::vector<double> z{2.0, 5.0, -1.0};
    CHECK(monomial(a, z) == 8.0);
    CHECK(MultiIndex::zero(2).degree() == 0);
}
