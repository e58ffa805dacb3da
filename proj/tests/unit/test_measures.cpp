#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "chaoskit/measures.hpp"

using namespace chaoskit;

namespace {
SignedAtomicMeasure dipole() {
    const double v[] = {1.0, -1.0};
    const double w[] = {1.0, -1.0};
    return SignedAtomicMeasure::from_points_1d(v, w);
}
}  // namespace

TEST_CASE("construction validates atoms") {
    CHECK_THROWS_AS(SignedAtomicMeasure(std::vector<Atom>{}), std::invalid_argument);
    CHECK_THROWS_AS(SignedAtomicMeasure({{{1.0}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SignedAtomicMeasure({{{1.0}, 0.5}, {{1.0}, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(SignedAtomicMeasure({{{1.0}, 0.5}, {{1.0, 2.0}, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(SignedAtomicMeasure({{{1.0}, NAN}}), std::invalid_argument);
    const SignedAtomicMeasure mu({{{0.0, 1.0}, 0.25}, {{2.0, 0.0}, 0.75}});
    CHECK(mu.dim() == 2);
    CHECK(mu.is_probability());
}

TEST_CASE("total variation and Jordan decomposition") {
    const auto mu = dipole();
    CHECK(total_variation(mu) == 2.0);
    CHECK_FALSE(mu.is_positive());
    const auto parts = jordan_decompose(mu);
    CHECK(parts.positive.size() == 1);
    CHECK(parts.negative.size() == 1);
    CHECK(parts.negative.atoms()[0].weight == 1.0);
    CHECK(total_variation(parts.positive) + total_variation(parts.negative) == total_variation(mu));
    const double v[] = {0.5};
    const double w[] = {2.0};
    CHECK(jordan_decompose(SignedAtomicMeasure::from_points_1d(v, w)).negative.empty());
}

TEST_CASE("moments and quadratic exponential moments") {
    const double v[] = {-1.0, 2.0};
    const double w[] = {0.5, -0.25};
    const auto mu = SignedAtomicMeasure::from_points_1d(v, w);
    CHECK(moment(mu, MultiIndex{0}) == 0.25);
    CHECK(moment(mu, MultiIndex{3}) == doctest::Approx(-0.5 - 2.0));
    CHECK(quad_exp_moment(mu, 0.3) == doctest::Approx(0.5 * std::exp(0.3) + 0.25 * std::exp(1.2)));
    CHECK(log_quad_exp_moment(mu, 0.3) == doctest::Approx(std::log(quad_exp_moment(mu, 0.3))));
    CHECK(std::isfinite(log_quad_exp_moment(mu, 1e4)));
}

TEST_CASE("tail mass") {
    const double v[] = {0.5, 1.5, 3.0};
    const double w[] = {0.2, 0.3, 0.5};
    const auto mu = SignedAtomicMeasure::from_points_1d(v, w);
    CHECK(tail_mass(mu, 1.0) == doctest::Approx(0.8));
    CHECK(tail_mass(mu, 9.0) == 0.0);
    CHECK_THROWS(tail_mass(dipole(), 1.0));
}

TEST_CASE("Gaussian discretization reproduces low moments") {
    const double mean[] = {0.3};
    const double var[] = {2.0};
    const std::size_t nodes[] = {20};
    const auto g = discretize_gaussian(mean, var, nodes);
    CHECK(moment(g, MultiIndex{0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(moment(g, MultiIndex{1}) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(moment(g, MultiIndex{2}) == doctest::Approx(2.0 + 0.09).epsilon(1e-13));
    // E exp(lambda X^2) = (1 - 2 lambda sigma^2)^{-1/2} for a centred Gaussian
    const auto probe = gaussian_quad_exp_moment_probe(1.0, 0.1, 64);
    CHECK(probe.converged);
    CHECK(probe.fine == doctest::Approx(1.0 / std::sqrt(0.8)).epsilon(1e-8));
    const auto diverging = gaussian_quad_exp_moment_probe(1.0, 0.6, 64);
    CHECK_FALSE(diverging.converged);
}

TEST_CASE("seeded random measures") {
    const auto a = random_measure(11, 2, 6, 1.5);
    const auto b = random_measure(11, 2, 6, 1.5);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a.atoms()[j].weight == b.atoms()[j].weight);
    CHECK(a.is_probability());
    for (const auto& atom : a.atoms()) CHECK(std::hypot(atom.location[0], atom.location[1]) <= 1.5 + 1e-12);
    bool any_negative = false;
    for (std::uint64_t s = 0; s < 20; ++s)
        for (const auto& atom : random_measure(s, 1, 5, 2.0, true).atoms()) any_negative = any_negative || atom.weight < 0;
    CHECK(any_negative);
}

TEST_CASE("text round trip") {
    const auto mu = random_measure(5, 2, 4, 2.0, true);
    std::stringstream io;
    mu.write(io);
    const auto back = SignedAtomicMeasure::read(io);
    REQUIRE(back.size() == mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        CHECK(back.atoms()[j].weight == mu.atoms()[j].weight);
        CHECK(back.atoms()[j].location == mu.atoms()[j].location);
    }
    std::istringstream bad("0.5 1.0\n0.5 x\n");
    CHECK_THROWS_AS(SignedAtomicMeasure::read(bad), std::invalid_argument);
}
