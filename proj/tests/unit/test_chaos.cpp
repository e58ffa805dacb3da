#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "chaoskit/chaos.hpp"

using namespace chaoskit;

namespace {
HermiteSeries single(double t, const MultiIndex& a, double b = 1.0) {
    HermiteSeries h(t, a.dim());
    h.set(a, b);
    return h;
}
}  // namespace

TEST_CASE("Lp norms of single Hermite functionals") {
    CHECK(lp_norm_hermite_functional(single(1.0, MultiIndex{1}), 2.0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm_hermite_functional(single(1.0, MultiIndex{1}), 1.0).value ==
          doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-11));
    for (const MultiIndex& a : {MultiIndex{3}, MultiIndex{2, 1}, MultiIndex{4, 3}}) {
        const double t = 1.7;
        const auto r = lp_norm_hermite_functional(single(t, a), 2.0);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(std::sqrt(a.factorial() * std::pow(t, a.degree()))).epsilon(1e-11));
    }
    // E|X|^4 = 3 t^2
    CHECK(lp_norm_hermite_functional(single(2.0, MultiIndex{1}), 4.0).value ==
          doctest::Approx(std::pow(12.0, 0.25)).epsilon(1e-12));
}

TEST_CASE("Ornstein-Uhlenbeck semigroup and chaos projection") {
    HermiteSeries h(1.0, 1);
    h.set(MultiIndex{0}, 5.0);
    h.set(MultiIndex{2}, 3.0);
    const auto half = ou_apply(h, std::log(2.0));
    CHECK(half.coefficient(MultiIndex{2}) == doctest::Approx(0.75));
    CHECK(half.coefficient(MultiIndex{0}) == 5.0);
    CHECK(ou_apply(h, 0.0).coefficient(MultiIndex{2}) == 3.0);
    const auto p2 = chaos_project(h, 2);
    CHECK(p2.size() == 1);
    CHECK(p2.coefficient(MultiIndex{2}) == 3.0);
    CHECK(chaos_project(p2, 2).terms() == p2.terms());
    CHECK(chaos_project(h, 7).empty());
}

TEST_CASE("series evaluation, L2 norm and text round trip") {
    HermiteSeries h(2.0, 2);
    h.set(MultiIndex{1, 0}, 2.0);
    h.set(MultiIndex{0, 2}, -1.0);
    const std::vector<double> x{0.5, 1.0};
    CHECK(h.evaluate(x) == doctest::Approx(2.0 * 0.5 - (1.0 - 2.0)));
    // sum b^2 alpha! t^|alpha| = 4 * 2 + 1 * 2 * 4
    CHECK(h.l2_norm_squared() == doctest::Approx(16.0));
    CHECK(h.max_degree() == 2);
    std::stringstream io;
    h.write(io);
    const auto back = HermiteSeries::read(io);
    CHECK(back.time() == 2.0);
    CHECK(back.terms() == h.terms());
}

TEST_CASE("roots of probabilists' Hermite combinations") {
    // He_2(y) = y^2 - 1
    const std::vector<double> c{0.0, 0.0, 1.0};
    const auto r = hermite_series_roots(c);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-13));
    // He_3(y) = y^3 - 3y
    const auto r3 = hermite_series_roots(std::vector<double>{0.0, 0.0, 0.0, 1.0});
    REQUIRE(r3.size() == 3);
    CHECK(r3[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-13));
    CHECK(std::abs(r3[1]) < 1e-13);
}

TEST_CASE("hypercontractivity at the threshold") {
    // ||T_s X||_4 = e^{-s} 3^{1/4} t^{1/2} with e^s = sqrt(3)
    const auto rep = check_hypercontractivity(single(1.0, MultiIndex{1}), 2.0, 4.0, 0.5 * std::log(3.0));
    REQUIRE(rep.records.size() >= 1);
    CHECK(rep.passed());
    CHECK(rep.records[0].left == doctest::Approx(std::pow(3.0, -0.25)).epsilon(1e-10));
    CHECK(rep.records[0].right == doctest::Approx(1.0).epsilon(1e-10));
    HermiteSeries c(1.0, 1);
    c.set(MultiIndex{0}, -2.5);
    const auto rc = check_hypercontractivity(c, 1.5, 3.0, 1.0);
    CHECK(rc.passed());
    CHECK(rc.records[0].left == doctest::Approx(2.5));
    // below the threshold nothing is claimed
    const auto below = check_hypercontractivity(single(1.0, MultiIndex{1}), 2.0, 4.0, 0.1);
    CHECK(below.count(Status::inapplicable) == below.records.size());
}

TEST_CASE("chaos norm bounds on random homogeneous series") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto v = random_homogeneous_series(seed, 1.0, 1 + seed % 2, 1 + static_cast<unsigned>(seed), 3);
        CHECK(v.is_homogeneous(1 + static_cast<unsigned>(seed)));
        const auto rep = check_chaos_norm_lemmas(v, 1.5, 4.0);
        CHECK(rep.passed());
        CHECK(rep.count(Status::fail) == 0);
    }
}
