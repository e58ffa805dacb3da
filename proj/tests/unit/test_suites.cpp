#include <doctest.h>

#include <set>
#include <string>

#include "chaoskit/suites.hpp"

using namespace chaoskit;

TEST_CASE("exponent grid keeps p < q <= 6") {
    ExponentGrid g;
    const auto pairs = g.pairs();
    CHECK(pairs.size() == 17);
    for (const auto& [p, q] : pairs) {
        CHECK(p < q);
        CHECK(q <= 6.0);
    }
}

TEST_CASE("test measures start with the two-atom measure and are seeded") {
    const auto a = series_test_measures(9, 3);
    REQUIRE(a.size() == 4);
    CHECK(a[0].size() == 2);
    CHECK(a[1].dim() == 1);
    CHECK(a[2].dim() == 2);
    const auto b = series_test_measures(9, 3);
    CHECK(a[3].atoms()[0].weight == b[3].atoms()[0].weight);
}

TEST_CASE("small suites pass and keep a fixed group order") {
    ProjectionSuite p;
    p.max_degree = 3;
    p.max_dim = 2;
    p.monte_carlo = false;
    const auto pr = run_projection_suite(p);
    REQUIRE(pr.size() == 1);
    CHECK(pr[0].passed());

    HyperSuite h;
    h.series = 12;
    h.max_degree = 3;
    const auto hr = run_hyper_suite(h);
    std::vector<std::string> names;
    for (const auto& g : hr) {
        names.push_back(g.name);
        CHECK(g.passed());
    }
    CHECK(names == std::vector<std::string>{"hypercontractivity", "parseval", "norm-monotonicity", "chaos-norm-bounds"});
    h.workers = 3;
    const auto hr3 = run_hyper_suite(h);
    for (std::size_t g = 0; g < hr.size(); ++g) {
        REQUIRE(hr[g].records.size() == hr3[g].records.size());
        for (std::size_t k = 0; k < hr[g].records.size(); ++k) CHECK(hr[g].records[k].left == hr3[g].records[k].left);
    }

    PollardSuite pol;
    for (const auto& g : run_pollard_suite(pol)) CHECK(g.passed());
    SeparationSuite sep;
    sep.random_measures = 3;
    CHECK(run_separation_suite(sep)[0].passed());
}
