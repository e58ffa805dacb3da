#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "chaoskit/rng.hpp"

using namespace chaoskit::rng;

TEST_CASE("splitmix64 reference output") {
    // first output of the reference generator seeded with 0
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
}

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = std::array<std::uint32_t, 4>;
    CHECK(philox4x32_10(C{0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("stream keys are deterministic and distinct") {
    const StreamKey root(42);
    CHECK(root.child(3).value() == StreamKey(42).child(3).value());
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 50; ++a)
        for (std::uint64_t b = 0; b < 50; ++b) seen.insert(root.child(a).child(b).value());
    CHECK(seen.size() == 2500);
    CHECK(root.child(1).child(2).value() != root.child(2).child(1).value());
}

TEST_CASE("streams replay identically") {
    Philox a(StreamKey(7).child(1)), b(StreamKey(7).child(1));
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform and normal draws have the right moments") {
    Philox g(StreamKey(2024));
    const int n = 200000;
    double su = 0.0, sn = 0.0, sn2 = 0.0, sn4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        su += u;
        const double z = g.normal();
        sn += z;
        sn2 += z * z;
        sn4 += z * z * z * z;
    }
    // 5 standard errors
    CHECK(std::abs(su / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(sn / n) < 5 * std::sqrt(1.0 / n));
    CHECK(std::abs(sn2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
    CHECK(std::abs(sn4 / n - 3.0) < 5 * std::sqrt(96.0 / n));
}
