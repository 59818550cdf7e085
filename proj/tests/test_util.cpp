#include <doctest.h>

#include <random>

#include "scmx/util.hpp"

using namespace scmx;

TEST_CASE("parse_fraction accepts ratio, percent, and decimal forms") {
    CHECK(parse_fraction("1/32") == doctest::Approx(0.03125).epsilon(1e-12));
    CHECK(parse_fraction("3.125%") == doctest::Approx(0.03125).epsilon(1e-12));
    CHECK(parse_fraction("0.03125") == doctest::Approx(0.03125).epsilon(1e-12));
    CHECK(parse_fraction("1/8") == doctest::Approx(0.125));
    CHECK(parse_fraction("100%") == doctest::Approx(1.0));
    CHECK(parse_fraction("0") == 0.0);
    CHECK(parse_fraction(" 1/16 ") == doctest::Approx(0.0625));
}

TEST_CASE("parse_fraction rejects malformed or out-of-range input") {
    CHECK_THROWS_AS(parse_fraction(""), ConfigError);
    CHECK_THROWS_AS(parse_fraction("abc"), ConfigError);
    CHECK_THROWS_AS(parse_fraction("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_fraction("-0.5"), ConfigError);
    CHECK_THROWS_AS(parse_fraction("1.5"), ConfigError);
    CHECK_THROWS_AS(parse_fraction("150%"), ConfigError);
    CHECK_THROWS_AS(parse_fraction("1/2/3"), ConfigError);
}

TEST_CASE("uniform_double covers [0,1) and uniform_u64 respects its bound") {
    std::mt19937_64 rng(42);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; i++) {
        double v = uniform_double(rng);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);

    uint64_t counts[7] = {0};
    for (int i = 0; i < 70000; i++) {
        uint64_t v = uniform_u64(rng, 7);
        REQUIRE(v < 7);
        counts[v]++;
    }
    for (uint64_t c : counts) {
        CHECK(c > 9000);  // ~10000 expected per bucket
        CHECK(c < 11000);
    }
}
