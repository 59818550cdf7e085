#include <doctest.h>

#include <cmath>

#include "scmx/util.hpp"
#include "scmx/zipf.hpp"

using namespace scmx;

TEST_CASE("generalized harmonic basics") {
    CHECK(generalized_harmonic(1, 0.9) == 1.0);
    CHECK(generalized_harmonic(3, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(generalized_harmonic(2, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(generalized_harmonic(4, 2.0) ==
          doctest::Approx(1.0 + 0.25 + 1.0 / 9 + 1.0 / 16).epsilon(1e-15));
    CHECK_THROWS_AS(generalized_harmonic(0, 0.9), ConfigError);
    CHECK_THROWS_AS(generalized_harmonic(10, -0.1), ConfigError);
}

TEST_CASE("asymptotic tail expansion matches exact summation at the crossover") {
    // The closed form takes over beyond 1e8 terms; hold it to near machine
    // precision right where the two strategies meet.
    for (double alpha : {0.0, 0.4, 0.7, 0.9, 1.0, 1.2}) {
        double exact = detail::harmonic_exact(100000000ull, alpha);
        double em = detail::harmonic_euler_maclaurin(100000000ull, alpha);
        CHECK(std::abs(em - exact) / exact < 1e-12);
    }
}

TEST_CASE("hot-set anchors: 50M and 5B items at alpha 0.9, 70% coverage") {
    auto small = hot_fraction({0.9, 50000000ull, 0.7});
    CHECK(small.k == 2743513);
    CHECK(small.hot_fraction == doctest::Approx(0.05487026).epsilon(1e-9));

    auto big = hot_fraction({0.9, 5000000000ull, 0.7});
    CHECK(big.k == 215827573);
    CHECK(big.hot_fraction == doctest::Approx(0.0431655146).epsilon(1e-9));
}

TEST_CASE("hot fraction is minimal and covers the target") {
    HotFractionQuery q{0.9, 2000000, 0.7};
    auto r = hot_fraction(q);
    double hn = generalized_harmonic(q.n_items, q.alpha);
    CHECK(generalized_harmonic(r.k, q.alpha) / hn >= q.coverage);
    CHECK(generalized_harmonic(r.k - 1, q.alpha) / hn < q.coverage);
}

TEST_CASE("hot fraction monotonicity") {
    // more coverage needs more items
    uint64_t prev = 0;
    for (double c : {0.3, 0.5, 0.7, 0.9}) {
        auto r = hot_fraction({0.9, 1000000, c});
        CHECK(r.k >= prev);
        prev = r.k;
    }
    // stronger skew concentrates the hot set
    double prev_frac = 1.1;
    for (double a : {0.0, 0.4, 0.8, 1.2}) {
        auto r = hot_fraction({a, 1000000, 0.7});
        CHECK(r.hot_fraction < prev_frac);
        prev_frac = r.hot_fraction;
    }
    // at fixed skew < 1 the hot share shrinks as the population grows
    CHECK(hot_fraction({0.9, 50000000ull, 0.7}).hot_fraction >
          hot_fraction({0.9, 5000000000ull, 0.7}).hot_fraction);
}

TEST_CASE("uniform popularity degenerates to the coverage itself") {
    auto r = hot_fraction({0.0, 1000, 0.7});
    CHECK(r.k == 700);
    auto r2 = hot_fraction({0.0, 10000, 0.25});
    CHECK(r2.k == 2500);
}

TEST_CASE("hot fraction query validation") {
    CHECK_THROWS_AS(hot_fraction({0.9, 0, 0.7}), ConfigError);
    CHECK_THROWS_AS(hot_fraction({0.9, 100, 0.0}), ConfigError);
    CHECK_THROWS_AS(hot_fraction({0.9, 100, 1.0}), ConfigError);
    CHECK_THROWS_AS(hot_fraction({-0.1, 100, 0.5}), ConfigError);
}
