#pragma once

#include <cstdint>

namespace scmx {

// H(n, alpha) = sum_{i=1..n} i^-alpha. Exact compensated summation up to
// n = 1e8; Euler-Maclaurin continuation above (exact head m = 1e6, integral,
// boundary and B2 terms).
double generalized_harmonic(uint64_t n, double alpha);

namespace detail {
double harmonic_exact(uint64_t n, double alpha);
double harmonic_euler_maclaurin(uint64_t n, double alpha);
}  // namespace detail

struct HotFractionQuery {
    double alpha = 0.9;
    uint64_t n_items = 0;
    double coverage = 0.7;  // in (0, 1)
};

struct HotFractionResult {
    uint64_t k;           // least k with H(k)/H(n) >= coverage
    double hot_fraction;  // k / n
};

HotFractionResult hot_fraction(const HotFractionQuery& q);

}  // namespace scmx
