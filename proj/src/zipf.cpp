#include "scmx/zipf.hpp"

#include <cmath>
#include <string>

#include "scmx/util.hpp"

namespace scmx {
namespace detail {

namespace {
constexpr uint64_t kExactLimit = 100000000;       // largest n summed directly
constexpr uint64_t kEulerMaclaurinHead = 1000000; // exact head for the tail expansion
}  // namespace

double harmonic_exact(uint64_t n, double alpha) {
    // Kahan summation, ascending terms (small magnitudes accumulate last
    // in descending index order, so iterate from n down to 1).
    double sum = 0.0, comp = 0.0;
    for (uint64_t i = n; i >= 1; i--) {
        double term = std::pow(static_cast<double>(i), -alpha);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double harmonic_euler_maclaurin(uint64_t n, double alpha) {
    const double m = static_cast<double>(kEulerMaclaurinHead);
    const double nd = static_cast<double>(n);
    double head = harmonic_exact(kEulerMaclaurinHead, alpha);
    double integral = (std::abs(alpha - 1.0) < 1e-12)
                          ? std::log(nd / m)
                          : (std::pow(nd, 1.0 - alpha) - std::pow(m, 1.0 - alpha)) / (1.0 - alpha);
    double boundary = 0.5 * (std::pow(nd, -alpha) - std::pow(m, -alpha));
    // B2/2! * (f'(n) - f'(m)) with f(x) = x^-alpha, B2 = 1/6.
    double b2 = (alpha / 12.0) * (std::pow(m, -alpha - 1.0) - std::pow(nd, -alpha - 1.0));
    return head + integral + boundary + b2;
}

}  // namespace detail

double generalized_harmonic(uint64_t n, double alpha) {
    if (n == 0) throw ConfigError("generalized_harmonic: n must be >= 1");
    if (alpha < 0) throw ConfigError("generalized_harmonic: alpha must be >= 0");
    if (n <= detail::kExactLimit) return detail::harmonic_exact(n, alpha);
    return detail::harmonic_euler_maclaurin(n, alpha);
}

HotFractionResult hot_fraction(const HotFractionQuery& q) {
    if (q.n_items == 0) throw ConfigError("hot_fraction: n_items must be >= 1");
    if (q.coverage <= 0.0 || q.coverage >= 1.0)
        throw ConfigError("hot_fraction: coverage " + std::to_string(q.coverage) +
                          " outside (0, 1)");
    if (q.alpha < 0) throw ConfigError("hot_fraction: alpha must be >= 0");
    const double target = q.coverage * generalized_harmonic(q.n_items, q.alpha);
    uint64_t lo = 1, hi = q.n_items;
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        if (generalized_harmonic(mid, q.alpha) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return {lo, static_cast<double>(lo) / static_cast<double>(q.n_items)};
}

}  // namespace scmx
