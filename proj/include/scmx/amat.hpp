#pragma once

#include <cstdint>
#include <vector>

namespace scmx {

// Closed-form mean access time per 64B burst when a single row activation
// (plus optional write restoration) is amortized over a transfer of T bytes:
//   amat(T) = (t_act + t_wr + n * t_b) / n,   n = T / 64.
struct AmatQuery {
    double t_act_ns = 14.0;        // charged once per transfer
    double t_wr_ns = 0.0;          // restoration, 0 for a pure read curve
    double burst_ns = 3.0;         // interface time per 64B burst
    uint64_t transfer_bytes = 64;  // multiple of 64 in [64, 65536]
};

// Exact 64B burst time for a DDR-style interface, in ns.
double burst_ns_for_rate(double data_rate_mts, double bus_bytes = 8.0);

double amat_unloaded(const AmatQuery& q);

struct AmatPoint {
    double t_act_ns;
    uint64_t transfer_bytes;
    double amat_ns;
};

// Power-of-two transfer sweep [min_transfer, max_transfer] per t_act value.
std::vector<AmatPoint> amat_curve(const std::vector<double>& t_act_values_ns,
                                  uint64_t min_transfer = 64,
                                  uint64_t max_transfer = 65536,
                                  double burst_ns = 3.0,
                                  double t_wr_ns = 0.0);

}  // namespace scmx
