#include "scmx/amat.hpp"

#include <string>

#include "scmx/util.hpp"

namespace scmx {

double burst_ns_for_rate(double data_rate_mts, double bus_bytes) {
    if (data_rate_mts <= 0 || bus_bytes <= 0)
        throw ConfigError("burst_ns_for_rate: data_rate_mts and bus_bytes must be positive");
    // MT/s * bytes-per-transfer = MB/s; 64B / (MB/s) = us, scale to ns.
    return 64.0 * 1000.0 / (data_rate_mts * bus_bytes);
}

double amat_unloaded(const AmatQuery& q) {
    if (q.transfer_bytes < 64 || q.transfer_bytes > 65536)
        throw ConfigError("amat: transfer_bytes " + std::to_string(q.transfer_bytes) +
                          " outside [64, 65536]");
    if (q.transfer_bytes % 64 != 0)
        throw ConfigError("amat: transfer_bytes " + std::to_string(q.transfer_bytes) +
                          " not a multiple of 64");
    if (q.t_act_ns < 0 || q.t_wr_ns < 0 || q.burst_ns <= 0)
        throw ConfigError("amat: latencies must be non-negative and burst_ns positive");
    double n = static_cast<double>(q.transfer_bytes / 64);
    return (q.t_act_ns + q.t_wr_ns + n * q.burst_ns) / n;
}

std::vector<AmatPoint> amat_curve(const std::vector<double>& t_act_values_ns,
                                  uint64_t min_transfer, uint64_t max_transfer,
                                  double burst_ns, double t_wr_ns) {
    if (min_transfer > max_transfer)
        throw ConfigError("amat_curve: min_transfer > max_transfer");
    std::vector<AmatPoint> out;
    for (double t_act : t_act_values_ns) {
        for (uint64_t t = min_transfer; t <= max_transfer; t *= 2) {
            AmatQuery q{t_act, t_wr_ns, burst_ns, t};
            out.push_back({t_act, t, amat_unloaded(q)});
        }
    }
    return out;
}

}  // namespace scmx
