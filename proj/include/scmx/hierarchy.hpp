#pragma once

#include "scmx/cache.hpp"
#include "scmx/memdev.hpp"
#include "scmx/trace.hpp"

namespace scmx {

struct HierarchyConfig {
    CacheConfig cache;        // cache.block_bytes must not exceed the row buffer
    DeviceGeometry geometry;
    TimingParams timing;
    double hit_service_ns = 10.0;        // stacked-DRAM access + link, beyond tags
    double compute_ns_per_access = 50.0; // also the arrival spacing for untimed traces
};

struct HierarchyStats {
    CacheStats cache;
    DeviceStats device;
    double mean_fill_latency_ns = 0.0;  // device latency of demand fills
    double end_to_end_amat_ns = 0.0;    // tags + hit service + miss-weighted fill latency
};

// Open-loop: fills and writebacks inherit the causing access's arrival time.
// Untimed traces get arrival = seq * compute_ns_per_access.
HierarchyStats simulate_hierarchy(const Trace& t, const HierarchyConfig& cfg);

// Relative performance of a configuration against a baseline, folding a fixed
// per-access compute interval around both AMATs.
double perf_proxy(double baseline_e2e_amat_ns, double config_e2e_amat_ns,
                  double compute_ns = 50.0);

}  // namespace scmx
