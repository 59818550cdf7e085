#include "scmx/hierarchy.hpp"

#include <algorithm>

#include "scmx/util.hpp"

namespace scmx {

HierarchyStats simulate_hierarchy(const Trace& t, const HierarchyConfig& cfg) {
    if (cfg.cache.block_bytes > cfg.geometry.row_buffer_bytes)
        throw ConfigError("hierarchy: cache block (" + std::to_string(cfg.cache.block_bytes) +
                          ") larger than the device row buffer (" +
                          std::to_string(cfg.geometry.row_buffer_bytes) + ")");
    if (cfg.compute_ns_per_access < 0 || cfg.hit_service_ns < 0)
        throw ConfigError("hierarchy: compute_ns_per_access and hit_service_ns must be >= 0");

    HierarchyStats out;
    auto cache_res = simulate_cache(t, cfg.cache);
    out.cache = cache_res.stats;

    // Arrival time per seq: trace timestamps when present, else one access
    // per compute interval.
    const bool timed = t.has_arrival_times();
    std::vector<DeviceRequest> reqs;
    reqs.reserve(cache_res.events.size());
    for (const auto& e : cache_res.events) {
        DeviceRequest r;
        r.kind = e.kind == BacksideKind::FillRead ? Op::Read : Op::Write;
        r.address = e.address;
        r.size_bytes = e.size_bytes;
        const auto& cause = t.records[e.cause_seq];
        r.arrival_ns = timed ? *cause.arrival_offset_ns
                             : static_cast<double>(e.cause_seq) * cfg.compute_ns_per_access;
        r.id = e.cause_seq;
        reqs.push_back(r);
    }

    DeviceGeometry geom = cfg.geometry;
    uint64_t needed = t.max_address() + cfg.cache.block_bytes;
    if (geom.capacity_bytes < needed)
        geom.capacity_bytes =
            (needed + geom.row_buffer_bytes - 1) / geom.row_buffer_bytes * geom.row_buffer_bytes;

    std::vector<double> completions;
    out.device = simulate_device(reqs, geom, cfg.timing, &completions);

    double fill_acc = 0.0;
    uint64_t fills = 0;
    for (size_t i = 0; i < reqs.size(); i++) {
        if (reqs[i].kind == Op::Read) {
            fill_acc += completions[i] - reqs[i].arrival_ns;
            fills++;
        }
    }
    if (fills) out.mean_fill_latency_ns = fill_acc / static_cast<double>(fills);
    out.end_to_end_amat_ns = cfg.cache.tag_lookup_ns + cfg.hit_service_ns +
                             out.cache.miss_ratio() * out.mean_fill_latency_ns;
    return out;
}

double perf_proxy(double baseline_e2e_amat_ns, double config_e2e_amat_ns, double compute_ns) {
    if (compute_ns < 0) throw ConfigError("perf_proxy: compute_ns must be >= 0");
    double denom = compute_ns + config_e2e_amat_ns;
    if (denom <= 0) throw ConfigError("perf_proxy: non-positive config time");
    return (compute_ns + baseline_e2e_amat_ns) / denom;
}

}  // namespace scmx
