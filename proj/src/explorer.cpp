#include "scmx/explorer.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scmx/util.hpp"

namespace scmx {

WorkloadSpec workload_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("workload: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
        throw ConfigError("workload: missing string key 'name'");
    WorkloadSpec w;
    w.name = j["name"].get<std::string>();
    w.spec = trace_spec_from_json(json_text);
    return w;
}

std::string workload_to_json(const WorkloadSpec& w) {
    nlohmann::json j = nlohmann::json::parse(trace_spec_to_json(w.spec));
    j["name"] = w.name;
    return j.dump(2);
}

std::vector<WorkloadSpec> builtin_workloads() {
    std::vector<WorkloadSpec> out;
    auto mk = [&](const char* name, uint64_t pages, double alpha, double rf, double fp,
                  double contig, uint64_t seed) {
        WorkloadSpec w;
        w.name = name;
        w.spec.n_pages = pages;
        w.spec.zipf_alpha = alpha;
        w.spec.read_fraction = rf;
        w.spec.footprint_mean = fp;
        w.spec.burst_contiguity = contig;
        w.spec.n_records = 1000000;
        w.spec.seed = seed;
        out.push_back(w);
    };
    // Distinct (skew, density, read mix) corners; page counts keep a 3% cache
    // meaningful at 1e6 records.
    mk("hot_sparse", 4096, 1.10, 0.75, 16, 0.7, 101);
    mk("hot_dense", 8192, 0.80, 0.70, 48, 0.95, 102);
    mk("scan_read", 16384, 0.60, 0.90, 32, 0.9, 103);
    mk("write_churn", 8192, 0.90, 0.45, 24, 0.8, 104);
    mk("mixed_uniform", 2048, 0.50, 0.85, 32, 0.85, 105);
    return out;
}

namespace {

DeviceGeometry dram_geometry() {
    DeviceGeometry g;
    g.ranks = 2;
    g.banks_per_rank = 8;
    g.row_buffer_bytes = 8192;  // planar page
    g.queue_depth = 64;
    return g;
}

DeviceGeometry scm_geometry(uint64_t row_buffer) {
    DeviceGeometry g;
    g.ranks = 2;
    g.banks_per_rank = 8;
    g.row_buffer_bytes = row_buffer;
    g.queue_depth = 64;
    return g;
}

HierarchyConfig baseline_config(const Trace& t, double cache_fraction, double compute_ns) {
    HierarchyConfig cfg;
    cfg.cache.block_bytes = 1024;
    cfg.cache.ways = 4;
    cfg.cache.capacity_bytes = round_capacity_to_sets(
        cache_fraction * static_cast<double>(t.footprint_bytes()), cfg.cache.block_bytes,
        cfg.cache.ways);
    cfg.geometry = dram_geometry();
    cfg.timing = TimingParams::ddr4_2666();
    cfg.compute_ns_per_access = compute_ns;
    return cfg;
}

HierarchyConfig point_config(const Trace& t, const DesignPoint& p, double cache_fraction,
                             double compute_ns) {
    HierarchyConfig cfg;
    cfg.cache.block_bytes = p.row_buffer_bytes;  // cache pages match device rows
    cfg.cache.ways = 4;
    cfg.cache.capacity_bytes = round_capacity_to_sets(
        cache_fraction * static_cast<double>(t.footprint_bytes()), cfg.cache.block_bytes,
        cfg.cache.ways);
    cfg.geometry = scm_geometry(p.row_buffer_bytes);
    cfg.timing = TimingParams::scm(p.t_read_ns, p.t_write_ns);
    cfg.compute_ns_per_access = compute_ns;
    return cfg;
}

void validate_point(const DesignPoint& p) {
    if (p.t_read_ns < 14)
        throw ConfigError("design point: t_read below the 14ns activation floor");
    if (p.t_write_ns < p.t_read_ns) throw ConfigError("design point: t_write must be >= t_read");
    if (p.row_buffer_bytes < 256 || p.row_buffer_bytes > 8192 ||
        (p.row_buffer_bytes & (p.row_buffer_bytes - 1)) != 0)
        throw ConfigError("design point: row buffer must be a power of two in [256, 8192]");
}

// Mean loaded latency of the raw 64B access stream on an uncached device;
// the reference for absolute perf columns.
double uncached_amat(const Trace& t, const DeviceGeometry& geom, const TimingParams& tp,
                     double compute_ns) {
    std::vector<DeviceRequest> reqs;
    reqs.reserve(t.records.size());
    const bool timed = t.has_arrival_times();
    uint64_t max_addr = 0;
    for (const auto& r : t.records) {
        DeviceRequest q;
        q.kind = r.op;
        q.address = r.address;
        q.size_bytes = 64;
        q.arrival_ns =
            timed ? *r.arrival_offset_ns : static_cast<double>(r.seq) * compute_ns;
        q.id = r.seq;
        reqs.push_back(q);
        max_addr = std::max(max_addr, r.address);
    }
    DeviceGeometry g = geom;
    uint64_t needed = max_addr + 64;
    if (g.capacity_bytes < needed)
        g.capacity_bytes =
            (needed + g.row_buffer_bytes - 1) / g.row_buffer_bytes * g.row_buffer_bytes;
    std::vector<double> completions;
    DeviceStats st = simulate_device(reqs, g, tp, &completions);
    // Reads are what the core waits on; writes retire through the buffer but
    // still contend. All-request fallback for write-only streams.
    double acc = 0.0;
    uint64_t n = 0;
    for (size_t i = 0; i < reqs.size(); i++) {
        if (reqs[i].kind == Op::Read) {
            acc += completions[i] - reqs[i].arrival_ns;
            n++;
        }
    }
    if (n == 0) {
        for (size_t i = 0; i < reqs.size(); i++) acc += completions[i] - reqs[i].arrival_ns;
        n = reqs.size();
    }
    return n ? acc / static_cast<double>(n) : 0.0;
}

void run_parallel(size_t n_tasks, unsigned jobs, const std::function<void(size_t)>& fn) {
    if (jobs <= 1 || n_tasks <= 1) {
        for (size_t i = 0; i < n_tasks; i++) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    unsigned n_threads = std::min<size_t>(jobs, n_tasks);
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; t++) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n_tasks) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SweepReport sweep(const std::vector<WorkloadSpec>& workloads, const SweepConfig& cfg) {
    if (workloads.empty()) throw ConfigError("sweep: at least one workload required");
    if (cfg.target_margin < 0 || cfg.target_margin >= 1)
        throw ConfigError("sweep: target_margin outside [0, 1)");
    if (cfg.cache_fraction <= 0 || cfg.cache_fraction > 0.2)
        throw ConfigError("sweep: cache_fraction outside (0, 0.2]");

    SweepReport report;
    report.target_margin = cfg.target_margin;

    std::vector<Trace> traces;
    traces.reserve(workloads.size());
    for (const auto& w : workloads) {
        report.workload_names.push_back(w.name);
        SyntheticTraceSpec s = w.spec;
        if (cfg.n_records_override) s.n_records = *cfg.n_records_override;
        traces.push_back(generate_trace(s));
    }

    report.baseline_amat_ns.resize(workloads.size());
    run_parallel(workloads.size(), cfg.jobs, [&](size_t w) {
        auto base = simulate_hierarchy(traces[w],
                                       baseline_config(traces[w], cfg.cache_fraction, cfg.compute_ns));
        report.baseline_amat_ns[w] = base.end_to_end_amat_ns;
        log_info("baseline " + workloads[w].name + ": e2e_amat=" +
                 std::to_string(base.end_to_end_amat_ns) + "ns, miss_ratio=" +
                 std::to_string(base.cache.miss_ratio()));
    });

    std::vector<DesignPoint> grid;
    for (uint64_t rb : cfg.row_buffers)
        for (double tr : cfg.t_reads)
            for (double tw : cfg.t_writes) {
                if (tw < tr) continue;  // invalid corner of the grid
                DesignPoint p{rb, tr, tw};
                validate_point(p);
                grid.push_back(p);
            }

    report.points.resize(grid.size());
    run_parallel(grid.size(), cfg.jobs, [&](size_t i) {
        PointResult res;
        res.point = grid[i];
        res.proxies.resize(workloads.size());
        double min_proxy = 1e300;
        for (size_t w = 0; w < workloads.size(); w++) {
            auto st = simulate_hierarchy(
                traces[w], point_config(traces[w], grid[i], cfg.cache_fraction, cfg.compute_ns));
            double proxy =
                perf_proxy(report.baseline_amat_ns[w], st.end_to_end_amat_ns, cfg.compute_ns);
            res.proxies[w] = proxy;
            min_proxy = std::min(min_proxy, proxy);
        }
        res.min_proxy = min_proxy;
        res.feasible = min_proxy >= 1.0 - cfg.target_margin;
        report.points[i] = std::move(res);
    });
    return report;
}

std::vector<FrontierRow> frontier(const SweepReport& report) {
    std::map<std::pair<uint64_t, double>, double> best;
    for (const auto& p : report.points) {
        if (!p.feasible) continue;
        auto key = std::make_pair(p.point.row_buffer_bytes, p.point.t_read_ns);
        auto it = best.find(key);
        if (it == best.end() || p.point.t_write_ns > it->second) best[key] = p.point.t_write_ns;
    }
    std::vector<FrontierRow> rows;
    rows.reserve(best.size());
    for (const auto& [key, tw] : best) rows.push_back({key.first, key.second, tw});
    return rows;
}

std::vector<DominanceViolation> dominance_violations(const SweepReport& report) {
    std::vector<DominanceViolation> out;
    const auto& pts = report.points;
    for (size_t a = 0; a < pts.size(); a++) {
        if (pts[a].feasible) continue;
        for (size_t b = 0; b < pts.size(); b++) {
            if (!pts[b].feasible) continue;
            if (pts[a].point.row_buffer_bytes != pts[b].point.row_buffer_bytes) continue;
            if (pts[a].point.t_read_ns <= pts[b].point.t_read_ns &&
                pts[a].point.t_write_ns <= pts[b].point.t_write_ns)
                out.push_back({pts[b].point, pts[a].point});
        }
    }
    return out;
}

std::vector<CaseStudyRow> pcm_case_study(const std::vector<WorkloadSpec>& workloads,
                                         const CostTable& table, double target_margin,
                                         double compute_ns, unsigned jobs,
                                         const std::map<std::string, double>* perf_override,
                                         std::optional<uint64_t> n_records_override) {
    struct NamedConfig {
        std::string name;
        std::string main_tech;
        DesignPoint point;
        double fraction;
        bool scm;
    };
    const double f32 = 1.0 / 32, f16 = 1.0 / 16, f8 = 1.0 / 8;
    std::vector<NamedConfig> configs = {
        {"dram_baseline", "planar_dram", {}, 0.0, false},
        {"dram_cached", "planar_dram", {}, f32, false},
        {"slc", "slc", {1024, 60, 150}, f32, true},
        {"mlc_lat", "mlc", {512, 120, 550}, f32, true},
        {"mlc_bw", "mlc", {1024, 120, 1000}, f32, true},
        {"tlc_3pct", "tlc", {512, 250, 2350}, f32, true},
        {"tlc_6pct", "tlc", {512, 250, 2350}, f16, true},
        {"tlc_12pct", "tlc", {512, 250, 2350}, f8, true},
    };

    const bool simulate = !workloads.empty();
    std::vector<Trace> traces;
    std::vector<double> uncached_ref;          // per workload, planar DRAM, no cache
    std::map<double, std::vector<double>> cached_base;  // fraction -> per-workload e2e
    if (simulate) {
        for (const auto& w : workloads) {
            SyntheticTraceSpec s = w.spec;
            if (n_records_override) s.n_records = *n_records_override;
            traces.push_back(generate_trace(s));
        }
        uncached_ref.resize(traces.size());
        run_parallel(traces.size(), jobs, [&](size_t w) {
            uncached_ref[w] =
                uncached_amat(traces[w], dram_geometry(), TimingParams::ddr4_2666(), compute_ns);
        });
        for (double f : {f32, f16, f8}) cached_base[f].resize(traces.size());
        for (auto& [f, vec] : cached_base) {
            auto& v = vec;
            double frac = f;
            run_parallel(traces.size(), jobs, [&, frac](size_t w) {
                v[w] = simulate_hierarchy(traces[w],
                                          baseline_config(traces[w], frac, compute_ns))
                           .end_to_end_amat_ns;
            });
        }
    }

    std::vector<CaseStudyRow> rows(configs.size());
    run_parallel(configs.size(), simulate ? jobs : 1, [&](size_t c) {
        const auto& nc = configs[c];
        CaseStudyRow row;
        row.name = nc.name;
        row.main_tech = nc.main_tech;
        row.point = nc.point;
        row.cache_fraction = nc.fraction;
        CostSpec cs{nc.main_tech, "stacked_dram", nc.fraction};
        row.cache_cost = nc.fraction * table.at("stacked_dram");
        row.cost = hierarchy_cost(cs, table);
        row.perf = 1.0;

        if (simulate) {
            row.simulated = true;
            double log_acc = 0.0;
            double min_proxy = 1e300;
            for (size_t w = 0; w < traces.size(); w++) {
                double e2e;
                if (!nc.scm) {
                    e2e = nc.fraction == 0.0
                              ? uncached_ref[w]
                              : simulate_hierarchy(traces[w], baseline_config(traces[w],
                                                                              nc.fraction,
                                                                              compute_ns))
                                    .end_to_end_amat_ns;
                } else {
                    e2e = simulate_hierarchy(
                              traces[w],
                              point_config(traces[w], nc.point, nc.fraction, compute_ns))
                              .end_to_end_amat_ns;
                }
                // perf vs the uncached planar reference
                log_acc += std::log(perf_proxy(uncached_ref[w], e2e, compute_ns));
                // feasibility vs the cached DRAM baseline at the same fraction
                double base = nc.fraction == 0.0 ? uncached_ref[w]
                                                 : cached_base.at(nc.fraction)[w];
                min_proxy = std::min(min_proxy, perf_proxy(base, e2e, compute_ns));
            }
            row.perf = std::exp(log_acc / static_cast<double>(traces.size()));
            row.min_proxy = min_proxy;
            row.feasible = min_proxy >= 1.0 - target_margin;
        }
        if (perf_override) {
            auto it = perf_override->find(nc.name);
            if (it != perf_override->end()) row.perf = it->second;
        }
        if (nc.name == "dram_baseline") row.perf = 1.0;
        row.perf_per_cost = perf_per_cost(row.perf, row.cost);
        rows[c] = std::move(row);
    });
    return rows;
}

namespace {
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}
}  // namespace

std::string sweep_report_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "row_buffer,t_read_ns,t_write_ns";
    for (const auto& n : report.workload_names) os << ",proxy_" << n;
    os << ",min_proxy,feasible\n";
    for (const auto& p : report.points) {
        os << p.point.row_buffer_bytes << ',' << fmt(p.point.t_read_ns) << ','
           << fmt(p.point.t_write_ns);
        for (double v : p.proxies) os << ',' << fmt(v);
        os << ',' << fmt(p.min_proxy) << ',' << (p.feasible ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string frontier_csv(const std::vector<FrontierRow>& rows) {
    std::ostringstream os;
    os << "row_buffer,t_read_ns,max_t_write_ns\n";
    for (const auto& r : rows)
        os << r.row_buffer_bytes << ',' << fmt(r.t_read_ns) << ',' << fmt(r.max_t_write_ns)
           << '\n';
    return os.str();
}

std::string case_study_csv(const std::vector<CaseStudyRow>& rows) {
    std::ostringstream os;
    os << "name,main_tech,row_buffer,t_read_ns,t_write_ns,cache_fraction,perf,cache_cost,cost,"
          "perf_per_cost,min_proxy,feasible\n";
    for (const auto& r : rows) {
        os << r.name << ',' << r.main_tech << ',';
        if (r.main_tech == "planar_dram")
            os << ",,";
        else
            os << r.point.row_buffer_bytes << ',' << fmt(r.point.t_read_ns) << ','
               << fmt(r.point.t_write_ns);
        os << ',' << fmt(r.cache_fraction) << ',' << fmt(r.perf) << ',' << fmt(r.cache_cost)
           << ',' << fmt(r.cost) << ',' << fmt(r.perf_per_cost) << ','
           << (r.simulated ? fmt(r.min_proxy) : "") << ','
           << (r.simulated ? (r.feasible ? "1" : "0") : "") << '\n';
    }
    return os.str();
}

}  // namespace scmx
