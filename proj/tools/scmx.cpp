#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scmx/amat.hpp"
#include "scmx/cache.hpp"
#include "scmx/cost.hpp"
#include "scmx/explorer.hpp"
#include "scmx/hierarchy.hpp"
#include "scmx/locality.hpp"
#include "scmx/memdev.hpp"
#include "scmx/trace.hpp"
#include "scmx/util.hpp"
#include "scmx/zipf.hpp"

namespace {

using scmx::ConfigError;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed on '" + path + "'");
}

// Our CSV fields never contain commas or quotes, so a line split suffices.
std::string csv_to_json(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) return "[]\n";
    std::vector<std::string> cols;
    {
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) cols.push_back(f);
    }
    nlohmann::json arr = nlohmann::json::array();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json obj;
        std::istringstream ls(line);
        std::string f;
        size_t i = 0;
        while (i < cols.size()) {
            if (!std::getline(ls, f, ',')) f.clear();
            if (f.empty()) {
                obj[cols[i]] = nullptr;
            } else {
                try {
                    size_t used = 0;
                    double v = std::stod(f, &used);
                    obj[cols[i]] = used == f.size() ? nlohmann::json(v) : nlohmann::json(f);
                } catch (...) {
                    obj[cols[i]] = f;
                }
            }
            i++;
        }
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

void emit(const std::string& csv, const std::string& out_path, const std::string& json_path) {
    write_output(csv, out_path);
    if (!json_path.empty()) write_output(csv_to_json(csv), json_path);
}

std::vector<uint64_t> parse_size_list(const std::string& s) {
    std::vector<uint64_t> out;
    auto range = s.find("..");
    if (range != std::string::npos) {
        uint64_t lo = std::stoull(s.substr(0, range));
        uint64_t hi = std::stoull(s.substr(range + 2));
        if (lo == 0 || hi < lo) throw ConfigError("sizes: bad range '" + s + "'");
        for (uint64_t v = lo; v <= hi; v *= 2) out.push_back(v);
        return out;
    }
    std::istringstream in(s);
    std::string f;
    while (std::getline(in, f, ',')) {
        if (!f.empty()) out.push_back(std::stoull(f));
    }
    if (out.empty()) throw ConfigError("sizes: empty list '" + s + "'");
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream in(s);
    std::string f;
    while (std::getline(in, f, ',')) {
        if (!f.empty()) out.push_back(std::stod(f));
    }
    if (out.empty()) throw ConfigError("empty numeric list '" + s + "'");
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<scmx::WorkloadSpec> load_workloads(const std::string& where) {
    if (where == "builtin") return scmx::builtin_workloads();
    namespace fs = std::filesystem;
    std::vector<scmx::WorkloadSpec> out;
    if (fs::is_directory(where)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(where))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) out.push_back(scmx::workload_from_json(slurp(p.string())));
    } else if (fs::exists(where)) {
        out.push_back(scmx::workload_from_json(slurp(where)));
    } else {
        throw ConfigError("workloads: '" + where + "' is neither 'builtin', a directory, nor a file");
    }
    if (out.empty()) throw ConfigError("workloads: no *.json specs found under '" + where + "'");
    return out;
}

struct GenTraceArgs {
    std::string spec_path, out_path, format = "text";
    scmx::SyntheticTraceSpec spec;
    bool has_inter = false;
    double inter = 0;
};

void add_gen_trace(CLI::App& app) {
    auto a = std::make_shared<GenTraceArgs>();
    auto* sub = app.add_subcommand("gen-trace", "Generate a synthetic access trace");
    sub->add_option("--spec", a->spec_path, "Trace spec JSON (flags override fields)");
    auto* pages = sub->add_option("--pages", a->spec.n_pages, "Distinct 4KB pages");
    auto* alpha = sub->add_option("--alpha", a->spec.zipf_alpha, "Zipf skew (0 = uniform)");
    auto* rf = sub->add_option("--read-fraction", a->spec.read_fraction, "Fraction of reads");
    auto* fp = sub->add_option("--footprint-mean", a->spec.footprint_mean,
                               "Mean distinct 64B sub-blocks per page visit [1,64]");
    auto* bc = sub->add_option("--contiguity", a->spec.burst_contiguity,
                               "P(next touch adjacent) [0,1]");
    auto* nr = sub->add_option("--records", a->spec.n_records, "Record count");
    auto* sd = sub->add_option("--seed", a->spec.seed, "RNG seed");
    auto* ia = sub->add_option("--inter-arrival", a->inter, "Mean arrival spacing in ns");
    sub->add_option("--format", a->format, "text|binary")
        ->check(CLI::IsMember({"text", "binary"}));
    sub->add_option("--out", a->out_path, "Output path")->required();
    sub->callback([a, pages, alpha, rf, fp, bc, nr, sd, ia] {
        scmx::SyntheticTraceSpec spec;
        if (!a->spec_path.empty()) spec = scmx::trace_spec_from_json(slurp(a->spec_path));
        if (*pages) spec.n_pages = a->spec.n_pages;
        if (*alpha) spec.zipf_alpha = a->spec.zipf_alpha;
        if (*rf) spec.read_fraction = a->spec.read_fraction;
        if (*fp) spec.footprint_mean = a->spec.footprint_mean;
        if (*bc) spec.burst_contiguity = a->spec.burst_contiguity;
        if (*nr) spec.n_records = a->spec.n_records;
        if (*sd) spec.seed = a->spec.seed;
        if (*ia) spec.inter_arrival_ns = a->inter;
        auto t = scmx::generate_trace(spec);
        if (a->format == "binary")
            scmx::write_trace_binary(t, a->out_path);
        else
            scmx::write_trace_text(t, a->out_path);
        scmx::log_info("wrote " + std::to_string(t.records.size()) + " records, footprint " +
                       std::to_string(t.footprint_pages()) + " pages -> " + a->out_path);
    });
}

struct MissCurveArgs {
    std::string trace_path, out_path, json_path;
    std::string blocks = "64";
    std::string capacities, fractions;
};

void add_miss_curve(CLI::App& app) {
    auto a = std::make_shared<MissCurveArgs>();
    auto* sub = app.add_subcommand("miss-curve", "LRU miss-ratio curve via stack distances");
    sub->add_option("--trace", a->trace_path, "Trace file (text or binary)")->required();
    sub->add_option("--block", a->blocks, "Block sizes, e.g. 64,1024 or 64..4096");
    sub->add_option("--capacities", a->capacities, "Capacities in bytes (comma list)");
    sub->add_option("--fractions", a->fractions, "Capacity fractions of the footprint");
    sub->add_option("--out", a->out_path, "CSV output (default stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a] {
        auto t = scmx::read_trace(a->trace_path);
        std::ostringstream os;
        os << "block_bytes,capacity_bytes,capacity_fraction,miss_ratio\n";
        for (uint64_t block : parse_size_list(a->blocks)) {
            std::vector<uint64_t> caps;
            if (!a->capacities.empty()) {
                caps = parse_size_list(a->capacities);
            } else if (!a->fractions.empty()) {
                uint64_t fpb = t.footprint_bytes();
                for (double f : parse_double_list(a->fractions))
                    caps.push_back(std::max<uint64_t>(
                        block, static_cast<uint64_t>(std::llround(f * static_cast<double>(fpb)))));
            }
            auto curve = scmx::miss_ratio_curve(t, block, caps);
            for (const auto& p : curve.points)
                os << block << ',' << p.capacity_bytes << ',' << fmt(p.capacity_fraction) << ','
                   << fmt(p.miss_ratio) << '\n';
        }
        emit(os.str(), a->out_path, a->json_path);
    });
}

struct DensityArgs {
    std::string trace_path, out_path, json_path;
    std::string fraction = "1/32";
    std::string regions = "256,512,1024,2048,4096";
};

void add_density(CLI::App& app) {
    auto a = std::make_shared<DensityArgs>();
    auto* sub = app.add_subcommand("density", "Eviction-density profile per region size");
    sub->add_option("--trace", a->trace_path, "Trace file")->required();
    sub->add_option("--cache-fraction", a->fraction, "Cache budget as footprint fraction");
    sub->add_option("--regions", a->regions, "Region sizes (256..4096)");
    sub->add_option("--out", a->out_path, "CSV output (default stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a] {
        auto t = scmx::read_trace(a->trace_path);
        auto prof = scmx::region_density_profile(t, scmx::parse_fraction(a->fraction),
                                                 parse_size_list(a->regions));
        std::ostringstream os;
        os << "region_bytes,mean_density,samples\n";
        for (const auto& p : prof)
            os << p.region_bytes << ',' << fmt(p.mean_density) << ',' << p.samples << '\n';
        emit(os.str(), a->out_path, a->json_path);
    });
}

struct AmatArgs {
    std::string t_act = "14,60", sizes = "64..65536", out_path, json_path;
    double t_wr = 0.0, burst = 3.0;
};

void add_amat(CLI::App& app) {
    auto a = std::make_shared<AmatArgs>();
    auto* sub = app.add_subcommand("amat", "Closed-form activation-amortization curve");
    sub->add_option("--t-act", a->t_act, "Activation latencies in ns (comma list)");
    sub->add_option("--t-wr", a->t_wr, "Write restoration charged per transfer");
    sub->add_option("--burst", a->burst, "64B burst time in ns");
    sub->add_option("--sizes", a->sizes, "Transfer sizes, e.g. 64..8192 (power-of-two sweep)");
    sub->add_option("--out", a->out_path, "CSV output (default stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a] {
        std::ostringstream os;
        os << "t_act,transfer_bytes,amat_ns\n";
        for (double t_act : parse_double_list(a->t_act)) {
            for (uint64_t size : parse_size_list(a->sizes)) {
                scmx::AmatQuery q{t_act, a->t_wr, a->burst, size};
                os << fmt(t_act) << ',' << size << ',' << fmt(scmx::amat_unloaded(q)) << '\n';
            }
        }
        emit(os.str(), a->out_path, a->json_path);
    });
}

struct SimulateArgs {
    std::string trace_path, spec_path, device_path, backside_path, out_path, json_path;
    std::string fraction = "1/32";
    uint64_t capacity = 0;
    uint64_t block = 1024;
    uint32_t ways = 4;
    double tag_ns = 20.0, hit_ns = 10.0, compute = 50.0;
    uint64_t seed = 0;
};

void add_simulate(CLI::App& app) {
    auto a = std::make_shared<SimulateArgs>();
    auto* sub = app.add_subcommand("simulate", "Cache simulation, optionally with a backing device");
    auto* tr = sub->add_option("--trace", a->trace_path, "Trace file");
    auto* sp = sub->add_option("--spec", a->spec_path, "Generate the trace from a spec JSON");
    tr->excludes(sp);
    auto* cap = sub->add_option("--cache-capacity", a->capacity, "Cache capacity in bytes");
    sub->add_option("--cache-fraction", a->fraction, "Capacity as a footprint fraction");
    sub->add_option("--block", a->block, "Cache block (page) size");
    sub->add_option("--ways", a->ways, "Associativity");
    sub->add_option("--tag-ns", a->tag_ns, "Tag lookup latency");
    sub->add_option("--device", a->device_path, "Device description JSON enables the full hierarchy");
    sub->add_option("--hit-ns", a->hit_ns, "Cache hit service beyond tags");
    sub->add_option("--compute", a->compute, "Compute interval per access");
    sub->add_option("--backside", a->backside_path, "Dump fill/writeback stream to this path");
    auto* sd = sub->add_option("--seed", a->seed, "Override the spec seed");
    sub->add_option("--out", a->out_path, "CSV output (default stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a, tr, sp, cap, sd] {
        scmx::Trace t;
        if (*tr) {
            t = scmx::read_trace(a->trace_path);
        } else if (*sp) {
            auto spec = scmx::trace_spec_from_json(slurp(a->spec_path));
            if (*sd) spec.seed = a->seed;
            t = scmx::generate_trace(spec);
        } else {
            throw ConfigError("simulate: need --trace or --spec");
        }
        scmx::CacheConfig cache;
        cache.block_bytes = a->block;
        cache.ways = a->ways;
        cache.tag_lookup_ns = a->tag_ns;
        cache.capacity_bytes =
            *cap ? a->capacity
                 : scmx::round_capacity_to_sets(
                       scmx::parse_fraction(a->fraction) * static_cast<double>(t.footprint_bytes()),
                       cache.block_bytes, cache.ways);

        std::ostringstream os;
        if (a->device_path.empty()) {
            auto res = scmx::simulate_cache(t, cache);
            if (!a->backside_path.empty())
                scmx::write_backside_text(res.events, a->backside_path);
            os << "capacity,block,ways,accesses,hits,misses,writebacks,mean_density\n";
            os << cache.capacity_bytes << ',' << cache.block_bytes << ',' << cache.ways << ','
               << res.stats.accesses << ',' << res.stats.hits << ',' << res.stats.misses << ','
               << res.stats.writebacks << ',' << fmt(res.stats.mean_density()) << '\n';
        } else {
            scmx::HierarchyConfig cfg;
            cfg.cache = cache;
            scmx::device_from_json(slurp(a->device_path), cfg.geometry, cfg.timing);
            cfg.hit_service_ns = a->hit_ns;
            cfg.compute_ns_per_access = a->compute;
            auto st = scmx::simulate_hierarchy(t, cfg);
            if (!a->backside_path.empty()) {
                auto res = scmx::simulate_cache(t, cfg.cache);
                scmx::write_backside_text(res.events, a->backside_path);
            }
            os << "capacity,block,ways,accesses,hits,misses,writebacks,mean_density,"
                  "miss_ratio,mean_fill_ns,e2e_amat_ns,loaded_amat_ns,row_hit_ratio,"
                  "mean_bytes_per_activation\n";
            os << cache.capacity_bytes << ',' << cache.block_bytes << ',' << cache.ways << ','
               << st.cache.accesses << ',' << st.cache.hits << ',' << st.cache.misses << ','
               << st.cache.writebacks << ',' << fmt(st.cache.mean_density()) << ','
               << fmt(st.cache.miss_ratio()) << ',' << fmt(st.mean_fill_latency_ns) << ','
               << fmt(st.end_to_end_amat_ns) << ',' << fmt(st.device.loaded_amat_ns) << ','
               << fmt(st.device.row_hit_ratio) << ',' << fmt(st.device.mean_bytes_per_activation)
               << '\n';
        }
        emit(os.str(), a->out_path, a->json_path);
    });
}

struct ExploreArgs {
    std::string workloads = "builtin", out_path, frontier_path, json_path;
    std::string fraction = "1/32";
    std::string rbs, treads, twrites;
    double margin = 0.10, compute = 50.0;
    uint64_t records = 0, seed = 0;
    unsigned jobs = std::thread::hardware_concurrency();
};

void add_explore(CLI::App& app) {
    auto a = std::make_shared<ExploreArgs>();
    auto* sub = app.add_subcommand("explore", "Feasibility sweep over (row buffer, t_read, t_write)");
    sub->add_option("--workloads", a->workloads, "'builtin', a spec dir, or one spec JSON");
    sub->add_option("--records", a->records, "Override n_records per workload");
    sub->add_option("--fraction", a->fraction, "Cache fraction of each footprint");
    sub->add_option("--margin", a->margin, "Feasibility margin (proxy >= 1 - margin)");
    sub->add_option("--compute", a->compute, "Compute interval per access");
    sub->add_option("--jobs", a->jobs, "Worker threads");
    sub->add_option("--rb", a->rbs, "Row buffer grid, e.g. 512,1024,2048,4096");
    sub->add_option("--t-read", a->treads, "t_read grid in ns");
    sub->add_option("--t-write", a->twrites, "t_write grid in ns");
    auto* sd = sub->add_option("--seed", a->seed, "XORed into each workload seed");
    sub->add_option("--out", a->out_path, "Report CSV (default stdout)");
    sub->add_option("--frontier", a->frontier_path, "Also write the frontier CSV here");
    sub->add_option("--json", a->json_path, "Mirror the report as JSON");
    sub->callback([a, sd] {
        auto workloads = load_workloads(a->workloads);
        if (*sd)
            for (auto& w : workloads) w.spec.seed ^= a->seed;
        scmx::SweepConfig cfg;
        cfg.cache_fraction = scmx::parse_fraction(a->fraction);
        cfg.target_margin = a->margin;
        cfg.compute_ns = a->compute;
        cfg.jobs = a->jobs ? a->jobs : 1;
        if (a->records) cfg.n_records_override = a->records;
        if (!a->rbs.empty()) cfg.row_buffers = parse_size_list(a->rbs);
        if (!a->treads.empty()) cfg.t_reads = parse_double_list(a->treads);
        if (!a->twrites.empty()) cfg.t_writes = parse_double_list(a->twrites);
        auto report = scmx::sweep(workloads, cfg);
        emit(scmx::sweep_report_csv(report), a->out_path, a->json_path);
        if (!a->frontier_path.empty())
            write_output(scmx::frontier_csv(scmx::frontier(report)), a->frontier_path);
    });
}

struct CostArgs {
    std::string table = "default", spec, main_tech, cache_tech = "stacked_dram";
    std::string fraction = "0";
    std::string out_path, json_path;
};

void add_cost(CLI::App& app) {
    auto a = std::make_shared<CostArgs>();
    auto* sub = app.add_subcommand("cost", "Hierarchy cost arithmetic");
    sub->add_option("--table", a->table, "'default' or a JSON cost table");
    sub->add_option("--spec", a->spec, "Shorthand main[:fraction[:cache_tech]], e.g. mlc:1/32");
    sub->add_option("--main", a->main_tech, "Main memory technology");
    sub->add_option("--cache-tech", a->cache_tech, "Cache technology");
    sub->add_option("--fraction", a->fraction, "Cache fraction of main capacity");
    sub->add_option("--out", a->out_path, "CSV output (default: bare cost on stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a] {
        scmx::CostTable table = a->table == "default"
                                    ? scmx::CostTable::defaults()
                                    : scmx::cost_table_from_json(slurp(a->table));
        scmx::CostSpec cs;
        cs.cache_tech = a->cache_tech;
        if (!a->spec.empty()) {
            std::istringstream in(a->spec);
            std::string part;
            std::vector<std::string> parts;
            while (std::getline(in, part, ':')) parts.push_back(part);
            if (parts.empty() || parts.size() > 3)
                throw ConfigError("cost: --spec wants main[:fraction[:cache_tech]]");
            cs.main_tech = parts[0];
            if (parts.size() > 1) cs.cache_fraction = scmx::parse_fraction(parts[1]);
            if (parts.size() > 2) cs.cache_tech = parts[2];
        } else if (!a->main_tech.empty()) {
            cs.main_tech = a->main_tech;
            cs.cache_fraction = scmx::parse_fraction(a->fraction);
        } else {
            throw ConfigError("cost: need --spec or --main");
        }
        double cost = scmx::hierarchy_cost(cs, table);
        if (a->out_path.empty() && a->json_path.empty()) {
            std::printf("%.2f\n", cost);
            return;
        }
        std::ostringstream os;
        os << "main_tech,cache_tech,cache_fraction,cache_cost,cost\n";
        os << cs.main_tech << ',' << cs.cache_tech << ',' << fmt(cs.cache_fraction) << ','
           << fmt(cs.cache_fraction * table.at(cs.cache_tech)) << ',' << fmt(cost) << '\n';
        emit(os.str(), a->out_path, a->json_path);
    });
}

struct ZipfArgs {
    double alpha = 0.9, coverage = 0.7;
    std::string n = "50000000";
    std::string out_path, json_path;
};

void add_zipf(CLI::App& app) {
    auto a = std::make_shared<ZipfArgs>();
    auto* sub = app.add_subcommand("zipf", "Hot-set fraction for a Zipf popularity law");
    sub->add_option("--alpha", a->alpha, "Zipf exponent");
    sub->add_option("--n", a->n, "Item counts (accepts 5e7,5e9)");
    sub->add_option("--coverage", a->coverage, "Target access coverage in (0,1)");
    sub->add_option("--out", a->out_path, "CSV output (default stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a] {
        std::ostringstream os;
        os << "alpha,n_items,coverage,hot_fraction\n";
        for (double nd : parse_double_list(a->n)) {
            if (nd < 1 || nd > 2e10) throw ConfigError("zipf: n out of range");
            scmx::HotFractionQuery q{a->alpha, static_cast<uint64_t>(nd), a->coverage};
            auto r = scmx::hot_fraction(q);
            os << fmt(a->alpha) << ',' << q.n_items << ',' << fmt(a->coverage) << ','
               << fmt(r.hot_fraction) << '\n';
        }
        emit(os.str(), a->out_path, a->json_path);
    });
}

struct PcmStudyArgs {
    std::string workloads = "builtin", table = "default", out_path, json_path;
    std::vector<std::string> perf;
    double margin = 0.10, compute = 50.0;
    uint64_t records = 0;
    unsigned jobs = std::thread::hardware_concurrency();
};

void add_pcm_study(CLI::App& app) {
    auto a = std::make_shared<PcmStudyArgs>();
    auto* sub = app.add_subcommand("pcm-study", "Named SLC/MLC/TLC configurations with cost");
    sub->add_option("--workloads", a->workloads, "'builtin', 'none', a spec dir, or one spec JSON");
    sub->add_option("--records", a->records, "Override n_records per workload");
    sub->add_option("--cost-table", a->table, "'default' or a JSON cost table");
    sub->add_option("--margin", a->margin, "Feasibility margin");
    sub->add_option("--compute", a->compute, "Compute interval per access");
    sub->add_option("--jobs", a->jobs, "Worker threads");
    sub->add_option("--perf", a->perf, "Override perf column, name=value (repeatable)");
    sub->add_option("--out", a->out_path, "CSV output (default stdout)");
    sub->add_option("--json", a->json_path, "Mirror output as JSON");
    sub->callback([a] {
        scmx::CostTable table = a->table == "default"
                                    ? scmx::CostTable::defaults()
                                    : scmx::cost_table_from_json(slurp(a->table));
        std::vector<scmx::WorkloadSpec> workloads;
        if (a->workloads != "none") workloads = load_workloads(a->workloads);
        std::map<std::string, double> overrides;
        for (const auto& kv : a->perf) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("pcm-study: --perf wants name=value, got '" + kv + "'");
            overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        std::optional<uint64_t> rec;
        if (a->records) rec = a->records;
        auto rows = scmx::pcm_case_study(workloads, table, a->margin, a->compute,
                                         a->jobs ? a->jobs : 1,
                                         overrides.empty() ? nullptr : &overrides, rec);
        emit(scmx::case_study_csv(rows), a->out_path, a->json_path);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scmx: storage-class-memory hierarchy explorer"};
    app.require_subcommand(1);
    add_gen_trace(app);
    add_miss_curve(app);
    add_density(app);
    add_amat(app);
    add_simulate(app);
    add_explore(app);
    add_cost(app);
    add_zipf(app);
    add_pcm_study(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
