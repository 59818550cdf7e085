#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;

namespace {

py::dict cache_stats_dict(const scmx::CacheStats& s) {
    py::dict d;
    d["accesses"] = s.accesses;
    d["hits"] = s.hits;
    d["misses"] = s.misses;
    d["writebacks"] = s.writebacks;
    d["bytes_read_from_device"] = s.bytes_read_from_device;
    d["bytes_written_to_device"] = s.bytes_written_to_device;
    d["miss_ratio"] = s.miss_ratio();
    d["mean_density"] = s.mean_density();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-tier memory hierarchy simulator core";
    m.attr("__version__") = "1.0.0";

    py::register_exception<scmx::ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def(
        "amat_unloaded",
        [](double t_act_ns, uint64_t transfer_bytes, double t_wr_ns, double burst_ns) {
            scmx::AmatQuery q{t_act_ns, t_wr_ns, burst_ns, transfer_bytes};
            return scmx::amat_unloaded(q);
        },
        py::arg("t_act_ns"), py::arg("transfer_bytes"), py::arg("t_wr_ns") = 0.0,
        py::arg("burst_ns") = 3.0,
        "Per-64B latency of a transfer that pays one activation up front");

    m.def(
        "hot_fraction",
        [](double alpha, uint64_t n_items, double coverage) {
            auto r = scmx::hot_fraction({alpha, n_items, coverage});
            return py::make_tuple(r.k, r.hot_fraction);
        },
        py::arg("alpha"), py::arg("n_items"), py::arg("coverage"),
        "Smallest top-k share of a Zipf(alpha) population covering the target access share");

    m.def(
        "hierarchy_cost",
        [](const std::string& main_tech, double cache_fraction, const std::string& cache_tech) {
            scmx::CostSpec cs;
            cs.main_tech = main_tech;
            cs.cache_tech = cache_tech;
            cs.cache_fraction = cache_fraction;
            return scmx::hierarchy_cost(cs, scmx::CostTable::defaults());
        },
        py::arg("main_tech"), py::arg("cache_fraction") = 0.0,
        py::arg("cache_tech") = "stacked_dram",
        "Relative cost per byte of main memory plus a die-stacked cache slice");

    m.def(
        "generate_trace",
        [](const std::string& spec_json, const std::string& out_path, bool binary) {
            auto t = scmx::generate_trace(scmx::trace_spec_from_json(spec_json));
            if (binary)
                scmx::write_trace_binary(t, out_path);
            else
                scmx::write_trace_text(t, out_path);
            return t.records.size();
        },
        py::arg("spec_json"), py::arg("out_path"), py::arg("binary") = false,
        "Generate a synthetic trace from a JSON spec and write it; returns the record count");

    m.def(
        "trace_footprint",
        [](const std::string& trace_path) {
            auto t = scmx::read_trace(trace_path);
            return py::make_tuple(t.records.size(), t.footprint_bytes());
        },
        py::arg("trace_path"), "Return (records, footprint_bytes) of a trace file");

    m.def(
        "miss_ratio_curve",
        [](const std::string& trace_path, uint64_t block_bytes,
           const std::vector<uint64_t>& capacities) {
            auto curve = scmx::miss_ratio_curve(scmx::read_trace(trace_path), block_bytes,
                                                capacities);
            std::vector<py::tuple> out;
            for (const auto& p : curve.points)
                out.push_back(py::make_tuple(p.capacity_bytes, p.capacity_fraction, p.miss_ratio));
            return out;
        },
        py::arg("trace_path"), py::arg("block_bytes") = 64,
        py::arg("capacities") = std::vector<uint64_t>{},
        "LRU miss ratios [(capacity, fraction, miss_ratio), ...]; empty capacities = default grid");

    m.def(
        "simulate_cache",
        [](const std::string& trace_path, uint64_t capacity_bytes, uint64_t block_bytes,
           uint32_t ways) {
            scmx::CacheConfig cfg;
            cfg.capacity_bytes = capacity_bytes;
            cfg.block_bytes = block_bytes;
            cfg.ways = ways;
            auto res = scmx::simulate_cache(scmx::read_trace(trace_path), cfg);
            return cache_stats_dict(res.stats);
        },
        py::arg("trace_path"), py::arg("capacity_bytes"), py::arg("block_bytes") = 1024,
        py::arg("ways") = 4, "Set-associative write-back page cache statistics");

    m.def(
        "simulate_hierarchy",
        [](const std::string& trace_path, uint64_t capacity_bytes, uint64_t block_bytes,
           const std::string& device_json, uint32_t ways) {
            scmx::HierarchyConfig cfg;
            cfg.cache.capacity_bytes = capacity_bytes;
            cfg.cache.block_bytes = block_bytes;
            cfg.cache.ways = ways;
            scmx::device_from_json(device_json, cfg.geometry, cfg.timing);
            auto st = scmx::simulate_hierarchy(scmx::read_trace(trace_path), cfg);
            py::dict d = cache_stats_dict(st.cache);
            d["mean_fill_latency_ns"] = st.mean_fill_latency_ns;
            d["end_to_end_amat_ns"] = st.end_to_end_amat_ns;
            d["loaded_amat_ns"] = st.device.loaded_amat_ns;
            d["row_hit_ratio"] = st.device.row_hit_ratio;
            d["mean_bytes_per_activation"] = st.device.mean_bytes_per_activation;
            return d;
        },
        py::arg("trace_path"), py::arg("capacity_bytes"), py::arg("block_bytes"),
        py::arg("device_json"), py::arg("ways") = 4,
        "Cache plus event-driven backing device; returns combined statistics");

    m.def(
        "dram_device_json", [] { return scmx::device_to_json(scmx::DeviceGeometry{},
                                                             scmx::TimingParams::ddr4_2666()); },
        "Device JSON for the planar DRAM reference part");

    m.def(
        "scm_device_json",
        [](double t_read_ns, double t_write_ns, uint64_t row_buffer) {
            scmx::DeviceGeometry g;
            g.row_buffer_bytes = row_buffer;
            return scmx::device_to_json(g, scmx::TimingParams::scm(t_read_ns, t_write_ns));
        },
        py::arg("t_read_ns"), py::arg("t_write_ns"), py::arg("row_buffer") = 1024,
        "Device JSON for a storage-class part with the given array timings");

    m.def(
        "parse_fraction", &scmx::parse_fraction, py::arg("text"),
        "Parse '1/32', '3.125%', or '0.03125' into a float");
}
