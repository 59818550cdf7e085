#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scmx/cost.hpp"
#include "scmx/hierarchy.hpp"
#include "scmx/trace.hpp"

namespace scmx {

struct DesignPoint {
    uint64_t row_buffer_bytes = 1024;  // {512, 1024, 2048, 4096}
    double t_read_ns = 60;             // >= 14 (DRAM activation floor)
    double t_write_ns = 150;           // >= t_read_ns
};

struct WorkloadSpec {
    std::string name;
    SyntheticTraceSpec spec;
};

WorkloadSpec workload_from_json(const std::string& json_text);
std::string workload_to_json(const WorkloadSpec& w);

// The five synthetic workloads shipped in workloads/*.json.
std::vector<WorkloadSpec> builtin_workloads();

struct SweepConfig {
    std::vector<uint64_t> row_buffers = {512, 1024, 2048, 4096};
    std::vector<double> t_reads = {60, 125, 250, 500, 1000};
    std::vector<double> t_writes = {150, 250, 500, 1000, 2000, 4000};
    double cache_fraction = 1.0 / 32;
    double target_margin = 0.10;  // feasible iff proxy >= 1 - margin on every workload
    double compute_ns = 50.0;
    unsigned jobs = 1;
    std::optional<uint64_t> n_records_override;  // shrink workloads for quick sweeps
};

struct PointResult {
    DesignPoint point;
    std::vector<double> proxies;  // per workload, report order
    double min_proxy = 0.0;
    bool feasible = false;
};

struct SweepReport {
    std::vector<std::string> workload_names;
    std::vector<double> baseline_amat_ns;  // per workload
    std::vector<PointResult> points;
    double target_margin = 0.10;
};

// Baseline per workload: DRAM backing (8KB planar rows) behind the same-size
// cache with 1KB blocks. Each point uses SCM timing (t_read, t_write), the
// point's row buffer, and a cache block equal to that row buffer. Grid combos
// with t_write < t_read are skipped.
SweepReport sweep(const std::vector<WorkloadSpec>& workloads, const SweepConfig& cfg);

struct FrontierRow {
    uint64_t row_buffer_bytes;
    double t_read_ns;
    double max_t_write_ns;  // largest feasible t_write at this (rb, t_read)
};

// One row per (row_buffer, t_read) that has at least one feasible t_write.
std::vector<FrontierRow> frontier(const SweepReport& report);

// (t_read <= , t_write <=) dominance violations at fixed row buffer; a clean
// report returns an empty list.
struct DominanceViolation {
    DesignPoint feasible_point;
    DesignPoint infeasible_point;  // dominates feasible_point but failed
};
std::vector<DominanceViolation> dominance_violations(const SweepReport& report);

struct CaseStudyRow {
    std::string name;
    std::string main_tech;
    DesignPoint point;          // meaningful when simulated
    double cache_fraction = 0;  // 0 = no cache
    bool simulated = false;
    double min_proxy = 0.0;
    bool feasible = false;
    double perf = 0.0;  // geomean proxy across workloads, or the override
    double cache_cost = 0.0;
    double cost = 0.0;
    double perf_per_cost = 0.0;
};

// Named single-level-cell / multi-level-cell configurations, plus the DRAM
// baseline and a DRAM-backed cached row; the densest technology is repeated
// at cache fractions {1/32, 1/16, 1/8}. perf_override (name -> perf) fills
// the perf column without simulation; with an empty workload list only the
// cost arithmetic is produced.
std::vector<CaseStudyRow> pcm_case_study(
    const std::vector<WorkloadSpec>& workloads, const CostTable& table,
    double target_margin = 0.10, double compute_ns = 50.0, unsigned jobs = 1,
    const std::map<std::string, double>* perf_override = nullptr,
    std::optional<uint64_t> n_records_override = std::nullopt);

std::string sweep_report_csv(const SweepReport& report);
std::string frontier_csv(const std::vector<FrontierRow>& rows);
std::string case_study_csv(const std::vector<CaseStudyRow>& rows);

}  // namespace scmx
