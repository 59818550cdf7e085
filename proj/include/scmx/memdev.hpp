#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scmx/trace.hpp"

namespace scmx {

struct TimingParams {
    // All latencies in ns.
    double t_CAS = 14;
    double t_RCD = 14;
    double t_RP = 14;
    double t_RAS = 24;
    double t_RC = 38;
    double t_WR = 9;       // write restoration, charged when a dirty row closes
    double t_WTR = 6;
    double t_RTP = 3;
    double t_RRDpre = 3;   // same-rank activate spacing, normal
    double t_RRDact = 3;   // same-rank activate spacing during a restoration
    double data_rate_mts = 2666;
    double bus_bytes = 8;
    double burst_ns = 3.0; // 64B burst; factories round the data-rate formula to 0.1ns

    static TimingParams ddr4_2666();
    // DDR4-compatible part with slow activation (t_read) and restoration
    // (t_write); tighter inter-activation spacing 2/11ns.
    static TimingParams scm(double t_read_ns, double t_write_ns);
};

struct DeviceGeometry {
    uint32_t ranks = 2;
    uint32_t banks_per_rank = 8;
    uint64_t row_buffer_bytes = 1024;   // [256, 8192] power of two
    uint64_t capacity_bytes = 1ull << 40;
    uint32_t queue_depth = 64;          // FR-FCFS scheduling window
    uint32_t total_banks() const { return ranks * banks_per_rank; }
};

// Bank state seen by an incoming request.
enum class RowCase : uint8_t { Hit, Closed, ConflictClean, ConflictDirty };

// Latency composition for one request of n 64B bursts. Writes use a command
// latency equal to t_CAS and mark the row dirty.
//   Hit:            t_CAS + n*t_b
//   Closed:         t_RCD + t_CAS + n*t_b
//   ConflictClean:  t_RP + t_RCD + t_CAS + n*t_b
//   ConflictDirty:  t_WR + t_RP + t_RCD + t_CAS + n*t_b
double service_latency(Op op, RowCase row_case, const TimingParams& tp, uint32_t n_bursts);

struct DeviceRequest {
    Op kind = Op::Read;
    uint64_t address = 0;    // 64B aligned, must not cross a row boundary
    uint32_t size_bytes = 64;
    double arrival_ns = 0.0; // nondecreasing across the request stream
    uint64_t id = 0;
};

struct DeviceStats {
    uint64_t served_requests = 0;
    uint64_t reads = 0;
    uint64_t writes = 0;
    uint64_t activations = 0;
    uint64_t row_hits = 0;
    double loaded_amat_ns = 0.0;           // mean of latency / (size/64)
    double mean_read_latency_ns = 0.0;     // full-request latency means
    double mean_write_latency_ns = 0.0;
    double row_hit_ratio = 0.0;
    double mean_bytes_per_activation = 0.0;  // distinct 64B chunks per opened row
    double mean_read_queue = 0.0;            // time-weighted occupancies
    double mean_write_buffer = 0.0;
    double busy_time_ns = 0.0;
    double burst_time_ns = 0.0;
    double span_ns = 0.0;
};

// Single-channel open-row FR-FCFS simulation. Page-granular interleave per
// row:bank:rank:col bit order (rank varies fastest, then bank, then row).
// Reads are prioritized; writes land in a buffer with one entry per bank and
// drain in full, blocking reads, whenever the buffer fills (and at end of
// stream). completions_ns, when non-null, receives per-request completion
// times indexed like `requests`.
DeviceStats simulate_device(const std::vector<DeviceRequest>& requests,
                            const DeviceGeometry& geom, const TimingParams& tp,
                            std::vector<double>* completions_ns = nullptr);

// Device description JSON:
// {"ranks":2,"banks_per_rank":8,"row_buffer":1024,"queue_depth":64,
//  "capacity":1099511627776,"timing":{"tCAS":14,...,"data_rate":2666}}
void device_from_json(const std::string& json_text, DeviceGeometry& geom, TimingParams& tp);
std::string device_to_json(const DeviceGeometry& geom, const TimingParams& tp);

}  // namespace scmx
