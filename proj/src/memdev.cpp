#include "scmx/memdev.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "scmx/amat.hpp"
#include "scmx/util.hpp"

namespace scmx {

namespace {

double rounded_burst(double data_rate_mts) {
    return std::round(burst_ns_for_rate(data_rate_mts) * 10.0) / 10.0;
}

void validate_timing(const TimingParams& tp) {
    const double vals[] = {tp.t_CAS, tp.t_RCD, tp.t_RP,  tp.t_RAS,    tp.t_RC,
                           tp.t_WR,  tp.t_WTR, tp.t_RTP, tp.t_RRDpre, tp.t_RRDact};
    for (double v : vals)
        if (v < 0) throw ConfigError("timing: latencies must be non-negative");
    if (tp.t_RC < tp.t_RCD) throw ConfigError("timing: t_RC must be >= t_RCD");
    if (tp.burst_ns <= 0) throw ConfigError("timing: burst_ns must be positive");
    if (tp.data_rate_mts <= 0) throw ConfigError("timing: data_rate_mts must be positive");
}

void validate_geometry(const DeviceGeometry& g) {
    if (g.ranks == 0 || g.banks_per_rank == 0)
        throw ConfigError("geometry: ranks and banks_per_rank must be >= 1");
    if (g.row_buffer_bytes < 256 || g.row_buffer_bytes > 8192 ||
        (g.row_buffer_bytes & (g.row_buffer_bytes - 1)) != 0)
        throw ConfigError("geometry: row_buffer_bytes must be a power of two in [256, 8192]");
    if (g.queue_depth == 0) throw ConfigError("geometry: queue_depth must be >= 1");
    if (g.capacity_bytes < g.row_buffer_bytes || g.capacity_bytes % g.row_buffer_bytes != 0)
        throw ConfigError("geometry: capacity_bytes must be a positive multiple of the row buffer");
}

struct BankState {
    bool open = false;
    bool dirty = false;
    uint64_t row = 0;
    double row_ready = 0.0;       // when the open row accepts column commands
    double last_burst_end = 0.0;  // row cannot close while its burst streams
    double last_act_start = -1e18;
    uint64_t touched[2] = {0, 0}; // 64B chunks of the open row (rb <= 8192 -> 128 bits)
    uint64_t accessed_bytes_acc = 0;

    void close_row() {
        accessed_bytes_acc += static_cast<uint64_t>(std::popcount(touched[0]) +
                                                    std::popcount(touched[1])) *
                              kSubBlockBytes;
        touched[0] = touched[1] = 0;
    }
    void touch(uint32_t first_chunk, uint32_t n_chunks) {
        for (uint32_t c = first_chunk; c < first_chunk + n_chunks; c++)
            touched[c >> 6] |= 1ull << (c & 63);
    }
};

struct RankState {
    double last_act_start = -1e18;
    double restore_until = -1e18;       // latest write-restoration end in the rank
    double last_write_burst_end = -1e18;
};

}  // namespace

TimingParams TimingParams::ddr4_2666() {
    TimingParams tp;
    tp.t_CAS = 14; tp.t_RCD = 14; tp.t_RP = 14; tp.t_RAS = 24; tp.t_RC = 38;
    tp.t_WR = 9; tp.t_WTR = 6; tp.t_RTP = 3; tp.t_RRDpre = 3; tp.t_RRDact = 3;
    tp.data_rate_mts = 2666; tp.bus_bytes = 8;
    tp.burst_ns = rounded_burst(2666);
    return tp;
}

TimingParams TimingParams::scm(double t_read_ns, double t_write_ns) {
    if (t_read_ns < 14 || t_write_ns < t_read_ns)
        throw ConfigError("scm timing: need t_write >= t_read >= 14");
    TimingParams tp = ddr4_2666();
    tp.t_RCD = t_read_ns;
    tp.t_RC = t_read_ns;            // activation dominates the cycle
    tp.t_WR = t_write_ns;
    tp.t_RRDpre = 2;
    tp.t_RRDact = 11;
    return tp;
}

double service_latency(Op op, RowCase row_case, const TimingParams& tp, uint32_t n_bursts) {
    validate_timing(tp);
    if (n_bursts == 0) throw ConfigError("service_latency: n_bursts must be >= 1");
    (void)op;  // write command latency equals t_CAS, so both ops compose alike
    double pre = 0.0;
    switch (row_case) {
        case RowCase::Hit: pre = 0.0; break;
        case RowCase::Closed: pre = tp.t_RCD; break;
        case RowCase::ConflictClean: pre = tp.t_RP + tp.t_RCD; break;
        case RowCase::ConflictDirty: pre = tp.t_WR + tp.t_RP + tp.t_RCD; break;
    }
    return pre + tp.t_CAS + static_cast<double>(n_bursts) * tp.burst_ns;
}

DeviceStats simulate_device(const std::vector<DeviceRequest>& requests,
                            const DeviceGeometry& geom, const TimingParams& tp,
                            std::vector<double>* completions_ns) {
    validate_geometry(geom);
    validate_timing(tp);
    const uint32_t n_banks = geom.total_banks();
    for (size_t i = 0; i < requests.size(); i++) {
        const auto& r = requests[i];
        if (r.address % kSubBlockBytes != 0)
            throw ConfigError("device request " + std::to_string(i) + ": address not 64B aligned");
        if (r.size_bytes == 0 || r.size_bytes % kSubBlockBytes != 0)
            throw ConfigError("device request " + std::to_string(i) +
                              ": size must be a positive multiple of 64");
        if (r.size_bytes > geom.row_buffer_bytes)
            throw ConfigError("device request " + std::to_string(i) +
                              ": size exceeds the row buffer");
        if (r.address % geom.row_buffer_bytes + r.size_bytes > geom.row_buffer_bytes)
            throw ConfigError("device request " + std::to_string(i) + ": crosses a row boundary");
        if (r.address + r.size_bytes > geom.capacity_bytes)
            throw ConfigError("device request " + std::to_string(i) + ": beyond device capacity");
        if (i > 0 && r.arrival_ns < requests[i - 1].arrival_ns)
            throw ConfigError("device request " + std::to_string(i) + ": arrivals not sorted");
    }

    std::vector<BankState> banks(n_banks);
    std::vector<RankState> ranks(geom.ranks);
    double channel_free = 0.0;
    double sim_now = 0.0;  // admission horizon
    bool draining = false;

    std::deque<size_t> pending_reads;
    std::deque<size_t> write_buffer;  // capacity: one entry per bank
    size_t next_arrival = 0;
    size_t completed = 0;

    DeviceStats st;
    if (completions_ns) completions_ns->assign(requests.size(), 0.0);
    double amat_acc = 0.0, read_lat_acc = 0.0, write_lat_acc = 0.0;
    double first_arrival = requests.empty() ? 0.0 : requests.front().arrival_ns;
    double last_completion = first_arrival;
    std::vector<std::pair<double, double>> service_intervals;
    service_intervals.reserve(requests.size());

    // Time-weighted occupancy accounting, stepped at scheduling events.
    double occ_last_t = first_arrival, occ_read_acc = 0.0, occ_wb_acc = 0.0;
    auto occ_step = [&](double t) {
        if (t > occ_last_t) {
            occ_read_acc += static_cast<double>(pending_reads.size()) * (t - occ_last_t);
            occ_wb_acc += static_cast<double>(write_buffer.size()) * (t - occ_last_t);
            occ_last_t = t;
        }
    };

    auto locate = [&](uint64_t addr, uint32_t& rank, uint32_t& bank_idx, uint64_t& row,
                      uint32_t& first_chunk) {
        uint64_t page = addr / geom.row_buffer_bytes;
        rank = static_cast<uint32_t>(page % geom.ranks);
        uint32_t bank_in_rank = static_cast<uint32_t>((page / geom.ranks) % geom.banks_per_rank);
        row = page / (static_cast<uint64_t>(geom.ranks) * geom.banks_per_rank);
        bank_idx = rank * geom.banks_per_rank + bank_in_rank;
        first_chunk = static_cast<uint32_t>((addr % geom.row_buffer_bytes) / kSubBlockBytes);
    };

    auto is_row_hit = [&](size_t idx) {
        uint32_t rank, bank, chunk;
        uint64_t row;
        locate(requests[idx].address, rank, bank, row, chunk);
        return banks[bank].open && banks[bank].row == row;
    };

    // Serves one request and updates all resource clocks.
    auto issue = [&](size_t idx) {
        const DeviceRequest& r = requests[idx];
        uint32_t rank_i, bank_i, first_chunk;
        uint64_t row;
        locate(r.address, rank_i, bank_i, row, first_chunk);
        BankState& b = banks[bank_i];
        RankState& k = ranks[rank_i];
        const uint32_t n_bursts = r.size_bytes / kSubBlockBytes;

        double service_start, cas_ready;
        bool hit = b.open && b.row == row;
        if (hit) {
            cas_ready = std::max(r.arrival_ns, b.row_ready);
            service_start = cas_ready;
            st.row_hits++;
        } else {
            const bool was_open = b.open, was_dirty = b.dirty;
            double candidate =
                std::max({r.arrival_ns, b.last_burst_end, b.last_act_start + tp.t_RC});
            double gap = candidate < k.restore_until ? tp.t_RRDact : tp.t_RRDpre;
            double act_start = std::max(candidate, k.last_act_start + gap);
            if (was_open) {
                if (was_dirty) k.restore_until = std::max(k.restore_until, act_start + tp.t_WR);
                b.close_row();
            }
            double pre = tp.t_RCD + (was_open ? tp.t_RP : 0.0) +
                         (was_open && was_dirty ? tp.t_WR : 0.0);
            b.open = true;
            b.dirty = false;
            b.row = row;
            b.last_act_start = act_start;
            k.last_act_start = act_start;
            st.activations++;
            cas_ready = act_start + pre;
            b.row_ready = cas_ready;
            service_start = act_start;
        }
        double cas_issue = cas_ready;
        if (r.kind == Op::Read)
            cas_issue = std::max(cas_issue, k.last_write_burst_end + tp.t_WTR);
        double burst_start = std::max(cas_issue + tp.t_CAS, channel_free);
        double completion = burst_start + static_cast<double>(n_bursts) * tp.burst_ns;

        channel_free = completion;
        b.last_burst_end = completion;
        b.touch(first_chunk, n_bursts);
        if (r.kind == Op::Write) {
            b.dirty = true;
            k.last_write_burst_end = completion;
            st.writes++;
            write_lat_acc += completion - r.arrival_ns;
        } else {
            st.reads++;
            read_lat_acc += completion - r.arrival_ns;
        }
        st.burst_time_ns += static_cast<double>(n_bursts) * tp.burst_ns;
        amat_acc += (completion - r.arrival_ns) / static_cast<double>(n_bursts);
        service_intervals.push_back({service_start, completion});
        last_completion = std::max(last_completion, completion);
        if (completions_ns) (*completions_ns)[idx] = completion;
        st.served_requests++;
        completed++;
        occ_step(burst_start);
        sim_now = std::max(sim_now, completion);
    };

    while (completed < requests.size()) {
        // Admit arrivals up to the horizon; writes stall on a full buffer.
        while (next_arrival < requests.size() &&
               requests[next_arrival].arrival_ns <= sim_now) {
            if (requests[next_arrival].kind == Op::Read) {
                pending_reads.push_back(next_arrival);
            } else {
                if (write_buffer.size() >= n_banks) {
                    draining = true;
                    break;
                }
                write_buffer.push_back(next_arrival);
            }
            next_arrival++;
        }
        if (write_buffer.size() >= n_banks) draining = true;
        if (draining && write_buffer.empty()) draining = false;

        if (draining) {
            // FR-FCFS among buffered writes; reads blocked until empty.
            size_t pick = write_buffer.front();
            size_t pick_pos = 0;
            for (size_t p = 0; p < write_buffer.size(); p++) {
                if (is_row_hit(write_buffer[p])) {
                    pick = write_buffer[p];
                    pick_pos = p;
                    break;
                }
            }
            write_buffer.erase(write_buffer.begin() + static_cast<long>(pick_pos));
            issue(pick);
            continue;
        }

        if (!pending_reads.empty()) {
            size_t window = std::min<size_t>(geom.queue_depth, pending_reads.size());
            size_t pick_pos = 0;
            bool found = false;
            for (size_t p = 0; p < window; p++) {
                if (is_row_hit(pending_reads[p])) {
                    pick_pos = p;
                    found = true;
                    break;
                }
            }
            if (!found) pick_pos = 0;  // oldest
            size_t pick = pending_reads[pick_pos];
            pending_reads.erase(pending_reads.begin() + static_cast<long>(pick_pos));
            issue(pick);
            continue;
        }

        if (next_arrival < requests.size()) {
            sim_now = std::max(sim_now, requests[next_arrival].arrival_ns);
            continue;
        }
        if (!write_buffer.empty()) {  // end-of-stream flush
            draining = true;
            continue;
        }
        break;
    }

    for (auto& b : banks)
        if (b.open) b.close_row();

    if (!requests.empty()) {
        st.loaded_amat_ns = amat_acc / static_cast<double>(requests.size());
        st.row_hit_ratio =
            static_cast<double>(st.row_hits) / static_cast<double>(st.served_requests);
        if (st.reads) st.mean_read_latency_ns = read_lat_acc / static_cast<double>(st.reads);
        if (st.writes) st.mean_write_latency_ns = write_lat_acc / static_cast<double>(st.writes);
        uint64_t accessed = 0;
        for (const auto& b : banks) accessed += b.accessed_bytes_acc;
        if (st.activations)
            st.mean_bytes_per_activation =
                static_cast<double>(accessed) / static_cast<double>(st.activations);
        st.span_ns = last_completion - first_arrival;
        std::sort(service_intervals.begin(), service_intervals.end());
        double covered = 0.0, cur_start = service_intervals[0].first,
               cur_end = service_intervals[0].second;
        for (size_t i = 1; i < service_intervals.size(); i++) {
            if (service_intervals[i].first > cur_end) {
                covered += cur_end - cur_start;
                cur_start = service_intervals[i].first;
                cur_end = service_intervals[i].second;
            } else {
                cur_end = std::max(cur_end, service_intervals[i].second);
            }
        }
        covered += cur_end - cur_start;
        st.busy_time_ns = covered;
        double denom = std::max(st.span_ns, 1e-9);
        st.mean_read_queue = occ_read_acc / denom;
        st.mean_write_buffer = occ_wb_acc / denom;
    }
    return st;
}

void device_from_json(const std::string& json_text, DeviceGeometry& geom, TimingParams& tp) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("device json: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("device json: expected an object");
    geom = DeviceGeometry{};
    tp = TimingParams::ddr4_2666();
    for (auto& [k, v] : j.items()) {
        if (k == "ranks") geom.ranks = v.get<uint32_t>();
        else if (k == "banks_per_rank") geom.banks_per_rank = v.get<uint32_t>();
        else if (k == "row_buffer") geom.row_buffer_bytes = v.get<uint64_t>();
        else if (k == "queue_depth") geom.queue_depth = v.get<uint32_t>();
        else if (k == "capacity") geom.capacity_bytes = v.get<uint64_t>();
        else if (k == "timing") {
            if (!v.is_object()) throw ConfigError("device json: 'timing' must be an object");
            for (auto& [tk, tv] : v.items()) {
                double d = tv.get<double>();
                if (tk == "tCAS") tp.t_CAS = d;
                else if (tk == "tRCD") tp.t_RCD = d;
                else if (tk == "tRP") tp.t_RP = d;
                else if (tk == "tRAS") tp.t_RAS = d;
                else if (tk == "tRC") tp.t_RC = d;
                else if (tk == "tWR") tp.t_WR = d;
                else if (tk == "tWTR") tp.t_WTR = d;
                else if (tk == "tRTP") tp.t_RTP = d;
                else if (tk == "tRRDpre") tp.t_RRDpre = d;
                else if (tk == "tRRDact") tp.t_RRDact = d;
                else if (tk == "data_rate") { tp.data_rate_mts = d; tp.burst_ns = rounded_burst(d); }
                else if (tk == "burst_ns") tp.burst_ns = d;
                else if (tk == "bus_bytes") tp.bus_bytes = d;
                else throw ConfigError("device json: unknown timing key '" + tk + "'");
            }
        } else {
            throw ConfigError("device json: unknown key '" + k + "'");
        }
    }
    validate_geometry(geom);
    validate_timing(tp);
}

std::string device_to_json(const DeviceGeometry& geom, const TimingParams& tp) {
    nlohmann::json j{
        {"ranks", geom.ranks},
        {"banks_per_rank", geom.banks_per_rank},
        {"row_buffer", geom.row_buffer_bytes},
        {"queue_depth", geom.queue_depth},
        {"capacity", geom.capacity_bytes},
        {"timing",
         {{"tCAS", tp.t_CAS},
          {"tRCD", tp.t_RCD},
          {"tRP", tp.t_RP},
          {"tRAS", tp.t_RAS},
          {"tRC", tp.t_RC},
          {"tWR", tp.t_WR},
          {"tWTR", tp.t_WTR},
          {"tRTP", tp.t_RTP},
          {"tRRDpre", tp.t_RRDpre},
          {"tRRDact", tp.t_RRDact},
          {"data_rate", tp.data_rate_mts},
          {"bus_bytes", tp.bus_bytes},
          {"burst_ns", tp.burst_ns}}},
    };
    return j.dump(2);
}

}  // namespace scmx
