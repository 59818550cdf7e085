#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace scmx {

inline constexpr uint64_t kPageBytes = 4096;
inline constexpr uint64_t kSubBlockBytes = 64;
inline constexpr uint64_t kSubBlocksPerPage = kPageBytes / kSubBlockBytes;

enum class Op : uint8_t { Read = 0, Write = 1 };

struct TraceRecord {
    uint64_t seq = 0;
    Op op = Op::Read;
    uint64_t address = 0;  // 64B aligned
    std::optional<double> arrival_offset_ns;

    bool operator==(const TraceRecord& o) const {
        return seq == o.seq && op == o.op && address == o.address;
    }
};

struct Trace {
    std::vector<TraceRecord> records;

    uint64_t footprint_pages() const;  // distinct 4KB pages touched
    uint64_t footprint_bytes() const { return footprint_pages() * kPageBytes; }
    uint64_t distinct_blocks(uint64_t block_bytes) const;
    uint64_t max_address() const;
    bool has_arrival_times() const;
};

struct SyntheticTraceSpec {
    uint64_t n_pages = 1;
    double zipf_alpha = 0.0;       // >= 0; 0 = uniform page popularity
    double read_fraction = 1.0;    // [0, 1]
    double footprint_mean = 1.0;   // [1, 64] distinct 64B sub-blocks per page visit
    double burst_contiguity = 0.0; // [0, 1] P(next touch adjacent to previous)
    uint64_t n_records = 0;
    uint64_t seed = 1;
    std::optional<double> inter_arrival_ns;  // mean spacing; absent = untimed trace
};

SyntheticTraceSpec trace_spec_from_json(const std::string& json_text);
std::string trace_spec_to_json(const SyntheticTraceSpec& spec);

Trace generate_trace(const SyntheticTraceSpec& spec);

// Zipf rank sampler over ranks [0, n). Table path builds the inverse CDF
// (n <= 2^24); rejection path is Hormann rejection-inversion for larger n.
class ZipfSampler {
  public:
    enum class Method { Auto, Table, Rejection };
    static constexpr uint64_t kTableLimit = 1ull << 24;

    ZipfSampler(uint64_t n, double alpha, Method method = Method::Auto);
    uint64_t operator()(std::mt19937_64& rng) const;
    Method method() const { return method_; }

  private:
    uint64_t sample_table(std::mt19937_64& rng) const;
    uint64_t sample_rejection(std::mt19937_64& rng) const;

    uint64_t n_;
    double alpha_;
    Method method_;
    std::vector<double> cdf_;              // table path
    double hx0_ = 0, hn_ = 0, s_ = 0;      // rejection path constants
};

// TEXT: "#scmtrace v1" header, then "seq,op,address" rows (op R|W, 0x hex).
// BINARY: "SCMTRC01" magic, 17-byte little-endian records (u64 seq, u8 op,
// u64 address). Arrival offsets are an in-memory attribute, not serialized.
void write_trace_text(const Trace& t, const std::string& path);
void write_trace_binary(const Trace& t, const std::string& path);
Trace read_trace_text(const std::string& path);
Trace read_trace_binary(const std::string& path);
Trace read_trace(const std::string& path);  // dispatches on the leading magic

}  // namespace scmx
