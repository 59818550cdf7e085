#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scmx/trace.hpp"

namespace scmx {

struct CacheConfig {
    uint64_t capacity_bytes = 0;  // divisible by block_bytes * ways
    uint64_t block_bytes = 1024;  // power of two >= 64; design range 256..4096
    uint32_t ways = 4;
    double tag_lookup_ns = 20.0;  // charged on every access
};

struct CacheStats {
    uint64_t accesses = 0;
    uint64_t hits = 0;
    uint64_t misses = 0;
    uint64_t fills = 0;
    uint64_t writebacks = 0;
    uint64_t bytes_read_from_device = 0;
    uint64_t bytes_written_to_device = 0;
    // density_counts[k]: evicted/flushed blocks with exactly k touched 64B
    // sub-blocks, k in 1 .. block_bytes/64. Final-state blocks are included
    // by a flush pass (recorded, but no writeback events emitted).
    std::vector<uint64_t> density_counts;
    uint64_t density_samples = 0;
    uint64_t block_bytes = 0;

    double hit_ratio() const { return accesses ? double(hits) / double(accesses) : 0.0; }
    double miss_ratio() const { return accesses ? double(misses) / double(accesses) : 0.0; }
    double mean_density() const;
};

enum class BacksideKind : uint8_t { FillRead = 0, Writeback = 1 };

struct BacksideEvent {
    BacksideKind kind;
    uint64_t address;     // block aligned
    uint32_t size_bytes;  // == block_bytes
    uint64_t cause_seq;   // seq of the access that triggered it
};

struct CacheResult {
    CacheStats stats;
    std::vector<BacksideEvent> events;
};

// Write-back, write-allocate, LRU within each set. The set index is the
// address bits directly above the block offset (modulo the set count).
// A dirty victim emits its Writeback immediately before the miss's FillRead.
CacheResult simulate_cache(const Trace& t, const CacheConfig& cfg);

struct RegionDensityPoint {
    uint64_t region_bytes = 0;
    double mean_density = 0.0;
    uint64_t samples = 0;
};

// Nearest multiple of block_bytes * ways to a byte budget, at least one set.
uint64_t round_capacity_to_sets(double budget_bytes, uint64_t block_bytes, uint32_t ways);

// Eviction-density profile per region (block) size at a fixed cache budget of
// cache_fraction * footprint, rounded to whole sets (>= one set of 4 ways).
std::vector<RegionDensityPoint> region_density_profile(const Trace& t, double cache_fraction,
                                                       const std::vector<uint64_t>& region_sizes);

// Backside stream serialization: trace TEXT format with ops F (fill) and
// B (writeback) plus a trailing size column: "seq,op,address,size".
void write_backside_text(const std::vector<BacksideEvent>& events, const std::string& path);
std::vector<BacksideEvent> read_backside_text(const std::string& path);

}  // namespace scmx
