#pragma once

#include <cstdint>
#include <vector>

#include "scmx/trace.hpp"

namespace scmx {

struct MissCurvePoint {
    uint64_t capacity_bytes = 0;
    double capacity_fraction = 0.0;  // of the trace's distinct-page footprint
    double miss_ratio = 0.0;
};

struct MissCurve {
    uint64_t block_bytes = 64;
    uint64_t footprint_bytes = 0;
    uint64_t distinct_blocks = 0;
    uint64_t accesses = 0;
    std::vector<MissCurvePoint> points;
};

// Default capacity grid as fractions of the footprint, 0.1% .. 12%.
const std::vector<double>& default_capacity_fractions();

// Single-pass LRU stack distances; writes allocate like reads. An access
// hits at capacity C iff its reuse distance (distinct other blocks since the
// previous access to its block) is < C / block_bytes.
MissCurve miss_ratio_curve(const Trace& t, uint64_t block_bytes,
                           std::vector<uint64_t> capacities_bytes = {});

// Reuse distance per access in distinct blocks; UINT64_MAX marks cold misses.
std::vector<uint64_t> reuse_distances(const Trace& t, uint64_t block_bytes);

// Direct fully-associative LRU simulation at one capacity. Independent of
// the stack-distance path; used as the equality oracle.
double lru_sim_oracle(const Trace& t, uint64_t block_bytes, uint64_t capacity_bytes);

}  // namespace scmx
