#include "scmx/locality.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <unordered_map>

#include "scmx/util.hpp"

namespace scmx {

namespace {

void check_block(uint64_t block_bytes) {
    if (block_bytes < 64 || (block_bytes & (block_bytes - 1)) != 0)
        throw ConfigError("block_bytes must be a power of two >= 64, got " +
                          std::to_string(block_bytes));
}

// Fenwick tree over access positions; a 1 marks the most recent access of
// some block, so a suffix sum counts distinct blocks seen since a position.
class BitTree {
  public:
    explicit BitTree(size_t n) : tree_(n + 1, 0) {}
    void add(size_t i, int v) {  // 0-based position
        for (size_t x = i + 1; x < tree_.size(); x += x & (~x + 1)) tree_[x] += v;
    }
    int64_t prefix(size_t i) const {  // sum of positions [0, i]
        int64_t s = 0;
        for (size_t x = i + 1; x > 0; x -= x & (~x + 1)) s += tree_[x];
        return s;
    }

  private:
    std::vector<int64_t> tree_;
};

}  // namespace

const std::vector<double>& default_capacity_fractions() {
    static const std::vector<double> f = {0.001, 0.002, 0.005, 0.01, 0.02, 0.03, 0.06, 0.12};
    return f;
}

std::vector<uint64_t> reuse_distances(const Trace& t, uint64_t block_bytes) {
    check_block(block_bytes);
    const size_t n = t.records.size();
    std::vector<uint64_t> dist(n);
    BitTree tree(n);
    std::unordered_map<uint64_t, size_t> last;  // block id -> position of latest access
    last.reserve(n / 4 + 16);
    int64_t live = 0;  // number of 1s in the tree
    for (size_t i = 0; i < n; i++) {
        uint64_t block = t.records[i].address / block_bytes;
        auto it = last.find(block);
        if (it == last.end()) {
            dist[i] = UINT64_MAX;
        } else {
            // distinct blocks strictly between the previous access and now
            int64_t between = live - tree.prefix(it->second);
            dist[i] = static_cast<uint64_t>(between);
            tree.add(it->second, -1);
            live--;
        }
        tree.add(i, +1);
        live++;
        last[block] = i;
    }
    return dist;
}

MissCurve miss_ratio_curve(const Trace& t, uint64_t block_bytes,
                           std::vector<uint64_t> capacities_bytes) {
    check_block(block_bytes);
    if (t.records.empty()) throw ConfigError("miss curve: empty trace");
    MissCurve curve;
    curve.block_bytes = block_bytes;
    curve.accesses = t.records.size();
    curve.footprint_bytes = t.footprint_bytes();
    if (capacities_bytes.empty()) {
        for (double f : default_capacity_fractions()) {
            double c = f * static_cast<double>(curve.footprint_bytes);
            uint64_t cap = std::max<uint64_t>(block_bytes,
                                              static_cast<uint64_t>(std::llround(c)));
            capacities_bytes.push_back(cap);
        }
    }
    for (uint64_t c : capacities_bytes)
        if (c < block_bytes)
            throw ConfigError("capacity " + std::to_string(c) + " smaller than block size " +
                              std::to_string(block_bytes));

    auto dist = reuse_distances(t, block_bytes);
    curve.distinct_blocks = static_cast<uint64_t>(
        std::count(dist.begin(), dist.end(), UINT64_MAX));

    // Histogram of finite distances, then one cumulative pass per capacity.
    uint64_t cold = curve.distinct_blocks;
    std::vector<uint64_t> sorted;
    sorted.reserve(dist.size() - cold);
    for (uint64_t d : dist)
        if (d != UINT64_MAX) sorted.push_back(d);
    std::sort(sorted.begin(), sorted.end());

    for (uint64_t c : capacities_bytes) {
        uint64_t blocks = c / block_bytes;
        // hits: finite distance < blocks
        auto hits = static_cast<uint64_t>(
            std::lower_bound(sorted.begin(), sorted.end(), blocks) - sorted.begin());
        uint64_t misses = curve.accesses - hits;
        MissCurvePoint p;
        p.capacity_bytes = c;
        p.capacity_fraction = curve.footprint_bytes
                                  ? static_cast<double>(c) / static_cast<double>(curve.footprint_bytes)
                                  : 0.0;
        p.miss_ratio = curve.accesses ? static_cast<double>(misses) / static_cast<double>(curve.accesses)
                                      : 0.0;
        curve.points.push_back(p);
    }
    return curve;
}

double lru_sim_oracle(const Trace& t, uint64_t block_bytes, uint64_t capacity_bytes) {
    check_block(block_bytes);
    if (capacity_bytes < block_bytes)
        throw ConfigError("capacity " + std::to_string(capacity_bytes) +
                          " smaller than block size " + std::to_string(block_bytes));
    const uint64_t capacity_blocks = capacity_bytes / block_bytes;
    std::list<uint64_t> stack;  // MRU at front
    std::unordered_map<uint64_t, std::list<uint64_t>::iterator> where;
    where.reserve(capacity_blocks + 16);
    uint64_t misses = 0;
    for (const auto& r : t.records) {
        uint64_t block = r.address / block_bytes;
        auto it = where.find(block);
        if (it != where.end()) {
            stack.splice(stack.begin(), stack, it->second);
        } else {
            misses++;
            if (stack.size() == capacity_blocks) {
                where.erase(stack.back());
                stack.pop_back();
            }
            stack.push_front(block);
            where[block] = stack.begin();
        }
    }
    return t.records.empty() ? 0.0 : static_cast<double>(misses) / static_cast<double>(t.records.size());
}

}  // namespace scmx
