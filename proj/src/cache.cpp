#include "scmx/cache.hpp"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "scmx/util.hpp"

namespace scmx {

double CacheStats::mean_density() const {
    if (!density_samples || !block_bytes) return 0.0;
    const double sub_blocks = static_cast<double>(block_bytes / kSubBlockBytes);
    double acc = 0.0;
    for (size_t k = 0; k < density_counts.size(); k++)
        acc += static_cast<double>(density_counts[k]) * (static_cast<double>(k) / sub_blocks);
    return acc / static_cast<double>(density_samples);
}

namespace {

struct Line {
    uint64_t tag = 0;       // block id
    uint64_t touched = 0;   // 64B sub-block bitmap, bit i = sub-block i
    uint64_t last_used = 0; // global LRU clock
    bool valid = false;
    bool dirty = false;
};

void validate(const CacheConfig& cfg) {
    if (cfg.block_bytes < 64 || (cfg.block_bytes & (cfg.block_bytes - 1)) != 0)
        throw ConfigError("cache: block_bytes must be a power of two >= 64, got " +
                          std::to_string(cfg.block_bytes));
    if (cfg.block_bytes > 4096)
        throw ConfigError("cache: block_bytes above the 4096B design limit");
    if (cfg.ways == 0) throw ConfigError("cache: ways must be >= 1");
    if (cfg.capacity_bytes == 0 || cfg.capacity_bytes % (cfg.block_bytes * cfg.ways) != 0)
        throw ConfigError("cache: capacity_bytes must be a positive multiple of block_bytes * ways");
}

}  // namespace

CacheResult simulate_cache(const Trace& t, const CacheConfig& cfg) {
    validate(cfg);
    const uint64_t n_sets = cfg.capacity_bytes / (cfg.block_bytes * cfg.ways);
    const uint32_t subs_per_block = static_cast<uint32_t>(cfg.block_bytes / kSubBlockBytes);

    CacheResult res;
    res.stats.block_bytes = cfg.block_bytes;
    res.stats.density_counts.assign(subs_per_block + 1, 0);
    std::vector<Line> lines(n_sets * cfg.ways);
    uint64_t clock = 0;

    auto record_density = [&](const Line& l) {
        uint32_t touched = static_cast<uint32_t>(std::popcount(l.touched));
        res.stats.density_counts[touched]++;
        res.stats.density_samples++;
    };

    for (const auto& r : t.records) {
        res.stats.accesses++;
        clock++;
        const uint64_t block = r.address / cfg.block_bytes;
        const uint64_t set = block % n_sets;
        const uint32_t sub =
            static_cast<uint32_t>((r.address % cfg.block_bytes) / kSubBlockBytes);
        Line* base = &lines[set * cfg.ways];

        Line* hit = nullptr;
        Line* victim = nullptr;
        for (uint32_t w = 0; w < cfg.ways; w++) {
            Line& l = base[w];
            if (l.valid && l.tag == block) {
                hit = &l;
                break;
            }
            if (!victim) {
                victim = &l;
            } else if (victim->valid && (!l.valid || l.last_used < victim->last_used)) {
                victim = &l;
            }
        }

        if (hit) {
            res.stats.hits++;
            hit->touched |= 1ull << sub;
            hit->last_used = clock;
            if (r.op == Op::Write) hit->dirty = true;
            continue;
        }

        res.stats.misses++;
        if (victim->valid) {
            record_density(*victim);
            if (victim->dirty) {
                res.stats.writebacks++;
                res.stats.bytes_written_to_device += cfg.block_bytes;
                res.events.push_back({BacksideKind::Writeback, victim->tag * cfg.block_bytes,
                                      static_cast<uint32_t>(cfg.block_bytes), r.seq});
            }
        }
        res.stats.fills++;
        res.stats.bytes_read_from_device += cfg.block_bytes;
        res.events.push_back({BacksideKind::FillRead, block * cfg.block_bytes,
                              static_cast<uint32_t>(cfg.block_bytes), r.seq});
        victim->valid = true;
        victim->tag = block;
        victim->touched = 1ull << sub;
        victim->dirty = r.op == Op::Write;
        victim->last_used = clock;
    }

    // Flush pass: remaining residents contribute density samples only.
    for (const auto& l : lines)
        if (l.valid) record_density(l);

    return res;
}

uint64_t round_capacity_to_sets(double budget_bytes, uint64_t block_bytes, uint32_t ways) {
    const uint64_t set_bytes = block_bytes * ways;
    uint64_t sets =
        static_cast<uint64_t>(std::llround(budget_bytes / static_cast<double>(set_bytes)));
    if (sets == 0) sets = 1;
    return sets * set_bytes;
}

std::vector<RegionDensityPoint> region_density_profile(const Trace& t, double cache_fraction,
                                                       const std::vector<uint64_t>& region_sizes) {
    if (cache_fraction <= 0.0 || cache_fraction > 1.0)
        throw ConfigError("region_density_profile: cache_fraction outside (0, 1]");
    for (uint64_t r : region_sizes)
        if (r < 256 || r > 4096 || (r & (r - 1)) != 0)
            throw ConfigError("region_density_profile: region size " + std::to_string(r) +
                              " not in {256, 512, 1024, 2048, 4096}");
    const double budget = cache_fraction * static_cast<double>(t.footprint_bytes());
    std::vector<RegionDensityPoint> out;
    for (uint64_t region : region_sizes) {
        CacheConfig cfg;
        cfg.block_bytes = region;
        cfg.ways = 4;
        cfg.capacity_bytes = round_capacity_to_sets(budget, region, cfg.ways);
        auto res = simulate_cache(t, cfg);
        out.push_back({region, res.stats.mean_density(), res.stats.density_samples});
    }
    return out;
}

void write_backside_text(const std::vector<BacksideEvent>& events, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::fprintf(f, "#scmtrace v1\n");
    for (const auto& e : events)
        std::fprintf(f, "%" PRIu64 ",%c,0x%" PRIx64 ",%u\n", e.cause_seq,
                     e.kind == BacksideKind::FillRead ? 'F' : 'B', e.address, e.size_bytes);
    if (std::fclose(f) != 0) throw std::runtime_error("write failed on '" + path + "'");
}

std::vector<BacksideEvent> read_backside_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "#scmtrace v1")
        throw std::runtime_error(path + ": missing '#scmtrace v1' header");
    std::vector<BacksideEvent> out;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) continue;
        const char* p = line.c_str();
        char* end = nullptr;
        uint64_t seq = std::strtoull(p, &end, 10);
        if (end == p || *end != ',')
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad seq");
        p = end + 1;
        char opc = *p;
        if ((opc != 'F' && opc != 'B') || *(p + 1) != ',')
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": op must be F or B");
        p += 2;
        if (p[0] != '0' || p[1] != 'x')
            throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                                     ": address must be 0x-prefixed hex");
        uint64_t addr = std::strtoull(p + 2, &end, 16);
        if (end == p + 2 || *end != ',')
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad address");
        p = end + 1;
        uint64_t size = std::strtoull(p, &end, 10);
        if (end == p || *end != '\0' || size == 0 || size % 64 != 0)
            throw std::runtime_error(path + ": line " + std::to_string(lineno) + ": bad size");
        out.push_back({opc == 'F' ? BacksideKind::FillRead : BacksideKind::Writeback, addr,
                       static_cast<uint32_t>(size), seq});
    }
    return out;
}

}  // namespace scmx
