#include "scmx/trace.hpp"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "scmx/util.hpp"

namespace scmx {

namespace {
constexpr char kTextHeader[] = "#scmtrace v1";
constexpr char kBinaryMagic[8] = {'S', 'C', 'M', 'T', 'R', 'C', '0', '1'};
}  // namespace

uint64_t Trace::footprint_pages() const {
    std::unordered_set<uint64_t> pages;
    pages.reserve(records.size() / 4 + 16);
    for (const auto& r : records) pages.insert(r.address / kPageBytes);
    return pages.size();
}

uint64_t Trace::distinct_blocks(uint64_t block_bytes) const {
    std::unordered_set<uint64_t> blocks;
    blocks.reserve(records.size() / 4 + 16);
    for (const auto& r : records) blocks.insert(r.address / block_bytes);
    return blocks.size();
}

uint64_t Trace::max_address() const {
    uint64_t m = 0;
    for (const auto& r : records) m = std::max(m, r.address);
    return m;
}

bool Trace::has_arrival_times() const {
    return !records.empty() && records.front().arrival_offset_ns.has_value();
}

ZipfSampler::ZipfSampler(uint64_t n, double alpha, Method method)
    : n_(n), alpha_(alpha), method_(method) {
    if (n == 0) throw ConfigError("ZipfSampler: n must be >= 1");
    if (alpha < 0) throw ConfigError("ZipfSampler: alpha must be >= 0");
    if (method_ == Method::Auto) method_ = n <= kTableLimit ? Method::Table : Method::Rejection;
    if (alpha_ == 0.0) return;  // uniform, no setup
    if (method_ == Method::Table) {
        if (n > kTableLimit) throw ConfigError("ZipfSampler: table method limited to n <= 2^24");
        cdf_.resize(n);
        double acc = 0.0;
        for (uint64_t i = 0; i < n; i++) {
            acc += std::pow(static_cast<double>(i + 1), -alpha_);
            cdf_[i] = acc;
        }
        for (auto& v : cdf_) v /= acc;
        cdf_.back() = 1.0;
    } else {
        // Hormann rejection-inversion constants; h is the antiderivative of
        // x^-alpha, hinv its inverse.
        auto h = [this](double x) {
            if (std::abs(alpha_ - 1.0) < 1e-12) return std::log(x);
            return (std::pow(x, 1.0 - alpha_) - 1.0) / (1.0 - alpha_);
        };
        auto hinv = [this](double x) {
            if (std::abs(alpha_ - 1.0) < 1e-12) return std::exp(x);
            return std::pow(1.0 + x * (1.0 - alpha_), 1.0 / (1.0 - alpha_));
        };
        hx0_ = h(0.5);
        hn_ = h(static_cast<double>(n_) + 0.5);
        s_ = 1.0 - hinv(h(1.5) - 1.0);
    }
}

uint64_t ZipfSampler::operator()(std::mt19937_64& rng) const {
    if (alpha_ == 0.0) return uniform_u64(rng, n_);
    return method_ == Method::Table ? sample_table(rng) : sample_rejection(rng);
}

uint64_t ZipfSampler::sample_table(std::mt19937_64& rng) const {
    double u = uniform_double(rng);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<uint64_t>(it - cdf_.begin());
}

uint64_t ZipfSampler::sample_rejection(std::mt19937_64& rng) const {
    auto h = [this](double x) {
        if (std::abs(alpha_ - 1.0) < 1e-12) return std::log(x);
        return (std::pow(x, 1.0 - alpha_) - 1.0) / (1.0 - alpha_);
    };
    auto hinv = [this](double x) {
        if (std::abs(alpha_ - 1.0) < 1e-12) return std::exp(x);
        return std::pow(1.0 + x * (1.0 - alpha_), 1.0 / (1.0 - alpha_));
    };
    for (;;) {
        double u = hx0_ + uniform_double(rng) * (hn_ - hx0_);
        double x = hinv(u);
        double kd = std::floor(x + 0.5);
        if (kd < 1.0) kd = 1.0;
        if (kd > static_cast<double>(n_)) kd = static_cast<double>(n_);
        uint64_t k = static_cast<uint64_t>(kd);
        if (kd - x <= s_) return k - 1;
        if (u >= h(kd + 0.5) - std::pow(kd, -alpha_)) return k - 1;
    }
}

SyntheticTraceSpec trace_spec_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("trace spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("trace spec: expected an object");
    SyntheticTraceSpec s;
    for (auto& [k, v] : j.items()) {
        if (k == "n_pages") s.n_pages = v.get<uint64_t>();
        else if (k == "zipf_alpha") s.zipf_alpha = v.get<double>();
        else if (k == "read_fraction") s.read_fraction = v.get<double>();
        else if (k == "footprint_mean") s.footprint_mean = v.get<double>();
        else if (k == "burst_contiguity") s.burst_contiguity = v.get<double>();
        else if (k == "n_records") s.n_records = v.get<uint64_t>();
        else if (k == "seed") s.seed = v.get<uint64_t>();
        else if (k == "inter_arrival_ns") { if (!v.is_null()) s.inter_arrival_ns = v.get<double>(); }
        else if (k == "name") { /* carried by workload wrappers */ }
        else throw ConfigError("trace spec: unknown key '" + k + "'");
    }
    return s;
}

std::string trace_spec_to_json(const SyntheticTraceSpec& s) {
    nlohmann::json j{
        {"n_pages", s.n_pages},
        {"zipf_alpha", s.zipf_alpha},
        {"read_fraction", s.read_fraction},
        {"footprint_mean", s.footprint_mean},
        {"burst_contiguity", s.burst_contiguity},
        {"n_records", s.n_records},
        {"seed", s.seed},
    };
    if (s.inter_arrival_ns) j["inter_arrival_ns"] = *s.inter_arrival_ns;
    return j.dump(2);
}

namespace {

void validate_spec(const SyntheticTraceSpec& s) {
    if (s.n_pages == 0) throw ConfigError("trace spec: n_pages must be >= 1");
    if (s.zipf_alpha < 0) throw ConfigError("trace spec: zipf_alpha must be >= 0");
    if (s.read_fraction < 0.0 || s.read_fraction > 1.0)
        throw ConfigError("trace spec: read_fraction outside [0, 1]");
    if (s.footprint_mean < 1.0 || s.footprint_mean > 64.0)
        throw ConfigError("trace spec: footprint_mean outside [1, 64]");
    if (s.burst_contiguity < 0.0 || s.burst_contiguity > 1.0)
        throw ConfigError("trace spec: burst_contiguity outside [0, 1]");
    if (s.inter_arrival_ns && *s.inter_arrival_ns <= 0)
        throw ConfigError("trace spec: inter_arrival_ns must be positive");
}

// 1 + Binomial(63, (mean-1)/63): mean hit exactly, support [1, 64], and the
// endpoints degenerate to constants (mean 1 -> 1, mean 64 -> 64).
uint32_t draw_visit_footprint(std::mt19937_64& rng, double mean) {
    double p = (mean - 1.0) / 63.0;
    uint32_t succ = 0;
    for (int i = 0; i < 63; i++)
        if (uniform_double(rng) < p) succ++;
    return 1 + succ;
}

uint32_t nth_clear_bit(uint64_t mask, uint32_t n) {
    for (uint32_t b = 0; b < 64; b++) {
        if (!(mask & (1ull << b))) {
            if (n == 0) return b;
            n--;
        }
    }
    return 63;  // unreachable with popcount(mask) + n < 64
}

}  // namespace

Trace generate_trace(const SyntheticTraceSpec& spec) {
    validate_spec(spec);
    Trace t;
    t.records.reserve(spec.n_records);
    std::mt19937_64 rng(spec.seed);
    ZipfSampler pages(spec.n_pages, spec.zipf_alpha);
    double clock_ns = 0.0;
    uint64_t seq = 0;

    auto emit = [&](uint64_t page, uint32_t sub) {
        TraceRecord r;
        r.seq = seq++;
        r.address = page * kPageBytes + sub * kSubBlockBytes;
        r.op = uniform_double(rng) < spec.read_fraction ? Op::Read : Op::Write;
        if (spec.inter_arrival_ns) {
            clock_ns += -*spec.inter_arrival_ns * std::log1p(-uniform_double(rng));
            r.arrival_offset_ns = clock_ns;
        }
        t.records.push_back(r);
    };

    while (seq < spec.n_records) {
        uint64_t page = pages(rng);
        uint32_t target = draw_visit_footprint(rng, spec.footprint_mean);
        uint64_t touched = 0;
        uint32_t cur = static_cast<uint32_t>(uniform_u64(rng, kSubBlocksPerPage));
        touched |= 1ull << cur;
        emit(page, cur);
        while (static_cast<uint32_t>(std::popcount(touched)) < target && seq < spec.n_records) {
            uint32_t next;
            if (uniform_double(rng) < spec.burst_contiguity) {
                next = (cur + 1) % kSubBlocksPerPage;
                if (touched & (1ull << next)) {
                    uint32_t free_count = 64 - std::popcount(touched);
                    next = nth_clear_bit(touched, static_cast<uint32_t>(uniform_u64(rng, free_count)));
                }
            } else {
                uint32_t free_count = 64 - std::popcount(touched);
                next = nth_clear_bit(touched, static_cast<uint32_t>(uniform_u64(rng, free_count)));
            }
            touched |= 1ull << next;
            cur = next;
            emit(page, cur);
        }
    }
    return t;
}

void write_trace_text(const Trace& t, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::fprintf(f, "%s\n", kTextHeader);
    for (const auto& r : t.records)
        std::fprintf(f, "%" PRIu64 ",%c,0x%" PRIx64 "\n", r.seq, r.op == Op::Read ? 'R' : 'W',
                     r.address);
    if (std::fclose(f) != 0) throw std::runtime_error("write failed on '" + path + "'");
}

void write_trace_binary(const Trace& t, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::fwrite(kBinaryMagic, 1, sizeof(kBinaryMagic), f);
    uint8_t buf[17];
    for (const auto& r : t.records) {
        for (int i = 0; i < 8; i++) buf[i] = static_cast<uint8_t>(r.seq >> (8 * i));
        buf[8] = static_cast<uint8_t>(r.op);
        for (int i = 0; i < 8; i++) buf[9 + i] = static_cast<uint8_t>(r.address >> (8 * i));
        if (std::fwrite(buf, 1, sizeof(buf), f) != sizeof(buf)) {
            std::fclose(f);
            throw std::runtime_error("write failed on '" + path + "'");
        }
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write failed on '" + path + "'");
}

namespace {

void check_record(uint64_t seq, uint64_t address, uint64_t index, const std::string& path) {
    if (seq != index)
        throw std::runtime_error(path + ": record " + std::to_string(index) +
                                 ": seq must increase densely from 0 (got " + std::to_string(seq) +
                                 ")");
    if (address % kSubBlockBytes != 0)
        throw std::runtime_error(path + ": record " + std::to_string(index) +
                                 ": address not 64B aligned");
}

}  // namespace

Trace read_trace_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kTextHeader)
        throw std::runtime_error(path + ": missing '" + kTextHeader + "' header");
    Trace t;
    uint64_t index = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const char* p = line.c_str();
        char* end = nullptr;
        uint64_t seq = std::strtoull(p, &end, 10);
        if (end == p || *end != ',')
            throw std::runtime_error(path + ": line " + std::to_string(index + 2) + ": bad seq");
        p = end + 1;
        char opc = *p;
        if ((opc != 'R' && opc != 'W') || *(p + 1) != ',')
            throw std::runtime_error(path + ": line " + std::to_string(index + 2) +
                                     ": op must be R or W");
        p += 2;
        if (p[0] != '0' || p[1] != 'x')
            throw std::runtime_error(path + ": line " + std::to_string(index + 2) +
                                     ": address must be 0x-prefixed hex");
        uint64_t addr = std::strtoull(p + 2, &end, 16);
        if (end == p + 2 || *end != '\0')
            throw std::runtime_error(path + ": line " + std::to_string(index + 2) +
                                     ": bad address");
        check_record(seq, addr, index, path);
        t.records.push_back({seq, opc == 'R' ? Op::Read : Op::Write, addr, std::nullopt});
        index++;
    }
    return t;
}

Trace read_trace_binary(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    char magic[8];
    if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kBinaryMagic, 8) != 0) {
        std::fclose(f);
        throw std::runtime_error(path + ": missing SCMTRC01 magic");
    }
    Trace t;
    uint8_t buf[17];
    uint64_t index = 0;
    size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) == sizeof(buf)) {
        uint64_t seq = 0, addr = 0;
        for (int i = 0; i < 8; i++) seq |= static_cast<uint64_t>(buf[i]) << (8 * i);
        uint8_t op = buf[8];
        for (int i = 0; i < 8; i++) addr |= static_cast<uint64_t>(buf[9 + i]) << (8 * i);
        if (op > 1) {
            std::fclose(f);
            throw std::runtime_error(path + ": record " + std::to_string(index) +
                                     ": op byte must be 0 or 1");
        }
        check_record(seq, addr, index, path);
        t.records.push_back({seq, static_cast<Op>(op), addr, std::nullopt});
        index++;
    }
    std::fclose(f);
    if (got != 0)
        throw std::runtime_error(path + ": truncated record at index " + std::to_string(index));
    return t;
}

Trace read_trace(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    char magic[8] = {0};
    size_t got = std::fread(magic, 1, 8, f);
    std::fclose(f);
    if (got == 8 && std::memcmp(magic, kBinaryMagic, 8) == 0) return read_trace_binary(path);
    return read_trace_text(path);
}

}  // namespace scmx
