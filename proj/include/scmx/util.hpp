#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>

namespace scmx {

// Config errors map to CLI exit code 2, runtime errors to 1.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parses "0.03125", "3.125%", or "p/q" forms like "1/32".
double parse_fraction(const std::string& s);

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Level comes from SCMX_LOG (error|info|debug), default error.
LogLevel log_level();

void log_line(LogLevel lvl, const std::string& msg);

inline void log_info(const std::string& msg) { log_line(LogLevel::Info, msg); }
inline void log_debug(const std::string& msg) { log_line(LogLevel::Debug, msg); }

// Deterministic helpers on top of mt19937_64; std:: distributions are
// implementation-defined, these keep traces byte-identical everywhere.
inline double uniform_double(std::mt19937_64& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

inline uint64_t uniform_u64(std::mt19937_64& rng, uint64_t n) {
    // Unbiased bounded draw (rejection of the overhang).
    uint64_t threshold = (0 - n) % n;
    for (;;) {
        uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

}  // namespace scmx
