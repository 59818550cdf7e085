#include "scmx/util.hpp"

#include <cctype>

namespace scmx {

double parse_fraction(const std::string& s) {
    if (s.empty()) throw ConfigError("fraction: empty string");
    auto number = [&s](const std::string& body) {
        size_t used = 0;
        double v;
        try {
            v = std::stod(body, &used);
        } catch (const std::invalid_argument&) {
            throw ConfigError("fraction '" + s + "': not a number");
        } catch (const std::out_of_range&) {
            throw ConfigError("fraction '" + s + "': out of range");
        }
        while (used < body.size() && std::isspace(static_cast<unsigned char>(body[used]))) used++;
        if (used != body.size()) throw ConfigError("fraction '" + s + "': trailing garbage");
        return v;
    };
    double v;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        double p = number(s.substr(0, slash));
        double q = number(s.substr(slash + 1));
        if (q == 0.0) throw ConfigError("fraction '" + s + "': zero denominator");
        v = p / q;
    } else {
        std::string body = s;
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
            body.pop_back();
        bool pct = false;
        if (!body.empty() && body.back() == '%') {
            pct = true;
            body.pop_back();
        }
        v = number(body);
        if (pct) v /= 100.0;
    }
    if (v < 0.0 || v > 1.0) throw ConfigError("fraction '" + s + "': outside [0, 1]");
    return v;
}

LogLevel log_level() {
    static LogLevel lvl = [] {
        const char* e = std::getenv("SCMX_LOG");
        if (!e) return LogLevel::Error;
        std::string v(e);
        if (v == "debug") return LogLevel::Debug;
        if (v == "info") return LogLevel::Info;
        return LogLevel::Error;
    }();
    return lvl;
}

void log_line(LogLevel lvl, const std::string& msg) {
    if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
    const char* tag = lvl == LogLevel::Debug ? "debug" : lvl == LogLevel::Info ? "info" : "error";
    std::fprintf(stderr, "[scmx %s] %s\n", tag, msg.c_str());
}

}  // namespace scmx
