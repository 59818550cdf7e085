#include "scmx/cost.hpp"

#include <json.hpp>

#include "scmx/util.hpp"

namespace scmx {

CostTable CostTable::defaults() {
    return CostTable{{
        {"planar_dram", 1.00},
        {"stacked_dram", 7.00},
        {"slc", 1.00},
        {"mlc", 0.50},
        {"tlc", 0.25},
    }};
}

double CostTable::at(const std::string& tech) const {
    auto it = cost_per_bit.find(tech);
    if (it == cost_per_bit.end()) throw ConfigError("cost table: unknown technology '" + tech + "'");
    return it->second;
}

CostTable cost_table_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("cost table: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || j.empty()) throw ConfigError("cost table: expected a non-empty object");
    CostTable t;
    for (auto& [k, v] : j.items()) {
        if (!v.is_number() || v.get<double>() < 0)
            throw ConfigError("cost table: key '" + k + "' must be a non-negative number");
        t.cost_per_bit[k] = v.get<double>();
    }
    return t;
}

double hierarchy_cost(const CostSpec& spec, const CostTable& table) {
    if (spec.cache_fraction < 0.0 || spec.cache_fraction > 0.2)
        throw ConfigError("cache_fraction " + std::to_string(spec.cache_fraction) +
                          " outside [0, 0.2]");
    double c = table.at(spec.main_tech);
    if (spec.cache_fraction > 0.0) c += spec.cache_fraction * table.at(spec.cache_tech);
    return c;
}

double perf_per_cost(double perf, double cost) {
    if (cost <= 0) throw ConfigError("perf_per_cost: cost must be positive");
    return perf / cost;
}

}  // namespace scmx
