#pragma once

#include <map>
#include <string>

namespace scmx {

// Relative cost per bit, planar DRAM = 1.00.
struct CostTable {
    std::map<std::string, double> cost_per_bit;

    static CostTable defaults();
    double at(const std::string& tech) const;  // unknown tech -> ConfigError
};

CostTable cost_table_from_json(const std::string& json_text);

struct CostSpec {
    std::string main_tech = "planar_dram";
    std::string cache_tech = "stacked_dram";
    double cache_fraction = 0.0;  // [0, 0.2]; 0 = no cache
};

// cost = main cost/bit + cache_fraction * cache cost/bit
double hierarchy_cost(const CostSpec& spec, const CostTable& table);

double perf_per_cost(double perf, double cost);

}  // namespace scmx
