#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiquat/metric.hpp"

namespace semiquat {

/// Evaluation grid; count points from s_min to s_max inclusive.
struct SampleGrid {
    double s_min = -1.0;
    double s_max = 1.0;
    int count = 21;

    std::vector<double> values() const;
};

struct OutputSpec {
    std::string path;            // empty means stdout
    std::string format = "csv";  // "csv" or "json"
};

/// One configuration drives every command.  The defaults run the
/// builtin hyperbolic example end to end, so a bare `verify` is the
/// canonical smoke test.
struct RunConfig {
    MetricContext metric;
    std::string curve = "example31";
    double c = 2.0;  // involute constant
    SampleGrid grid;
    std::map<std::string, double> tolerances;
    OutputSpec output;
    int drop_axis = 4;  // projection: which component to drop

    void validate() const;  // throws ConfigError
};

RunConfig default_config();

/// Reads a JSON document and merges it over the defaults.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& doc);

/// Parses "a:b:n" into the grid, e.g. "-1:1:21".
void apply_grid_string(RunConfig& cfg, const std::string& text);

/// The effective configuration, for echo blocks in reports.
nlohmann::json config_to_json(const RunConfig& cfg);

} // namespace semiquat
