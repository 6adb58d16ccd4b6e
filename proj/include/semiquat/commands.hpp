#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiquat/config.hpp"

namespace semiquat {

/// Numeric table; empty cells stay empty in CSV and become null in JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

/// 17 significant digits (lossless round trip).
std::string format_number(double v);

void write_table_csv(std::ostream& out, const Table& t);
nlohmann::json table_to_json(const Table& t);

struct VerifyReport {
    nlohmann::json document;  // per-check entries plus config_echo
    bool pass = false;
};

/// Apparatus along the grid: frame components, curvatures, signs.
Table cmd_frenet(const RunConfig& cfg);

/// Involute positions with distance-law and tangency residuals;
/// singular samples keep their position but blank residuals.
Table cmd_involute(const RunConfig& cfg);

/// Runs every verification check against the configured tolerances.
VerifyReport cmd_verify(const RunConfig& cfg);

/// Projection tables keyed "xi", "phi", "alpha", "beta" (the two 4D
/// curves lose component drop_axis; the spatial companions are 3D).
std::map<std::string, Table> cmd_project(const RunConfig& cfg, int drop_axis);

/// Walkthrough of the builtin example plus the verification suite;
/// returns the process exit code.
int cmd_example(const RunConfig& cfg, std::ostream& out);

/// Output plumbing honoring config.output (stdout when path is empty).
void write_output(const RunConfig& cfg, const std::string& name, const Table& t);
void write_project_outputs(const RunConfig& cfg, const std::map<std::string, Table>& tables);
void write_report(const RunConfig& cfg, const VerifyReport& rep);

} // namespace semiquat
