#pragma once

#include <string>

#include "areosync/scenario.hpp"

namespace areosync {

/// Output artifact locations. Filenames are resolved against out_dir, which
/// falls back to $AREOSYNC_OUT_DIR and then the working directory.
struct RunArtifacts {
  std::string out_dir;
  std::string trajectory_csv = "trajectory.csv";
  std::string links_csv = "trajectory_links.csv";
  std::string report_json = "report.json";
  std::string certification_json = "certification.json";
  std::string plot_csv = "plotdata.csv";
  int plot_stride = 0;  // 0 disables plot-data emission

  std::string resolve(const std::string& filename) const;
};

struct ParsedConfig {
  std::string constant_set = "mars-example";
  Scenario scenario;
  RunArtifacts artifacts;
};

/// Parses and validates a scenario configuration. Every key is optional; the
/// selected constant set supplies defaults, so "{}" yields the built-in
/// mars-example scenario. Unknown keys are rejected, quantities carry the unit
/// named in the key (r_d_km, dt_s, horizon_sols, ...), and all violations are
/// reported together in the thrown ValidationError.
ParsedConfig parse_config(const std::string& json_text);

ParsedConfig load_config_file(const std::string& path);

/// Full explicit form of the configuration; parse(serialize(x)) is equivalent
/// to x.
std::string serialize_config(const ParsedConfig& config);

}  // namespace areosync
