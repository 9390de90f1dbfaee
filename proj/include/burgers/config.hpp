#pragma once

#include "burgers/cole_hopf.hpp"
#include "burgers/intrinsic_kernel.hpp"
#include "burgers/line_heat.hpp"
#include "burgers/schrodinger.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace burgers {

inline const std::vector<std::string> kScenarios = {"groundstate", "solve",  "compare",
                                                    "kernel-decay", "band", "counterexample"};

/// One row of the defaults table: `section.key`, the scenario it applies to
/// ("*" for all), its default text and a description for --help.
struct ConfigDefault {
  std::string key;
  std::string scenario;
  std::string value;
  std::string help;
};

/// The single table of defaults. Scenario-specific rows override "*" rows.
const std::vector<ConfigDefault>& config_defaults();

/// Human-readable table of defaults and CSV schemas for --help.
std::string config_help();

/// Validated scenario configuration.
struct ScenarioConfig {
  std::string scenario;
  PotentialSpec potential;
  InitialDataSpec psi0;
  TorusGrid grid;
  std::vector<double> times;
  std::uint64_t seed = 0;
  std::string output_dir;

  KernelOptions kernel;
  int x_points = 32;
  int y_per_cell = 64;
  double width = 10.0;

  std::vector<int> oracle_grids;
  std::vector<double> oracle_dts;

  int k_points = 65;
  int band_index = 0;
  double k_fit = 0.1;

  LineHeatProfile profile;

  /// Every resolved `section.key = value`, defaults included.
  std::map<std::string, std::string> resolved;
};

/// Parses a flat INI-style file:
///
///   # comment
///   [section]
///   key = value
///
/// Lists are comma separated. Unknown sections or keys, duplicate keys,
/// unparsable numbers and failed validation (e.g. times not increasing) throw
/// ArgumentError with a "<source>:<line>: " prefix; values that come from the
/// defaults table are reported as "<source>:default: ".
ScenarioConfig parse_config(const std::string& scenario, std::istream& in,
                            const std::string& source = "config");
ScenarioConfig load_config(const std::string& scenario, const std::string& path);

}  // namespace burgers
