#pragma once

#include "burgers/config.hpp"
#include "burgers/intrinsic_kernel.hpp"

#include <map>
#include <string>
#include <vector>

namespace burgers {

/// A checked property. `criterion` is the acceptance criterion number (1-10)
/// or 0 for a supporting module property.
struct Assertion {
  std::string id;
  int criterion = 0;
  std::string description;
  bool passed = false;
  double value = 0.0;
  std::string detail;
};

struct RunReport {
  ScenarioConfig config;
  std::vector<std::string> files;
  std::map<std::string, double> metrics;
  std::vector<Assertion> assertions;
  double runtime_seconds = 0.0;

  bool all_passed() const;
  const Assertion* find(const std::string& id) const;
  /// JSON with the fields config, files, metrics, assertions, runtime_seconds.
  std::string to_json() const;
};

/// Executes `config.scenario`, writes its CSV files and report.json into
/// `config.output_dir` (each through a temporary file and a rename) and
/// returns the report. Module errors propagate unchanged.
RunReport run(const ScenarioConfig& config);

/// Computes the report without touching the filesystem.
RunReport evaluate(const ScenarioConfig& config);

/// Least squares on (log x, log y) over the named CSV columns. Needs at least
/// four rows; nonpositive entries throw ArgumentError.
PowerLawFit fit_exponent(const std::string& csv, const std::string& x_col, const std::string& y_col);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Writes `contents` to `path` via `path.tmp` and an atomic rename.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace burgers
