#include "burgers/config.hpp"

#include "burgers/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace burgers {
namespace {

struct Entry {
  std::string value;
  int line = 0;  // 0 for defaults
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Resolver {
 public:
  Resolver(std::string source, std::map<std::string, Entry> entries)
      : source_(std::move(source)), entries_(std::move(entries)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() || it->second.line == 0
                                  ? "default"
                                  : std::to_string(it->second.line);
    throw ArgumentError(source_ + ":" + where + ": " + key + ": " + message);
  }

  const std::string& text(const std::string& key) const { return entries_.at(key).value; }

  double number(const std::string& key) const { return parse_number(key, text(key)); }

  int integer(const std::string& key) const {
    const double v = number(key);
    if (v != static_cast<double>(static_cast<long long>(v))) fail(key, "expected an integer");
    return static_cast<int>(v);
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(key, "empty list element");
      out.push_back(parse_number(key, item));
    }
    return out;
  }

  std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (double v : numbers(key)) {
      if (v != static_cast<double>(static_cast<long long>(v))) fail(key, "expected integers");
      out.push_back(static_cast<int>(v));
    }
    return out;
  }

 private:
  double parse_number(const std::string& key, const std::string& s) const {
    double v = 0.0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) fail(key, "cannot parse number '" + s + "'");
    return v;
  }

  std::string source_;
  std::map<std::string, Entry> entries_;
};

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(b > a); }) == v.end();
}

}  // namespace

const std::vector<ConfigDefault>& config_defaults() {
  static const std::vector<ConfigDefault> table = {
      {"potential.name", "*", "cosine", "zero | cosine | two-mode | separable-2d"},
      {"potential.amplitude", "*", "1", "amplitude A multiplying the potential"},
      {"psi0.name", "*", "sine", "zero | sine | log-cosine | ground-state"},
      {"psi0.amplitude", "*", "1", "amplitude of psi0 (ignored by log-cosine, ground-state)"},
      {"grid.n", "*", "256", "samples per axis (power of two >= 8; at most 64 when dim = 2)"},
      {"grid.n", "kernel-decay", "64", ""},
      {"grid.dim", "*", "1", "1 or 2"},
      {"grid.period", "*", "6.283185307179586", "period of the cell per axis"},
      {"run.times", "*", "1", "increasing list of evaluation times"},
      {"run.times", "groundstate", "1, 10", ""},
      {"run.times", "solve", "2, 4, 8", ""},
      {"run.times", "kernel-decay", "4, 8, 16, 32, 64", ""},
      {"run.times", "counterexample",
       "1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12", ""},
      {"run.seed", "*", "20010611", "seed of randomized identity checks"},
      {"run.output_dir", "*", "out", "directory for CSV files and report.json"},
      {"kernel.n_bands", "*", "24", "Bloch bands kept in the kernel sum"},
      {"kernel.n_k", "*", "256", "k-points of the Brillouin-zone rule"},
      {"kernel.cutoff", "*", "16", "plane-wave modes per side of each fiber"},
      {"kernel.x_points", "*", "32", "x samples across one cell"},
      {"kernel.y_per_cell", "*", "64", "y samples per cell"},
      {"kernel.width", "*", "10", "y reach in units of sqrt(t), plus one cell"},
      {"oracle.grids", "*", "256, 512", "grid sizes of the refinement study"},
      {"oracle.dts", "*", "0.001, 0.0005", "time steps matched to oracle.grids"},
      {"band.k_points", "*", "65", "uniform k samples over the Brillouin zone"},
      {"band.index", "*", "0", "band to scan"},
      {"band.k_fit", "*", "0.1", "half-width of the effective-mass fit window"},
      {"counterexample.radii", "*", "100, 1e4, 1e8", "shell radii R_1 < R_2 < ..."},
      {"counterexample.values", "*", "3, 1", "shell n carries values[n mod len]"},
      {"counterexample.background", "*", "3", "value beyond the last radius"},
  };
  return table;
}

std::string config_help() {
  std::ostringstream out;
  out << "Configuration keys (section.key [scenario]: default -- description)\n";
  for (const auto& d : config_defaults()) {
    out << "  " << d.key;
    if (d.scenario != "*") out << " [" << d.scenario << "]";
    out << ": " << d.value;
    if (!d.help.empty()) out << " -- " << d.help;
    out << "\n";
  }
  out << "\nCSV files (header row always present):\n"
      << "  groundstate.csv     x[,y],V,V_shifted,omega,u_inf1[,u_inf2]\n"
      << "  solution.csv        x[,y],t,phi,u1[,u2]\n"
      << "  distance.csv        t,sup_distance,phi_min,phi_max,sandwich_lower,sandwich_upper,curl_max\n"
      << "  compare.csv         n,dt,gap\n"
      << "  oracle_snapshot.csv x[,y],u1[,u2],t\n"
      << "  kernel_decay.csv    t,integral,pointwise,truncation_bound,tail_fraction,stochasticity_error\n"
      << "  kernel_slices.csv   t,x,y,L,dLdx\n"
      << "  band.csv            k,E\n"
      << "  counterexample.csv  t,phi0,grad_sup\n";
  return out.str();
}

ScenarioConfig parse_config(const std::string& scenario, std::istream& in, const std::string& source) {
  if (std::find(kScenarios.begin(), kScenarios.end(), scenario) == kScenarios.end()) {
    throw ArgumentError("unknown scenario '" + scenario + "'");
  }
  std::map<std::string, Entry> entries;
  for (const auto& d : config_defaults()) {
    if (d.scenario == "*" && !entries.contains(d.key)) entries[d.key] = {d.value, 0};
  }
  for (const auto& d : config_defaults()) {
    if (d.scenario == scenario) entries[d.key] = {d.value, 0};
  }

  std::string section;
  std::string raw;
  std::map<std::string, int> seen;
  for (int line = 1; std::getline(in, raw); ++line) {
    const std::string text = trim(raw.substr(0, raw.find_first_of("#;")));
    if (text.empty()) continue;
    const std::string anchor = source + ":" + std::to_string(line) + ": ";
    if (text.front() == '[') {
      if (text.back() != ']') throw ArgumentError(anchor + "malformed section header");
      section = trim(text.substr(1, text.size() - 2));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ArgumentError(anchor + "expected 'key = value'");
    if (section.empty()) throw ArgumentError(anchor + "key outside of any [section]");
    const std::string key = section + "." + trim(text.substr(0, eq));
    if (!entries.contains(key)) throw ArgumentError(anchor + "unknown key '" + key + "'");
    if (seen.contains(key)) {
      throw ArgumentError(anchor + "duplicate key '" + key + "' (first set on line " +
                          std::to_string(seen[key]) + ")");
    }
    seen[key] = line;
    entries[key] = {trim(text.substr(eq + 1)), line};
  }

  const Resolver r(source, entries);
  ScenarioConfig cfg;
  cfg.scenario = scenario;
  for (const auto& [key, entry] : entries) cfg.resolved[key] = entry.value;

  cfg.potential = {r.text("potential.name"), r.number("potential.amplitude")};
  cfg.psi0 = {r.text("psi0.name"), r.number("psi0.amplitude")};
  try {
    cfg.grid = TorusGrid(r.integer("grid.dim"), r.integer("grid.n"), r.number("grid.period"));
  } catch (const ArgumentError& e) {
    r.fail("grid.n", e.what());
  }
  if (scenario == "kernel-decay" && cfg.grid.dim != 1) r.fail("grid.dim", "kernel-decay runs in one dimension");
  if (cfg.grid.dim == 2 && cfg.grid.n > 64) r.fail("grid.n", "2-D grids are limited to n <= 64 (dense propagator)");
  try {
    (void)cfg.potential.make(cfg.grid);
  } catch (const ArgumentError& e) {
    r.fail("potential.name", e.what());
  }
  static const std::vector<std::string> psi_names = {"zero", "sine", "log-cosine", "ground-state"};
  if (std::find(psi_names.begin(), psi_names.end(), cfg.psi0.name) == psi_names.end()) {
    r.fail("psi0.name", "unknown initial data '" + cfg.psi0.name + "'");
  }

  cfg.times = r.numbers("run.times");
  if (cfg.times.empty()) r.fail("run.times", "needs at least one time");
  if (!strictly_increasing(cfg.times)) r.fail("run.times", "times must be strictly increasing");
  if (cfg.times.front() < 0.0) r.fail("run.times", "times must be nonnegative");
  const double seed = r.number("run.seed");
  if (seed < 0.0) r.fail("run.seed", "seed must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.output_dir = r.text("run.output_dir");

  cfg.kernel = {r.integer("kernel.n_bands"), r.integer("kernel.n_k"), r.integer("kernel.cutoff")};
  if (cfg.kernel.n_bands < 2) r.fail("kernel.n_bands", "must be >= 2");
  if (cfg.kernel.n_k < 64) r.fail("kernel.n_k", "must be >= 64");
  if (scenario == "kernel-decay" && (cfg.kernel.cutoff < 1 || cfg.kernel.cutoff > cfg.grid.n / 2)) {
    r.fail("kernel.cutoff", "must lie in [1, grid.n / 2]");
  }
  if (2 * cfg.kernel.cutoff + 1 <= cfg.kernel.n_bands) r.fail("kernel.cutoff", "too small for n_bands");
  cfg.x_points = r.integer("kernel.x_points");
  cfg.y_per_cell = r.integer("kernel.y_per_cell");
  cfg.width = r.number("kernel.width");
  if (cfg.x_points < 1) r.fail("kernel.x_points", "must be >= 1");
  if (cfg.y_per_cell < 8) r.fail("kernel.y_per_cell", "must be >= 8");
  if (!(cfg.width > 0.0)) r.fail("kernel.width", "must be positive");

  cfg.oracle_grids = r.integers("oracle.grids");
  cfg.oracle_dts = r.numbers("oracle.dts");
  if (cfg.oracle_grids.empty() || cfg.oracle_grids.size() != cfg.oracle_dts.size()) {
    r.fail("oracle.dts", "must match oracle.grids in length");
  }
  for (int n : cfg.oracle_grids) {
    if (scenario == "compare" && cfg.grid.dim == 2 && n > 64) r.fail("oracle.grids", "2-D grids are limited to n <= 64");
    try {
      (void)TorusGrid(cfg.grid.dim, n, cfg.grid.period);
    } catch (const ArgumentError& e) {
      r.fail("oracle.grids", e.what());
    }
  }
  for (double dt : cfg.oracle_dts) {
    if (!(dt > 0.0)) r.fail("oracle.dts", "time steps must be positive");
  }

  cfg.k_points = r.integer("band.k_points");
  cfg.band_index = r.integer("band.index");
  cfg.k_fit = r.number("band.k_fit");
  if (cfg.k_points < 3 || cfg.k_points % 2 == 0) r.fail("band.k_points", "must be odd and >= 3 (k = 0 included)");
  if (cfg.band_index < 0) r.fail("band.index", "must be nonnegative");
  if (!(cfg.k_fit > 0.0)) r.fail("band.k_fit", "must be positive");

  cfg.profile.radii = r.numbers("counterexample.radii");
  cfg.profile.values = r.numbers("counterexample.values");
  cfg.profile.background = r.number("counterexample.background");
  try {
    cfg.profile.validate();
  } catch (const ArgumentError& e) {
    r.fail("counterexample.radii", e.what());
  }

  if (scenario == "kernel-decay" && cfg.times.front() < 1.0) r.fail("run.times", "kernel times must be >= 1");
  if (scenario == "counterexample" && cfg.times.front() <= 0.0) {
    r.fail("run.times", "heat times must be positive");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& scenario, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError(path + ":0: cannot open config file");
  return parse_config(scenario, in, path);
}

}  // namespace burgers
