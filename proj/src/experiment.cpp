#include "burgers/experiment.hpp"

#include "burgers/burgers_oracle.hpp"
#include "burgers/cole_hopf.hpp"
#include "burgers/error.hpp"
#include "burgers/line_heat.hpp"
#include "burgers/schrodinger.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

namespace burgers {
namespace {

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(const std::vector<double>& row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text_ += ',';
      text_ += format_double(row[i]);
    }
    text_ += '\n';
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out += ',';
      out += header_[i];
    }
    return out + '\n' + text_;
  }

 private:
  std::vector<std::string> header_;
  std::string text_;
};

struct Outcome {
  RunReport report;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents

  void add_file(const std::string& name, const Table& table) {
    report.files.push_back(name);
    files.emplace_back(name, table.str());
  }
  void check(std::string id, int criterion, std::string description, bool passed, double value,
             std::string detail = {}) {
    report.assertions.push_back(
        {std::move(id), criterion, std::move(description), passed, value, std::move(detail)});
  }
};

std::vector<std::string> coordinate_header(const TorusGrid& grid) {
  return grid.dim == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
}

std::vector<std::string> velocity_header(const TorusGrid& grid) {
  return grid.dim == 1 ? std::vector<std::string>{"u1"} : std::vector<std::string>{"u1", "u2"};
}

std::vector<double> coordinates(const TorusGrid& grid, Eigen::Index i) {
  const auto p = grid.point(i);
  return grid.dim == 1 ? std::vector<double>{p[0]} : std::vector<double>{p[0], p[1]};
}

template <typename... Parts>
std::vector<std::string> concat(Parts&&... parts) {
  std::vector<std::string> out;
  (out.insert(out.end(), parts.begin(), parts.end()), ...);
  return out;
}

std::string describe(double v) { return format_double(v); }

// Random band-limited function with modes |m| <= 8 (1-D) or |m_i| <= 4 (2-D).
Field random_band_limited(const TorusGrid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int top = grid.dim == 1 ? 8 : 4;
  struct Mode {
    int m0, m1;
    double c, s;
  };
  std::vector<Mode> modes;
  for (int m1 = grid.dim == 1 ? 0 : -top; m1 <= (grid.dim == 1 ? 0 : top); ++m1) {
    for (int m0 = -top; m0 <= top; ++m0) {
      const double c = coef(rng);
      const double s = coef(rng);
      modes.push_back({m0, m1, c, s});
    }
  }
  const double w = grid.base_wavenumber();
  return sample(
      grid,
      [&](double x, double y) {
        double f = 0.0;
        for (const auto& m : modes) {
          const double phase = w * (m.m0 * x + m.m1 * y);
          f += m.c * std::cos(phase) + m.s * std::sin(phase);
        }
        return f;
      },
      "f");
}

double sup_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

void groundstate_scenario(const ScenarioConfig& cfg, Outcome& out) {
  const Potential pot = cfg.potential.make(cfg.grid);
  const GroundStateResult gsr = ground_state(pot);
  const GroundState& gs = gsr.state;
  const VelocityField uinf = stationary(gs);

  std::vector<std::string> u_names{"u_inf1", "u_inf2"};
  u_names.resize(cfg.grid.dim);
  Table table(concat(coordinate_header(cfg.grid), std::vector<std::string>{"V", "V_shifted", "omega"}, u_names));
  for (Eigen::Index i = 0; i < cfg.grid.size(); ++i) {
    std::vector<double> row = coordinates(cfg.grid, i);
    row.push_back(pot.v.values[i]);
    row.push_back(gsr.shifted.v.values[i]);
    row.push_back(gs.omega.values[i]);
    for (const auto& c : uinf.components) row.push_back(c.values[i]);
    table.add(row);
  }
  out.add_file("groundstate.csv", table);

  auto& m = out.report.metrics;
  m["e0"] = gs.e0;
  m["a"] = gs.a;
  m["b"] = gs.b;
  m["residual"] = gs.residual;
  m["cutoff"] = gs.cutoff;

  out.check("omega-positive", 0, "ground state is strictly positive", gs.a > 0.0, gs.a);
  out.check("ground-state-residual", 0, "max |(H - e0) Omega| <= 1e-8", gs.residual <= 1e-8, gs.residual);

  const Propagator propagator(gsr.shifted);
  m["spectral_gap"] = propagator.gap();
  double stationarity = 0.0;
  double velocity_drift = 0.0;
  const InitialData ground_data = InitialDataSpec{"ground-state", 1.0}.make(cfg.grid, &gs.omega);
  for (double t : cfg.times) {
    if (t > 0.0) {
      const Eigen::VectorXd evolved = propagator.apply(gs.omega.values, t);
      stationarity = std::max(stationarity, sup_abs(evolved - gs.omega.values));
    }
    velocity_drift = std::max(velocity_drift,
                              sup_distance(cole_hopf_velocity(ground_data, propagator, t), uinf));
  }
  m["stationarity"] = stationarity;
  out.check("stationarity", 7, "sup |exp(-tH) Omega - Omega| <= 1e-8 at every time", stationarity <= 1e-8,
            stationarity);
  out.check("stationary-velocity", 0, "psi0 = -log Omega gives u(t) = u_inf within 1e-8",
            velocity_drift <= 1e-8, velocity_drift);

  std::mt19937_64 rng(cfg.seed);
  double quadratic = 0.0;
  double divergence = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = random_band_limited(cfg.grid, rng);
    const Field mf = intrinsic_generator(gs, f);
    const Field mf_div = intrinsic_generator_divergence(gs, f);
    const double energy = intrinsic_energy(gs, f);
    const double form = intrinsic_inner(gs, f, mf);
    quadratic = std::max(quadratic, std::abs(form - energy) / std::max(1.0, std::abs(energy)));
    divergence = std::max(divergence, sup_abs(mf.values - mf_div.values) / std::max(1.0, sup_abs(mf.values)));
  }
  m["quadratic_form_error"] = quadratic;
  m["divergence_form_error"] = divergence;
  out.check("quadratic-form", 9, "<f, M f> equals the Dirichlet energy within 1e-8 on 20 random f",
            quadratic <= 1e-8, quadratic);
  out.check("divergence-form", 9, "M f equals -Omega^-2 div(Omega^2 grad f) within 1e-8 on 20 random f",
            divergence <= 1e-8, divergence);
}

void solve_scenario(const ScenarioConfig& cfg, Outcome& out) {
  const Potential pot = cfg.potential.make(cfg.grid);
  const GroundStateResult gsr = ground_state(pot);
  const GroundState& gs = gsr.state;
  const InitialData data = cfg.psi0.make(cfg.grid, &gs.omega);
  const Propagator propagator(gsr.shifted);
  const VelocityField uinf = stationary(gs);
  const Sandwich bounds = sandwich(data, gs);
  const double gap = spectral_gap(pot);

  auto& m = out.report.metrics;
  m["spectral_gap"] = gap;
  m["propagator_gap"] = propagator.gap();
  m["sandwich_lower"] = bounds.lower;
  m["sandwich_upper"] = bounds.upper;

  Table solution(concat(coordinate_header(cfg.grid), std::vector<std::string>{"t", "phi"},
                        velocity_header(cfg.grid)));
  Table distance({"t", "sup_distance", "phi_min", "phi_max", "sandwich_lower", "sandwich_upper", "curl_max"});

  const ColeHopfState initial = lift(data);
  double sandwich_violation = 0.0;
  double identity_error = 0.0;
  double curl_max = 0.0;
  std::vector<double> dist;
  for (double t : cfg.times) {
    const ColeHopfState state = t > 0.0 ? propagate(initial, t, propagator) : initial;
    const VelocityField u = cole_hopf_velocity(data, propagator, t);
    const double d = sup_distance(u, uinf);
    dist.push_back(d);
    const double lo = state.phi.values.minCoeff();
    const double hi = state.phi.values.maxCoeff();
    sandwich_violation = std::max({sandwich_violation, bounds.lower - lo, hi - bounds.upper});

    const VelocityField rel = relative_gradient_form(state, gs);
    const VelocityField from_phi = velocity(state);
    for (std::size_t c = 0; c < rel.components.size(); ++c) {
      const Eigen::VectorXd lhs = from_phi.components[c].values - uinf.components[c].values;
      identity_error = std::max(identity_error, sup_abs(lhs + rel.components[c].values));
    }
    double curl_t = 0.0;
    if (cfg.grid.dim == 2) curl_t = sup_abs(curl(u).values);
    curl_max = std::max(curl_max, curl_t);

    for (Eigen::Index i = 0; i < cfg.grid.size(); ++i) {
      std::vector<double> row = coordinates(cfg.grid, i);
      row.push_back(t);
      row.push_back(state.phi.values[i]);
      for (const auto& c : u.components) row.push_back(c.values[i]);
      solution.add(row);
    }
    distance.add({t, d, lo, hi, bounds.lower, bounds.upper, curl_t});
  }
  out.add_file("solution.csv", solution);
  out.add_file("distance.csv", distance);

  out.check("sandwich", 7, "c1 a/b - 1e-10 <= phi <= c2 b/a + 1e-10 at every time",
            sandwich_violation <= 1e-10, sandwich_violation);
  out.check("relative-gradient-identity", 0, "u - u_inf = -grad(phi/Omega) Omega/phi within 1e-10",
            identity_error <= 1e-10, identity_error);
  if (cfg.grid.dim == 2) {
    m["curl_max"] = curl_max;
    out.check("curl-free", 9, "max |d2 u1 - d1 u2| <= 1e-8 at every time", curl_max <= 1e-8, curl_max);
  }
  if (dist.size() >= 3) {
    const Eigen::Index n = static_cast<Eigen::Index>(dist.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    bool positive = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      design(i, 0) = cfg.times[i];
      design(i, 1) = 1.0;
      positive = positive && dist[i] > 0.0;
      rhs[i] = std::log(std::max(dist[i], std::numeric_limits<double>::min()));
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    const double rate = -coef[0];
    const double rel = std::abs(rate - gap) / gap;
    m["decay_rate"] = rate;
    m["decay_rate_relative_error"] = rel;
    out.check("exponential-rate", 6, "fitted decay rate of sup|u - u_inf| within 5% of the spectral gap",
              positive && rel <= 0.05, rate, "gap " + describe(gap));
    bool monotone = true;
    for (std::size_t i = 1; i < dist.size(); ++i) monotone = monotone && dist[i] < dist[i - 1];
    out.check("distance-monotone", 6, "sup|u - u_inf| strictly decreasing in t", monotone, dist.back());
  }
}

void compare_scenario(const ScenarioConfig& cfg, Outcome& out) {
  const double T = cfg.times.back();
  const auto rows = measure_convergence(cfg.psi0, cfg.potential, cfg.oracle_grids, cfg.oracle_dts, T,
                                        cfg.grid.dim, cfg.grid.period);
  Table table({"n", "dt", "gap"});
  for (const auto& r : rows) table.add({double(r.n), r.dt, r.gap});
  out.add_file("compare.csv", table);

  const TorusGrid grid(cfg.grid.dim, cfg.oracle_grids.front(), cfg.grid.period);
  const Potential pot = cfg.potential.make(grid);
  const GroundStateResult gsr = ground_state(pot);
  const InitialData data = cfg.psi0.make(grid, &gsr.state.omega);
  Table snapshot(concat(coordinate_header(grid), velocity_header(grid), std::vector<std::string>{"t"}));
  for (double t : cfg.times) {
    const VelocityField u = solve_direct(data, gsr.shifted, {cfg.oracle_dts.front(), t, "imex-integrating-factor", grid});
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      std::vector<double> row = coordinates(grid, i);
      for (const auto& c : u.components) row.push_back(c.values[i]);
      row.push_back(t);
      snapshot.add(row);
    }
  }
  out.add_file("oracle_snapshot.csv", snapshot);

  auto& m = out.report.metrics;
  for (const auto& r : rows) m["gap_n" + std::to_string(r.n)] = r.gap;
  out.check("oracle-gap", 5, "sup |u_direct - u_cole_hopf| <= 1e-4 on the first grid", rows.front().gap <= 1e-4,
            rows.front().gap);
  bool decreasing = rows.size() >= 2;
  for (std::size_t i = 1; i < rows.size(); ++i) decreasing = decreasing && rows[i].gap < rows[i - 1].gap;
  out.check("oracle-refinement", 5, "gap strictly decreases under each refinement step", decreasing,
            rows.back().gap);
}

void kernel_scenario(const ScenarioConfig& cfg, Outcome& out) {
  const Potential pot = cfg.potential.make(cfg.grid);
  const GroundStateResult gsr = ground_state(pot);
  const bool free_case = pot.v.values.cwiseAbs().maxCoeff() == 0.0;

  Table diag({"t", "integral", "pointwise", "truncation_bound", "tail_fraction", "stochasticity_error"});
  Table samples({"t", "x", "y", "L", "dLdx"});
  std::vector<KernelSlice> slices;
  std::vector<double> integral, pointwise;
  double free_error_int = 0.0;
  double free_error_pt = 0.0;
  bool tail_warning = false;
  for (double t : cfg.times) {
    const KernelSamples s = default_samples(t, cfg.grid.period, cfg.x_points, cfg.y_per_cell, cfg.width);
    KernelSlice slice = bloch_kernel(gsr.shifted, gsr.state, t, s, cfg.kernel);
    const IntegralDiagnostic id = integral_diagnostic(slice);
    const double pw = pointwise_diagnostic(slice);
    const double stoch = (stochasticity(slice, gsr.state).array() - 1.0).abs().maxCoeff();
    tail_warning = tail_warning || id.tail_warning;
    integral.push_back(id.value);
    pointwise.push_back(pw);
    diag.add({t, id.value, pw, slice.truncation_bound, id.tail_fraction, stoch});
    for (Eigen::Index i = 0; i < slice.x.size(); ++i) {
      for (Eigen::Index j = 0; j < slice.y.size(); ++j) {
        samples.add({t, slice.x[i], slice.y[j], slice.L(i, j), slice.dLdx(i, j)});
      }
    }
    if (free_case) {
      const double exact_int = std::sqrt(2.0 / (std::numbers::pi * t));
      const double exact_pt = std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi) / t;
      free_error_int = std::max(free_error_int, std::abs(id.value - exact_int) / exact_int);
      free_error_pt = std::max(free_error_pt, std::abs(pw - exact_pt) / exact_pt);
    }
    slices.push_back(std::move(slice));
  }
  out.add_file("kernel_decay.csv", diag);
  out.add_file("kernel_slices.csv", samples);

  auto& m = out.report.metrics;
  m["tail_warning"] = tail_warning ? 1.0 : 0.0;
  if (free_case) {
    m["free_integral_error"] = free_error_int;
    m["free_pointwise_error"] = free_error_pt;
    out.check("free-integral", 1, "integral diagnostic equals sqrt(2/(pi t)) within 1e-6", free_error_int <= 1e-6,
              free_error_int);
    out.check("free-pointwise", 1, "pointwise diagnostic equals exp(-1/2)/sqrt(2 pi)/t within 1e-6",
              free_error_pt <= 1e-6, free_error_pt);
  }
  if (cfg.times.size() < 2) return;

  const PowerLawFit int_fit = fit_power_law(cfg.times, integral);
  const PowerLawFit pt_fit = fit_power_law(cfg.times, pointwise);
  m["integral_slope"] = int_fit.slope;
  m["pointwise_slope"] = pt_fit.slope;
  out.check("integral-slope", 2, "log-log slope of sup_x int |dL/dx| dy is -0.5 +- 0.05",
            std::abs(int_fit.slope + 0.5) <= 0.05, int_fit.slope);
  out.check("pointwise-slope", 3, "log-log slope of max |dL/dx| is -1.0 +- 0.1", std::abs(pt_fit.slope + 1.0) <= 0.1,
            pt_fit.slope);

  if (slices.size() >= 3) {
    const DecayFit fit = fit_gaussian_bound(slices);
    const double half_dim = 0.5 * cfg.grid.dim;
    m["alpha"] = fit.alpha;
    m["envelope_C"] = fit.C;
    m["envelope_D"] = fit.D;
    m["envelope_E"] = fit.E;
    m["envelope_residual"] = fit.residual;
    m["envelope_active_fraction"] = fit.active_fraction;
    out.check("alpha-margin", 3, "fitted alpha exceeds nu/2 by at least 0.3", fit.alpha >= half_dim + 0.3,
              fit.alpha);
    out.check("envelope", 4, "finite envelope constants with D >= 0.05 and E >= 0.05",
              std::isfinite(fit.C) && fit.D >= 0.05 && fit.E >= 0.05, fit.C,
              "D " + describe(fit.D) + ", E " + describe(fit.E));
  }
}

void band_scenario(const ScenarioConfig& cfg, Outcome& out) {
  const Potential pot = cfg.potential.make(cfg.grid);
  const double half = std::numbers::pi / cfg.grid.period;
  const int mid = (cfg.k_points - 1) / 2;
  std::vector<double> ks(cfg.k_points);
  for (int j = 0; j < cfg.k_points; ++j) ks[j] = half * (j - mid) / mid;
  ks[mid] = 0.0;
  const auto samples = band(pot, cfg.band_index, ks);

  Table table({"k", "E"});
  for (const auto& s : samples) table.add({s.k, s.energy});
  out.add_file("band.csv", table);

  auto& m = out.report.metrics;
  const double e_mid = samples[mid].energy;
  m["E_at_zero"] = e_mid;
  bool unique_min = true;
  for (int j = 0; j < cfg.k_points; ++j) {
    if (j != mid && !(samples[j].energy > e_mid)) unique_min = false;
  }
  double asymmetry = 0.0;
  for (int j = 0; j < mid; ++j) {
    asymmetry = std::max(asymmetry, std::abs(samples[j].energy - samples[cfg.k_points - 1 - j].energy));
  }
  m["asymmetry"] = asymmetry;
  out.check("band-minimum", 10, "unique minimum of the band at k = 0", unique_min, e_mid);
  out.check("band-even", 0, "E(k) = E(-k) within 1e-10", asymmetry <= 1e-10, asymmetry);

  EffectiveMass mass;
  std::string failure;
  try {
    mass = effective_mass(samples, cfg.k_fit);
  } catch (const PropertyViolation& e) {
    failure = e.what();
  } catch (const ArgumentError& e) {
    failure = e.what();
  }
  m["curvature"] = mass.curvature;
  m["quartic"] = mass.quartic;
  m["fit_residual"] = mass.residual;
  out.check("curvature-positive", 10, "effective-mass curvature c > 0", failure.empty() && mass.curvature > 0.0,
            mass.curvature, failure);
  out.check("fit-residual", 10, "relative residual of the small-k fit <= 1e-3",
            failure.empty() && mass.residual <= 1e-3, mass.residual, failure);
}

void counterexample_scenario(const ScenarioConfig& cfg, Outcome& out) {
  const LineHeatProfile& p = cfg.profile;
  Table table({"t", "phi0", "grad_sup"});
  std::vector<double> grad;
  for (double t : cfg.times) {
    const double g = line_heat_grad_sup(p, t);
    grad.push_back(g);
    table.add({t, line_heat_phi(p, t, 0.0), g});
  }
  out.add_file("counterexample.csv", table);

  auto& m = out.report.metrics;
  for (std::size_t n = 1; n < p.radii.size(); ++n) {
    const double t = p.radii[n - 1] * p.radii[n];
    const double expected = p.values[n % p.values.size()];
    const double phi = line_heat_phi(p, t, 0.0);
    const double rel = std::abs(phi - expected) / expected;
    m["phi0_shell" + std::to_string(n)] = phi;
    out.check("shell-probe-" + std::to_string(n), 8,
              "phi(0, R_n R_n+1) within 10% of the value on shell " + std::to_string(n), rel <= 0.1, phi,
              "t " + describe(t) + ", expected " + describe(expected));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < grad.size(); ++i) decreasing = decreasing && grad[i] < grad[i - 1];
  out.check("grad-sup-decreasing", 8, "sup_x |d phi/dx| strictly decreasing over the sampled times", decreasing,
            grad.back());
}

Outcome execute(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  out.report.config = cfg;
  if (cfg.scenario == "groundstate") {
    groundstate_scenario(cfg, out);
  } else if (cfg.scenario == "solve") {
    solve_scenario(cfg, out);
  } else if (cfg.scenario == "compare") {
    compare_scenario(cfg, out);
  } else if (cfg.scenario == "kernel-decay") {
    kernel_scenario(cfg, out);
  } else if (cfg.scenario == "band") {
    band_scenario(cfg, out);
  } else if (cfg.scenario == "counterexample") {
    counterexample_scenario(cfg, out);
  } else {
    throw ArgumentError("unknown scenario '" + cfg.scenario + "'");
  }
  out.report.files.push_back("report.json");
  out.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::logic_error("to_chars failed");
  return std::string(buf, ptr);
}

void write_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool RunReport::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

const Assertion* RunReport::find(const std::string& id) const {
  for (const auto& a : assertions) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json c;
  c["scenario"] = config.scenario;
  for (const auto& [key, value] : config.resolved) c[key] = value;
  j["config"] = c;
  j["files"] = files;
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metrics) j["metrics"][key] = value;
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : assertions) {
    j["assertions"].push_back({{"id", a.id},
                               {"criterion", a.criterion},
                               {"description", a.description},
                               {"passed", a.passed},
                               {"value", a.value},
                               {"detail", a.detail}});
  }
  j["runtime_seconds"] = runtime_seconds;
  return j.dump(2) + "\n";
}

RunReport evaluate(const ScenarioConfig& config) { return execute(config).report; }

RunReport run(const ScenarioConfig& config) {
  Outcome out = execute(config);
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  for (const auto& [name, contents] : out.files) write_atomic((dir / name).string(), contents);
  write_atomic((dir / "report.json").string(), out.report.to_json());
  return out.report;
}

PowerLawFit fit_exponent(const std::string& csv, const std::string& x_col, const std::string& y_col) {
  std::ifstream in(csv);
  if (!in) throw ArgumentError("cannot open " + csv);
  std::string line;
  if (!std::getline(in, line)) throw ArgumentError(csv + ": empty file");
  const auto header = split_csv_line(line);
  const auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ArgumentError(csv + ": no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(x_col);
  const std::size_t yi = column(y_col);
  std::vector<double> x, y;
  for (int row = 2; std::getline(in, line); ++row) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ArgumentError(csv + ":" + std::to_string(row) + ": expected " + std::to_string(header.size()) + " cells");
    }
    const auto parse = [&](std::size_t idx) {
      double v = 0.0;
      const auto& s = cells[idx];
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ArgumentError(csv + ":" + std::to_string(row) + ": cannot parse '" + s + "'");
      }
      if (!(v > 0.0)) throw ArgumentError(csv + ":" + std::to_string(row) + ": nonpositive entry " + s);
      return v;
    };
    x.push_back(parse(xi));
    y.push_back(parse(yi));
  }
  if (x.size() < 4) throw ArgumentError(csv + ": power-law fit needs at least 4 rows");
  return fit_power_law(x, y);
}

}  // namespace burgers
