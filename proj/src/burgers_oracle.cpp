#include "burgers/burgers_oracle.hpp"

#include "burgers/error.hpp"

#include <cmath>
#include <sstream>

namespace burgers {
namespace {

using cplx = std::complex<double>;

// Spectral state of the velocity: one coefficient vector per component.
struct SpectralOperators {
  explicit SpectralOperators(const TorusGrid& g) : grid(g) {
    const Eigen::Index size = g.size();
    const double w = g.base_wavenumber();
    for (int axis = 0; axis < g.dim; ++axis) wavenumber[axis].resize(size);
    symbol.resize(size);
    dealias.resize(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      const int j0 = static_cast<int>(i % g.n);
      const int j1 = static_cast<int>(i / g.n);
      const int m0 = signed_mode(j0, g.n);
      const int m1 = g.dim == 2 ? signed_mode(j1, g.n) : 0;
      // Nyquist dropped in first derivatives, kept in the Laplacian.
      wavenumber[0][i] = j0 == g.n / 2 ? 0.0 : w * m0;
      if (g.dim == 2) wavenumber[1][i] = j1 == g.n / 2 ? 0.0 : w * m1;
      symbol[i] = -0.5 * w * w * (double(m0) * m0 + double(m1) * m1);
      const bool keep = 3 * std::abs(m0) < g.n && 3 * std::abs(m1) < g.n;
      dealias[i] = keep ? 1.0 : 0.0;
    }
  }

  TorusGrid grid;
  std::array<Eigen::VectorXd, 2> wavenumber;
  Eigen::VectorXd symbol;   // Fourier symbol of Lap / 2
  Eigen::VectorXd dealias;  // 2/3-rule mask
};

using SpectralVelocity = std::vector<Eigen::VectorXcd>;

std::vector<Eigen::VectorXd> to_physical(const SpectralOperators& ops, const SpectralVelocity& u) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& c : u) out.push_back(inverse_transform(ops.grid, c));
  return out;
}

double max_speed(const std::vector<Eigen::VectorXd>& u) {
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(u[0].size());
  for (const auto& c : u) sq += c.array().square().matrix();
  return std::sqrt(sq.maxCoeff());
}

// Fourier coefficients of -grad(|u|^2 / 2) + grad V, dealiased.
SpectralVelocity explicit_terms(const SpectralOperators& ops, const std::vector<Eigen::VectorXd>& u,
                                const Eigen::VectorXd& v) {
  Eigen::VectorXd energy = -v;
  for (const auto& c : u) energy += 0.5 * c.array().square().matrix();
  const Eigen::VectorXcd e_hat = forward_transform(Field(ops.grid, energy));
  SpectralVelocity out;
  for (int axis = 0; axis < ops.grid.dim; ++axis) {
    const Eigen::VectorXcd ik = ops.wavenumber[axis].cast<cplx>() * cplx{0.0, 1.0};
    out.push_back(-(ik.array() * e_hat.array() * ops.dealias.array().cast<cplx>()).matrix());
  }
  return out;
}

}  // namespace

VelocityField solve_direct(const InitialData& psi0, const Potential& v, const OracleConfig& cfg) {
  if (cfg.scheme != "imex-integrating-factor") throw ArgumentError("unknown oracle scheme '" + cfg.scheme + "'");
  if (!(cfg.dt > 0.0) || !(cfg.T >= 0.0)) throw ArgumentError("oracle needs dt > 0 and T >= 0");
  if (!(psi0.psi0.grid == cfg.grid) || !(v.v.grid == cfg.grid)) {
    throw ArgumentError("oracle: initial data, potential and config grids differ");
  }
  const SpectralOperators ops(cfg.grid);
  const VelocityField u0 = initial_velocity(psi0);
  SpectralVelocity u;
  for (const auto& c : u0.components) u.push_back(forward_transform(c));

  const double h = cfg.grid.spacing();
  double t = 0.0;
  long step = 0;
  while (t < cfg.T) {
    const double dt = std::min(cfg.dt, cfg.T - t);
    const std::vector<Eigen::VectorXd> physical = to_physical(ops, u);
    const double speed = max_speed(physical);
    if (!std::isfinite(speed)) {
      throw NumericalError("oracle produced a non-finite velocity at step " + std::to_string(step));
    }
    if (speed > 0.0 && dt > 0.5 * h / speed) {
      std::ostringstream msg;
      msg << "CFL violated at step " << step << " (t = " << t << "): dt = " << dt
          << " > 0.5 h / max|u| = " << 0.5 * h / speed;
      throw NumericalError(msg.str());
    }
    const Eigen::ArrayXcd half = (ops.symbol.array() * (0.5 * dt)).exp().cast<cplx>();
    const Eigen::ArrayXcd full = half * half;
    const SpectralVelocity n0 = explicit_terms(ops, physical, v.v.values);
    SpectralVelocity mid(u.size());
    for (std::size_t c = 0; c < u.size(); ++c) {
      mid[c] = (half * (u[c].array() + 0.5 * dt * n0[c].array())).matrix();
    }
    const SpectralVelocity n1 = explicit_terms(ops, to_physical(ops, mid), v.v.values);
    for (std::size_t c = 0; c < u.size(); ++c) {
      u[c] = (full * u[c].array() + dt * half * n1[c].array()).matrix();
    }
    t += dt;
    ++step;
    if (cfg.T - t < 1e-12 * std::max(1.0, cfg.T)) t = cfg.T;
  }

  if (step == 0) return {u0.components, cfg.T};
  VelocityField out{{}, cfg.T};
  const std::vector<Eigen::VectorXd> physical = to_physical(ops, u);
  for (std::size_t c = 0; c < physical.size(); ++c) {
    if (!physical[c].allFinite()) throw NumericalError("oracle produced a non-finite velocity");
    out.components.emplace_back(cfg.grid, physical[c], "u" + std::to_string(c + 1));
  }
  return out;
}

std::vector<ConvergenceRow> measure_convergence(const InitialDataSpec& psi0, const PotentialSpec& v,
                                                const std::vector<int>& grids,
                                                const std::vector<double>& dts, double T, int dim,
                                                double period) {
  if (grids.empty() || grids.size() != dts.size()) {
    throw ArgumentError("convergence study needs matched, nonempty grid and dt lists");
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const TorusGrid grid(dim, grids[i], period);
    const Potential pot = v.make(grid);
    const GroundStateResult gs = ground_state(pot);
    const InitialData data = psi0.make(grid, &gs.state.omega);
    const Propagator propagator(gs.shifted);
    const VelocityField reference = cole_hopf_velocity(data, propagator, T);
    const VelocityField direct = solve_direct(data, gs.shifted, {dts[i], T, "imex-integrating-factor", grid});
    rows.push_back({grids[i], dts[i], sup_distance(direct, reference)});
  }
  return rows;
}

namespace {
constexpr double kRoundoffFloor = 1e-12;
}  // namespace

bool refinement_is_monotone(const std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].gap > kRoundoffFloor && rows[i].gap > 1.2 * rows[i - 1].gap) return false;
  }
  return true;
}

std::vector<ConvergenceRow> convergence_study(const InitialDataSpec& psi0, const PotentialSpec& v,
                                              const std::vector<int>& grids,
                                              const std::vector<double>& dts, double T, int dim,
                                              double period) {
  auto rows = measure_convergence(psi0, v, grids, dts, T, dim, period);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].gap > kRoundoffFloor && rows[i].gap > 1.2 * rows[i - 1].gap) {
      std::ostringstream msg;
      msg << "refinement gap increased from " << rows[i - 1].gap << " (n = " << rows[i - 1].n
          << ") to " << rows[i].gap << " (n = " << rows[i].n << ")";
      throw PropertyViolation(msg.str());
    }
  }
  return rows;
}

}  // namespace burgers
