#include "burgers/cole_hopf.hpp"

#include "burgers/error.hpp"

#include <cmath>
#include <sstream>

namespace burgers {
namespace {

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!(a.grid == b.grid)) throw ArgumentError(std::string(what) + ": grid mismatch");
}

Field with_values(const Field& like, Eigen::VectorXd values, std::string label) {
  return Field(like.grid, std::move(values), std::move(label));
}

}  // namespace

InitialData make_initial_data(Field psi0) {
  const Eigen::VectorXd phi0 = (-psi0.values.array()).exp();
  InitialData data{std::move(psi0), phi0.minCoeff(), phi0.maxCoeff()};
  if (!(data.c1 > 0.0) || !std::isfinite(data.c2)) {
    throw ArgumentError("initial potential is not bounded: exp(-psi0) leaves (0, inf)");
  }
  return data;
}

InitialData InitialDataSpec::make(const TorusGrid& grid, const Field* omega) const {
  const double w = grid.base_wavenumber();
  const double amp = amplitude;
  if (name == "zero") return make_initial_data(sample(grid, [](double, double) { return 0.0; }, "psi0"));
  if (name == "sine") {
    if (grid.dim == 1) {
      return make_initial_data(
          sample(grid, [=](double x, double) { return amp * std::sin(w * x); }, "psi0"));
    }
    return make_initial_data(sample(
        grid,
        [=](double x, double y) { return amp * (std::sin(w * x) + 0.5 * std::sin(w * (x + y))); },
        "psi0"));
  }
  if (name == "log-cosine") {
    return make_initial_data(
        sample(grid, [=](double x, double) { return -std::log(2.0 + std::cos(w * x)); }, "psi0"));
  }
  if (name == "ground-state") {
    if (omega == nullptr) throw ArgumentError("initial data 'ground-state' needs Omega");
    if (!(omega->grid == grid)) throw ArgumentError("Omega lives on a different grid");
    return make_initial_data(Field(grid, -omega->values.array().log().matrix(), "psi0"));
  }
  throw ArgumentError("unknown initial data '" + name + "'");
}

Eigen::MatrixXd hamiltonian_matrix(const Potential& v) {
  const TorusGrid& grid = v.v.grid;
  const Eigen::Index size = grid.size();
  Eigen::MatrixXd h(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    Field unit(grid, Eigen::VectorXd::Unit(size, j));
    h.col(j) = -0.5 * laplacian(unit).values;
  }
  h = 0.5 * (h + h.transpose()).eval();
  h.diagonal() += v.v.values;
  return h;
}

Propagator::Propagator(const Potential& shifted) : grid_(shifted.v.grid) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian_matrix(shifted));
  if (solver.info() != Eigen::Success) throw NumericalError("torus Hamiltonian eigensolver failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXd Propagator::apply(const Eigen::VectorXd& f, double dt) const {
  const Eigen::VectorXd weights = (-dt * eigenvalues_.array()).exp();
  return eigenvectors_ * (weights.asDiagonal() * (eigenvectors_.transpose() * f));
}

ColeHopfState lift(const InitialData& data) {
  return {with_values(data.psi0, (-data.psi0.values.array()).exp().matrix(), "phi"), 0.0};
}

ColeHopfState propagate(const ColeHopfState& state, double dt, const Propagator& propagator) {
  if (!(dt > 0.0)) throw ArgumentError("propagation step must be positive");
  if (!(state.phi.grid == propagator.grid())) throw ArgumentError("propagate: grid mismatch");
  Eigen::VectorXd phi = propagator.apply(state.phi.values, dt);
  Eigen::Index worst = 0;
  if (phi.minCoeff(&worst) <= 0.0) {
    std::ostringstream msg;
    msg << "propagated phi is nonpositive (" << phi[worst] << ") at node " << worst
        << ", t = " << state.t + dt << "; grid is under-resolved";
    throw NumericalError(msg.str());
  }
  return {with_values(state.phi, std::move(phi), "phi"), state.t + dt};
}

VelocityField velocity(const ColeHopfState& state) {
  VelocityField u{{}, state.t};
  for (int axis = 0; axis < state.phi.grid.dim; ++axis) {
    const Field d = derivative(state.phi, axis);
    u.components.push_back(with_values(
        state.phi, (-d.values.array() / state.phi.values.array()).matrix(), "u" + std::to_string(axis + 1)));
  }
  return u;
}

VelocityField initial_velocity(const InitialData& data) {
  VelocityField u{{}, 0.0};
  for (int axis = 0; axis < data.psi0.grid.dim; ++axis) {
    Field d = derivative(data.psi0, axis);
    d.label = "u" + std::to_string(axis + 1);
    u.components.push_back(std::move(d));
  }
  return u;
}

VelocityField cole_hopf_velocity(const InitialData& data, const Propagator& propagator, double t) {
  if (t == 0.0) return initial_velocity(data);
  return velocity(propagate(lift(data), t, propagator));
}

VelocityField stationary(const Field& omega) {
  const double scale = omega.values.maxCoeff();
  if (!(omega.values.minCoeff() > 0.0)) throw ArgumentError("Omega must be strictly positive");
  const Field normalized = with_values(omega, omega.values / scale, "omega");
  VelocityField u = velocity({normalized, 0.0});
  u.t = 0.0;
  return u;
}

VelocityField stationary(const GroundState& gs) { return stationary(gs.omega); }

double sup_distance(const VelocityField& u, const VelocityField& v) {
  if (u.components.size() != v.components.size() || u.components.empty()) {
    throw ArgumentError("sup_distance: component count mismatch");
  }
  Eigen::VectorXd squared = Eigen::VectorXd::Zero(u.components[0].values.size());
  for (std::size_t c = 0; c < u.components.size(); ++c) {
    require_same_grid(u.components[c], v.components[c], "sup_distance");
    squared += (u.components[c].values - v.components[c].values).array().square().matrix();
  }
  return std::sqrt(squared.maxCoeff());
}

Field curl(const VelocityField& u) {
  if (u.components.size() != 2) throw ArgumentError("curl needs a 2-D velocity field");
  const Field d1u2 = derivative(u.components[1], 0);
  const Field d2u1 = derivative(u.components[0], 1);
  return with_values(u.components[0], d1u2.values - d2u1.values, "curl");
}

VelocityField relative_gradient_form(const ColeHopfState& state, const GroundState& gs) {
  require_same_grid(state.phi, gs.omega, "relative_gradient_form");
  const Field ratio =
      with_values(state.phi, (state.phi.values.array() / gs.omega.values.array()).matrix(), "phi/omega");
  const Eigen::ArrayXd factor = gs.omega.values.array() / state.phi.values.array();
  VelocityField out{{}, state.t};
  for (int axis = 0; axis < state.phi.grid.dim; ++axis) {
    const Field d = derivative(ratio, axis);
    out.components.push_back(with_values(ratio, (d.values.array() * factor).matrix(), "du"));
  }
  return out;
}

Sandwich sandwich(const InitialData& data, const GroundState& gs) {
  return {data.c1 * gs.a / gs.b, data.c2 * gs.b / gs.a};
}

Field intrinsic_generator(const GroundState& gs, const Field& f) {
  require_same_grid(gs.omega, f, "intrinsic_generator");
  Eigen::ArrayXd out = -laplacian(f).values.array();
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    const Eigen::ArrayXd drift = derivative(gs.omega, axis).values.array() / gs.omega.values.array();
    out -= 2.0 * drift * derivative(f, axis).values.array();
  }
  return with_values(f, out.matrix(), "M f");
}

Field intrinsic_generator_divergence(const GroundState& gs, const Field& f) {
  require_same_grid(gs.omega, f, "intrinsic_generator_divergence");
  const Eigen::ArrayXd weight = gs.omega.values.array().square();
  Eigen::ArrayXd div = Eigen::ArrayXd::Zero(f.values.size());
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    const Field flux = with_values(f, (weight * derivative(f, axis).values.array()).matrix(), "flux");
    div += derivative(flux, axis).values.array();
  }
  return with_values(f, (-div / weight).matrix(), "M f");
}

double intrinsic_energy(const GroundState& gs, const Field& f) {
  require_same_grid(gs.omega, f, "intrinsic_energy");
  Eigen::ArrayXd density = Eigen::ArrayXd::Zero(f.values.size());
  for (int axis = 0; axis < f.grid.dim; ++axis) density += derivative(f, axis).values.array().square();
  density *= gs.omega.values.array().square();
  return quadrature(with_values(f, density.matrix(), "energy density"));
}

double intrinsic_inner(const GroundState& gs, const Field& f, const Field& g) {
  require_same_grid(f, g, "intrinsic_inner");
  require_same_grid(gs.omega, f, "intrinsic_inner");
  const Eigen::ArrayXd density =
      f.values.array() * g.values.array() * gs.omega.values.array().square();
  return quadrature(with_values(f, density.matrix(), "inner density"));
}

}  // namespace burgers
