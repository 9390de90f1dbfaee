#pragma once

#include "burgers/schrodinger.hpp"
#include "burgers/spectral.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace burgers {

/// Velocity potential psi0 of gradient initial data u0 = grad psi0, together
/// with the bounds c1 <= exp(-psi0) <= c2.
struct InitialData {
  Field psi0;
  double c1 = 1.0;
  double c2 = 1.0;
};

/// Computes c1, c2 from the samples.
InitialData make_initial_data(Field psi0);

/// Named built-in initial potentials:
///   zero          psi0 = 0
///   sine          psi0 = A sin x                 (2-D: A (sin x + sin(x + y) / 2))
///   log-cosine    psi0 = -log(2 + cos x)         (amplitude ignored)
///   ground-state  psi0 = -log Omega               (needs the ground state)
struct InitialDataSpec {
  std::string name = "sine";
  double amplitude = 1.0;

  /// `omega` is only consulted by "ground-state".
  InitialData make(const TorusGrid& grid, const Field* omega = nullptr) const;
};

/// phi(., t) on the torus.
struct ColeHopfState {
  Field phi;
  double t = 0.0;
};

struct VelocityField {
  std::vector<Field> components;
  double t = 0.0;
};

/// exp(-t H) for the torus discretization of H = -(1/2)Lap + V (V already
/// shifted), realized exactly in the eigenbasis of the collocation matrix.
/// Immutable after construction.
class Propagator {
 public:
  explicit Propagator(const Potential& shifted);

  const TorusGrid& grid() const { return grid_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// exp(-dt H) f.
  Eigen::VectorXd apply(const Eigen::VectorXd& f, double dt) const;
  /// Distance between the two lowest eigenvalues.
  double gap() const { return eigenvalues_[1] - eigenvalues_[0]; }

 private:
  TorusGrid grid_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Dense collocation matrix of -(1/2)Lap + diag(V) on the grid.
Eigen::MatrixXd hamiltonian_matrix(const Potential& v);

/// phi0 = exp(-psi0) at t = 0.
ColeHopfState lift(const InitialData& data);

/// exp(-dt H) phi. Throws ArgumentError for dt <= 0 and NumericalError when a
/// sample comes out nonpositive.
ColeHopfState propagate(const ColeHopfState& state, double dt, const Propagator& propagator);

/// u = -grad(phi) / phi.
VelocityField velocity(const ColeHopfState& state);

/// Initial velocity u0 = grad psi0, the exact t = 0 value of the pipeline.
VelocityField initial_velocity(const InitialData& data);

/// Cole-Hopf velocity at time t: initial_velocity at t = 0, otherwise
/// velocity(propagate(lift(data), t)).
VelocityField cole_hopf_velocity(const InitialData& data, const Propagator& propagator, double t);

/// Stationary solution u_inf = -grad(Omega) / Omega. Omega is rescaled to
/// max 1 first, so the result does not depend on its normalization.
VelocityField stationary(const Field& omega);
VelocityField stationary(const GroundState& gs);

/// max over nodes of |u(x) - v(x)| (Euclidean over components).
double sup_distance(const VelocityField& u, const VelocityField& v);

/// d1 u2 - d0 u1 on a 2-D grid.
Field curl(const VelocityField& u);

/// [grad(phi / Omega)] * [Omega / phi], which equals u(t) - u_inf.
VelocityField relative_gradient_form(const ColeHopfState& state, const GroundState& gs);

/// Two-sided bound c1 a / b <= phi(x, t) <= c2 b / a from positivity
/// preservation and exp(-t H) Omega = Omega.
struct Sandwich {
  double lower = 0.0;
  double upper = 0.0;
};
Sandwich sandwich(const InitialData& data, const GroundState& gs);

/// Intrinsic generator M f = -Lap f - 2 (grad Omega / Omega) . grad f.
Field intrinsic_generator(const GroundState& gs, const Field& f);
/// Same operator in divergence form, -Omega^-2 div(Omega^2 grad f).
Field intrinsic_generator_divergence(const GroundState& gs, const Field& f);
/// Dirichlet form of M, integral of |grad f|^2 Omega^2.
double intrinsic_energy(const GroundState& gs, const Field& f);
/// Inner product of L^2(Omega^2 dx).
double intrinsic_inner(const GroundState& gs, const Field& f, const Field& g);

}  // namespace burgers
