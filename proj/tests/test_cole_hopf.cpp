#include "burgers/cole_hopf.hpp"
#include "burgers/error.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

using namespace burgers;

namespace {

const TorusGrid kGrid(1, 128);

Field synthetic(const TorusGrid& g, const std::function<double(double, double)>& f) { return sample(g, f, "f"); }

double sup(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// Periodic spectral second-derivative matrix on n points of [0, 2pi), n even.
Eigen::MatrixXd second_derivative_matrix(int n) {
  const double h = kTwoPi / n;
  Eigen::MatrixXd d2(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      if (j == l) {
        d2(j, l) = -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
      } else {
        const double s = std::sin((j - l) * h / 2.0);
        d2(j, l) = -((j - l) % 2 == 0 ? 1.0 : -1.0) / (2.0 * s * s);
      }
    }
  }
  return d2;
}

}  // namespace

TEST(Lift, Examples) {
  const InitialData zero = InitialDataSpec{"zero", 1.0}.make(kGrid);
  EXPECT_EQ(zero.c1, 1.0);
  EXPECT_EQ(zero.c2, 1.0);
  EXPECT_LE(sup(lift(zero).phi.values.array() - 1.0), 0.0);

  const InitialData s = InitialDataSpec{"sine", 1.0}.make(TorusGrid(1, 64));
  EXPECT_NEAR(s.c1, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(s.c2, std::exp(1.0), 1e-15);
  const ColeHopfState st = lift(s);
  for (int j = 0; j < 64; ++j) EXPECT_DOUBLE_EQ(st.phi.values[j], std::exp(-std::sin(st.phi.grid.node(j))));

  const InitialData lc = InitialDataSpec{"log-cosine", 1.0}.make(kGrid);
  const ColeHopfState phi = lift(lc);
  for (int j = 0; j < kGrid.n; ++j) EXPECT_NEAR(phi.phi.values[j], 2.0 + std::cos(kGrid.node(j)), 1e-14);
  EXPECT_THROW((InitialDataSpec{"square", 1.0}.make(kGrid)), ArgumentError);
  EXPECT_THROW((InitialDataSpec{"ground-state", 1.0}.make(kGrid)), ArgumentError);
}

TEST(Propagate, FreeSingleModeDecay) {
  const Potential zero = PotentialSpec{"zero", 1.0}.make(kGrid);
  const Propagator p(zero);
  const ColeHopfState s0 = lift(InitialDataSpec{"log-cosine", 1.0}.make(kGrid));
  for (double t : {0.1, 1.0, 3.7}) {
    const ColeHopfState s = propagate(s0, t, p);
    const Field exact = synthetic(kGrid, [t](double x, double) { return 2.0 + std::exp(-t / 2) * std::cos(x); });
    EXPECT_LE(sup(s.phi.values - exact.values), 1e-10);
    EXPECT_DOUBLE_EQ(s.t, t);
  }
  EXPECT_THROW(propagate(s0, 0.0, p), ArgumentError);
  EXPECT_THROW(propagate(s0, -1.0, p), ArgumentError);
}

TEST(Propagate, GroundStateIsStationary) {
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid));
  const Propagator p(r.shifted);
  EXPECT_NEAR(p.eigenvalues()[0], 0.0, 1e-10);
  for (double t : {1.0, 10.0}) {
    EXPECT_LE(sup(p.apply(r.state.omega.values, t) - r.state.omega.values), 1e-8);
  }
}

TEST(Propagate, MatchesMatrixExponentialOracle) {
  const int n = 64;
  const TorusGrid g(1, n);
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(g));
  Eigen::MatrixXd h = -0.5 * second_derivative_matrix(n);
  for (int j = 0; j < n; ++j) h(j, j) += std::cos(g.node(j)) - r.state.e0;
  const Eigen::MatrixXd expo = (-h).exp();

  const InitialData data = InitialDataSpec{"sine", 1.0}.make(g);
  const Eigen::VectorXd oracle = expo * lift(data).phi.values;
  const ColeHopfState s = propagate(lift(data), 1.0, Propagator(r.shifted));
  EXPECT_LE(sup(s.phi.values - oracle), 1e-8);
}

TEST(Propagate, Semigroup) {
  const GroundStateResult r = ground_state(PotentialSpec{"two-mode", 1.0}.make(kGrid));
  const Propagator p(r.shifted);
  const ColeHopfState s0 = lift(InitialDataSpec{"sine", 1.3}.make(kGrid));
  const ColeHopfState twice = propagate(propagate(s0, 0.7, p), 1.9, p);
  const ColeHopfState once = propagate(s0, 2.6, p);
  EXPECT_LE(sup(twice.phi.values - once.phi.values), 1e-9);
  EXPECT_DOUBLE_EQ(twice.t, once.t);
}

TEST(Velocity, Examples) {
  const Field one = synthetic(kGrid, [](double, double) { return 3.0; });
  EXPECT_LE(sup(velocity({one, 0.0}).components[0].values), 1e-14);
  const Field phi = synthetic(kGrid, [](double x, double) { return 2.0 + std::cos(x); });
  const Field exact = synthetic(kGrid, [](double x, double) { return std::sin(x) / (2.0 + std::cos(x)); });
  EXPECT_LE(sup(velocity({phi, 0.0}).components[0].values - exact.values), 1e-12);
}

TEST(Velocity, GroundStateGivesStationarySolution) {
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid));
  const VelocityField u = velocity({r.state.omega, 0.0});
  EXPECT_LE(sup_distance(u, stationary(r.state)), 1e-12);
}

TEST(Stationary, Examples) {
  const Field one = synthetic(kGrid, [](double, double) { return 1.0; });
  EXPECT_LE(sup(stationary(one).components[0].values), 1e-14);
  const Field omega = synthetic(kGrid, [](double x, double) { return 2.0 + std::cos(x); });
  const Field exact = synthetic(kGrid, [](double x, double) { return std::sin(x) / (2.0 + std::cos(x)); });
  EXPECT_LE(sup(stationary(omega).components[0].values - exact.values), 1e-12);
  Eigen::VectorXd bad = omega.values;
  bad[4] = -1.0;
  EXPECT_THROW(stationary(Field(kGrid, bad)), ArgumentError);
}

TEST(Stationary, ScaleInvariance) {
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid));
  const Field& omega = r.state.omega;
  const VelocityField base = stationary(omega);
  // Power-of-two scalings are exact in binary floating point.
  for (double c : {0.25, 8.0, 1024.0}) {
    const VelocityField scaled = stationary(Field(kGrid, c * omega.values));
    for (int j = 0; j < kGrid.n; ++j) EXPECT_EQ(scaled.components[0].values[j], base.components[0].values[j]);
  }
  const VelocityField five = stationary(Field(kGrid, 5.0 * omega.values));
  EXPECT_LE(sup(five.components[0].values - base.components[0].values), 1e-13 * sup(base.components[0].values));
}

TEST(SupDistance, Examples) {
  const Field s = synthetic(TorusGrid(1, 64), [](double x, double) { return std::sin(x); });
  const Field z = synthetic(TorusGrid(1, 64), [](double, double) { return 0.0; });
  const VelocityField u{{s}, 0.0};
  EXPECT_EQ(sup_distance(u, u), 0.0);
  EXPECT_NEAR(sup_distance(u, {{z}, 0.0}), 1.0, 1e-12);
  EXPECT_THROW(sup_distance(u, {{s, s}, 0.0}), ArgumentError);
}

TEST(ColeHopfVelocity, ExactAtTimeZero) {
  const InitialData data = InitialDataSpec{"sine", 1.0}.make(kGrid);
  const Propagator p(ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid)).shifted);
  const VelocityField u0 = cole_hopf_velocity(data, p, 0.0);
  const VelocityField grad = initial_velocity(data);
  for (int j = 0; j < kGrid.n; ++j) EXPECT_EQ(u0.components[0].values[j], grad.components[0].values[j]);
  const Field cosx = synthetic(kGrid, [](double x, double) { return std::cos(x); });
  EXPECT_LE(sup(grad.components[0].values - cosx.values), 1e-12);
}

TEST(ColeHopfVelocity, SolvesForcedBurgers) {
  // Residual of du/dt + u du/dx - u_xx / 2 - V' with a centered time difference.
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid));
  const Propagator p(r.shifted);
  const InitialData data = InitialDataSpec{"sine", 1.0}.make(kGrid);
  const double t = 0.8;
  const double h = 1e-4;
  const Eigen::VectorXd up = cole_hopf_velocity(data, p, t + h).components[0].values;
  const Eigen::VectorXd um = cole_hopf_velocity(data, p, t - h).components[0].values;
  const Field u = cole_hopf_velocity(data, p, t).components[0];
  const Eigen::VectorXd ut = (up - um) / (2 * h);
  const Eigen::VectorXd ux = derivative(u, 0).values;
  const Eigen::VectorXd uxx = laplacian(u).values;
  const Eigen::VectorXd dv = derivative(r.shifted.v, 0).values;
  const Eigen::VectorXd residual = ut + (u.values.array() * ux.array()).matrix() - 0.5 * uxx - dv;
  EXPECT_LE(sup(residual), 1e-6);
}

TEST(Sandwich, HoldsAlongTrajectory) {
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid));
  const Propagator p(r.shifted);
  const InitialData data = InitialDataSpec{"sine", 2.0}.make(kGrid);
  const Sandwich s = sandwich(data, r.state);
  EXPECT_LT(s.lower, s.upper);
  for (double t : {0.5, 2.0, 8.0, 40.0}) {
    const ColeHopfState st = propagate(lift(data), t, p);
    EXPECT_GE(st.phi.values.minCoeff(), s.lower - 1e-10);
    EXPECT_LE(st.phi.values.maxCoeff(), s.upper + 1e-10);
  }
}

TEST(RelativeGradient, IdentityWithVelocityDifference) {
  const GroundStateResult r = ground_state(PotentialSpec{"two-mode", 1.0}.make(kGrid));
  const Propagator p(r.shifted);
  const InitialData data = InitialDataSpec{"sine", 1.0}.make(kGrid);
  const VelocityField uinf = stationary(r.state);
  for (double t : {0.5, 3.0}) {
    const ColeHopfState st = propagate(lift(data), t, p);
    const Eigen::VectorXd lhs = velocity(st).components[0].values - uinf.components[0].values;
    const Eigen::VectorXd rhs = relative_gradient_form(st, r.state).components[0].values;
    EXPECT_LE(sup(lhs + rhs), 1e-10);
  }
}

TEST(Curl, TwoDimensionalFlowStaysGradient) {
  // Amplitudes 1/2 keep u(t) resolved to the tolerance on a 32^2 grid.
  const TorusGrid g(2, 32);
  const GroundStateResult r = ground_state(PotentialSpec{"separable-2d", 0.5}.make(g));
  const Propagator p(r.shifted);
  const InitialData data = InitialDataSpec{"sine", 0.5}.make(g);
  for (double t : {0.0, 0.5, 2.0}) {
    EXPECT_LE(sup(curl(cole_hopf_velocity(data, p, t)).values), 1e-8) << t;
  }
  const Field rot0 = synthetic(g, [](double, double y) { return std::sin(y); });
  const Field rot1 = synthetic(g, [](double x, double) { return -std::sin(x); });
  const Field c = curl({{rot0, rot1}, 0.0});
  EXPECT_GT(sup(c.values), 1.0);
  EXPECT_THROW(curl({{rot0}, 0.0}), ArgumentError);
}

TEST(IntrinsicOperator, FormsAgree) {
  for (int dim : {1, 2}) {
    const TorusGrid g(dim, dim == 1 ? 128 : 32);
    const GroundStateResult r =
        ground_state(PotentialSpec{dim == 1 ? "cosine" : "separable-2d", 1.0}.make(g));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
      const double a = coef(rng), b = coef(rng), c = coef(rng);
      const Field f = synthetic(g, [=](double x, double y) {
        return a * std::sin(3 * x + y) + b * std::cos(x - 2 * y) + c * std::sin(5 * x);
      });
      const Field mf = intrinsic_generator(r.state, f);
      const Field mf_div = intrinsic_generator_divergence(r.state, f);
      EXPECT_LE(sup(mf.values - mf_div.values), 1e-8 * std::max(1.0, sup(mf.values)));
      const double energy = intrinsic_energy(r.state, f);
      EXPECT_NEAR(intrinsic_inner(r.state, f, mf), energy, 1e-8 * std::max(1.0, energy));
      EXPECT_GT(energy, 0.0);
    }
  }
}

TEST(IntrinsicOperator, GeneratorIsConjugatedHamiltonian) {
  // M f = (2 / Omega) H (Omega f) with H shifted.
  const GroundStateResult r = ground_state(PotentialSpec{"cosine", 1.0}.make(kGrid));
  const Field f = synthetic(kGrid, [](double x, double) { return std::sin(2 * x) + 0.5 * std::cos(x); });
  const Field of(kGrid, (r.state.omega.values.array() * f.values.array()).matrix());
  const Eigen::ArrayXd hof =
      -0.5 * laplacian(of).values.array() + r.shifted.v.values.array() * of.values.array();
  const Eigen::VectorXd conj = (2.0 * hof / r.state.omega.values.array()).matrix();
  EXPECT_LE(sup(intrinsic_generator(r.state, f).values - conj), 1e-9);
}
