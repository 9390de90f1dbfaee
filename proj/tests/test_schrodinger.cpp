#include "burgers/error.hpp"
#include "burgers/parallel.hpp"
#include "burgers/schrodinger.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace burgers;

namespace {

// Plane-wave Hamiltonian for V = A cos x at k = 0, built directly from the
// two nonzero Fourier coefficients A/2.
double mathieu_ground_energy(double amplitude, int cutoff) {
  const int size = 2 * cutoff + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    const double g = i - cutoff;
    h(i, i) = 0.5 * g * g;
    if (i + 1 < size) h(i, i + 1) = h(i + 1, i) = 0.5 * amplitude;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

Potential cosine(int n = 256, double amplitude = 1.0) { return PotentialSpec{"cosine", amplitude}.make(TorusGrid(1, n)); }

}  // namespace

TEST(Fiber, FreeSpectrum) {
  const Potential zero = PotentialSpec{"zero", 1.0}.make(TorusGrid(1, 64));
  const FiberSpectrum f0 = assemble_fiber(zero, 0.0, 8);
  EXPECT_NEAR(f0.energies[0], 0.0, 1e-14);
  EXPECT_NEAR(f0.energies[1], 0.5, 1e-14);
  EXPECT_NEAR(f0.energies[2], 0.5, 1e-14);
  EXPECT_NEAR(assemble_fiber(zero, 0.3, 8).energies[0], 0.045, 1e-14);
}

TEST(Fiber, EnergiesAscendingAndEigenvectorsOrthonormal) {
  const FiberSpectrum f = assemble_fiber(cosine(), 0.17, 16);
  for (Eigen::Index i = 1; i < f.bands(); ++i) EXPECT_LE(f.energies[i - 1], f.energies[i]);
  const Eigen::MatrixXcd gram = f.eigenvectors.adjoint() * f.eigenvectors;
  EXPECT_LE((gram - Eigen::MatrixXcd::Identity(f.bands(), f.bands())).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fiber, CutoffValidation) {
  const Potential v = cosine(64);
  EXPECT_THROW(assemble_fiber(v, 0.0, 0), ArgumentError);
  EXPECT_THROW(assemble_fiber(v, 0.0, 33), ArgumentError);
  EXPECT_THROW(assemble_fiber(v, Eigen::VectorXd::Zero(2), 8), ArgumentError);
}

TEST(Fiber, MathieuAgainstHighCutoffOracle) {
  const double oracle = mathieu_ground_energy(1.0, 256);
  EXPECT_NEAR(oracle, -0.53506485228781, 1e-12);
  const FiberSpectrum f = assemble_fiber(cosine(), 0.0, 64);
  EXPECT_NEAR(f.energies[0], oracle, 1e-8);
}

TEST(Fiber, VariationalMonotonicity) {
  const Potential v = PotentialSpec{"two-mode", 1.5}.make(TorusGrid(1, 256));
  for (int m : {2, 4, 8, 16, 32, 64}) {
    const double coarse = assemble_fiber(v, 0.2, m).energies[0];
    const double fine = assemble_fiber(v, 0.2, 2 * m).energies[0];
    EXPECT_LE(fine, coarse + 1e-12) << m;
  }
}

TEST(Fiber, BlochFunctionSatisfiesEigenproblem) {
  const Potential v = cosine();
  const double k = 0.23;
  const FiberSpectrum f = assemble_fiber(v, k, 32);
  // -1/2 psi'' + cos(x) psi = E psi with psi'' by central differences.
  const double h = 1e-3;
  for (double x : {0.3, 1.7, 4.0}) {
    for (int band : {0, 1, 2}) {
      const auto psi = f.bloch(band, x);
      const auto second = (f.bloch(band, x + h) - 2.0 * psi + f.bloch(band, x - h)) / (h * h);
      const auto residual = -0.5 * second + std::cos(x) * psi - f.energies[band] * psi;
      EXPECT_LE(std::abs(residual), 1e-5);
      const auto central = (f.bloch(band, x + h) - f.bloch(band, x - h)) / (2 * h);
      EXPECT_LE(std::abs(central - f.bloch(band, x, true)), 1e-5);
    }
  }
  // Bloch condition psi(x + L) = e^{ikL} psi(x).
  const auto shifted = f.bloch(0, 0.5 + kTwoPi);
  EXPECT_LE(std::abs(shifted - std::polar(1.0, k * kTwoPi) * f.bloch(0, 0.5)), 1e-12);
}

TEST(GroundState, FreeCase) {
  const Potential zero = PotentialSpec{"zero", 1.0}.make(TorusGrid(1, 64));
  const GroundStateResult r = ground_state(zero);
  EXPECT_NEAR(r.state.e0, 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(r.state.a, 1.0);
  EXPECT_DOUBLE_EQ(r.state.b, 1.0);
  EXPECT_LE((r.state.omega.values.array() - 1.0).abs().maxCoeff(), 1e-14);
  EXPECT_LE(r.state.residual, 1e-10);
}

TEST(GroundState, Cosine) {
  const Potential v = cosine();
  const GroundStateResult r = ground_state(v);
  const GroundState& gs = r.state;
  EXPECT_NEAR(gs.e0, mathieu_ground_energy(1.0, 256), 1e-8);
  EXPECT_GT(gs.a, 0.0);
  EXPECT_DOUBLE_EQ(gs.b, 1.0);
  EXPECT_LE(gs.residual, 1e-8);
  // Minimum of Omega where V is largest (x = 0).
  Eigen::Index argmin = 0;
  gs.omega.values.minCoeff(&argmin);
  EXPECT_EQ(argmin, 0);
  Eigen::Index argmax = 0;
  gs.omega.values.maxCoeff(&argmax);
  EXPECT_EQ(argmax, v.v.grid.n / 2);
  // Shifted potential has a zero-energy bottom.
  EXPECT_LE(std::abs(assemble_fiber(r.shifted, 0.0, 64).energies[0]), 1e-10);
  const Field res = laplacian(gs.omega);
  const Eigen::VectorXd hw = -0.5 * res.values + (r.shifted.v.values.array() * gs.omega.values.array()).matrix();
  EXPECT_LE(hw.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GroundState, SeparableTwoDimensional) {
  const TorusGrid g2(2, 32);
  const GroundStateResult r2 = ground_state(PotentialSpec{"separable-2d", 1.0}.make(g2));
  const GroundStateResult r1 = ground_state(cosine(32));
  EXPECT_NEAR(r2.state.e0, 2.0 * r1.state.e0, 1e-7);
  double err = 0.0;
  for (Eigen::Index i = 0; i < g2.size(); ++i) {
    const Eigen::Index j0 = i % g2.n;
    const Eigen::Index j1 = i / g2.n;
    err = std::max(err, std::abs(r2.state.omega.values[i] - r1.state.omega.values[j0] * r1.state.omega.values[j1]));
  }
  EXPECT_LE(err, 1e-7);
  EXPECT_LE(r2.state.residual, 1e-8);
}

TEST(GroundState, UnknownPotential) {
  EXPECT_THROW((PotentialSpec{"quartic", 1.0}.make(TorusGrid(1, 64))), ArgumentError);
  EXPECT_THROW((PotentialSpec{"separable-2d", 1.0}.make(TorusGrid(1, 64))), ArgumentError);
}

TEST(Band, FreeBand) {
  const Potential zero = PotentialSpec{"zero", 1.0}.make(TorusGrid(1, 64));
  const auto b = band(zero, 0, {0.0, 0.2, -0.2});
  ASSERT_EQ(b.size(), 3u);
  EXPECT_NEAR(b[0].energy, 0.0, 1e-14);
  EXPECT_NEAR(b[1].energy, 0.02, 1e-14);
  EXPECT_NEAR(b[2].energy, 0.02, 1e-14);
}

TEST(Band, CosineEvenWithUniqueMinimum) {
  const Potential v = cosine();
  std::vector<double> ks;
  for (int j = -32; j <= 32; ++j) ks.push_back(0.5 * j / 32.0);
  for (int b : {0, 1, 2}) {
    const auto samples = band(v, b, ks);
    for (int j = 0; j < 32; ++j) EXPECT_NEAR(samples[j].energy, samples[64 - j].energy, 1e-10);
  }
  const auto b0 = band(v, 0, ks);
  for (int j = 0; j < 65; ++j) {
    if (j != 32) EXPECT_GT(b0[j].energy, b0[32].energy);
  }
}

TEST(Band, ParallelMatchesSerialBitwise) {
  const Potential v = cosine(128);
  std::vector<double> ks;
  for (int j = -8; j <= 8; ++j) ks.push_back(0.5 * j / 8.0);
  set_thread_count(1);
  const auto serial = band(v, 1, ks);
  set_thread_count(4);
  const auto parallel = band(v, 1, ks);
  set_thread_count(1);
  for (std::size_t i = 0; i < ks.size(); ++i) EXPECT_EQ(serial[i].energy, parallel[i].energy);
}

TEST(EffectiveMass, FreeBand) {
  const Potential zero = PotentialSpec{"zero", 1.0}.make(TorusGrid(1, 64));
  std::vector<double> ks;
  for (int j = -32; j <= 32; ++j) ks.push_back(0.5 * j / 32.0);
  const EffectiveMass m = effective_mass(band(zero, 0, ks), 0.1);
  EXPECT_NEAR(m.curvature, 0.5, 1e-12);
  EXPECT_LE(m.residual, 1e-12);
}

TEST(EffectiveMass, CosineAndWindowStability) {
  const Potential v = cosine();
  std::vector<double> ks;
  for (int j = -64; j <= 64; ++j) ks.push_back(0.5 * j / 64.0);
  const auto b0 = band(v, 0, ks);
  const EffectiveMass m = effective_mass(b0, 0.1);
  EXPECT_GT(m.curvature, 0.0);
  EXPECT_LT(m.curvature, 0.5);
  EXPECT_LE(m.residual, 1e-3);
  const EffectiveMass half = effective_mass(b0, 0.05);
  EXPECT_LE(std::abs(half.curvature - m.curvature) / m.curvature, 0.01);
}

TEST(EffectiveMass, RejectsNonQuadraticMinimum) {
  std::vector<BandSample> flat;
  for (int j = -10; j <= 10; ++j) flat.push_back({0.01 * j, -std::pow(0.01 * j, 2)});
  EXPECT_THROW(effective_mass(flat, 0.1), PropertyViolation);
  std::vector<BandSample> no_origin{{0.01, 1.0}, {0.02, 2.0}, {0.03, 3.0}};
  EXPECT_THROW(effective_mass(no_origin, 0.1), ArgumentError);
}

TEST(SpectralGap, Positive) {
  EXPECT_NEAR(spectral_gap(PotentialSpec{"zero", 1.0}.make(TorusGrid(1, 64))), 0.5, 1e-14);
  const double g = spectral_gap(cosine());
  EXPECT_GT(g, 0.0);
  EXPECT_NEAR(g, 0.34336013 + 0.53506485, 1e-6);
}
