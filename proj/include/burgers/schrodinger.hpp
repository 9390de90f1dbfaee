#pragma once

#include "burgers/spectral.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace burgers {

/// Periodic potential V sampled on the period cell.
struct Potential {
  Field v;
  std::string holder_note;
};

/// Named built-in potentials. Amplitude A scales every mode:
///   zero          V = 0
///   cosine        V = A cos x            (1-D)   V = A cos x      (2-D)
///   two-mode      V = A (cos x + cos 2x / 2)
///   separable-2d  V = A (cos x + cos y)  (2-D only)
/// Coordinates are scaled by 2 pi / period so every mode stays periodic.
struct PotentialSpec {
  std::string name = "cosine";
  double amplitude = 1.0;

  Potential make(const TorusGrid& grid) const;
};

/// Spectrum of the Bloch fiber H(k) = (1/2)|k + G|^2 + V on periodic parts
/// expanded in plane waves exp(i G x)/sqrt(|cell|), |G_axis| <= cutoff.
struct FiberSpectrum {
  Eigen::VectorXd k;
  Eigen::VectorXd energies;          // ascending
  Eigen::MatrixXcd eigenvectors;     // column n holds the plane-wave coefficients of band n
  Eigen::MatrixXi modes;             // dim x basis size, integer mode numbers
  double period = kTwoPi;
  int cutoff = 0;

  Eigen::Index bands() const { return energies.size(); }
  /// Bloch function exp(i k x) u_{n,k}(x) of band n at x (1-D only), or its
  /// x-derivative when `derivative` is set.
  std::complex<double> bloch(Eigen::Index band, double x, bool derivative = false) const;
};

FiberSpectrum assemble_fiber(const Potential& v, const Eigen::VectorXd& k, int cutoff);
FiberSpectrum assemble_fiber(const Potential& v, double k, int cutoff);

/// Ground state of H = -(1/2)Lap + V on the torus with max Omega = 1.
struct GroundState {
  Field omega;
  double e0 = 0.0;
  double a = 1.0;         // min Omega
  double b = 1.0;         // max Omega (= 1 by normalization)
  double residual = 0.0;  // max |(-(1/2)Lap + V - e0) Omega| on the grid
  int cutoff = 0;
};

struct GroundStateResult {
  GroundState state;
  Potential shifted;  // V - e0, so that inf spec H = 0
};

/// Default fiber cutoff for ground_state: 64 modes per side in 1-D and 32 per
/// axis in 2-D, never more than n/2.
int default_cutoff(const TorusGrid& grid);

/// Computes e0 = E_0(k = 0), the shifted potential and Omega. When Omega fails
/// strict positivity or the 1e-8 residual check, the cutoff is doubled once
/// (within the n/2 limit) before giving up with a NumericalError.
GroundStateResult ground_state(const Potential& v, std::optional<int> cutoff = std::nullopt);

struct BandSample {
  double k;
  double energy;
};

/// E_band(k) along the first reciprocal axis. Fibers are solved in parallel and
/// collected in input order.
std::vector<BandSample> band(const Potential& v, int band_index, const std::vector<double>& k_samples,
                             std::optional<int> cutoff = std::nullopt);

/// Distance from E_0(0) to E_1(0): the decay rate of the torus semigroup
/// toward its ground state.
double spectral_gap(const Potential& v, std::optional<int> cutoff = std::nullopt);

struct EffectiveMass {
  double curvature = 0.0;  // c in E_0(k) - E_0(0) ~ c k^2
  double quartic = 0.0;    // next even coefficient of the fit
  double residual = 0.0;   // relative residual of the fit
  double k_fit = 0.0;
};

/// Least-squares fit E(k) - E(0) = c k^2 + d k^4 over |k| <= k_fit. Throws
/// PropertyViolation when c <= 0 or the relative residual exceeds 0.05, i.e.
/// when the minimum at k = 0 is not strictly quadratic.
EffectiveMass effective_mass(const std::vector<BandSample>& band0, double k_fit = 0.1);

}  // namespace burgers
