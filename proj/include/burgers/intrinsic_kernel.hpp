#pragma once

#include "burgers/cole_hopf.hpp"
#include "burgers/schrodinger.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace burgers {

/// Sample points of a kernel slice. x usually covers one period cell, y
/// several cells around it.
struct KernelSamples {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

/// x on `x_points` nodes of [0, period), y on a uniform grid with
/// `y_per_cell` points per cell covering [-R, period + R] where
/// R = width * sqrt(t) + period, rounded out to whole cells.
KernelSamples default_samples(double t, double period, int x_points = 32, int y_per_cell = 64,
                              double width = 10.0);

struct KernelOptions {
  int n_bands = 24;
  int n_k = 256;
  int cutoff = 16;  // plane-wave modes per side in each Bloch fiber
};

/// Intrinsic kernel L_t(x, y) = K_t(x, y) / (Omega(x) Omega(y)) on the line,
/// with K_t assembled from Bloch fibers over the Brillouin zone.
struct KernelSlice {
  double t = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd L;     // rows follow x, columns follow y
  Eigen::MatrixXd dLdx;
  double truncation_bound = 0.0;
};

/// Brillouin-zone integral of the fiber semigroups,
///   K_t(x, y) = (1/|BZ|) int_BZ sum_{n < n_bands} exp(-t E_n(k)) phi_{n,k}(x) conj(phi_{n,k}(y)) dk,
/// by the uniform n_k-point rule k_j = -pi/period + j |BZ| / n_k (which
/// contains k = 0). `shifted` must be the shifted potential returned by
/// ground_state (E_0(0) = 0); 1-D only.
///
/// Throws ArgumentError for t < 1, n_bands < 2, n_k < 64 or an unshifted
/// potential, and NumericalError ("increase n_bands or t") when the omitted
/// bands may contribute more than 1e-6 max L.
KernelSlice bloch_kernel(const Potential& shifted, const GroundState& gs, double t,
                         const KernelSamples& samples, const KernelOptions& options = {});

struct IntegralDiagnostic {
  double value = 0.0;          // sup_x int |dL/dx(x, y)| dy
  double tail_fraction = 0.0;  // estimated mass beyond the y samples, relative to value
  bool tail_warning = false;   // tail_fraction > 1%
};

/// sup over x samples of the y-integral of |dL/dx|. The integral uses local
/// quintic interpolation of dL/dx between samples, split at its sign changes.
IntegralDiagnostic integral_diagnostic(const KernelSlice& slice);

/// max |dL/dx| over the samples, with the maximum refined along y by local
/// quintic interpolation.
double pointwise_diagnostic(const KernelSlice& slice);

/// y-integral of L_t(x_i, y) Omega(y)^2 for each x sample; 1 up to quadrature
/// and tail error since exp(-tH) Omega = Omega.
Eigen::VectorXd stochasticity(const KernelSlice& slice, const GroundState& gs);

/// Constants of the envelope
///   |dL/dx| <= C t^(-1/2) [exp(-D (x - y)^2 / t) + exp(-E |x - y|)].
struct DecayFit {
  double alpha = 0.0;     // exponent of the pointwise decay max|dL/dx| ~ t^-alpha
  double C = 0.0;
  double D = 0.0;
  double E = 0.0;
  double residual = 0.0;  // mean log-slack of the envelope over significant samples
  double active_fraction = 0.0;  // samples within 5% of equality
  std::pair<double, double> t_window{0.0, 0.0};
};

/// Smallest C making the envelope hold on every sample of every slice for the
/// given D, E; +inf when some sample cannot be covered.
double envelope_constant(const std::vector<KernelSlice>& slices, double D, double E);

/// Scans D, E over a log grid in [0.01, 10]; for each pair takes the smallest
/// admissible C and keeps the pair whose envelope is tightest (least mean
/// log-slack). Needs >= 3 slices and >= 100 samples per slice; throws
/// PropertyViolation when no pair admits a finite C.
DecayFit fit_gaussian_bound(const std::vector<KernelSlice>& slices);

/// Least-squares line through (log x, log y); residual is the largest relative
/// deviation |fit / y - 1|.
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace burgers
