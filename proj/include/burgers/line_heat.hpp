#pragma once

#include <vector>

namespace burgers {

/// Radially layered bounded data on the line for the free heat flow
/// exp(t Lap / 2). Shell n (n = 1, 2, ...) is R_n < |y| < R_{n+1} and carries
/// values[n % values.size()], so values = {3, 1} reproduces the alternating
/// pattern 2 + (-1)^n. The core |y| < R_1 continues the value of shell 1 and
/// `background` applies beyond the last radius.
struct LineHeatProfile {
  std::vector<double> radii;
  std::vector<double> values;
  double background = 1.0;

  /// Throws ArgumentError unless radii are positive and strictly increasing
  /// (at least two) and all values are positive.
  void validate() const;
  /// Initial value phi0(y).
  double initial(double y) const;
};

/// Exact phi(x, t) as a sum of Gaussian shell masses written with erf/erfc.
double line_heat_phi(const LineHeatProfile& profile, double t, double x);

/// Exact d phi / dx: each jump of phi0 at +-R_i contributes jump * N(x - R_i; t).
double line_heat_gradient(const LineHeatProfile& profile, double t, double x);

/// sup over a log-spaced grid of |x| (both signs, plus the shell radii
/// themselves) of |d phi / dx|.
double line_heat_grad_sup(const LineHeatProfile& profile, double t);

}  // namespace burgers
