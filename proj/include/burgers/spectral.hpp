#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>

namespace burgers {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid on [0, period)^dim with n samples per axis.
/// Flat index of node (j0, j1) is j0 + n * j1, so axis 0 is contiguous.
struct TorusGrid {
  int dim = 1;
  int n = 64;
  double period = kTwoPi;

  TorusGrid() = default;
  /// Throws ArgumentError unless dim is 1 or 2, n >= 8 is a power of two and
  /// period > 0.
  TorusGrid(int dim, int n, double period = kTwoPi);

  Eigen::Index size() const;
  double spacing() const { return period / n; }
  double node(int j) const { return j * spacing(); }
  /// Lattice of wavenumbers: mode j oscillates as exp(i j w x) with w = 2 pi / period.
  double base_wavenumber() const { return kTwoPi / period; }
  /// Coordinates of the node with the given flat index (second entry 0 in 1-D).
  std::array<double, 2> point(Eigen::Index flat) const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

/// Real samples of a periodic function on a TorusGrid.
struct Field {
  TorusGrid grid;
  Eigen::VectorXd values;
  std::string label;

  Field() = default;
  /// Throws ArgumentError on a length mismatch or non-finite samples.
  Field(TorusGrid grid, Eigen::VectorXd values, std::string label = {});
};

/// Samples f(x, y) at every node (y is 0 on 1-D grids).
Field sample(const TorusGrid& grid, const std::function<double(double, double)>& f,
             std::string label = {});

/// Signed mode number of DFT slot j: 0, 1, ..., n/2, -(n/2 - 1), ..., -1.
int signed_mode(int j, int n);

/// Exact derivative of the trigonometric interpolant along `axis`; the
/// Nyquist mode is dropped.
Field derivative(const Field& f, int axis);

/// Spectral Laplacian. Unlike derivative(), the Nyquist mode is kept with
/// multiplier -(n/2)^2 so the operator matrix stays symmetric negative
/// semidefinite.
Field laplacian(const Field& f);

/// Trapezoid rule (period/n)^dim * sum(values).
double quadrature(const Field& f);

/// Full complex spectrum with f(x) = sum_k c_k exp(i k.x) (normalized by the
/// number of points); same flat layout as the field.
Eigen::VectorXcd forward_transform(const Field& f);
/// Real part of the inverse of forward_transform.
Eigen::VectorXd inverse_transform(const TorusGrid& grid, const Eigen::VectorXcd& spectrum);

/// Trigonometric interpolant of a field, evaluable anywhere.
class Interpolant {
 public:
  explicit Interpolant(const Field& f);

  /// Value at `point` (dim coordinates). Grid nodes return the stored sample
  /// exactly.
  double operator()(std::span<const double> point) const;
  double operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }

 private:
  double line_value(const Eigen::VectorXd& samples, const Eigen::VectorXcd& half, double x) const;

  Field field_;
  // Half spectra along axis 0, one column per axis-1 line.
  Eigen::MatrixXcd half_spectra_;
};

/// Convenience wrapper around Interpolant for a single evaluation.
double interpolate(const Field& f, std::span<const double> point);
double interpolate(const Field& f, double x);

}  // namespace burgers
