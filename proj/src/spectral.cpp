#include "burgers/spectral.hpp"

#include "burgers/error.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <vector>

namespace burgers {
namespace {

using cplx = std::complex<double>;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Applies op to each line of the field along `axis`; op receives the line
// samples and must return the transformed line.
template <typename Op>
Eigen::VectorXd map_lines(const TorusGrid& grid, const Eigen::VectorXd& values, int axis, Op op) {
  const int n = grid.n;
  Eigen::VectorXd out(values.size());
  const int lines = grid.dim == 1 ? 1 : n;
  const Eigen::Index stride = axis == 0 ? 1 : n;
  const Eigen::Index line_step = axis == 0 ? n : 1;
  std::vector<double> line(n);
  for (int l = 0; l < lines; ++l) {
    const Eigen::Index base = l * line_step;
    for (int j = 0; j < n; ++j) line[j] = values[base + j * stride];
    const std::vector<double> result = op(line);
    for (int j = 0; j < n; ++j) out[base + j * stride] = result[j];
  }
  return out;
}

// Multiplies the half spectrum of each line by multiplier(mode).
template <typename Multiplier>
Eigen::VectorXd spectral_multiply(const Field& f, int axis, Multiplier multiplier) {
  const int n = f.grid.n;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<cplx> spec;
  return map_lines(f.grid, f.values, axis, [&](std::vector<double>& line) {
    fft.fwd(spec, line);
    for (int j = 0; j <= n / 2; ++j) spec[j] *= multiplier(j);
    std::vector<double> out;
    fft.inv(out, spec, n);
    return out;
  });
}

void check_axis(const Field& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim) {
    throw ArgumentError("axis " + std::to_string(axis) + " out of range for a " +
                        std::to_string(f.grid.dim) + "-dimensional grid");
  }
}

}  // namespace

TorusGrid::TorusGrid(int dim_, int n_, double period_) : dim(dim_), n(n_), period(period_) {
  if (dim != 1 && dim != 2) throw ArgumentError("grid dimension must be 1 or 2");
  if (n < 8 || !is_power_of_two(n)) throw ArgumentError("grid size must be a power of two >= 8");
  if (!(period > 0.0) || !std::isfinite(period)) throw ArgumentError("period must be positive");
}

Eigen::Index TorusGrid::size() const {
  return dim == 1 ? Eigen::Index{n} : Eigen::Index{n} * n;
}

std::array<double, 2> TorusGrid::point(Eigen::Index flat) const {
  const auto j0 = static_cast<int>(flat % n);
  const auto j1 = static_cast<int>(flat / n);
  return {node(j0), dim == 2 ? node(j1) : 0.0};
}

Field::Field(TorusGrid grid_, Eigen::VectorXd values_, std::string label_)
    : grid(grid_), values(std::move(values_)), label(std::move(label_)) {
  if (values.size() != grid.size()) {
    throw ArgumentError("field '" + label + "' has " + std::to_string(values.size()) +
                        " samples, grid expects " + std::to_string(grid.size()));
  }
  if (!values.allFinite()) throw ArgumentError("field '" + label + "' has non-finite samples");
}

Field sample(const TorusGrid& grid, const std::function<double(double, double)>& f,
             std::string label) {
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto p = grid.point(i);
    v[i] = f(p[0], p[1]);
  }
  return Field(grid, std::move(v), std::move(label));
}

int signed_mode(int j, int n) { return j <= n / 2 ? j : j - n; }

Field derivative(const Field& f, int axis) {
  check_axis(f, axis);
  const int n = f.grid.n;
  const double w = f.grid.base_wavenumber();
  auto v = spectral_multiply(f, axis, [&](int j) {
    return j == n / 2 ? cplx{0.0, 0.0} : cplx{0.0, w * j};
  });
  return Field(f.grid, std::move(v), "d" + std::to_string(axis) + "(" + f.label + ")");
}

Field laplacian(const Field& f) {
  const double w = f.grid.base_wavenumber();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(f.values.size());
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    sum += spectral_multiply(f, axis, [&](int j) { return cplx{-(w * j) * (w * j), 0.0}; });
  }
  return Field(f.grid, std::move(sum), "lap(" + f.label + ")");
}

double quadrature(const Field& f) {
  return std::pow(f.grid.spacing(), f.grid.dim) * f.values.sum();
}

Eigen::VectorXcd forward_transform(const Field& f) {
  const int n = f.grid.n;
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec(f.values.size());
  std::vector<cplx> in(n), out(n);
  const Eigen::Index lines = f.grid.dim == 1 ? 1 : n;
  for (Eigen::Index l = 0; l < lines; ++l) {
    for (int j = 0; j < n; ++j) in[j] = f.values[l * n + j];
    fft.fwd(out, in);
    for (int j = 0; j < n; ++j) spec[l * n + j] = out[j];
  }
  if (f.grid.dim == 2) {
    for (int c = 0; c < n; ++c) {
      for (int j = 0; j < n; ++j) in[j] = spec[c + Eigen::Index{j} * n];
      fft.fwd(out, in);
      for (int j = 0; j < n; ++j) spec[c + Eigen::Index{j} * n] = out[j];
    }
  }
  return spec / static_cast<double>(f.values.size());
}

Eigen::VectorXd inverse_transform(const TorusGrid& grid, const Eigen::VectorXcd& spectrum) {
  const int n = grid.n;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  Eigen::VectorXcd work = spectrum;
  std::vector<cplx> in(n), out(n);
  const Eigen::Index lines = grid.dim == 1 ? 1 : n;
  for (Eigen::Index l = 0; l < lines; ++l) {
    for (int j = 0; j < n; ++j) in[j] = work[l * n + j];
    fft.inv(out, in);
    for (int j = 0; j < n; ++j) work[l * n + j] = out[j];
  }
  if (grid.dim == 2) {
    for (int c = 0; c < n; ++c) {
      for (int j = 0; j < n; ++j) in[j] = work[c + Eigen::Index{j} * n];
      fft.inv(out, in);
      for (int j = 0; j < n; ++j) work[c + Eigen::Index{j} * n] = out[j];
    }
  }
  return work.real();
}

Interpolant::Interpolant(const Field& f) : field_(f) {
  const int n = f.grid.n;
  const int lines = f.grid.dim == 1 ? 1 : n;
  half_spectra_.resize(n / 2 + 1, lines);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> line(n);
  std::vector<cplx> spec;
  for (int l = 0; l < lines; ++l) {
    for (int j = 0; j < n; ++j) line[j] = f.values[Eigen::Index{l} * n + j];
    fft.fwd(spec, line);
    for (int j = 0; j <= n / 2; ++j) half_spectra_(j, l) = spec[j];
  }
}

double Interpolant::line_value(const Eigen::VectorXd& samples, const Eigen::VectorXcd& half,
                               double x) const {
  const TorusGrid& g = field_.grid;
  const int n = g.n;
  const double s = x / g.spacing();
  const double nearest = std::round(s);
  if (std::abs(s - nearest) <= 1e-12 * std::max(1.0, std::abs(s))) {
    const long j = static_cast<long>(nearest) % n;
    return samples[j < 0 ? j + n : j];
  }
  const double w = g.base_wavenumber();
  const cplx step = std::polar(1.0, w * x);
  cplx phase = step;
  double sum = half[0].real();
  for (int j = 1; j < n / 2; ++j) {
    sum += 2.0 * (half[j] * phase).real();
    phase *= step;
  }
  // Nyquist mode enters as a cosine so the interpolant stays real.
  sum += half[n / 2].real() * std::cos(w * (n / 2) * x);
  return sum / n;
}

double Interpolant::operator()(std::span<const double> point) const {
  const TorusGrid& g = field_.grid;
  if (static_cast<int>(point.size()) != g.dim) {
    throw ArgumentError("interpolation point has wrong dimension");
  }
  if (g.dim == 1) return line_value(field_.values, half_spectra_.col(0), point[0]);
  // Interpolate every axis-0 line at x, then the resulting axis-1 samples at y.
  const int n = g.n;
  Eigen::VectorXd column(n);
  for (int l = 0; l < n; ++l) {
    column[l] = line_value(field_.values.segment(Eigen::Index{l} * n, n), half_spectra_.col(l),
                           point[0]);
  }
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> line(column.data(), column.data() + n);
  std::vector<cplx> spec;
  fft.fwd(spec, line);
  Eigen::VectorXcd half = Eigen::Map<Eigen::VectorXcd>(spec.data(), n / 2 + 1);
  return line_value(column, half, point[1]);
}

double interpolate(const Field& f, std::span<const double> point) {
  return Interpolant(f)(point);
}

double interpolate(const Field& f, double x) { return Interpolant(f)(x); }

}  // namespace burgers
