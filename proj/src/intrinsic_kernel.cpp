#include "burgers/intrinsic_kernel.hpp"

#include "burgers/error.hpp"
#include "burgers/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace burgers {
namespace {

using cplx = std::complex<double>;

// exp(i w G p) / sqrt(period) for every point p (rows) and mode G in
// [-cutoff, cutoff] (columns).
Eigen::MatrixXcd plane_waves(const Eigen::VectorXd& points, double period, int cutoff) {
  const double w = kTwoPi / period;
  const double norm = 1.0 / std::sqrt(period);
  Eigen::MatrixXcd out(points.size(), 2 * cutoff + 1);
  for (Eigen::Index i = 0; i < points.size(); ++i) {
    for (int g = -cutoff; g <= cutoff; ++g) out(i, g + cutoff) = std::polar(norm, w * g * points[i]);
  }
  return out;
}

Eigen::VectorXcd phases(const Eigen::VectorXd& points, double k) {
  Eigen::VectorXcd out(points.size());
  for (Eigen::Index i = 0; i < points.size(); ++i) out[i] = std::polar(1.0, k * points[i]);
  return out;
}

// Degree-5 Lagrange interpolant of (y, f) around interval [j, j+1].
class LocalQuintic {
 public:
  LocalQuintic(const Eigen::VectorXd& y, const Eigen::Ref<const Eigen::VectorXd>& f, Eigen::Index j) {
    const Eigen::Index n = y.size();
    const Eigen::Index width = std::min<Eigen::Index>(6, n);
    start_ = std::clamp<Eigen::Index>(j - 2, 0, n - width);
    count_ = width;
    for (Eigen::Index i = 0; i < count_; ++i) {
      nodes_[i] = y[start_ + i];
      values_[i] = f[start_ + i];
    }
  }

  double operator()(double p) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < count_; ++i) {
      double basis = 1.0;
      for (Eigen::Index m = 0; m < count_; ++m) {
        if (m != i) basis *= (p - nodes_[m]) / (nodes_[i] - nodes_[m]);
      }
      sum += basis * values_[i];
    }
    return sum;
  }

 private:
  std::array<double, 6> nodes_{};
  std::array<double, 6> values_{};
  Eigen::Index start_ = 0;
  Eigen::Index count_ = 0;
};

// 4-point Gauss-Legendre on [a, b]; exact for the quintic pieces.
template <typename F>
double gauss4(const F& f, double a, double b) {
  static constexpr std::array<double, 4> x{-0.8611363115940526, -0.3399810435848563,
                                           0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> w{0.3478548451374538, 0.6521451548625461,
                                           0.6521451548625461, 0.3478548451374538};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += w[i] * f(mid + half * x[i]);
  return half * sum;
}

template <typename F>
double bisect_root(const F& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 60; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Integral of |f| over the sample range using the local quintic interpolant,
// split at sign changes.
double integrate_abs(const Eigen::VectorXd& y, const Eigen::Ref<const Eigen::VectorXd>& f) {
  constexpr int kProbes = 6;
  double total = 0.0;
  for (Eigen::Index j = 0; j + 1 < y.size(); ++j) {
    const LocalQuintic p(y, f, j);
    const double a = y[j];
    const double b = y[j + 1];
    std::array<double, kProbes + 1> cuts{};
    cuts[0] = a;
    int ncuts = 1;
    double prev = f[j];
    double prev_x = a;
    for (int s = 1; s <= kProbes; ++s) {
      const double xs = a + (b - a) * s / kProbes;
      const double fs = s == kProbes ? f[j + 1] : p(xs);
      if ((fs < 0.0) != (prev < 0.0) && fs != 0.0 && prev != 0.0) {
        cuts[ncuts++] = bisect_root(p, prev_x, xs);
      }
      prev = fs;
      prev_x = xs;
    }
    double lo = a;
    for (int c = 1; c <= ncuts; ++c) {
      const double hi = c < ncuts ? cuts[c] : b;
      total += std::abs(gauss4(p, lo, hi));
      lo = hi;
    }
  }
  return total;
}

// Mass of |f| beyond the last samples, assuming at least exponential decay
// continues; the full span is used when the samples show no decay.
double tail_estimate(const Eigen::VectorXd& y, const Eigen::Ref<const Eigen::VectorXd>& f) {
  const Eigen::Index n = y.size();
  const double span = y[n - 1] - y[0];
  auto one_side = [&](double edge, double inner, double h) {
    edge = std::abs(edge);
    inner = std::abs(inner);
    if (edge == 0.0) return 0.0;
    if (inner > edge) return edge * h / std::log(inner / edge);
    return edge * span;
  };
  const double h = y[1] - y[0];
  const double hr = y[n - 1] - y[n - 2];
  return one_side(f[0], f[1], h) + one_side(f[n - 1], f[n - 2], hr);
}

constexpr double kSignificance = 1e-12;

struct EnvelopeSamples {
  std::vector<double> magnitude;  // |dL/dx| sqrt(t)
  std::vector<double> gauss;      // z^2 / t
  std::vector<double> linear;     // |z|
};

EnvelopeSamples collect(const std::vector<KernelSlice>& slices) {
  EnvelopeSamples s;
  for (const auto& slice : slices) {
    const double floor = kSignificance * slice.dLdx.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < slice.x.size(); ++i) {
      for (Eigen::Index j = 0; j < slice.y.size(); ++j) {
        const double v = std::abs(slice.dLdx(i, j));
        if (v <= floor) continue;
        const double z = slice.x[i] - slice.y[j];
        s.magnitude.push_back(v * std::sqrt(slice.t));
        s.gauss.push_back(z * z / slice.t);
        s.linear.push_back(std::abs(z));
      }
    }
  }
  return s;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return out;
}

}  // namespace

KernelSamples default_samples(double t, double period, int x_points, int y_per_cell, double width) {
  if (x_points < 1 || y_per_cell < 8) throw ArgumentError("too few kernel sample points");
  KernelSamples s;
  s.x.resize(x_points);
  for (int i = 0; i < x_points; ++i) s.x[i] = i * period / x_points;
  const double reach = width * std::sqrt(t) + period;
  const int cells = static_cast<int>(std::ceil(reach / period));
  const int count = (2 * cells + 1) * y_per_cell + 1;
  s.y.resize(count);
  const double h = period / y_per_cell;
  for (int j = 0; j < count; ++j) s.y[j] = -cells * period + j * h;
  return s;
}

KernelSlice bloch_kernel(const Potential& shifted, const GroundState& gs, double t,
                         const KernelSamples& samples, const KernelOptions& options) {
  const TorusGrid& grid = shifted.v.grid;
  if (grid.dim != 1) throw ArgumentError("Bloch kernels are implemented for 1-D potentials only");
  if (!(t >= 1.0)) throw ArgumentError("kernel time must satisfy t >= 1");
  if (options.n_bands < 2) throw ArgumentError("n_bands must be >= 2");
  if (options.n_k < 64) throw ArgumentError("n_k must be >= 64");
  if (2 * options.cutoff + 1 <= options.n_bands) {
    throw ArgumentError("fiber cutoff too small for the requested number of bands");
  }
  if (!(gs.omega.grid == grid)) throw ArgumentError("ground state and potential grids differ");
  if (samples.x.size() == 0 || samples.y.size() < 6) throw ArgumentError("too few kernel samples");

  const FiberSpectrum bottom = assemble_fiber(shifted, 0.0, options.cutoff);
  if (std::abs(bottom.energies[0]) > 1e-8) {
    throw ArgumentError("potential is not shifted: E_0(0) = " + std::to_string(bottom.energies[0]));
  }

  const double period = grid.period;
  const double zone = kTwoPi / period;
  const int nk = options.n_k;
  const int nb = options.n_bands;
  std::vector<FiberSpectrum> fibers(nk);
  parallel_for(nk, [&](std::size_t j) {
    fibers[j] = assemble_fiber(shifted, -0.5 * zone + zone * static_cast<double>(j) / nk, options.cutoff);
  });

  const Eigen::MatrixXcd waves_x = plane_waves(samples.x, period, options.cutoff);
  const Eigen::MatrixXcd waves_y = plane_waves(samples.y, period, options.cutoff);
  const Eigen::VectorXd mode_numbers =
      Eigen::VectorXd::LinSpaced(2 * options.cutoff + 1, -options.cutoff, options.cutoff) * zone;

  // Blocks of k-points are reduced in block order so the result does not
  // depend on the thread count.
  constexpr int kBlock = 16;
  const int nblocks = (nk + kBlock - 1) / kBlock;
  const Eigen::Index nx = samples.x.size();
  const Eigen::Index ny = samples.y.size();
  std::vector<Eigen::MatrixXd> k_parts(nblocks), dk_parts(nblocks);
  parallel_for(nblocks, [&](std::size_t blk) {
    const int first = static_cast<int>(blk) * kBlock;
    const int last = std::min(nk, first + kBlock);
    const Eigen::Index width = Eigen::Index{last - first} * nb;
    Eigen::MatrixXcd left(nx, width), dleft(nx, width), right(ny, width);
    for (int j = first; j < last; ++j) {
      const FiberSpectrum& fiber = fibers[j];
      const double k = fiber.k[0];
      const Eigen::MatrixXcd coef = fiber.eigenvectors.leftCols(nb);
      const Eigen::VectorXcd dfactor = (mode_numbers.array() + k).cast<cplx>() * cplx{0.0, 1.0};
      const Eigen::ArrayXd weight = (-t * fiber.energies.head(nb).array()).exp();
      const Eigen::Index col = Eigen::Index{j - first} * nb;
      const Eigen::VectorXcd px = phases(samples.x, k);
      left.middleCols(col, nb) = (px.asDiagonal() * (waves_x * coef)) * weight.matrix().asDiagonal();
      dleft.middleCols(col, nb) =
          (px.asDiagonal() * (waves_x * (dfactor.asDiagonal() * coef))) * weight.matrix().asDiagonal();
      right.middleCols(col, nb) = phases(samples.y, k).asDiagonal() * (waves_y * coef);
    }
    k_parts[blk] = (left * right.adjoint()).real();
    dk_parts[blk] = (dleft * right.adjoint()).real();
  });
  Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(nx, ny);
  Eigen::MatrixXd dkernel = Eigen::MatrixXd::Zero(nx, ny);
  for (int blk = 0; blk < nblocks; ++blk) {
    kernel += k_parts[blk];
    dkernel += dk_parts[blk];
  }
  kernel /= nk;
  dkernel /= nk;

  const Interpolant omega(gs.omega);
  const Interpolant domega(derivative(gs.omega, 0));
  Eigen::ArrayXd ox(nx), dox(nx), oy(ny);
  for (Eigen::Index i = 0; i < nx; ++i) {
    ox[i] = omega(samples.x[i]);
    dox[i] = domega(samples.x[i]);
  }
  for (Eigen::Index j = 0; j < ny; ++j) oy[j] = omega(samples.y[j]);

  KernelSlice slice;
  slice.t = t;
  slice.x = samples.x;
  slice.y = samples.y;
  const Eigen::ArrayXXd outer = ox.matrix() * oy.matrix().transpose();
  slice.L = (kernel.array() / outer).matrix();
  slice.dLdx = (dkernel.array() / outer).matrix() -
               ((dox / ox).matrix().asDiagonal() * slice.L);

  // Omitted bands: exp(-t min_k E_nb(k)) times the sup bound |phi|^2 <=
  // (2 cutoff + 1) / period, converted to L units by Omega >= a.
  double lowest_omitted = std::numeric_limits<double>::infinity();
  for (const auto& fiber : fibers) lowest_omitted = std::min(lowest_omitted, fiber.energies[nb]);
  const double sup_bound = (2.0 * options.cutoff + 1.0) / period;
  slice.truncation_bound = std::exp(-t * lowest_omitted) * sup_bound / (gs.a * gs.a);
  const double lmax = slice.L.cwiseAbs().maxCoeff();
  if (slice.truncation_bound > 1e-6 * lmax) {
    std::ostringstream msg;
    msg << "band truncation bound " << slice.truncation_bound << " exceeds 1e-6 max L at t = " << t
        << " with " << nb << " bands; increase n_bands or t";
    throw NumericalError(msg.str());
  }
  return slice;
}

IntegralDiagnostic integral_diagnostic(const KernelSlice& slice) {
  IntegralDiagnostic out;
  for (Eigen::Index i = 0; i < slice.x.size(); ++i) {
    const Eigen::VectorXd row = slice.dLdx.row(i).transpose();
    const double value = integrate_abs(slice.y, row);
    const double tail = tail_estimate(slice.y, row);
    out.value = std::max(out.value, value);
    if (value > 0.0) out.tail_fraction = std::max(out.tail_fraction, tail / value);
  }
  out.tail_warning = out.tail_fraction > 0.01;
  return out;
}

double pointwise_diagnostic(const KernelSlice& slice) {
  Eigen::Index i = 0, j = 0;
  double best = slice.dLdx.cwiseAbs().maxCoeff(&i, &j);
  const Eigen::Index ny = slice.y.size();
  if (j == 0 || j + 1 >= ny) return best;
  const Eigen::VectorXd row = slice.dLdx.row(i).transpose();
  // |p| is unimodal on [y_{j-1}, y_{j+1}] around a sampled maximum.
  auto value = [&](double p) {
    const Eigen::Index interval = p < slice.y[j] ? j - 1 : j;
    return std::abs(LocalQuintic(slice.y, row, interval)(p));
  };
  double a = slice.y[j - 1];
  double b = slice.y[j + 1];
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = value(c), fd = value(d);
  for (int it = 0; it < 80; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = value(d);
    }
  }
  return std::max(best, std::max(fc, fd));
}

Eigen::VectorXd stochasticity(const KernelSlice& slice, const GroundState& gs) {
  const Interpolant omega(gs.omega);
  Eigen::ArrayXd weight(slice.y.size());
  for (Eigen::Index j = 0; j < slice.y.size(); ++j) weight[j] = std::pow(omega(slice.y[j]), 2);
  Eigen::VectorXd out(slice.x.size());
  for (Eigen::Index i = 0; i < slice.x.size(); ++i) {
    const Eigen::VectorXd row = (slice.L.row(i).transpose().array() * weight).matrix();
    out[i] = integrate_abs(slice.y, row);
  }
  return out;
}

double envelope_constant(const std::vector<KernelSlice>& slices, double D, double E) {
  const EnvelopeSamples s = collect(slices);
  double c = 0.0;
  for (std::size_t i = 0; i < s.magnitude.size(); ++i) {
    const double bound = std::exp(-D * s.gauss[i]) + std::exp(-E * s.linear[i]);
    if (bound == 0.0) return std::numeric_limits<double>::infinity();
    c = std::max(c, s.magnitude[i] / bound);
  }
  return c;
}

DecayFit fit_gaussian_bound(const std::vector<KernelSlice>& slices) {
  if (slices.size() < 3) throw ArgumentError("envelope fit needs at least 3 time slices");
  for (const auto& slice : slices) {
    if (slice.x.size() * slice.y.size() < 100) {
      throw ArgumentError("envelope fit needs at least 100 samples per slice");
    }
  }
  const EnvelopeSamples s = collect(slices);
  const std::size_t count = s.magnitude.size();
  if (count == 0) throw ArgumentError("envelope fit found no significant samples");
  const std::vector<double> grid = log_grid(0.01, 10.0, 31);
  const std::size_t g = grid.size();

  // Admissible C for every (D, E) on all samples.
  Eigen::MatrixXd constant = Eigen::MatrixXd::Zero(g, g);
  Eigen::VectorXd gauss(g), expo(g);
  auto fill = [&](std::size_t i) {
    for (std::size_t a = 0; a < g; ++a) {
      gauss[a] = std::exp(-grid[a] * s.gauss[i]);
      expo[a] = std::exp(-grid[a] * s.linear[i]);
    }
  };
  for (std::size_t i = 0; i < count; ++i) {
    fill(i);
    for (std::size_t b = 0; b < g; ++b) {
      for (std::size_t a = 0; a < g; ++a) {
        const double bound = gauss[a] + expo[b];
        const double ratio = bound == 0.0 ? std::numeric_limits<double>::infinity() : s.magnitude[i] / bound;
        constant(a, b) = std::max(constant(a, b), ratio);
      }
    }
  }

  // Tightness of each envelope, measured on an evenly strided subset.
  const std::size_t stride = std::max<std::size_t>(1, count / 20000);
  Eigen::MatrixXd slack = Eigen::MatrixXd::Zero(g, g);
  Eigen::MatrixXd active = Eigen::MatrixXd::Zero(g, g);
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; i += stride, ++used) {
    fill(i);
    for (std::size_t b = 0; b < g; ++b) {
      for (std::size_t a = 0; a < g; ++a) {
        const double ratio = constant(a, b) * (gauss[a] + expo[b]) / s.magnitude[i];
        slack(a, b) += std::log(ratio);
        if (ratio <= 1.05) active(a, b) += 1.0;
      }
    }
  }

  DecayFit best;
  double best_slack = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < g; ++b) {
    for (std::size_t a = 0; a < g; ++a) {
      if (!std::isfinite(constant(a, b))) continue;
      const double mean = slack(a, b) / static_cast<double>(used);
      if (mean < best_slack) {
        best_slack = mean;
        best.C = constant(a, b);
        best.D = grid[a];
        best.E = grid[b];
        best.residual = mean;
        best.active_fraction = active(a, b) / static_cast<double>(used);
      }
    }
  }
  if (!std::isfinite(best_slack)) {
    throw PropertyViolation("no envelope with D, E >= 0.01 admits a finite constant C");
  }

  std::vector<double> times, peaks;
  for (const auto& slice : slices) {
    times.push_back(slice.t);
    peaks.push_back(pointwise_diagnostic(slice));
  }
  best.alpha = -fit_power_law(times, peaks).slope;
  best.t_window = {*std::min_element(times.begin(), times.end()),
                   *std::max_element(times.begin(), times.end())};
  return best;
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("power-law fit needs >= 2 matched points");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ArgumentError("power-law fit needs positive data");
    design(i, 0) = std::log(x[i]);
    design(i, 1) = 1.0;
    rhs[i] = std::log(y[i]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  PowerLawFit fit{coef[0], coef[1], 0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double predicted = std::exp(coef[1]) * std::pow(x[i], coef[0]);
    fit.residual = std::max(fit.residual, std::abs(predicted / y[i] - 1.0));
  }
  return fit;
}

}  // namespace burgers
