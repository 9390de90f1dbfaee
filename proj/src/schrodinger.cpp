#include "burgers/schrodinger.hpp"

#include "burgers/error.hpp"
#include "burgers/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace burgers {
namespace {

using cplx = std::complex<double>;

Eigen::MatrixXi plane_wave_modes(int dim, int cutoff) {
  const int side = 2 * cutoff + 1;
  const int count = dim == 1 ? side : side * side;
  Eigen::MatrixXi modes(dim, count);
  for (int i = 0; i < count; ++i) {
    modes(0, i) = i % side - cutoff;
    if (dim == 2) modes(1, i) = i / side - cutoff;
  }
  return modes;
}

// Fourier coefficient of V at integer mode d, with the Nyquist slot shared
// evenly between +n/2 and -n/2 and zero beyond.
class PotentialCoefficients {
 public:
  explicit PotentialCoefficients(const Field& v) : grid_(v.grid), spectrum_(forward_transform(v)) {}

  cplx operator()(int d0, int d1) const {
    double weight = 1.0;
    const int half = grid_.n / 2;
    for (int d : {d0, d1}) {
      if (std::abs(d) > half) return {0.0, 0.0};
      if (std::abs(d) == half) weight *= 0.5;
    }
    const Eigen::Index slot = wrap(d0) + (grid_.dim == 2 ? Eigen::Index{grid_.n} * wrap(d1) : 0);
    return weight * spectrum_[slot];
  }

 private:
  int wrap(int d) const { return d < 0 ? d + grid_.n : d % grid_.n; }

  TorusGrid grid_;
  Eigen::VectorXcd spectrum_;
};

// Omega on the grid from the k = 0 ground-state coefficients, phase fixed so
// the cell sum is real and positive.
Eigen::VectorXd ground_state_samples(const FiberSpectrum& fiber, const TorusGrid& grid) {
  const double w = grid.base_wavenumber();
  const double norm = std::pow(grid.period, -0.5 * grid.dim);
  Eigen::VectorXcd psi(grid.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const auto p = grid.point(i);
    cplx sum{0.0, 0.0};
    for (Eigen::Index g = 0; g < fiber.modes.cols(); ++g) {
      double phase = w * fiber.modes(0, g) * p[0];
      if (grid.dim == 2) phase += w * fiber.modes(1, g) * p[1];
      sum += fiber.eigenvectors(g, 0) * std::polar(norm, phase);
    }
    psi[i] = sum;
  }
  const cplx total = psi.sum();
  if (std::abs(total) == 0.0) throw NumericalError("ground state has zero cell average");
  psi *= std::conj(total) / std::abs(total);
  return psi.real();
}

struct Attempt {
  GroundStateResult result;
  bool positive = false;
};

Attempt try_ground_state(const Potential& v, int cutoff) {
  const FiberSpectrum fiber =
      assemble_fiber(v, Eigen::VectorXd::Zero(v.v.grid.dim), cutoff);
  Attempt attempt;
  GroundState& gs = attempt.result.state;
  gs.e0 = fiber.energies[0];
  gs.cutoff = cutoff;
  Eigen::VectorXd omega = ground_state_samples(fiber, v.v.grid);
  omega /= omega.maxCoeff();
  gs.a = omega.minCoeff();
  gs.b = omega.maxCoeff();
  attempt.positive = gs.a > 0.0;
  gs.omega = Field(v.v.grid, std::move(omega), "omega");

  Eigen::VectorXd shifted = v.v.values.array() - gs.e0;
  attempt.result.shifted = Potential{Field(v.v.grid, std::move(shifted), v.v.label + "-shifted"),
                                     v.holder_note};
  const Eigen::VectorXd applied =
      -0.5 * laplacian(gs.omega).values.array() +
      attempt.result.shifted.v.values.array() * gs.omega.values.array();
  gs.residual = applied.cwiseAbs().maxCoeff();
  return attempt;
}

}  // namespace

Potential PotentialSpec::make(const TorusGrid& grid) const {
  const double w = grid.base_wavenumber();
  const double amp = amplitude;
  std::function<double(double, double)> f;
  std::string note = "trigonometric polynomial (analytic)";
  if (name == "zero") {
    f = [](double, double) { return 0.0; };
    note = "identically zero";
  } else if (name == "cosine") {
    f = [=](double x, double) { return amp * std::cos(w * x); };
  } else if (name == "two-mode") {
    f = [=](double x, double) { return amp * (std::cos(w * x) + 0.5 * std::cos(2.0 * w * x)); };
  } else if (name == "separable-2d") {
    if (grid.dim != 2) throw ArgumentError("potential 'separable-2d' needs a 2-D grid");
    f = [=](double x, double y) { return amp * (std::cos(w * x) + std::cos(w * y)); };
  } else {
    throw ArgumentError("unknown potential '" + name + "'");
  }
  return Potential{sample(grid, f, name), note};
}

std::complex<double> FiberSpectrum::bloch(Eigen::Index band, double x, bool derivative) const {
  const double w = kTwoPi / period;
  const double norm = 1.0 / std::sqrt(period);
  cplx sum{0.0, 0.0};
  for (Eigen::Index g = 0; g < modes.cols(); ++g) {
    const double q = k[0] + w * modes(0, g);
    cplx term = eigenvectors(g, band) * std::polar(norm, q * x);
    if (derivative) term *= cplx{0.0, q};
    sum += term;
  }
  return sum;
}

FiberSpectrum assemble_fiber(const Potential& v, const Eigen::VectorXd& k, int cutoff) {
  const TorusGrid& grid = v.v.grid;
  if (k.size() != grid.dim) throw ArgumentError("quasimomentum dimension does not match grid");
  if (cutoff < 1 || cutoff > grid.n / 2) {
    throw ArgumentError("fiber cutoff " + std::to_string(cutoff) + " outside [1, n/2 = " +
                        std::to_string(grid.n / 2) + "]");
  }
  const PotentialCoefficients vhat(v.v);
  const Eigen::MatrixXi modes = plane_wave_modes(grid.dim, cutoff);
  const Eigen::Index size = modes.cols();
  const double w = grid.base_wavenumber();

  Eigen::MatrixXcd h(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = 0; i < size; ++i) {
      const int d0 = modes(0, i) - modes(0, j);
      const int d1 = grid.dim == 2 ? modes(1, i) - modes(1, j) : 0;
      h(i, j) = vhat(d0, d1);
    }
    const double kinetic = 0.5 * (k + w * modes.col(j).cast<double>()).squaredNorm();
    h(j, j) += kinetic;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "fiber eigensolver failed at k = " << k.transpose() << " (cutoff " << cutoff << ")";
    throw NumericalError(msg.str());
  }
  FiberSpectrum out;
  out.k = k;
  out.energies = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.modes = modes;
  out.period = grid.period;
  out.cutoff = cutoff;
  return out;
}

FiberSpectrum assemble_fiber(const Potential& v, double k, int cutoff) {
  Eigen::VectorXd kv = Eigen::VectorXd::Zero(v.v.grid.dim);
  kv[0] = k;
  return assemble_fiber(v, kv, cutoff);
}

int default_cutoff(const TorusGrid& grid) {
  return std::min(grid.dim == 1 ? 64 : 32, grid.n / 2);
}

GroundStateResult ground_state(const Potential& v, std::optional<int> cutoff) {
  int m = cutoff.value_or(default_cutoff(v.v.grid));
  constexpr double kResidualTolerance = 1e-8;
  Attempt attempt = try_ground_state(v, m);
  const bool ok = attempt.positive && attempt.result.state.residual <= kResidualTolerance;
  if (!ok && 2 * m <= v.v.grid.n / 2) {
    m *= 2;
    attempt = try_ground_state(v, m);
  }
  if (!attempt.positive) {
    throw NumericalError("ground state has a nonpositive sample at cutoff " + std::to_string(m) +
                         "; increase the cutoff or grid size");
  }
  if (attempt.result.state.residual > kResidualTolerance) {
    std::ostringstream msg;
    msg << "ground state residual " << attempt.result.state.residual << " exceeds "
        << kResidualTolerance << " at cutoff " << m << "; refine the grid";
    throw NumericalError(msg.str());
  }
  return attempt.result;
}

std::vector<BandSample> band(const Potential& v, int band_index, const std::vector<double>& k_samples,
                             std::optional<int> cutoff) {
  const int m = cutoff.value_or(default_cutoff(v.v.grid));
  if (band_index < 0) throw ArgumentError("band index must be nonnegative");
  std::vector<BandSample> out(k_samples.size());
  parallel_for(k_samples.size(), [&](std::size_t i) {
    const FiberSpectrum fiber = assemble_fiber(v, k_samples[i], m);
    if (band_index >= fiber.bands()) throw ArgumentError("band index exceeds fiber size");
    out[i] = {k_samples[i], fiber.energies[band_index]};
  });
  return out;
}

double spectral_gap(const Potential& v, std::optional<int> cutoff) {
  const int m = cutoff.value_or(default_cutoff(v.v.grid));
  const FiberSpectrum fiber = assemble_fiber(v, Eigen::VectorXd::Zero(v.v.grid.dim), m);
  return fiber.energies[1] - fiber.energies[0];
}

EffectiveMass effective_mass(const std::vector<BandSample>& band0, double k_fit) {
  const auto origin = std::find_if(band0.begin(), band0.end(),
                                   [](const BandSample& s) { return s.k == 0.0; });
  if (origin == band0.end()) throw ArgumentError("band samples must include k = 0");
  std::vector<BandSample> window;
  for (const auto& s : band0) {
    if (s.k != 0.0 && std::abs(s.k) <= k_fit * (1.0 + 1e-12)) window.push_back(s);
  }
  if (window.size() < 3) throw ArgumentError("fewer than 3 band samples inside the fit window");

  Eigen::MatrixXd design(window.size(), 2);
  Eigen::VectorXd rhs(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) {
    const double k2 = window[i].k * window[i].k;
    design(i, 0) = k2;
    design(i, 1) = k2 * k2;
    rhs[i] = window[i].energy - origin->energy;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  EffectiveMass fit;
  fit.curvature = coef[0];
  fit.quartic = coef[1];
  fit.k_fit = k_fit;
  const double scale = rhs.norm();
  fit.residual = scale > 0.0 ? (design * coef - rhs).norm() / scale : 0.0;
  if (!(fit.curvature > 0.0) || fit.residual > 0.05) {
    std::ostringstream msg;
    msg << "bottom band minimum is not strictly quadratic: c = " << fit.curvature
        << ", relative residual = " << fit.residual;
    throw PropertyViolation(msg.str());
  }
  return fit;
}

}  // namespace burgers
