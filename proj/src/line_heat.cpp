#include "burgers/line_heat.hpp"

#include "burgers/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace burgers {
namespace {

// Probability that N(x, t) lies in (lo, hi), accurate in both tails.
double gaussian_mass(double lo, double hi, double x, double t) {
  const double s = std::sqrt(2.0 * t);
  const double a = (lo - x) / s;
  const double b = (hi - x) / s;
  if (a >= 0.0) return 0.5 * (std::erfc(a) - std::erfc(b));
  if (b <= 0.0) return 0.5 * (std::erfc(-b) - std::erfc(-a));
  return 0.5 * (std::erf(b) - std::erf(a));
}

double heat_density(double z, double t) {
  return std::exp(-z * z / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
}

// Value on shell n (n >= 1); the core uses shell 1.
double shell_value(const LineHeatProfile& p, std::size_t n) {
  return p.values[std::max<std::size_t>(n, 1) % p.values.size()];
}

}  // namespace

void LineHeatProfile::validate() const {
  if (radii.size() < 2) throw ArgumentError("profile needs at least two radii");
  if (values.empty()) throw ArgumentError("profile needs at least one shell value");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw ArgumentError("profile radii must be positive and strictly increasing");
    }
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("profile values must be positive");
  }
  if (!(background > 0.0)) throw ArgumentError("profile background must be positive");
}

double LineHeatProfile::initial(double y) const {
  const double r = std::abs(y);
  if (r >= radii.back()) return background;
  const auto shell = static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), r) - radii.begin());
  return shell_value(*this, shell);
}

double line_heat_phi(const LineHeatProfile& profile, double t, double x) {
  profile.validate();
  if (!(t > 0.0)) throw ArgumentError("line heat time must be positive");
  const double inf = std::numeric_limits<double>::infinity();
  const auto& r = profile.radii;
  const std::size_t m = r.size();
  // Core and shells 1 .. m-1 on both sides, then the background.
  double phi = shell_value(profile, 0) * gaussian_mass(-r[0], r[0], x, t);
  for (std::size_t n = 1; n < m; ++n) {
    const double v = shell_value(profile, n);
    phi += v * (gaussian_mass(r[n - 1], r[n], x, t) + gaussian_mass(-r[n], -r[n - 1], x, t));
  }
  phi += profile.background * (gaussian_mass(r[m - 1], inf, x, t) + gaussian_mass(-inf, -r[m - 1], x, t));
  return phi;
}

double line_heat_gradient(const LineHeatProfile& profile, double t, double x) {
  profile.validate();
  if (!(t > 0.0)) throw ArgumentError("line heat time must be positive");
  const auto& r = profile.radii;
  const std::size_t m = r.size();
  double grad = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double inside = shell_value(profile, i);
    const double outside = i + 1 < m ? shell_value(profile, i + 1) : profile.background;
    const double jump = outside - inside;
    if (jump == 0.0) continue;
    // phi0 steps up by `jump` at +R_i and down by `jump` at -R_i.
    grad += jump * (heat_density(x - r[i], t) - heat_density(x + r[i], t));
  }
  return grad;
}

double line_heat_grad_sup(const LineHeatProfile& profile, double t) {
  profile.validate();
  const double lo = std::log10(profile.radii.front()) - 3.0;
  const double hi = std::log10(profile.radii.back()) + 3.0;
  constexpr int kPerDecade = 200;
  const int count = static_cast<int>(std::ceil((hi - lo) * kPerDecade)) + 1;
  double sup = std::abs(line_heat_gradient(profile, t, 0.0));
  auto visit = [&](double x) {
    sup = std::max(sup, std::abs(line_heat_gradient(profile, t, x)));
    sup = std::max(sup, std::abs(line_heat_gradient(profile, t, -x)));
  };
  for (int i = 0; i < count; ++i) visit(std::pow(10.0, lo + (hi - lo) * i / (count - 1)));
  for (double r : profile.radii) visit(r);
  return sup;
}

}  // namespace burgers
