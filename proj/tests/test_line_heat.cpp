#include "burgers/error.hpp"
#include "burgers/line_heat.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <numbers>

using namespace burgers;

namespace {

const LineHeatProfile kProfile{{1e2, 1e4, 1e8}, {3.0, 1.0}, 3.0};

// Brute-force heat semigroup: composite Simpson over y, split at the jumps of
// the initial data and truncated at 12 standard deviations.
double brute_force_phi(const LineHeatProfile& p, double t, double x) {
  const double s = std::sqrt(t);
  const double lo = x - 12 * s;
  const double hi = x + 12 * s;
  std::vector<double> cuts{lo, hi};
  for (double r : p.radii) {
    for (double c : {-r, r}) {
      if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    const double value = p.initial(0.5 * (a + b));
    const int n = 20000;
    const double h = (b - a) / n;
    double piece = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double y = a + i * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      piece += w * std::exp(-(x - y) * (x - y) / (2 * t));
    }
    sum += value * piece * h / 3.0;
  }
  return sum / std::sqrt(2 * std::numbers::pi * t);
}

}  // namespace

TEST(LineHeat, Validation) {
  EXPECT_THROW(line_heat_phi({{1.0}, {1.0}, 1.0}, 1.0, 0.0), ArgumentError);
  EXPECT_THROW(line_heat_phi({{2.0, 1.0}, {1.0}, 1.0}, 1.0, 0.0), ArgumentError);
  EXPECT_THROW(line_heat_phi({{1.0, 2.0}, {}, 1.0}, 1.0, 0.0), ArgumentError);
  EXPECT_THROW(line_heat_phi({{1.0, 2.0}, {-1.0}, 1.0}, 1.0, 0.0), ArgumentError);
  EXPECT_THROW(line_heat_phi(kProfile, 0.0, 0.0), ArgumentError);
}

TEST(LineHeat, InitialProfile) {
  EXPECT_EQ(kProfile.initial(0.0), 1.0);     // core continues shell 1
  EXPECT_EQ(kProfile.initial(500.0), 1.0);   // shell 1
  EXPECT_EQ(kProfile.initial(-5e5), 3.0);    // shell 2
  EXPECT_EQ(kProfile.initial(2e8), 3.0);     // background
}

TEST(LineHeat, ConstantData) {
  const LineHeatProfile one{{1.0, 10.0}, {1.0}, 1.0};
  for (double t : {1e-3, 1.0, 1e6}) {
    for (double x : {0.0, 3.0, -40.0}) EXPECT_NEAR(line_heat_phi(one, t, x), 1.0, 1e-15);
    EXPECT_EQ(line_heat_grad_sup(one, t), 0.0);
  }
}

TEST(LineHeat, ShellProbes) {
  EXPECT_NEAR(line_heat_phi(kProfile, 1e6, 0.0), 1.0, 0.1);
  EXPECT_NEAR(line_heat_phi(kProfile, 1e12, 0.0), 3.0, 0.3);
}

TEST(LineHeat, ShortTimeRecoversInitialData) {
  EXPECT_NEAR(line_heat_phi(kProfile, 1e-4, 5e3), 1.0, 1e-10);
  EXPECT_NEAR(line_heat_phi(kProfile, 1e-4, -5e5), 3.0, 1e-10);
}

TEST(LineHeat, AgreesWithQuadrature) {
  for (double t : {1e3, 1e5, 1e7}) {
    for (double x : {0.0, 150.0, -9e3}) {
      EXPECT_NEAR(line_heat_phi(kProfile, t, x), brute_force_phi(kProfile, t, x), 1e-8) << t << " " << x;
    }
  }
}

TEST(LineHeat, GradientAgreesWithDifferenceQuotient) {
  for (double t : {1e4, 1e6}) {
    for (double x : {20.0, 95.0, 1e4 + 30.0}) {
      const double h = 1e-3 * std::sqrt(t);
      const double fd = (line_heat_phi(kProfile, t, x + h) - line_heat_phi(kProfile, t, x - h)) / (2 * h);
      EXPECT_NEAR(line_heat_gradient(kProfile, t, x), fd, 1e-6 * std::abs(fd) + 1e-14);
    }
  }
}

TEST(LineHeat, GradientSupDecreasesAndIsBounded) {
  double previous = std::numeric_limits<double>::infinity();
  for (int e = 4; e <= 12; ++e) {
    const double t = std::pow(10.0, e);
    const double g = line_heat_grad_sup(kProfile, t);
    EXPECT_LT(g, previous) << t;
    EXPECT_LE(g, (3.0 - 1.0) / std::sqrt(2 * std::numbers::pi * t) * 2 * kProfile.radii.size());
    previous = g;
  }
  EXPECT_LT(line_heat_grad_sup(kProfile, 1e12), line_heat_grad_sup(kProfile, 1e6));
}
