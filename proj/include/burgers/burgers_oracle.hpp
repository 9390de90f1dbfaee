#pragma once

#include "burgers/cole_hopf.hpp"
#include "burgers/schrodinger.hpp"

#include <string>
#include <vector>

namespace burgers {

/// Direct time stepping of du/dt + grad(|u|^2 / 2) = Lap u / 2 + grad V.
struct OracleConfig {
  double dt = 1e-3;
  double T = 1.0;
  std::string scheme = "imex-integrating-factor";
  TorusGrid grid;
};

/// Diffusion is integrated exactly in Fourier space; the nonlinear and forcing
/// terms advance with the explicit midpoint rule, dealiased by dropping the
/// top third of modes. The step is shortened only to land exactly on T.
/// Throws NumericalError when dt exceeds 0.5 h / max|u| at some step or a
/// non-finite value appears; ArgumentError on grid or config mismatch.
VelocityField solve_direct(const InitialData& psi0, const Potential& v, const OracleConfig& cfg);

struct ConvergenceRow {
  int n = 0;
  double dt = 0.0;
  double gap = 0.0;  // sup distance to the Cole-Hopf solution at T
};

/// Runs solve_direct on each (grid, dt) pair and measures the sup distance to
/// the Cole-Hopf pipeline at T.
std::vector<ConvergenceRow> measure_convergence(const InitialDataSpec& psi0, const PotentialSpec& v,
                                                const std::vector<int>& grids,
                                                const std::vector<double>& dts, double T, int dim = 1,
                                                double period = kTwoPi);

/// True when no gap exceeds 1.2 times its predecessor while still above the
/// 1e-12 roundoff floor.
bool refinement_is_monotone(const std::vector<ConvergenceRow>& rows);

/// measure_convergence followed by the monotonicity check; throws
/// PropertyViolation on a non-decreasing gap sequence.
std::vector<ConvergenceRow> convergence_study(const InitialDataSpec& psi0, const PotentialSpec& v,
                                              const std::vector<int>& grids,
                                              const std::vector<double>& dts, double T, int dim = 1,
                                              double period = kTwoPi);

}  // namespace burgers
