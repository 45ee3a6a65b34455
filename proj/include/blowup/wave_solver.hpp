#ifndef BLOWUP_WAVE_SOLVER_HPP
#define BLOWUP_WAVE_SOLVER_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "blowup/coefficients.hpp"

namespace blowup {

// Radial mesh r_i = i h, i = 0..N, with the r^{n-1} volume factor.
struct RadialGrid {
  int n = 3;
  double h = 0.0;
  double r_max = 0.0;
  std::size_t N = 0;  // node count is N+1

  double r(std::size_t i) const { return static_cast<double>(i) * h; }
};

// Polynomial bump data: f = eps f_amp (1-(r/R0)^2)^m, g likewise.
struct InitialBump {
  double R0 = 1.0;
  int m = 4;
  double f_amp = 1.0;
  double g_amp = 1.0;
  double eps = 1.0;
};

// Exact integral of (1-(r/R0)^2)^m r^{n-1} dr over [0, R0].
double bump_radial_integral(int n, int m, double R0);

enum class SolveMode { Theorem, Free };

struct SolveConfig {
  int n = 3;
  double p = 2.0;
  CoefficientProfile profile = CoefficientProfile::zero();
  InitialBump data;
  double h = 0.01;
  double cfl = 0.5;
  double horizon = 10.0;
  double M_blow = 1e6;
  SolveMode mode = SolveMode::Theorem;
  bool nonlinearity = true;
  bool laplacian = true;   // off = pointwise ODE sanity mode
  int sample_stride = 8;   // trace sampling interval in steps
  bool collect_traces = true;

  // Weighted traces (G1, F, Ftilde); cost scales with grid x quadrature.
  bool weighted_traces = false;
  double lambda0 = 0.5;
  double q = 0.5;          // eta_q exponent for the Ftilde weight
  int lam_order = 128;
  int phi_order = 64;
  double ode_step = 1e-3;  // step for the rho / multiplier solves

  // Optional manufactured forcing s(r, t) added to the right-hand side.
  std::function<double(double, double)> source;

  // Blow-up refinement: number of mesh levels h, h/2, ... for detect_blowup.
  int refine_levels = 2;
  double refine_tol = 0.05;
};

struct Traces {
  std::vector<double> t;
  std::vector<double> G;
  std::vector<double> G1;
  std::vector<double> F;
  std::vector<double> Ftilde;
  std::vector<double> Lp;       // int |u|^p dx
  std::vector<double> sup_u;
  std::vector<double> support_r;
};

struct RefinementTriple {
  double h;
  double dt;
  double T_est;
};

struct SolveReport {
  Traces traces;
  bool blow_up = false;
  std::optional<double> T_est;
  double sensitivity = 0.0;  // |T_est(M) - T_est(10M)|
  double residual_G = 0.0;
  std::vector<RefinementTriple> refinement;
  bool support_ok = true;
  bool g_nonneg = true;      // G stayed >= -1e-10 * scale until blow-up
  double min_G = 0.0;
  double energy_drift = 0.0; // linear mode only: max relative energy change
  double T_richardson = 0.0;
  bool converged = true;     // refinement levels agreed within tolerance
  std::vector<double> final_u;
  double final_t = 0.0;
};

// Single-level integration (no mesh refinement); fills traces.
SolveReport run_single(const SolveConfig& cfg);

// Full run: integrates on refine_levels meshes, Richardson-extrapolates the
// blow-up time, reports threshold sensitivity. Traces come from the finest
// level. Throws SupportViolation / HypothesisViolation per mode.
SolveReport run(const SolveConfig& cfg);

// Radial quadratures against the r^{n-1} measure (trapezoid; the r = 0 node
// has zero weight).
double functional_G(std::span<const double> u, const RadialGrid& grid);
double functional_weighted(std::span<const double> u, const RadialGrid& grid,
                           std::span<const double> weight);

// Max over interior sample times of |D^2 G + a DG + b G - Lp| with centered
// differences on the sampled traces. include_lp = false drops the |u|^p
// source (linear runs).
double residual_G_identity(const Traces& traces, const CoefficientProfile& prof,
                           bool include_lp = true);

}  // namespace blowup

#endif
