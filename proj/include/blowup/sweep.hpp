#ifndef BLOWUP_SWEEP_HPP
#define BLOWUP_SWEEP_HPP

#include <string>
#include <vector>

#include "blowup/exponents.hpp"
#include "blowup/fit.hpp"
#include "blowup/wave_solver.hpp"

namespace blowup {

struct SweepConfig {
  ProblemIndex idx{3, 2.0};
  CoefficientProfile profile =
      CoefficientProfile::scattering_power(2.0, 2.0, 1.0, 1.5);
  InitialBump data;                 // eps is overridden per ladder entry
  std::vector<double> eps_ladder;   // strictly decreasing
  double h = 0.05;
  double cfl = 0.5;
  double M_blow = 1e6;
  double horizon = 4000.0;          // generous cap; runs stop at blow-up
  int refine_levels = 2;
  double refine_tol = 0.05;
  SolveMode mode = SolveMode::Theorem;
  int workers = 2;
  int sample_stride = 32;
};

struct SweepRow {
  double eps = 0.0;
  double T_est = 0.0;       // Richardson-extrapolated; NaN when no blow-up
  bool blow_up = false;
  bool converged = false;
  double sensitivity = 0.0;
  double h_finest = 0.0;
  std::string note;
};

// Runs one solver per ladder entry (refinement handled inside run()),
// distributing rows over a worker pool; output order follows the ladder
// regardless of scheduling. Per-row failures are recorded in the note and
// the sweep continues.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Indices of converged rows whose T_est fails strict monotone increase along
// the decreasing ladder.
std::vector<std::size_t> monotonicity_violations(
    const std::vector<SweepRow>& rows);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double theory_slope = 0.0;
  double rel_err = 0.0;
  double r2 = 0.0;
  int points_used = 0;
  bool pass = false;
  std::vector<double> x;  // regression abscissae actually used
  std::vector<double> y;
};

// log T against log(1/eps); theory slope 2p(p-1)/gamma(p,n); pass when the
// relative slope error is within tol. Uses converged blow-up rows only.
ScalingFit fit_subcritical(const std::vector<SweepRow>& rows,
                           const ProblemIndex& idx, double tol = 0.2);

// log T against eps^{-p(p-1)}; pass when the determination reaches r2_min
// (the constant C is existential, so only linearity is judged).
ScalingFit fit_critical(const std::vector<double>& eps,
                        const std::vector<double>& T, double p,
                        double r2_min = 0.95);

// sweep.csv, fit.csv and the two-column plot files; byte-stable formatting.
void emit_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void emit_fit_csv(const std::string& path, const ScalingFit& fit);
void emit_plot_data(const std::string& path, const ScalingFit& fit);

}  // namespace blowup

#endif
