#include "blowup/sweep.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "blowup/csv.hpp"
#include "blowup/errors.hpp"

namespace blowup {

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.eps_ladder.empty())
    throw UsageError("sweep: eps ladder must not be empty");
  for (std::size_t i = 1; i < cfg.eps_ladder.size(); ++i)
    if (!(cfg.eps_ladder[i] < cfg.eps_ladder[i - 1]))
      throw UsageError("sweep: eps ladder must be strictly decreasing");

  // Theorem-mode hypotheses depend on the profile only (data amplitudes are
  // shared), so verify once up front rather than per row.
  if (cfg.mode == SolveMode::Theorem) {
    SolveConfig probe;
    probe.n = cfg.idx.n;
    probe.p = cfg.idx.p;
    probe.profile = cfg.profile;
    probe.data = cfg.data;
    probe.mode = SolveMode::Theorem;
    probe.horizon = 1.0;
    probe.h = 0.5;
    probe.collect_traces = false;
    probe.nonlinearity = false;
    run_single(probe);  // throws HypothesisViolation on failure
  }

  std::vector<SweepRow> rows(cfg.eps_ladder.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      SweepRow& row = rows[i];
      row.eps = cfg.eps_ladder[i];
      row.h_finest =
          cfg.h / std::pow(2.0, std::max(1, cfg.refine_levels) - 1);
      try {
        SolveConfig sc;
        sc.n = cfg.idx.n;
        sc.p = cfg.idx.p;
        sc.profile = cfg.profile;
        sc.data = cfg.data;
        sc.data.eps = row.eps;
        sc.h = cfg.h;
        sc.cfl = cfg.cfl;
        sc.horizon = cfg.horizon;
        sc.M_blow = cfg.M_blow;
        sc.mode = SolveMode::Free;  // hypotheses checked above
        sc.refine_levels = cfg.refine_levels;
        sc.refine_tol = cfg.refine_tol;
        sc.sample_stride = cfg.sample_stride;
        SolveReport rep = run(sc);
        row.blow_up = rep.blow_up;
        if (rep.blow_up) {
          row.T_est = rep.T_richardson;
          row.converged = rep.converged;
          row.sensitivity = rep.sensitivity;
        } else {
          row.T_est = std::numeric_limits<double>::quiet_NaN();
          row.note = "no blow-up within horizon";
        }
      } catch (const std::exception& e) {
        row.T_est = std::numeric_limits<double>::quiet_NaN();
        row.note = e.what();
      }
    }
  };

  int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::size_t usable = 0;
  for (const auto& row : rows)
    if (row.blow_up && row.converged) ++usable;
  if (usable < std::min<std::size_t>(rows.size(), 4))
    throw InsufficientData("sweep: fewer than 4 converged rows");
  return rows;
}

std::vector<std::size_t> monotonicity_violations(
    const std::vector<SweepRow>& rows) {
  std::vector<std::size_t> bad;
  double prev = -std::numeric_limits<double>::infinity();
  bool have_prev = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].blow_up || !rows[i].converged) continue;
    if (have_prev && !(rows[i].T_est > prev)) bad.push_back(i);
    prev = rows[i].T_est;
    have_prev = true;
  }
  return bad;
}

ScalingFit fit_subcritical(const std::vector<SweepRow>& rows,
                           const ProblemIndex& idx, double tol) {
  const double g = gamma_pn(idx);
  if (!(g > 0.0))
    throw std::invalid_argument("fit_subcritical: sub-critical index required");
  ScalingFit fit;
  for (const auto& row : rows) {
    if (!row.blow_up || !row.converged || !(row.T_est > 0.0)) continue;
    fit.x.push_back(std::log(1.0 / row.eps));
    fit.y.push_back(std::log(row.T_est));
  }
  if (fit.x.size() < 4)
    throw InsufficientData("fit_subcritical: fewer than 4 usable rows");
  LinearFit lf = ols(fit.x, fit.y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.stderr_slope = lf.stderr_slope;
  fit.r2 = lf.r2;
  fit.points_used = lf.npoints;
  fit.theory_slope = 2.0 * idx.p * (idx.p - 1.0) / g;
  fit.rel_err = std::abs(fit.slope - fit.theory_slope) /
                std::abs(fit.theory_slope);
  fit.pass = fit.rel_err <= tol;
  return fit;
}

ScalingFit fit_critical(const std::vector<double>& eps,
                        const std::vector<double>& T, double p, double r2_min) {
  if (eps.size() != T.size())
    throw std::invalid_argument("fit_critical: size mismatch");
  ScalingFit fit;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(T[i] > 0.0) || !std::isfinite(T[i])) continue;
    fit.x.push_back(std::pow(eps[i], -p * (p - 1.0)));
    fit.y.push_back(std::log(T[i]));
  }
  if (fit.x.size() < 4)
    throw InsufficientData("fit_critical: fewer than 4 usable points");
  LinearFit lf = ols(fit.x, fit.y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.stderr_slope = lf.stderr_slope;
  fit.r2 = lf.r2;
  fit.points_used = lf.npoints;
  fit.theory_slope = std::numeric_limits<double>::quiet_NaN();
  fit.rel_err = std::numeric_limits<double>::quiet_NaN();
  fit.pass = lf.r2 >= r2_min;
  return fit;
}

void emit_sweep_csv(const std::string& path,
                    const std::vector<SweepRow>& rows) {
  CsvWriter csv(path, {"eps", "T_est", "converged", "sensitivity", "h_finest"});
  for (const auto& row : rows) {
    csv.row_strings({format_real(row.eps), format_real(row.T_est),
                     row.converged ? "1" : "0", format_real(row.sensitivity),
                     format_real(row.h_finest)});
  }
}

void emit_fit_csv(const std::string& path, const ScalingFit& fit) {
  CsvWriter csv(path,
                {"slope", "stderr", "theory_slope", "rel_err", "r2", "verdict"});
  csv.row_strings({format_real(fit.slope), format_real(fit.stderr_slope),
                   format_real(fit.theory_slope), format_real(fit.rel_err),
                   format_real(fit.r2), fit.pass ? "pass" : "fail"});
}

void emit_plot_data(const std::string& path, const ScalingFit& fit) {
  CsvWriter csv(path, {"x", "log_T"});
  for (std::size_t i = 0; i < fit.x.size(); ++i) csv.row({fit.x[i], fit.y[i]});
}

}  // namespace blowup
