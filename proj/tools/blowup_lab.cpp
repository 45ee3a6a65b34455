// blowup-lab: numerical laboratory for blow-up machinery of semilinear wave
// equations with integrable damping a(t)u_t and time-dependent mass b(t)u.
//
// Subcommands: exponents | ode | testfn | solve | iterate | sweep
// Exit codes: 0 ok, 1 usage, 2 numerical failure, 3 hypothesis violation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blowup/config.hpp"
#include "blowup/csv.hpp"
#include "blowup/errors.hpp"
#include "blowup/exponents.hpp"
#include "blowup/iteration.hpp"
#include "blowup/multiplier_ode.hpp"
#include "blowup/sweep.hpp"
#include "blowup/testfuncs.hpp"
#include "blowup/wave_solver.hpp"

namespace {

using namespace blowup;

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

CoefficientProfile profile_from(const KeyValueConfig& cfg) {
  std::string family = cfg.get_string("profile", "scattering");
  if (family == "zero") return CoefficientProfile::zero();
  if (family == "scattering") {
    return CoefficientProfile::scattering_power(
        cfg.get_double("mu", 2.0), cfg.get_double("beta", 2.0),
        cfg.get_double("mu2", 1.0), cfg.get_double("alpha_m", 1.5));
  }
  throw UsageError("profile must be 'scattering' or 'zero', got '" + family +
                   "'");
}

int cmd_exponents(int n, double p) {
  ProblemIndex idx{n, p};
  CriticalityVerdict v = classify(idx);
  std::printf("gamma=%s\n", format_real(gamma_pn(idx)).c_str());
  std::printf("p_S=%s\n", format_real(strauss_exponent(n)).c_str());
  std::printf("p_F=%s\n", format_real(fujita_exponent(n)).c_str());
  std::printf("class=%s\n", to_string(v.cls));
  std::printf("lifespan_rate=%s\n", format_real(v.lifespan_rate).c_str());
  std::printf("lifespan_form=%s\n", to_string(v.form));
  return kExitOk;
}

int cmd_ode(const std::string& config_path, const std::string& out_dir) {
  KeyValueConfig cfg = KeyValueConfig::load(config_path);
  CoefficientProfile prof = profile_from(cfg);
  double horizon = cfg.get_double("horizon", 200.0);
  double step = cfg.get_double("step", 1e-3);
  double lambda = cfg.get_double("lambda", 0.5);
  double chi_s = cfg.get_double("chi_s", 0.0);
  cfg.require_all_consumed();

  MultiplierData md = compute_multipliers(prof, horizon, step);
  {
    CsvWriter csv(out_path(out_dir, "r1r2.csv"),
                  {"t", "r1", "r2", "k", "residual"});
    for (std::size_t i = 0; i < md.grid.count; ++i)
      csv.row({md.grid.t(i), md.r1[i], md.r2[i], md.k[i], md.residual[i]});
  }

  RhoData rho = solve_rho(prof, lambda, horizon, step);
  {
    CsvWriter csv(out_path(out_dir, "rho.csv"), {"t", "rho", "rho_exp_ratio"});
    for (std::size_t i = 0; i < rho.grid.count; ++i) {
      double t = rho.grid.t(i);
      csv.row({t, rho.rho[i], rho.rho[i] * std::exp(lambda * t)});
    }
  }

  ChiData chi = solve_chi(prof, md, lambda, chi_s, horizon, step);
  {
    CsvWriter csv(out_path(out_dir, "chi.csv"),
                  {"t", "chi1", "chi2", "chi1_lo", "chi1_hi", "chi2_lo",
                   "chi2_hi"});
    const double e1 = std::exp(-chi.l1_diff);
    const double e2 = std::exp(-2.0 * chi.l1_diff);
    const double e3 = std::exp(chi.l1_diff);
    for (std::size_t i = 0; i < chi.grid.count; ++i) {
      double dt = chi.grid.t(i) - chi.s;
      double ch = std::cosh(lambda * dt);
      double sh = lambda * dt < 1e-8 ? dt : std::sinh(lambda * dt) / lambda;
      csv.row({chi.grid.t(i), chi.chi1[i], chi.chi2[i], e1 * ch, ch, e2 * sh,
               e3 * sh});
    }
  }
  require_sandwich(chi);

  std::printf("l1_r1=%s\n", format_real(md.l1_r1).c_str());
  std::printf("l1_r2=%s\n", format_real(md.l1_r2).c_str());
  std::printf("c_r1r2=%s\n", format_real(md.c_r1r2).c_str());
  std::printf("r2_at_0=%s\n", format_real(md.r2_at_0).c_str());
  std::printf("residual_max=%s\n", format_real(md.residual_max).c_str());
  std::printf("rho_drho_at_0=%s\n", format_real(rho.drho_at_0).c_str());
  return kExitOk;
}

int cmd_testfn(const std::string& config_path, const std::string& out_dir) {
  KeyValueConfig cfg = KeyValueConfig::load(config_path);
  int n = cfg.get_int("n", 3);
  double lambda0 = cfg.get_double("lambda0", 0.5);
  double R = cfg.get_double("R", 1.0);
  double q = cfg.get_double("q", 0.5);
  int phi_order = cfg.get_int("phi_order", 64);
  int lam_order = cfg.get_int("lam_order", 128);
  double r_max = cfg.get_double("r_max", 60.0);
  int r_count = cfg.get_int("r_count", 61);
  double t_max = cfg.get_double("t_max", 40.0);
  int t_count = cfg.get_int("t_count", 41);
  cfg.require_all_consumed();

  PhiEvaluator phi(n, phi_order);
  std::vector<double> lambdas;
  for (int i = 1; i <= 8; ++i) lambdas.push_back(lambda0 * i / 8.0);
  std::vector<double> r_grid;
  for (int i = 0; i < r_count; ++i)
    r_grid.push_back(r_max * i / std::max(1, r_count - 1));
  {
    CsvWriter csv(out_path(out_dir, "phi.csv"),
                  {"lambda", "r", "phi", "envelope_ratio"});
    const double half = 0.5 * (n - 1);
    for (double lam : lambdas) {
      for (double r : r_grid) {
        double z = lam * r;
        double v = phi(lam, r);
        double ratio = v * std::exp(-z + half * 0.5 * std::log1p(z * z));
        csv.row({lam, r, v, ratio});
      }
    }
  }

  SpectralKernel kernel(n, q, lambda0, R, lam_order, phi_order);
  std::vector<double> t_grid, s_grid;
  for (int i = 0; i < t_count; ++i)
    t_grid.push_back(t_max * i / std::max(1, t_count - 1));
  s_grid = t_grid;
  BoundAudit audit = lemma41_audit(kernel, t_grid, s_grid, r_grid);
  {
    CsvWriter csv(out_path(out_dir, "lemma41.csv"),
                  {"part", "fitted_constant", "worst_t", "worst_s", "worst_r"});
    csv.row_strings({"A0", format_real(audit.A0_hat), format_real(audit.A0_t),
                     "", format_real(audit.A0_r)});
    csv.row_strings({"B0", format_real(audit.B0_hat), format_real(audit.B0_t),
                     "0", format_real(audit.B0_r)});
    csv.row_strings({"B1", format_real(audit.B1_hat), format_real(audit.B1_t),
                     format_real(audit.B1_s), format_real(audit.B1_r)});
    csv.row_strings({"B2", format_real(audit.B2_hat), format_real(audit.B2_t),
                     format_real(audit.B2_t), format_real(audit.B2_r)});
  }
  std::printf("A0_hat=%s\n", format_real(audit.A0_hat).c_str());
  std::printf("B0_hat=%s\n", format_real(audit.B0_hat).c_str());
  std::printf("B1_hat=%s\n", format_real(audit.B1_hat).c_str());
  std::printf("B2_hat=%s\n", format_real(audit.B2_hat).c_str());
  return kExitOk;
}

SolveConfig solve_config_from(const KeyValueConfig& cfg) {
  SolveConfig sc;
  sc.n = cfg.get_int("n", 3);
  sc.p = cfg.get_double("p", 2.0);
  sc.profile = profile_from(cfg);
  sc.data.R0 = cfg.get_double("r0", 1.0);
  sc.data.m = cfg.get_int("m", 4);
  sc.data.f_amp = cfg.get_double("f_amp", 1.0);
  sc.data.g_amp = cfg.get_double("g_amp", 1.0);
  sc.data.eps = cfg.get_double("eps", 0.5);
  sc.h = cfg.get_double("h", 0.01);
  sc.cfl = cfg.get_double("cfl", 0.5);
  sc.horizon = cfg.get_double("horizon", 10.0);
  sc.M_blow = cfg.get_double("m_blow", 1e6);
  std::string mode = cfg.get_string("mode", "theorem");
  if (mode == "theorem") sc.mode = SolveMode::Theorem;
  else if (mode == "free") sc.mode = SolveMode::Free;
  else throw UsageError("mode must be 'theorem' or 'free'");
  sc.nonlinearity = cfg.get_bool("nonlinearity", true);
  sc.laplacian = cfg.get_bool("laplacian", true);
  sc.sample_stride = cfg.get_int("sample_stride", 8);
  sc.weighted_traces = cfg.get_bool("weighted_traces", true);
  sc.lambda0 = cfg.get_double("lambda", 0.5);
  double q_default = 0.5 * (sc.n - 1) - 1.0 / sc.p;
  sc.q = cfg.get_double("q", q_default);
  sc.refine_levels = cfg.get_int("refine_levels", 2);
  sc.refine_tol = cfg.get_double("refine_tol", 0.05);
  return sc;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir) {
  KeyValueConfig cfg = KeyValueConfig::load(config_path);
  SolveConfig sc = solve_config_from(cfg);
  cfg.require_all_consumed();
  SolveReport rep = run(sc);
  {
    CsvWriter csv(out_path(out_dir, "trace.csv"),
                  {"t", "G", "G1", "F", "Ftilde", "Lp", "sup_u", "support_r"});
    const Traces& tr = rep.traces;
    for (std::size_t i = 0; i < tr.t.size(); ++i)
      csv.row({tr.t[i], tr.G[i], tr.G1[i], tr.F[i], tr.Ftilde[i], tr.Lp[i],
               tr.sup_u[i], tr.support_r[i]});
  }
  {
    CsvWriter csv(out_path(out_dir, "report.csv"),
                  {"blow_up", "T_est", "residual_G", "sensitivity"});
    csv.row_strings({rep.blow_up ? "1" : "0",
                     format_real(rep.blow_up ? *rep.T_est
                                             : std::nan("")),
                     format_real(rep.residual_G),
                     format_real(rep.sensitivity)});
  }
  std::printf("blow_up=%d\n", rep.blow_up ? 1 : 0);
  if (rep.blow_up) {
    std::printf("T_est=%s\n", format_real(*rep.T_est).c_str());
    std::printf("T_richardson=%s\n", format_real(rep.T_richardson).c_str());
    std::printf("sensitivity=%s\n", format_real(rep.sensitivity).c_str());
  }
  std::printf("residual_G=%s\n", format_real(rep.residual_G).c_str());
  return kExitOk;
}

int cmd_iterate(const std::string& config_path, const std::string& out_dir) {
  KeyValueConfig cfg = KeyValueConfig::load(config_path);
  std::string kind = cfg.get_string("kind", "subcrit");
  double p = cfg.get_double("p", 2.0);
  int n = cfg.get_int("n", 3);
  double eps = cfg.get_double("eps", 0.1);
  int j_max = cfg.get_int("j_max", 40);
  int sweeps = cfg.get_int("sweeps", 400);

  if (kind == "subcrit") {
    double c_r1r2 = cfg.get_double("c_r1r2", 0.1);
    double C2 = cfg.get_double("c2", 100.0);
    double R = cfg.get_double("R", 1.0);
    double t_end = cfg.get_double("t_end", 4000.0);
    int nodes = cfg.get_int("nodes", 40000);
    cfg.require_all_consumed();
    SubcritSequences seq = subcrit_sequences(p, n, c_r1r2, C2, eps, j_max);
    {
      CsvWriter csv(out_path(out_dir, "sequences.csv"),
                    {"j", "a_j", "b_j", "logD_j"});
      for (int j = 1; j <= seq.j_max; ++j)
        csv.row({static_cast<double>(j), seq.a[j - 1], seq.b[j - 1],
                 seq.logD[j - 1]});
    }
    EnvelopeResult env = volterra_envelope_subcrit(
        C2, eps, c_r1r2, p, n, R, t_end, static_cast<std::size_t>(nodes),
        sweeps);
    {
      CsvWriter csv(out_path(out_dir, "envelope.csv"), {"t", "value"});
      for (std::size_t i = 0; i < env.t.size(); ++i)
        csv.row({env.t[i], env.value[i]});
      csv.row_strings({"divergence_time",
                       format_real(env.divergence_time.value_or(
                           std::numeric_limits<double>::quiet_NaN()))});
    }
    SubcritThreshold thr = subcrit_threshold(p, n, c_r1r2, C2, eps);
    std::printf("divergence_time=%s\n",
                format_real(env.divergence_time.value_or(
                    std::numeric_limits<double>::quiet_NaN())).c_str());
    std::printf("threshold_T=%s\n", format_real(thr.T).c_str());
    std::printf("J_at_T=%s\n", format_real(thr.J_at_T).c_str());
    return kExitOk;
  }
  if (kind == "crit") {
    double c_frame = cfg.get_double("c_frame", 1.0);
    double m_const = cfg.get_double("m_const", 1.0);
    double t_end = cfg.get_double("t_end", 1e40);
    int nodes = cfg.get_int("nodes", 20000);
    cfg.require_all_consumed();
    CritSequences seq = crit_sequences(p, c_frame, m_const, eps,
                                       std::min(j_max, 30));
    {
      CsvWriter csv(out_path(out_dir, "sequences.csv"),
                    {"j", "a_j", "b_j", "logC_j"});
      for (int j = 1; j <= seq.j_max; ++j)
        csv.row({static_cast<double>(j), seq.a[j - 1], seq.b[j - 1],
                 seq.logC[j - 1]});
    }
    EnvelopeResult env = volterra_envelope_crit(
        m_const, eps, c_frame, p, t_end, static_cast<std::size_t>(nodes),
        sweeps);
    {
      CsvWriter csv(out_path(out_dir, "envelope.csv"), {"t", "value"});
      for (std::size_t i = 0; i < env.t.size(); ++i)
        csv.row({env.t[i], env.value[i]});
      csv.row_strings({"divergence_time",
                       format_real(env.divergence_time.value_or(
                           std::numeric_limits<double>::quiet_NaN()))});
    }
    CritThreshold thr = crit_threshold(seq.B, p, eps);
    std::printf("divergence_time=%s\n",
                format_real(env.divergence_time.value_or(
                    std::numeric_limits<double>::quiet_NaN())).c_str());
    std::printf("log_threshold=%s\n",
                format_real(thr.log_threshold).c_str());
    return kExitOk;
  }
  throw UsageError("iterate: kind must be 'subcrit' or 'crit'");
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
  KeyValueConfig cfg = KeyValueConfig::load(config_path);
  SweepConfig sw;
  sw.idx.n = cfg.get_int("n", 3);
  sw.idx.p = cfg.get_double("p", 2.0);
  sw.profile = profile_from(cfg);
  sw.data.R0 = cfg.get_double("r0", 1.0);
  sw.data.m = cfg.get_int("m", 4);
  sw.data.f_amp = cfg.get_double("f_amp", 1.0);
  sw.data.g_amp = cfg.get_double("g_amp", 1.0);
  sw.eps_ladder =
      cfg.get_double_list("eps_ladder", {0.4, 0.2, 0.1, 0.05, 0.025});
  sw.h = cfg.get_double("h", 0.05);
  sw.cfl = cfg.get_double("cfl", 0.5);
  sw.M_blow = cfg.get_double("m_blow", 1e6);
  sw.horizon = cfg.get_double("horizon", 4000.0);
  sw.refine_levels = cfg.get_int("refine_levels", 2);
  sw.refine_tol = cfg.get_double("refine_tol", 0.05);
  std::string mode = cfg.get_string("mode", "theorem");
  if (mode == "theorem") sw.mode = SolveMode::Theorem;
  else if (mode == "free") sw.mode = SolveMode::Free;
  else throw UsageError("mode must be 'theorem' or 'free'");
  sw.workers = cfg.get_int("workers", 2);
  bool want_fit = cfg.get_bool("fit", true);
  cfg.require_all_consumed();

  std::vector<SweepRow> rows = run_sweep(sw);
  emit_sweep_csv(out_path(out_dir, "sweep.csv"), rows);
  auto bad = monotonicity_violations(rows);
  for (std::size_t i : bad)
    std::fprintf(stderr, "warning: row %zu breaks T_est monotonicity\n", i);

  if (want_fit && rows.size() >= 4) {
    ScalingFit fit = fit_subcritical(rows, sw.idx);
    emit_fit_csv(out_path(out_dir, "fit.csv"), fit);
    emit_plot_data(out_path(out_dir, "plot_subcritical.csv"), fit);
    std::printf("slope=%s\n", format_real(fit.slope).c_str());
    std::printf("theory_slope=%s\n", format_real(fit.theory_slope).c_str());
    std::printf("rel_err=%s\n", format_real(fit.rel_err).c_str());
    std::printf("verdict=%s\n", fit.pass ? "pass" : "fail");
  }
  for (const auto& row : rows) {
    std::printf("eps=%s T_est=%s converged=%d\n", format_real(row.eps).c_str(),
                format_real(row.T_est).c_str(), row.converged ? 1 : 0);
  }
  if (!bad.empty())
    throw NumericalFailure("sweep: converged T_est not monotone in eps");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blow-up lifespan laboratory for damped semilinear waves"};
  app.require_subcommand(1);

  int exp_n = 3;
  double exp_p = 2.0;
  auto* exp_cmd = app.add_subcommand("exponents", "closed-form exponent algebra");
  exp_cmd->add_option("--n", exp_n, "spatial dimension (>= 2)")->required();
  exp_cmd->add_option("--p", exp_p, "nonlinearity power (> 1)")->required();

  std::string config_path, out_dir = ".";
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file")
        ->required();
    cmd->add_option("--out", out_dir, "output directory");
  };
  auto* ode_cmd = app.add_subcommand("ode", "multiplier/rho/chi ODE systems");
  add_io(ode_cmd);
  auto* testfn_cmd =
      app.add_subcommand("testfn", "spectral test functions and bound audits");
  add_io(testfn_cmd);
  auto* solve_cmd =
      app.add_subcommand("solve", "radial semilinear wave solver");
  add_io(solve_cmd);
  auto* iterate_cmd =
      app.add_subcommand("iterate", "iteration sequences and envelopes");
  add_io(iterate_cmd);
  auto* sweep_cmd =
      app.add_subcommand("sweep", "eps sweep and lifespan scaling fit");
  add_io(sweep_cmd);

  try {
    app.parse(argc, argv);
    if (exp_cmd->parsed()) return cmd_exponents(exp_n, exp_p);
    if (ode_cmd->parsed()) return cmd_ode(config_path, out_dir);
    if (testfn_cmd->parsed()) return cmd_testfn(config_path, out_dir);
    if (solve_cmd->parsed()) return cmd_solve(config_path, out_dir);
    if (iterate_cmd->parsed()) return cmd_iterate(config_path, out_dir);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, out_dir);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
