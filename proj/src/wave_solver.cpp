#include "blowup/wave_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/multiplier_ode.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/testfuncs.hpp"

namespace blowup {

namespace {

constexpr double kSupportEps = 1e-12;

double bump_value(double r, const InitialBump& d) {
  if (r >= d.R0) return 0.0;
  double x = r / d.R0;
  return std::pow(1.0 - x * x, d.m);
}

double upow(double u, double p, int pcase) {
  double au = std::abs(u);
  switch (pcase) {
    case 2: return u * u;
    case 3: return au * au * au;
    default: return std::pow(au, p);
  }
}

// One leapfrog integrator on a fixed mesh. Damping is centered between
// levels, so the update stays explicit:
//   u+ = [2u - (1 - a dt/2) u- + dt^2 (Lap u - b u + |u|^p + s)] / (1 + a dt/2)
// Beyond the active window (light cone + margin) the field is identically
// zero and is never touched.
class Leapfrog {
 public:
  Leapfrog(const SolveConfig& cfg, double h)
      : cfg_(cfg), h_(h), dt_(cfg.cfl * h) {
    if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0)
      throw std::invalid_argument("wave solver: need 0 < cfl <= 1");
    if (!(h > 0.0)) throw std::invalid_argument("wave solver: h must be > 0");
    grid_.n = cfg.n;
    grid_.h = h;
    if (cfg.laplacian) {
      double r_needed = cfg.data.R0 + cfg.horizon + 24.0 * h;
      grid_.N = static_cast<std::size_t>(std::ceil(r_needed / h));
    } else {
      grid_.N = 4;
    }
    grid_.r_max = grid_.r(grid_.N);
    pcase_ = (cfg.p == 2.0) ? 2 : (cfg.p == 3.0 ? 3 : 0);

    u_prev_.assign(grid_.N + 1, 0.0);
    u_.assign(grid_.N + 1, 0.0);
    u_next_.assign(grid_.N + 1, 0.0);
    v0_.assign(grid_.N + 1, 0.0);
    const double eps = cfg.data.eps;
    for (std::size_t i = 0; i <= grid_.N; ++i) {
      double bump = bump_value(grid_.r(i), cfg.data);
      u_prev_[i] = eps * cfg.data.f_amp * bump;
      v0_[i] = eps * cfg.data.g_amp * bump;
    }
    update_active();
    // Second-order start: u(dt) = u0 + dt v0 + dt^2/2 u_tt(0).
    const double a0 = cfg.profile.a(0.0), b0 = cfg.profile.b(0.0);
    for (std::size_t i = 0; i <= active_; ++i) {
      double acc = laplacian_at(u_prev_, i) - b0 * u_prev_[i] - a0 * v0_[i];
      if (cfg.nonlinearity) acc += upow(u_prev_[i], cfg.p, pcase_);
      if (cfg.source) acc += cfg.source(grid_.r(i), 0.0);
      u_[i] = u_prev_[i] + dt_ * v0_[i] + 0.5 * dt_ * dt_ * acc;
    }
    step_index_ = 1;
    update_active();
  }

  const RadialGrid& grid() const { return grid_; }
  double dt() const { return dt_; }
  double t() const { return static_cast<double>(step_index_) * dt_; }
  std::size_t step_index() const { return step_index_; }
  std::span<const double> u() const { return u_; }
  std::span<const double> initial_u() const { return u_prev_initial_view(); }
  std::size_t active() const { return active_; }

  double sup_u() const {
    double s = 0.0;
    for (std::size_t i = 0; i <= active_; ++i) s = std::max(s, std::abs(u_[i]));
    return s;
  }

  // Advances one step; returns sup |u| over the active window.
  double advance() {
    advance_core(u_prev_, u_, u_next_, t(), dt_, active_);
    // rotate: (P, C, N) -> (C, N, P); the old P stays alive for rollback
    std::swap(u_prev_, u_);
    std::swap(u_, u_next_);
    ++step_index_;
    update_active();
    return sup_u();
  }

  // Undoes exactly one advance (uses the retired buffer; bitwise exact).
  void rollback_one() {
    std::swap(u_, u_prev_);
    std::swap(u_prev_, u_next_);
    --step_index_;
    update_active();
  }

  // Centered-difference time derivative at the current level; advances a
  // scratch copy one step. Used only at sample times.
  void fill_velocity(std::vector<double>& v) const {
    scratch_.resize(u_.size());
    advance_core(u_prev_, u_, scratch_, t(), dt_, active_);
    v.resize(u_.size());
    for (std::size_t i = 0; i < u_.size(); ++i)
      v[i] = (scratch_[i] - u_prev_[i]) / (2.0 * dt_);
  }

  // Integrates a copy of the state forward by tau (fresh two-level start)
  // and reports whether sup|u| reaches thr on the way.
  bool crosses_within(double tau, double thr) const {
    if (tau <= 0.0) return false;
    int nsub = std::max(4, 2 * static_cast<int>(std::ceil(tau / dt_)));
    double dts = tau / nsub;
    std::vector<double> v;
    fill_velocity(v);
    std::vector<double> up(u_.begin(), u_.end()), uc(u_.size()), un(u_.size());
    const double t0 = t();
    const double a0 = cfg_.profile.a(t0), b0 = cfg_.profile.b(t0);
    for (std::size_t i = 0; i <= active_; ++i) {
      double acc = laplacian_at(up, i) - b0 * up[i] - a0 * v[i];
      if (cfg_.nonlinearity) acc += upow(up[i], cfg_.p, pcase_);
      if (cfg_.source) acc += cfg_.source(grid_.r(i), t0);
      uc[i] = up[i] + dts * v[i] + 0.5 * dts * dts * acc;
    }
    for (int k = 1; k <= nsub; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i <= active_; ++i)
        s = std::max(s, std::abs(uc[i]));
      if (!std::isfinite(s) || s >= thr) return true;
      if (k == nsub) break;
      advance_core(up, uc, un, t0 + k * dts, dts, active_);
      std::swap(up, uc);
      std::swap(uc, un);
    }
    return false;
  }

 private:
  std::span<const double> u_prev_initial_view() const { return u_prev_; }

  void advance_core(const std::vector<double>& up, const std::vector<double>& uc,
                    std::vector<double>& un, double tn, double dts,
                    std::size_t hi_in) const {
    const double a = cfg_.profile.a(tn);
    const double b = cfg_.profile.b(tn);
    const double ad2 = 0.5 * a * dts;
    const double inv = 1.0 / (1.0 + ad2);
    const double om = 1.0 - ad2;
    const double dt2 = dts * dts;
    const bool nl = cfg_.nonlinearity;
    const bool has_src = static_cast<bool>(cfg_.source);
    const std::size_t hi = std::min(hi_in, grid_.N - 1);
    for (std::size_t i = 0; i <= hi; ++i) {
      double acc = laplacian_at(uc, i) - b * uc[i];
      if (nl) acc += upow(uc[i], cfg_.p, pcase_);
      if (has_src) acc += cfg_.source(grid_.r(i), tn);
      un[i] = (2.0 * uc[i] - om * up[i] + dt2 * acc) * inv;
    }
  }

  double laplacian_at(const std::vector<double>& u, std::size_t i) const {
    if (!cfg_.laplacian) return 0.0;
    if (i >= grid_.N) return 0.0;
    const double h2 = h_ * h_;
    if (i == 0) return 2.0 * cfg_.n * (u[1] - u[0]) / h2;
    double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2;
    double d1 = (u[i + 1] - u[i - 1]) / (2.0 * h_);
    return d2 + (cfg_.n - 1.0) / grid_.r(i) * d1;
  }

  // The computational domain is the light cone plus a 2h collar; the true
  // solution vanishes beyond it (finite propagation speed), so the moving
  // homogeneous Dirichlet edge only clips the scheme's superluminal spill,
  // which is orders below the truncation error.
  void update_active() {
    if (!cfg_.laplacian) {
      active_ = grid_.N;
      return;
    }
    double reach = cfg_.data.R0 + t();
    auto idx = static_cast<std::size_t>(std::floor(reach / h_)) + 2;
    active_ = std::min(idx, grid_.N - 1);
  }

  const SolveConfig& cfg_;
  double h_;
  double dt_;
  RadialGrid grid_;
  int pcase_;
  std::size_t step_index_ = 0;
  std::size_t active_ = 0;
  std::vector<double> u_prev_, u_, u_next_, v0_;
  mutable std::vector<double> scratch_;
};

// Quadrature weights w_i = |S^{n-1}| r_i^{n-1} h (trapezoid; the r = 0 node
// has zero weight in this measure and u vanishes near r_max).
std::vector<double> volume_weights(const RadialGrid& grid) {
  std::vector<double> w(grid.N + 1);
  const double area = sphere_area(grid.n - 1);
  for (std::size_t i = 0; i <= grid.N; ++i)
    w[i] = area * std::pow(grid.r(i), grid.n - 1) * grid.h;
  w[grid.N] *= 0.5;
  return w;
}

struct WeightedTraceMachinery {
  std::vector<double> phi_vec;           // phi_{lambda0}(r_i)
  std::vector<std::vector<double>> Phi;  // [lambda node][r node]
  QuadRule lam_rule;
  RhoData rho;
  double R = 1.0;

  double rho_at(double t) const {
    const auto& g = rho.grid;
    if (t <= 0.0) return rho.rho.front();
    double x = t / g.step;
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= g.count) return rho.rho.back();
    double frac = x - static_cast<double>(i);
    return (1.0 - frac) * rho.rho[i] + frac * rho.rho[i + 1];
  }
};

void verify_theorem_hypotheses(const SolveConfig& cfg) {
  if (cfg.data.f_amp < 0.0 || cfg.data.g_amp < 0.0)
    throw HypothesisViolation("theorem mode requires non-negative data");
  MultiplierData mult = compute_multipliers(cfg.profile, 10.0, cfg.ode_step);
  RhoData rho = solve_rho(cfg.profile, cfg.lambda0, 10.0, cfg.ode_step);
  auto [c1, c2] = check_data_conditions(cfg.data.f_amp, cfg.data.g_amp, mult,
                                        rho, cfg.profile.a(0.0));
  if (!c1)
    throw HypothesisViolation(
        "data condition g + r2(0) f >= 0 failed (r2(0) = " +
        std::to_string(mult.r2_at_0) + ")");
  if (!c2)
    throw HypothesisViolation(
        "data condition g + (a(0) - rho'(0)) f >= 0 failed");
}

struct LevelResult {
  bool blow_up = false;
  double T_cross = 0.0;     // threshold crossing of M_blow
  double T_cross_hi = 0.0;  // crossing of 10 M_blow
};

LevelResult integrate_level(const SolveConfig& cfg, double h, Traces* traces_out,
                            SolveReport* report) {
  Leapfrog lf(cfg, h);
  const RadialGrid& grid = lf.grid();
  const double dt = lf.dt();
  const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.horizon / dt));
  std::vector<double> w = volume_weights(grid);

  WeightedTraceMachinery wm;
  std::unique_ptr<SpectralKernel> kernel;
  if (traces_out && cfg.weighted_traces) {
    wm.R = cfg.data.R0;
    kernel = std::make_unique<SpectralKernel>(cfg.n, cfg.q, cfg.lambda0, wm.R,
                                              cfg.lam_order, cfg.phi_order);
    const PhiEvaluator& phi = kernel->phi();
    wm.phi_vec.resize(grid.N + 1);
    for (std::size_t i = 0; i <= grid.N; ++i)
      wm.phi_vec[i] = phi(cfg.lambda0, grid.r(i));
    wm.lam_rule = kernel->lambda_rule();
    wm.Phi.resize(wm.lam_rule.size());
    for (std::size_t k = 0; k < wm.lam_rule.size(); ++k) {
      wm.Phi[k].resize(grid.N + 1);
      for (std::size_t i = 0; i <= grid.N; ++i)
        wm.Phi[k][i] = phi(wm.lam_rule.x[k], grid.r(i));
    }
    wm.rho =
        solve_rho(cfg.profile, cfg.lambda0, cfg.horizon + 1.0, cfg.ode_step);
  }

  const int pcase = (cfg.p == 2.0) ? 2 : (cfg.p == 3.0 ? 3 : 0);
  auto sample = [&](std::span<const double> u, double t) {
    if (!traces_out) return;
    Traces& tr = *traces_out;
    tr.t.push_back(t);
    double G = 0.0, Lp = 0.0, sup = 0.0, supp = 0.0;
    for (std::size_t i = 0; i <= grid.N; ++i) {
      G += w[i] * u[i];
      Lp += w[i] * upow(u[i], cfg.p, pcase);
      double au = std::abs(u[i]);
      if (au > sup) sup = au;
      if (au > kSupportEps) supp = grid.r(i);
    }
    tr.G.push_back(G);
    tr.Lp.push_back(Lp);
    tr.sup_u.push_back(sup);
    tr.support_r.push_back(supp);
    if (cfg.weighted_traces) {
      double Fv = 0.0;
      for (std::size_t i = 0; i <= grid.N; ++i)
        Fv += w[i] * u[i] * wm.phi_vec[i];
      tr.F.push_back(Fv);
      tr.G1.push_back(wm.rho_at(t) * Fv);
      double Ft = 0.0;
      for (std::size_t k = 0; k < wm.lam_rule.size(); ++k) {
        double lam = wm.lam_rule.x[k];
        double row = 0.0;
        const std::vector<double>& Phik = wm.Phi[k];
        for (std::size_t i = 0; i <= grid.N; ++i) row += w[i] * u[i] * Phik[i];
        Ft += wm.lam_rule.w[k] * std::exp(-lam * (t + wm.R)) * row;
      }
      tr.Ftilde.push_back(Ft);
    } else {
      tr.F.push_back(0.0);
      tr.G1.push_back(0.0);
      tr.Ftilde.push_back(0.0);
    }
    if (cfg.laplacian && tr.support_r.back() > t + cfg.data.R0 + 2.0 * h)
      throw SupportViolation(
          "support radius " + std::to_string(tr.support_r.back()) +
          " exceeds t + R0 + 2h at t = " + std::to_string(t));
  };

  std::vector<double> vel;
  auto energy = [&]() {
    lf.fill_velocity(vel);
    auto u = lf.u();
    double e = 0.0;
    for (std::size_t i = 1; i < grid.N; ++i) {
      double ur = (u[i + 1] - u[i - 1]) / (2.0 * grid.h);
      e += w[i] * (vel[i] * vel[i] + ur * ur);
    }
    return e;
  };

  sample(lf.initial_u(), 0.0);

  double e0 = -1.0;
  double max_drift = 0.0;
  const bool track_energy = traces_out && !cfg.nonlinearity;
  const auto stride = static_cast<std::size_t>(std::max(1, cfg.sample_stride));

  LevelResult lr;
  for (std::size_t k = lf.step_index();; ++k) {
    // state is at time k * dt here, finite, sup < M_blow
    if (k % stride == 0) {
      sample(lf.u(), lf.t());
      if (track_energy) {
        double e = energy();
        if (e0 < 0.0) e0 = e;
        else if (e0 > 0.0)
          max_drift = std::max(max_drift, std::abs(e - e0) / e0);
      }
    }
    if (k >= n_steps) break;
    double sup_after = lf.advance();
    if (sup_after >= cfg.M_blow || !std::isfinite(sup_after)) {
      lr.blow_up = true;
      lf.rollback_one();  // back to the pre-crossing state, bitwise
      break;
    }
  }

  if (lr.blow_up) {
    auto bisect = [&](double thr) {
      double lo = 0.0, hi = dt;
      while (!lf.crosses_within(hi, thr)) {
        lo = hi;
        hi += dt;
        if (lf.t() + hi > cfg.horizon + dt) return lf.t() + hi;
      }
      for (int it = 0; it < 40 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (lf.crosses_within(mid, thr)) hi = mid;
        else lo = mid;
      }
      return lf.t() + 0.5 * (lo + hi);
    };
    lr.T_cross = bisect(cfg.M_blow);
    lr.T_cross_hi = bisect(10.0 * cfg.M_blow);
  }

  if (report) {
    report->energy_drift = max_drift;
    auto u = lf.u();
    report->final_u.assign(u.begin(), u.end());
    report->final_t = lf.t();
  }
  return lr;
}

}  // namespace

double bump_radial_integral(int n, int m, double R0) {
  // int_0^R0 (1-(r/R0)^2)^m r^{n-1} dr = R0^n/2 * B(n/2, m+1)
  double lb = std::lgamma(0.5 * n) + std::lgamma(m + 1.0) -
              std::lgamma(0.5 * n + m + 1.0);
  return 0.5 * std::pow(R0, n) * std::exp(lb);
}

double functional_G(std::span<const double> u, const RadialGrid& grid) {
  const double area = sphere_area(grid.n - 1);
  double s = 0.0;
  for (std::size_t i = 1; i < grid.N; ++i)
    s += u[i] * std::pow(grid.r(i), grid.n - 1);
  s += 0.5 * u[grid.N] * std::pow(grid.r_max, grid.n - 1);
  return area * grid.h * s;
}

double functional_weighted(std::span<const double> u, const RadialGrid& grid,
                           std::span<const double> weight) {
  const double area = sphere_area(grid.n - 1);
  double s = 0.0;
  for (std::size_t i = 1; i < grid.N; ++i)
    s += u[i] * weight[i] * std::pow(grid.r(i), grid.n - 1);
  s += 0.5 * u[grid.N] * weight[grid.N] * std::pow(grid.r_max, grid.n - 1);
  return area * grid.h * s;
}

double residual_G_identity(const Traces& traces,
                           const CoefficientProfile& prof, bool include_lp) {
  const auto& t = traces.t;
  if (t.size() < 3) return 0.0;
  const double dt = t[1] - t[0];
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    double g0 = traces.G[i - 1], g1 = traces.G[i], g2 = traces.G[i + 1];
    if (!std::isfinite(g0) || !std::isfinite(g1) || !std::isfinite(g2)) break;
    double d2 = (g2 - 2.0 * g1 + g0) / (dt * dt);
    double d1 = (g2 - g0) / (2.0 * dt);
    double res = d2 + prof.a(t[i]) * d1 + prof.b(t[i]) * g1 -
                 (include_lp ? traces.Lp[i] : 0.0);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

SolveReport run_single(const SolveConfig& cfg) {
  if (cfg.mode == SolveMode::Theorem && cfg.laplacian)
    verify_theorem_hypotheses(cfg);
  SolveReport rep;
  Traces* tr = cfg.collect_traces ? &rep.traces : nullptr;
  LevelResult lr = integrate_level(cfg, cfg.h, tr, &rep);
  rep.blow_up = lr.blow_up;
  if (lr.blow_up) {
    rep.T_est = lr.T_cross;
    rep.T_richardson = lr.T_cross;
    rep.sensitivity = std::abs(lr.T_cross_hi - lr.T_cross);
    rep.refinement.push_back({cfg.h, cfg.cfl * cfg.h, lr.T_cross});
  }
  if (cfg.collect_traces) {
    double t_cap = rep.blow_up ? 0.8 * (*rep.T_est)
                               : std::numeric_limits<double>::infinity();
    Traces window;
    for (std::size_t i = 0; i < rep.traces.t.size(); ++i) {
      if (rep.traces.t[i] > t_cap) break;
      window.t.push_back(rep.traces.t[i]);
      window.G.push_back(rep.traces.G[i]);
      window.Lp.push_back(rep.traces.Lp[i]);
    }
    rep.residual_G = residual_G_identity(window, cfg.profile, cfg.nonlinearity);
    if (!window.G.empty()) {
      rep.min_G = *std::min_element(window.G.begin(), window.G.end());
      double gscale = 0.0;
      for (double g : window.G)
        if (std::isfinite(g)) gscale = std::max(gscale, std::abs(g));
      rep.g_nonneg = rep.min_G >= -1e-10 * std::max(1.0, gscale);
    }
  }
  return rep;
}

SolveReport run(const SolveConfig& cfg) {
  if (cfg.mode == SolveMode::Theorem && cfg.laplacian)
    verify_theorem_hypotheses(cfg);

  SolveConfig base = cfg;
  base.mode = SolveMode::Free;  // hypotheses already checked once

  const int levels = std::max(1, cfg.refine_levels);
  SolveReport rep;
  double prev_T = std::numeric_limits<double>::quiet_NaN();
  bool prev_blew = false;
  std::vector<RefinementTriple> triples;
  for (int level = 0; level < levels; ++level) {
    SolveConfig lc = base;
    lc.h = cfg.h / std::pow(2.0, level);
    if (level + 1 < levels) {
      lc.collect_traces = false;
      LevelResult lr = integrate_level(lc, lc.h, nullptr, nullptr);
      double T =
          lr.blow_up ? lr.T_cross : std::numeric_limits<double>::quiet_NaN();
      triples.push_back({lc.h, lc.cfl * lc.h, T});
      prev_T = T;
      prev_blew = lr.blow_up;
    } else {
      SolveReport fine = run_single(lc);
      rep = std::move(fine);
      rep.refinement.clear();
      for (auto& tr : triples) rep.refinement.push_back(tr);
      if (rep.blow_up) {
        rep.refinement.push_back({lc.h, lc.cfl * lc.h, *rep.T_est});
        if (levels > 1 && prev_blew) {
          double T_f = *rep.T_est;
          rep.T_richardson = T_f + (T_f - prev_T) / 3.0;
          rep.converged = std::abs(T_f - prev_T) <=
                          cfg.refine_tol * std::max(std::abs(T_f), 1e-300);
        } else if (levels > 1) {
          rep.converged = false;  // coarse level saw no blow-up
        }
      }
    }
  }
  return rep;
}

}  // namespace blowup
