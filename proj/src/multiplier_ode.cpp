#include "blowup/multiplier_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blowup/errors.hpp"
#include "blowup/rk4.hpp"

namespace blowup {

namespace {

constexpr double kExtStep = 0.05;

struct KState {
  double k;
  double v;  // k'
};

// Asymptotic value of r2 at large T from the iterated Riccati tail:
// r2 ~ -(I_b + int_T (a I_b + I_b^2)). Zero for profiles without tail data.
double r2_asymptotic(const CoefficientProfile& prof, double T) {
  if (!prof.has_analytic_tail()) return 0.0;
  return -(prof.tail_Ib(T) + prof.tail_int_aIb(T) + prof.tail_int_Ib2(T));
}

// Signed tails of int_T^inf r2, r1, (r1 - r2); used as L1 tail estimates
// (the asymptotics are single-signed for power-law profiles at large T).
double tail_abs_r2(const CoefficientProfile& prof, double T) {
  if (!prof.has_analytic_tail()) return 0.0;
  return std::abs(prof.tail_int_Ib(T) + prof.tail_int2_aIb(T) +
                  prof.tail_int2_Ib2(T));
}

double tail_abs_r1(const CoefficientProfile& prof, double T) {
  if (!prof.has_analytic_tail()) return 0.0;
  double int_r2 = -(prof.tail_int_Ib(T) + prof.tail_int2_aIb(T) +
                    prof.tail_int2_Ib2(T));
  return std::abs(prof.tail_abs_a(T) - int_r2);
}

double tail_abs_diff(const CoefficientProfile& prof, double T) {
  if (!prof.has_analytic_tail()) return 0.0;
  double int_r2 = -(prof.tail_int_Ib(T) + prof.tail_int2_aIb(T) +
                    prof.tail_int2_Ib2(T));
  return std::abs(prof.tail_abs_a(T) - 2.0 * int_r2);
}

// Picks the terminal horizon: far enough that the neglected third-order tail
// terms are harmless, snapped to a ladder so that user horizons 2H and H get
// identical terminal data.
double pick_horizon_ext(const CoefficientProfile& prof, double horizon) {
  double base = std::max(2.0 * horizon, 800.0);
  // round up to the ladder 800 * 2^k
  double T = 800.0;
  while (T < base) T *= 2.0;
  if (prof.has_analytic_tail()) {
    while (T < 1e6 && std::abs(prof.tail_int_aIb(T)) + prof.tail_int_Ib2(T) >
                          1e-9) {
      T *= 2.0;
    }
  }
  return T;
}

struct BackwardResult {
  std::vector<double> k;
  std::vector<double> v;
  double ext_l1_r2 = 0.0;    // trapezoid of |r2| over [horizon, horizon_ext]
  double ext_l1_r1 = 0.0;
  double ext_l1_diff = 0.0;  // |r1 - r2| = |a - 2 r2|
  double horizon_ext = 0.0;
};

// Integrates k'' + a k' + b k = 0 backward from the asymptotic terminal state
// at horizon_ext, storing (k, k') on the fine grid over [0, horizon].
BackwardResult integrate_k_backward(const CoefficientProfile& prof,
                                    double horizon, double step) {
  if (!(horizon > 0.0) || !(step > 0.0))
    throw std::invalid_argument("solve_k: horizon and step must be positive");

  auto rhs = [&prof](double t, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], -prof.a(t) * y[1] - prof.b(t) * y[0]};
  };

  BackwardResult out;
  out.horizon_ext = pick_horizon_ext(prof, horizon);

  const std::size_t n_ext =
      static_cast<std::size_t>(std::llround((out.horizon_ext - horizon) / kExtStep));
  out.horizon_ext = horizon + static_cast<double>(n_ext) * kExtStep;

  std::array<double, 2> y{1.0, -r2_asymptotic(prof, out.horizon_ext)};

  auto guard = [](double k_val) {
    if (!(k_val > 0.0))
      throw NonOscillationFailure(
          "k-branch changed sign; horizon/step inadequate or coefficient "
          "hypotheses violated");
  };
  guard(y[0]);

  // Coarse extension pass, accumulating the L1 pieces on the fly.
  double prev_r2 = -y[1] / y[0];
  double prev_a = prof.a(out.horizon_ext);
  for (std::size_t j = 0; j < n_ext; ++j) {
    double t = out.horizon_ext - static_cast<double>(j) * kExtStep;
    y = rk4_step<2>(t, -kExtStep, y, rhs);
    guard(y[0]);
    double r2 = -y[1] / y[0];
    double a_here = prof.a(t - kExtStep);
    out.ext_l1_r2 += 0.5 * kExtStep * (std::abs(prev_r2) + std::abs(r2));
    out.ext_l1_r1 +=
        0.5 * kExtStep * (std::abs(prev_a - prev_r2) + std::abs(a_here - r2));
    out.ext_l1_diff += 0.5 * kExtStep * (std::abs(prev_a - 2.0 * prev_r2) +
                                         std::abs(a_here - 2.0 * r2));
    prev_r2 = r2;
    prev_a = a_here;
  }

  // Fine pass over [0, horizon], stored back-to-front.
  const std::size_t n_fine =
      static_cast<std::size_t>(std::llround(horizon / step));
  out.k.resize(n_fine + 1);
  out.v.resize(n_fine + 1);
  out.k[n_fine] = y[0];
  out.v[n_fine] = y[1];
  for (std::size_t j = n_fine; j > 0; --j) {
    double t = static_cast<double>(j) * step;
    y = rk4_step<2>(t, -step, y, rhs);
    guard(y[0]);
    out.k[j - 1] = y[0];
    out.v[j - 1] = y[1];
  }
  return out;
}

}  // namespace

std::vector<double> solve_k(const CoefficientProfile& profile, double horizon,
                            double step) {
  return integrate_k_backward(profile, horizon, step).k;
}

MultiplierData compute_multipliers(const CoefficientProfile& profile,
                                   double horizon, double step) {
  BackwardResult kv = integrate_k_backward(profile, horizon, step);
  const std::size_t n = kv.k.size();

  MultiplierData md;
  md.grid = UniformGrid{0.0, step, n};
  md.horizon_ext = kv.horizon_ext;
  md.k = std::move(kv.k);
  md.r1.resize(n);
  md.r2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    md.r2[i] = -kv.v[i] / md.k[i];
    md.r1[i] = profile.a(md.grid.t(i)) - md.r2[i];
  }
  md.r2_at_0 = md.r2[0];

  // Decay sanity on the extension side.
  if (profile.has_analytic_tail()) {
    double rh = std::abs(r2_asymptotic(profile, kv.horizon_ext));
    double rm = std::abs(r2_asymptotic(profile, 0.5 * kv.horizon_ext));
    if (rh > rm + 1e-300 && rh > 1e-12)
      throw DivergentL1("trailing tail of |r2| fails to decay");
  }

  std::vector<double> abs_r2(n), abs_r1(n), abs_diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    abs_r2[i] = std::abs(md.r2[i]);
    abs_r1[i] = std::abs(md.r1[i]);
    abs_diff[i] = std::abs(md.r1[i] - md.r2[i]);
  }
  md.l1_r2 = trapezoid(abs_r2, step) + kv.ext_l1_r2 +
             tail_abs_r2(profile, kv.horizon_ext);
  md.l1_r1 = trapezoid(abs_r1, step) + kv.ext_l1_r1 +
             tail_abs_r1(profile, kv.horizon_ext);
  md.l1_r1_minus_r2 = trapezoid(abs_diff, step) + kv.ext_l1_diff +
                      tail_abs_diff(profile, kv.horizon_ext);
  md.c_r1r2 = std::exp(-md.l1_r1 - md.l1_r2);

  // Riccati residual with r2' by 4th-order centered differences: an
  // independent route through the ODE, not the chain rule identity.
  md.residual.assign(n, 0.0);
  md.residual_max = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    double d = (-md.r2[i + 2] + 8.0 * md.r2[i + 1] - 8.0 * md.r2[i - 1] +
                md.r2[i - 2]) /
               (12.0 * step);
    double t = md.grid.t(i);
    double res = d + profile.a(t) * md.r2[i] - md.r2[i] * md.r2[i] -
                 profile.b(t);
    md.residual[i] = res;
    md.residual_max = std::max(md.residual_max, std::abs(res));
  }
  return md;
}

RhoData solve_rho(const CoefficientProfile& profile, double lambda,
                  double horizon, double step) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_rho: lambda must be > 0");
  if (!(horizon > 0.0) || !(step > 0.0))
    throw std::invalid_argument("solve_rho: horizon and step must be positive");

  // eta = rho e^{lambda t} satisfies eta'' - (2 lambda + a) eta' +
  // (lambda a + b - a') eta = 0; its e^{2 lambda t} mode decays backward, so
  // terminal errors at horizon_ext wash out exponentially.
  auto rhs = [&](double t, const std::array<double, 2>& y) {
    double a = profile.a(t);
    return std::array<double, 2>{
        y[1], (2.0 * lambda + a) * y[1] -
                  (lambda * a + profile.b(t) - profile.da(t)) * y[0]};
  };

  const double pad = std::max(40.0, 20.0 / lambda);
  const std::size_t n_pad = static_cast<std::size_t>(std::ceil(pad / step));
  const std::size_t n_fine =
      static_cast<std::size_t>(std::llround(horizon / step));
  const double horizon_ext = (n_fine + n_pad) * step;

  // First-order balance terminal slope; exact value is irrelevant after the
  // backward damping, but this shortens the transient.
  double aT = profile.a(horizon_ext);
  std::array<double, 2> y{
      1.0, (lambda * aT + profile.b(horizon_ext) - profile.da(horizon_ext)) /
               (2.0 * lambda)};

  std::vector<double> eta(n_fine + 1), deta(n_fine + 1);
  for (std::size_t j = n_fine + n_pad; j > 0; --j) {
    double t = static_cast<double>(j) * step;
    y = rk4_step<2>(t, -step, y, rhs);
    if (!(y[0] > 0.0))
      throw NonOscillationFailure("eta-branch changed sign in solve_rho");
    if (j - 1 <= n_fine) {
      eta[j - 1] = y[0];
      deta[j - 1] = y[1];
    }
  }
  if (n_fine + n_pad == 0) throw std::invalid_argument("solve_rho: empty grid");

  RhoData rd;
  rd.lambda = lambda;
  rd.grid = UniformGrid{0.0, step, n_fine + 1};
  rd.rho.resize(n_fine + 1);
  const double eta0 = eta[0];
  for (std::size_t i = 0; i <= n_fine; ++i)
    rd.rho[i] = eta[i] / eta0 * std::exp(-lambda * rd.grid.t(i));
  rd.rho[0] = 1.0;  // normalization, exact
  rd.drho_at_0 = deta[0] / eta0 - lambda;

  rd.ratio_min = std::numeric_limits<double>::infinity();
  rd.ratio_max = 0.0;
  for (std::size_t i = (n_fine + 1) / 2; i <= n_fine; ++i) {
    double ratio = eta[i] / eta0;
    rd.ratio_min = std::min(rd.ratio_min, ratio);
    rd.ratio_max = std::max(rd.ratio_max, ratio);
  }
  return rd;
}

ChiData solve_chi(const CoefficientProfile& profile, const MultiplierData& mult,
                  double lambda, double s, double horizon, double step) {
  if (!(lambda > 0.0)) throw std::invalid_argument("solve_chi: lambda must be > 0");
  if (!(s >= 0.0) || !(s < horizon))
    throw std::invalid_argument("solve_chi: need 0 <= s < horizon");

  // (k, k') is advanced alongside chi so the coefficient r1 - r2 = a + 2k'/k
  // is available at the RK4 stage points without interpolation.
  const std::size_t i0 = static_cast<std::size_t>(std::llround(s / step));
  if (i0 >= mult.grid.count || std::abs(mult.grid.t(i0) - s) > 1e-9 * std::max(1.0, s))
    throw std::invalid_argument("solve_chi: s must lie on the multiplier grid");

  auto rhs = [&](double t, const std::array<double, 6>& y) {
    double a = profile.a(t);
    double coeff = a + 2.0 * y[5] / y[4];  // r1 - r2
    return std::array<double, 6>{
        y[1], lambda * lambda * y[0] - coeff * y[1],
        y[3], lambda * lambda * y[2] - coeff * y[3],
        y[5], -a * y[5] - profile.b(t) * y[4]};
  };

  const std::size_t n =
      static_cast<std::size_t>(std::llround((horizon - s) / step));
  ChiData cd;
  cd.lambda = lambda;
  cd.s = s;
  cd.grid = UniformGrid{s, step, n + 1};
  cd.chi1.resize(n + 1);
  cd.chi2.resize(n + 1);
  cd.l1_diff = mult.l1_r1_minus_r2;

  double kv0 = -mult.r2[i0] * mult.k[i0];  // k'(s)
  std::array<double, 6> y{1.0, 0.0, 0.0, 1.0, mult.k[i0], kv0};
  cd.chi1[0] = 1.0;
  cd.chi2[0] = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double t = s + static_cast<double>(j) * step;
    y = rk4_step<6>(t, step, y, rhs);
    if (!(y[4] > 0.0))
      throw NonOscillationFailure("k-branch changed sign in solve_chi");
    cd.chi1[j + 1] = y[0];
    cd.chi2[j + 1] = y[2];
  }

  // sinh(x)/x with the small-argument branch.
  auto sinhc = [](double x) {
    double ax = std::abs(x);
    if (ax < 1e-4) {
      double x2 = x * x;
      return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
  };

  const double slack = 1.0 + 1e-6;
  const double e1 = std::exp(-cd.l1_diff);
  const double e2 = std::exp(-2.0 * cd.l1_diff);
  const double e3 = std::exp(cd.l1_diff);
  cd.chi1_ok = true;
  cd.chi2_ok = true;
  for (std::size_t j = 0; j <= n; ++j) {
    double dt = static_cast<double>(j) * step;
    double ch = std::cosh(lambda * dt);
    double sh = dt * sinhc(lambda * dt);  // sinh(lambda dt)/lambda
    bool ok1 = cd.chi1[j] <= ch * slack && cd.chi1[j] * slack >= e1 * ch;
    bool ok2 = cd.chi2[j] <= e3 * sh * slack && cd.chi2[j] * slack >= e2 * sh;
    if (!ok1 && cd.chi1_ok) cd.chi1_ok = false;
    if (!ok2 && cd.chi2_ok) cd.chi2_ok = false;
    if ((!ok1 || !ok2) && cd.first_bad_node < 0)
      cd.first_bad_node = static_cast<std::ptrdiff_t>(j);
  }
  return cd;
}

void require_sandwich(const ChiData& chi) {
  if (chi.chi1_ok && chi.chi2_ok) return;
  throw SandwichViolation(
      "chi sandwich bound violated at node " +
      std::to_string(chi.first_bad_node) + " (t = " +
      std::to_string(chi.grid.t(static_cast<std::size_t>(chi.first_bad_node))) +
      ")");
}

std::pair<bool, bool> check_data_conditions(double f0, double g0,
                                            const MultiplierData& mult,
                                            const RhoData& rho, double a0) {
  bool c1 = g0 + mult.r2_at_0 * f0 >= 0.0;
  bool c2 = g0 + (a0 - rho.drho_at_0) * f0 >= 0.0;
  return {c1, c2};
}

bool check_relaxed_sign(const CoefficientProfile& profile, double horizon) {
  const double step = horizon / 4096.0;
  for (double t = 0.5 * horizon; t <= horizon + 0.5 * step; t += step) {
    double expr = 0.5 * profile.da(t) + 0.25 * profile.a(t) * profile.a(t) -
                  profile.b(t);
    if (!(expr < 0.0)) return false;
  }
  return true;
}

}  // namespace blowup
