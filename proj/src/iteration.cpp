#include "blowup/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blowup/errors.hpp"
#include "blowup/exponents.hpp"

namespace blowup {

SubcritSequences subcrit_sequences(double p, int n, double c_r1r2, double C2,
                                   double eps, int j_max) {
  if (!(p > 1.0) || !(p < strauss_exponent(n)))
    throw std::invalid_argument("subcrit_sequences: need 1 < p < p_S(n)");
  if (!(C2 > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("subcrit_sequences: C2, eps must be > 0");
  if (!(c_r1r2 > 0.0) || c_r1r2 > 1.0)
    throw std::invalid_argument("subcrit_sequences: c_r1r2 must be in (0,1]");
  if (j_max < 1) throw std::invalid_argument("subcrit_sequences: j_max >= 1");

  SubcritSequences s;
  s.p = p;
  s.n = n;
  s.j_max = j_max;
  s.C2 = C2;
  const double beta = n + 1.0 + 2.0 / (p - 1.0);
  s.C3 = c_r1r2 / (beta * beta);
  s.S_p_inf = 2.0 * p * std::log(p) / ((p - 1.0) * (p - 1.0)) -
              p * std::log(s.C3) / (p - 1.0);
  s.j_threshold = static_cast<int>(std::floor(p * std::log(s.C3) /
                                              (2.0 * std::log(p)) -
                                              1.0 / (p - 1.0))) +
                  1;

  s.a.resize(j_max);
  s.b.resize(j_max);
  s.logD.resize(j_max);
  s.a[0] = 0.5 * (n - 1.0) * p;
  s.b[0] = n + 1.0;
  s.logD[0] = std::log(C2) + p * std::log(eps);
  for (int j = 1; j < j_max; ++j) {
    s.a[j] = p * s.a[j - 1] + n * (p - 1.0);
    s.b[j] = p * s.b[j - 1] + 2.0;
    s.logD[j] = p * s.logD[j - 1] + std::log(c_r1r2) -
                2.0 * std::log(p * s.b[j - 1] + 2.0);
  }

  // Closed forms a_j = p^{j-1}((n-1)p/2 + n) - n, b_j = p^{j-1} beta - 2/(p-1).
  const double alpha = 0.5 * (n - 1.0) * p + n;
  s.closed_form_gap = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    double pj = std::pow(p, j - 1.0);
    double a_cf = pj * alpha - n;
    double b_cf = pj * beta - 2.0 / (p - 1.0);
    s.closed_form_gap = std::max(
        s.closed_form_gap, std::abs(s.a[j - 1] - a_cf) / std::abs(a_cf));
    s.closed_form_gap = std::max(
        s.closed_form_gap, std::abs(s.b[j - 1] - b_cf) / std::abs(b_cf));
  }

  s.dj_bound_ok = true;
  for (int j = std::max(s.j_threshold + 1, 1); j <= j_max; ++j) {
    double bound = std::pow(p, j - 1.0) * (s.logD[0] - s.S_p_inf);
    double slack = 1e-9 * std::max(1.0, std::abs(bound));
    if (s.logD[j - 1] < bound - slack) {
      s.dj_bound_ok = false;
      break;
    }
  }
  return s;
}

SubcritThreshold subcrit_threshold(double p, int n, double c_r1r2, double C2,
                                   double eps) {
  if (!(C2 > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("subcrit_threshold: C2, eps must be > 0");
  const double g = gamma_pn(n, p);
  if (!(g > 0.0))
    throw std::invalid_argument("subcrit_threshold: sub-critical regime only");
  const double alpha = 0.5 * (n - 1.0) * p + n;
  const double beta = n + 1.0 + 2.0 / (p - 1.0);
  const double C3 = c_r1r2 / (beta * beta);
  const double S = 2.0 * p * std::log(p) / ((p - 1.0) * (p - 1.0)) -
                   p * std::log(C3) / (p - 1.0);
  const double logD1 = std::log(C2) + p * std::log(eps);

  SubcritThreshold out;
  double logT =
      (S + alpha * std::log(2.0) + 1.0 - logD1) * 2.0 * (p - 1.0) / g;
  out.T = std::exp(logT);
  out.J_at_T = logD1 - S - alpha * std::log1p(out.T) + beta * logT;
  out.ok = out.J_at_T > 1.0;
  return out;
}

double crit_logC_closed(double p, double E, double C1, int j) {
  const double l2p = std::log(2.0 * p);
  const double base = std::log(C1) - p / (p - 1.0) * l2p +
                      std::log(E) / (p - 1.0);
  return std::pow(p, j - 1.0) * base - std::log(E) / (p - 1.0) +
         (p / (p - 1.0) + j - 1.0) * l2p;
}

CritSequences crit_sequences(double p, double c_frame, double m_const,
                             double eps, int j_max) {
  if (!(p > 1.0)) throw std::invalid_argument("crit_sequences: p must be > 1");
  if (!(c_frame > 0.0) || !(m_const > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("crit_sequences: constants must be > 0");
  if (j_max < 1) throw std::invalid_argument("crit_sequences: j_max >= 1");

  CritSequences c;
  c.p = p;
  c.j_max = j_max;
  c.M = m_const;
  c.E = c_frame * (p - 1.0) / (8.0 * p * p);
  c.N = c_frame * std::pow(m_const, p) / (std::pow(3.0, p) * 7.0);
  const double logC1 = std::log(c.N) + p * p * std::log(eps);
  c.C1 = std::exp(logC1);
  const double logB = std::log(c.N) -
                      2.0 * p * p / (p - 1.0) * std::log(2.0) -
                      p / (p - 1.0) * std::log(p) + std::log(c.E) / (p - 1.0);
  c.B = std::exp(logB);

  c.l.resize(j_max + 1);
  for (int j = 0; j <= j_max; ++j) c.l[j] = 2.0 - std::pow(2.0, -(j + 1.0));
  c.a.resize(j_max);
  c.b.resize(j_max);
  c.logC.resize(j_max);
  for (int j = 1; j <= j_max; ++j) {
    c.a[j - 1] = (std::pow(p, j + 1.0) - 1.0) / (p - 1.0);
    c.b[j - 1] = std::pow(p, static_cast<double>(j)) - 1.0;
  }
  c.logC[0] = logC1;
  const double logE = std::log(c.E);
  const double l2p = std::log(2.0 * p);
  for (int j = 1; j < j_max; ++j)
    c.logC[j] = p * c.logC[j - 1] + logE - static_cast<double>(j) * l2p;

  c.recursion_vs_closed_gap = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    double closed = crit_logC_closed(p, c.E, c.C1, j);
    double gap = std::abs(c.logC[j - 1] - closed) /
                 std::max(1.0, std::abs(closed));
    c.recursion_vs_closed_gap = std::max(c.recursion_vs_closed_gap, gap);
  }
  return c;
}

CritThreshold crit_threshold(double B, double p, double eps) {
  if (!(B > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("crit_threshold: B, eps must be > 0");
  CritThreshold out;
  out.log_threshold =
      std::exp(-(p - 1.0) / p * std::log(B)) * std::pow(eps, -p * (p - 1.0));
  out.value = out.log_threshold > 700.0
                  ? std::numeric_limits<double>::infinity()
                  : std::exp(out.log_threshold);
  return out;
}

namespace {

double bracket3(double s) { return 3.0 + std::abs(s); }

// Shared envelope sweep loop: applies op, takes max with seed and the
// previous sweep, and watches the first node at the cap.
EnvelopeResult sweep_envelope(std::vector<double> t, std::vector<double> seed,
                              int max_sweeps,
                              const std::function<void(std::span<const double>,
                                                       std::span<const double>,
                                                       std::span<double>)>& op) {
  const std::size_t n = t.size();
  EnvelopeResult res;
  res.t = std::move(t);
  res.value = seed;
  std::vector<double> next(n);

  std::ptrdiff_t stable_idx = -1;
  int stable_count = 0;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    op(res.t, res.value, next);
    for (std::size_t i = 0; i < n; ++i) {
      double v = std::max(seed[i], next[i]);
      v = std::max(v, res.value[i]);  // monotone by construction; enforce
      res.value[i] = std::min(v, kEnvelopeCap);
    }
    res.sweeps_used = sweep;
    std::ptrdiff_t idx = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (res.value[i] >= kEnvelopeCap) {
        idx = static_cast<std::ptrdiff_t>(i);
        break;
      }
    }
    if (idx >= 0 && idx == stable_idx) {
      if (++stable_count >= 3) break;
    } else {
      stable_idx = idx;
      stable_count = 0;
    }
  }
  if (stable_idx >= 0)
    res.divergence_time = res.t[static_cast<std::size_t>(stable_idx)];
  else
    throw NoDivergenceOnGrid(
        "envelope stabilized below the cap; grid too short for this eps");
  return res;
}

}  // namespace

void volterra_apply_subcrit(std::span<const double> t,
                            std::span<const double> g, double c_r1r2, double p,
                            int n, double R, std::span<double> out) {
  const std::size_t m = t.size();
  // int_0^t (t-s) phi(s) ds = t * int phi - int s phi, cumulative trapezoid
  double A = 0.0, Bm = 0.0;
  double phi_prev = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double gv = std::min(g[i], kEnvelopeCap);
    double phi = std::pow(gv, p) * std::pow(t[i] + R, (1.0 - p) * n);
    if (i > 0) {
      double ds = t[i] - t[i - 1];
      A += 0.5 * ds * (phi_prev + phi);
      Bm += 0.5 * ds * (t[i - 1] * phi_prev + t[i] * phi);
    }
    phi_prev = phi;
    out[i] = c_r1r2 * (t[i] * A - Bm);
  }
}

void volterra_apply_crit(std::span<const double> t, std::span<const double> f,
                         double c_frame, double p, std::span<double> out) {
  const std::size_t m = t.size();
  double A = 0.0, Bm = 0.0;
  double phi_prev = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < m; ++i) {
    double fv = std::min(f[i], kEnvelopeCap);
    double br = bracket3(t[i]);
    double phi = std::pow(fv, p) / (br * std::pow(std::log(br), p - 1.0));
    if (!first) {
      double ds = t[i] - t[i - 1];
      A += 0.5 * ds * (phi_prev + phi);
      Bm += 0.5 * ds * (t[i - 1] * phi_prev + t[i] * phi);
    }
    first = false;
    phi_prev = phi;
    out[i] = c_frame / bracket3(t[i]) * (t[i] * A - Bm);
  }
}

EnvelopeResult volterra_envelope_subcrit(double C2, double eps, double c_r1r2,
                                         double p, int n, double R,
                                         double t_end, std::size_t nodes,
                                         int max_sweeps) {
  if (nodes < 8) throw std::invalid_argument("envelope: nodes too few");
  if (max_sweeps < 1) throw std::invalid_argument("envelope: sweeps >= 1");
  std::vector<double> t(nodes), seed(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(nodes - 1);
    seed[i] = C2 * std::pow(eps, p) *
              std::pow(1.0 + t[i], -0.5 * (n - 1.0) * p) *
              std::pow(t[i], n + 1.0);
  }
  return sweep_envelope(std::move(t), std::move(seed), max_sweeps,
                        [=](std::span<const double> tt,
                            std::span<const double> g, std::span<double> out) {
                          volterra_apply_subcrit(tt, g, c_r1r2, p, n, R, out);
                        });
}

EnvelopeResult volterra_envelope_crit(double m_const, double eps,
                                      double c_frame, double p, double t_end,
                                      std::size_t nodes, int max_sweeps) {
  if (nodes < 8) throw std::invalid_argument("envelope: nodes too few");
  if (max_sweeps < 1) throw std::invalid_argument("envelope: sweeps >= 1");
  const double l0 = 1.5;
  if (!(t_end > l0)) throw std::invalid_argument("envelope: t_end <= l0");
  std::vector<double> t(nodes), seed(nodes);
  const double ratio = std::log(t_end / l0) / static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) {
    t[i] = l0 * std::exp(ratio * static_cast<double>(i));
    seed[i] = m_const / 3.0 * std::pow(eps, p) *
              std::max(0.0, std::log(2.0 * t[i] / 3.0));
  }
  return sweep_envelope(std::move(t), std::move(seed), max_sweeps,
                        [=](std::span<const double> tt,
                            std::span<const double> f, std::span<double> out) {
                          volterra_apply_crit(tt, f, c_frame, p, out);
                        });
}

}  // namespace blowup
