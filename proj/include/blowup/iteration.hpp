#ifndef BLOWUP_ITERATION_HPP
#define BLOWUP_ITERATION_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace blowup {

// Sub-critical iteration sequences, log domain for D_j:
//   a_{j+1} = p a_j + n(p-1),  b_{j+1} = p b_j + 2,
//   log D_{j+1} = p log D_j + log c_r1r2 - 2 log(p b_j + 2),
// seeded by a_1 = (n-1)p/2, b_1 = n+1, D_1 = C2 eps^p.
struct SubcritSequences {
  double p = 0.0;
  int n = 0;
  int j_max = 0;
  std::vector<double> a;     // a[j-1] holds a_j
  std::vector<double> b;
  std::vector<double> logD;
  double C2 = 0.0;
  double C3 = 0.0;           // c_r1r2 / (n+1+2/(p-1))^2
  double S_p_inf = 0.0;      // 2p log p/(p-1)^2 - p log C3/(p-1)
  int j_threshold = 0;       // index beyond which the D_j bound is asserted
  bool dj_bound_ok = true;   // logD_j >= p^{j-1}(logD_1 - S_p_inf) beyond it
  double closed_form_gap = 0.0;  // worst relative a_j/b_j closed-form gap
};

SubcritSequences subcrit_sequences(double p, int n, double c_r1r2, double C2,
                                   double eps, int j_max);

// T = C4 eps^{-2p(p-1)/gamma} with
// C4 = (e^{S_p(inf) + alpha log 2 + 1} / C2)^{2(p-1)/gamma}; also evaluates
// J(t) = log D_1 - S_p(inf) - alpha log(1+t) + beta log t at T.
struct SubcritThreshold {
  double T = 0.0;
  double J_at_T = 0.0;
  bool ok = false;  // J(T) > 1
};

SubcritThreshold subcrit_threshold(double p, int n, double c_r1r2, double C2,
                                   double eps);

// Critical slicing sequences: l_j = 2 - 2^{-(j+1)}, a_j = (p^{j+1}-1)/(p-1),
// b_j = p^j - 1, log C recursion log C_{j+1} = p log C_j + log E - j log(2p)
// with E = C_frame (p-1)/(8 p^2), C_1 = N eps^{p^2}, N = C_frame M^p/(3^p 7).
struct CritSequences {
  double p = 0.0;
  int j_max = 0;
  std::vector<double> l;     // l[j] holds l_j, j >= 0
  std::vector<double> a;     // a[j-1] holds a_j, j >= 1
  std::vector<double> b;
  std::vector<double> logC;  // logC[j-1] holds log C_j
  double E = 0.0;
  double M = 0.0;
  double N = 0.0;
  double C1 = 0.0;
  double B = 0.0;  // N 2^{-2p^2/(p-1)} p^{-p/(p-1)} E^{1/(p-1)}
  double recursion_vs_closed_gap = 0.0;  // worst |logC_rec - logC_closed|
};

CritSequences crit_sequences(double p, double c_frame, double m_const,
                             double eps, int j_max);

// Closed form of log C_j implied by the recursion.
double crit_logC_closed(double p, double E, double C1, int j);

// exp(B^{-(p-1)/p} eps^{-p(p-1)}), overflow-guarded: log kept alongside.
struct CritThreshold {
  double log_threshold = 0.0;
  double value = 0.0;  // +inf sentinel when exp overflows
};

CritThreshold crit_threshold(double B, double p, double eps);

// Monotone Volterra envelope iteration: value_{k+1} = max(seed, Phi[value_k])
// pointwise, with divergence declared at the first grid node whose value
// exceeds the cap stably across sweeps.
struct EnvelopeResult {
  std::vector<double> t;
  std::vector<double> value;  // final sweep
  std::optional<double> divergence_time;
  int sweeps_used = 0;
};

inline constexpr double kEnvelopeCap = 1e30;

// Phi[G](t) = c_r1r2 int_0^t (t-s) G^p(s) (s+R)^{(1-p)n} ds, seeded by
// C2 eps^p (1+t)^{-(n-1)p/2} t^{n+1}, on a uniform grid [0, t_end].
EnvelopeResult volterra_envelope_subcrit(double C2, double eps, double c_r1r2,
                                         double p, int n, double R,
                                         double t_end, std::size_t nodes,
                                         int max_sweeps);

// Phi[F](t) = (c_frame/<t>) int_0^t ((t-s)/<s>) F^p(s)/(log<s>)^{p-1} ds,
// <s> = 3+s, seeded by (M/3) eps^p log(2t/3) for t >= 3/2, on a log-spaced
// grid [l0, t_end].
EnvelopeResult volterra_envelope_crit(double m_const, double eps,
                                      double c_frame, double p, double t_end,
                                      std::size_t nodes, int max_sweeps);

// One application of each operator on an arbitrary grid; exposed for the
// monotonicity property tests.
void volterra_apply_subcrit(std::span<const double> t,
                            std::span<const double> g, double c_r1r2, double p,
                            int n, double R, std::span<double> out);
void volterra_apply_crit(std::span<const double> t, std::span<const double> f,
                         double c_frame, double p, std::span<double> out);

}  // namespace blowup

#endif
