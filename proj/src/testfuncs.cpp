#include "blowup/testfuncs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

double sinhc(double x) {
  double ax = std::abs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double angle_bracket(double s) { return 3.0 + std::abs(s); }

}  // namespace

PhiEvaluator::PhiEvaluator(int n, int quad_order)
    : n_(n), quad_order_(quad_order) {
  if (n < 2) throw std::invalid_argument("PhiEvaluator: n must be >= 2");
  if (quad_order < 4)
    throw std::invalid_argument("PhiEvaluator: quad_order too small");
  const double g = 0.5 * (n - 3);
  prefactor_ = sphere_area(n - 2);
  rule_ = gauss_jacobi(quad_order, g, g);
  rule2_ = gauss_jacobi(2 * quad_order, g, g);
}

double PhiEvaluator::eval(const QuadRule& rule, double z) const {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    s += rule.w[i] * std::exp(z * rule.x[i]);
  return prefactor_ * s;
}

double PhiEvaluator::operator()(double lambda, double r) const {
  return eval(rule_, lambda * r);
}

double PhiEvaluator::value_checked(double lambda, double r) const {
  double v1 = eval(rule_, lambda * r);
  double v2 = eval(rule2_, lambda * r);
  if (std::abs(v1 - v2) > 1e-10 * std::abs(v2))
    throw QuadratureNonConvergence("phi quadrature not converged at z = " +
                                   std::to_string(lambda * r));
  return v2;
}

double PhiEvaluator::at_origin() const { return sphere_area(n_ - 1); }

std::pair<double, double> phi_bound_fit(const PhiEvaluator& phi,
                                        std::span<const double> lambdas,
                                        std::span<const double> r_grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const double half = 0.5 * (phi.dimension() - 1);
  for (double lam : lambdas) {
    for (double r : r_grid) {
      double z = lam * r;
      // envelope <z>^{-(n-1)/2} e^{z}; ratio in log space for large z
      double log_env = z - half * 0.5 * std::log1p(z * z);
      double ratio = phi(lam, r) * std::exp(-log_env);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  return {lo, hi};
}

SpectralKernel::SpectralKernel(int n, double q, double lambda0, double R,
                               int lam_order, int phi_order)
    : q_(q),
      lambda0_(lambda0),
      R_(R),
      phi_(n, phi_order),
      phi2_(n, 2 * phi_order) {
  if (!(q > -1.0)) throw std::invalid_argument("SpectralKernel: q must be > -1");
  if (!(lambda0 > 0.0))
    throw std::invalid_argument("SpectralKernel: lambda0 must be > 0");
  if (!(R >= 0.0)) throw std::invalid_argument("SpectralKernel: R must be >= 0");
  lam_rule_ = power_weight_rule(lam_order, q, lambda0);
  lam_rule2_ = power_weight_rule(2 * lam_order, q, lambda0);
}

double SpectralKernel::integrate(const QuadRule& rule, const PhiEvaluator& phi,
                                 double r, double t, double s,
                                 bool diag_is_xi) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double lam = rule.x[i];
    double w = diag_is_xi ? std::exp(-lam * (t + R_)) * std::cosh(lam * t)
                          : std::exp(-lam * (t + R_)) * sinhc(lam * (t - s));
    acc += rule.w[i] * w * phi(lam, r);
  }
  return acc;
}

double SpectralKernel::xi(double r, double t) const {
  return integrate(lam_rule_, phi_, r, t, t, true);
}

double SpectralKernel::eta(double r, double t, double s) const {
  return integrate(lam_rule_, phi_, r, t, s, false);
}

double SpectralKernel::xi_checked(double r, double t) const {
  double v1 = xi(r, t);
  double v2 = integrate(lam_rule2_, phi2_, r, t, t, true);
  if (std::abs(v1 - v2) > 1e-9 * std::abs(v2))
    throw QuadratureNonConvergence("xi_q quadrature not converged");
  return v2;
}

double SpectralKernel::eta_checked(double r, double t, double s) const {
  double v1 = eta(r, t, s);
  double v2 = integrate(lam_rule2_, phi2_, r, t, s, false);
  if (std::abs(v1 - v2) > 1e-9 * std::abs(v2))
    throw QuadratureNonConvergence("eta_q quadrature not converged");
  return v2;
}

BoundAudit lemma41_audit(const SpectralKernel& kernel,
                         std::span<const double> t_grid,
                         std::span<const double> s_grid,
                         std::span<const double> r_grid) {
  const int n = kernel.phi().dimension();
  const double q = kernel.q();
  const double R = kernel.support_radius();
  if (!(q > 0.0))
    throw std::invalid_argument("lemma41_audit: parts (i)/(ii) need q > 0");
  if (!(q > 0.5 * (n - 3)))
    throw std::invalid_argument("lemma41_audit: part (iii) needs q > (n-3)/2");

  BoundAudit audit;
  audit.A0_hat = std::numeric_limits<double>::infinity();
  audit.B0_hat = std::numeric_limits<double>::infinity();
  audit.B1_hat = std::numeric_limits<double>::infinity();
  audit.B2_hat = 0.0;

  // (i): xi_q >= A0 and eta_q(.,t,0) >= B0 <t>^{-1} for |x| <= R.
  for (double t : t_grid) {
    for (double r : r_grid) {
      if (r > R) continue;
      double xi = kernel.xi(r, t);
      if (xi < audit.A0_hat) {
        audit.A0_hat = xi;
        audit.A0_t = t;
        audit.A0_r = r;
      }
      double ratio = kernel.eta(r, t, 0.0) * angle_bracket(t);
      if (ratio < audit.B0_hat) {
        audit.B0_hat = ratio;
        audit.B0_t = t;
        audit.B0_r = r;
      }
    }
  }

  // (ii): eta_q(.,t,s) >= B1 <t>^{-1} <s>^{-q} for |x| <= s+R, 0 <= s < t.
  for (double t : t_grid) {
    for (double s : s_grid) {
      if (!(s < t)) continue;
      for (double r : r_grid) {
        if (r > s + R) continue;
        double ratio = kernel.eta(r, t, s) * angle_bracket(t) *
                       std::pow(angle_bracket(s), q);
        if (ratio < audit.B1_hat) {
          audit.B1_hat = ratio;
          audit.B1_t = t;
          audit.B1_s = s;
          audit.B1_r = r;
        }
      }
    }
  }

  // (iii): eta_q(.,t,t) <= B2 <t>^{-(n-1)/2} <t-|x|>^{(n-3)/2-q}, |x| <= t+R.
  for (double t : t_grid) {
    if (!(t > 0.0)) continue;
    for (double r : r_grid) {
      if (r > t + R) continue;
      double ratio = kernel.eta(r, t, t) *
                     std::pow(angle_bracket(t), 0.5 * (n - 1)) *
                     std::pow(angle_bracket(t - r), q - 0.5 * (n - 3));
      if (ratio > audit.B2_hat) {
        audit.B2_hat = ratio;
        audit.B2_t = t;
        audit.B2_r = r;
      }
    }
  }
  return audit;
}

}  // namespace blowup
