#ifndef BLOWUP_TESTFUNCS_HPP
#define BLOWUP_TESTFUNCS_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "blowup/quadrature.hpp"

namespace blowup {

// Flat-metric Laplacian eigenfunction phi_lambda(x) = phi(lambda x) with
// phi(x) = int_{S^{n-1}} e^{x.omega} dS, reduced to the 1-D integral
// |S^{n-2}| int_{-1}^{1} e^{z u} (1-u^2)^{(n-3)/2} du,  z = lambda r,
// evaluated by a Gauss-Jacobi rule matched to the (1-u^2) weight.
class PhiEvaluator {
 public:
  explicit PhiEvaluator(int n, int quad_order = 64);

  double operator()(double lambda, double r) const;

  // Evaluates with the base and doubled rule; throws QuadratureNonConvergence
  // beyond 1e-10 relative discrepancy.
  double value_checked(double lambda, double r) const;

  int dimension() const { return n_; }
  int quad_order() const { return quad_order_; }
  double at_origin() const;  // |S^{n-1}|

 private:
  double eval(const QuadRule& rule, double z) const;
  int n_;
  int quad_order_;
  double prefactor_;  // |S^{n-2}|
  QuadRule rule_;
  QuadRule rule2_;  // doubled order, for convergence audits
};

// Fitted envelope constants of phi_lambda(r) against
// <lambda r>^{-(n-1)/2} e^{lambda r}, <z> = sqrt(1+z^2):
// returns (inf, sup) of the ratio over the lambda x r grid.
std::pair<double, double> phi_bound_fit(const PhiEvaluator& phi,
                                        std::span<const double> lambdas,
                                        std::span<const double> r_grid);

// Spectral kernels xi_q, eta_q: lambda-integrals of phi_lambda against
// e^{-lambda(t+R)} cosh / sinhc kernels and lambda^q dlambda on [0, lambda0].
class SpectralKernel {
 public:
  SpectralKernel(int n, double q, double lambda0, double R, int lam_order = 128,
                 int phi_order = 64);

  double xi(double r, double t) const;
  double eta(double r, double t, double s) const;

  // Doubled-rule variants for convergence audits.
  double xi_checked(double r, double t) const;
  double eta_checked(double r, double t, double s) const;

  double q() const { return q_; }
  double lambda0() const { return lambda0_; }
  double support_radius() const { return R_; }
  const PhiEvaluator& phi() const { return phi_; }
  const QuadRule& lambda_rule() const { return lam_rule_; }

 private:
  double integrate(const QuadRule& rule, const PhiEvaluator& phi, double r,
                   double t, double s, bool diag_is_xi) const;
  double q_;
  double lambda0_;
  double R_;
  PhiEvaluator phi_;
  PhiEvaluator phi2_;
  QuadRule lam_rule_;
  QuadRule lam_rule2_;
};

// Fitted constants of the xi/eta two-sided estimates, with the worst-case
// grid locations. Lower-bound constants are infima of ratios, the upper one
// (B2) a supremum; <s> = 3 + |s| throughout.
struct BoundAudit {
  double A0_hat = 0.0;
  double B0_hat = 0.0;
  double B1_hat = 0.0;
  double B2_hat = 0.0;
  double A0_t = 0.0, A0_r = 0.0;
  double B0_t = 0.0, B0_r = 0.0;
  double B1_t = 0.0, B1_s = 0.0, B1_r = 0.0;
  double B2_t = 0.0, B2_r = 0.0;
};

BoundAudit lemma41_audit(const SpectralKernel& kernel,
                         std::span<const double> t_grid,
                         std::span<const double> s_grid,
                         std::span<const double> r_grid);

}  // namespace blowup

#endif
