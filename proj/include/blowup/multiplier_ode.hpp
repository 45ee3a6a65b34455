#ifndef BLOWUP_MULTIPLIER_ODE_HPP
#define BLOWUP_MULTIPLIER_ODE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "blowup/coefficients.hpp"
#include "blowup/grid.hpp"

namespace blowup {

// Multiplier pair r1 + r2 = a, r2' + r1 r2 = b obtained from the bounded
// branch of the linearizing equation k'' + a k' + b k = 0 via r2 = -k'/k.
// Grids cover [0, horizon]; the asymptotic terminal data are imposed at
// horizon_ext far beyond, and the L1 norms include the integrated extension
// plus power-law tails (ScatteringPower profiles only).
struct MultiplierData {
  UniformGrid grid;
  std::vector<double> k;
  std::vector<double> r1;
  std::vector<double> r2;
  std::vector<double> residual;  // Riccati residual, centered 5-point r2'
  double l1_r1 = 0.0;
  double l1_r2 = 0.0;
  double l1_r1_minus_r2 = 0.0;
  double c_r1r2 = 0.0;  // exp(-l1_r1 - l1_r2)
  double r2_at_0 = 0.0;
  double residual_max = 0.0;
  double horizon_ext = 0.0;
};

// Bounded-branch solution of k'' + a k' + b k = 0 on [0, horizon].
// Throws NonOscillationFailure if k changes sign.
std::vector<double> solve_k(const CoefficientProfile& profile, double horizon,
                            double step);

MultiplierData compute_multipliers(const CoefficientProfile& profile,
                                   double horizon, double step);

// Decaying solution rho of rho'' - a rho' + (b - lambda^2 - a') rho = 0,
// normalized to rho(0) = 1, computed through eta = rho e^{lambda t}.
struct RhoData {
  double lambda = 0.0;
  UniformGrid grid;
  std::vector<double> rho;
  double drho_at_0 = 0.0;
  double ratio_min = 0.0;  // min of rho e^{lambda t} on the trailing half
  double ratio_max = 0.0;
};

RhoData solve_rho(const CoefficientProfile& profile, double lambda,
                  double horizon, double step);

// Fundamental pair of chi'' + (r1 - r2) chi' - lambda^2 chi = 0 from time s,
// with the cosh/sinh sandwich audit.
struct ChiData {
  double lambda = 0.0;
  double s = 0.0;
  UniformGrid grid;
  std::vector<double> chi1;
  std::vector<double> chi2;
  double l1_diff = 0.0;  // |r1 - r2| L1 norm used in the envelopes
  bool chi1_ok = false;
  bool chi2_ok = false;
  std::ptrdiff_t first_bad_node = -1;
};

ChiData solve_chi(const CoefficientProfile& profile, const MultiplierData& mult,
                  double lambda, double s, double horizon, double step);

// Throws SandwichViolation naming the first offending node.
void require_sandwich(const ChiData& chi);

// Scalar forms of the data sign conditions for f = f0*bump, g = g0*bump:
// (g0 + r2(0) f0 >= 0, g0 + (a0 - rho'(0)) f0 >= 0).
std::pair<bool, bool> check_data_conditions(double f0, double g0,
                                            const MultiplierData& mult,
                                            const RhoData& rho, double a0);

// Whether a'/2 + a^2/4 - b < 0 on the trailing half of [0, horizon]
// (the relaxed condition under which r1 - r2 is eventually positive).
bool check_relaxed_sign(const CoefficientProfile& profile, double horizon);

}  // namespace blowup

#endif
