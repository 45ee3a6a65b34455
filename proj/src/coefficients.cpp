#include "blowup/coefficients.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {

CoefficientProfile CoefficientProfile::scattering_power(double mu, double beta,
                                                        double mu2,
                                                        double alpha_m) {
  if (mu < 0.0) throw std::invalid_argument("profile: mu must be >= 0");
  if (!(beta > 1.0)) throw std::invalid_argument("profile: beta must be > 1");
  if (!(alpha_m > 1.0))
    throw std::invalid_argument("profile: alpha_m must be > 1");
  CoefficientProfile p;
  p.family_ = Family::ScatteringPower;
  p.mu_ = mu;
  p.beta_ = beta;
  p.mu2_ = mu2;
  p.alpha_m_ = alpha_m;
  p.label_ = "scattering";
  return p;
}

CoefficientProfile CoefficientProfile::zero() {
  auto z = [](double) { return 0.0; };
  return custom(z, z, z, "zero");
}

CoefficientProfile CoefficientProfile::custom(std::function<double(double)> a,
                                              std::function<double(double)> da,
                                              std::function<double(double)> b,
                                              std::string label) {
  CoefficientProfile p;
  p.family_ = Family::Custom;
  p.fa_ = std::move(a);
  p.fda_ = std::move(da);
  p.fb_ = std::move(b);
  p.label_ = std::move(label);
  return p;
}

double CoefficientProfile::a(double t) const {
  if (is_scattering()) return mu_ * std::pow(1.0 + t, -beta_);
  return fa_(t);
}

double CoefficientProfile::da(double t) const {
  if (is_scattering()) return -mu_ * beta_ * std::pow(1.0 + t, -beta_ - 1.0);
  return fda_(t);
}

double CoefficientProfile::b(double t) const {
  if (is_scattering()) return mu2_ * std::pow(1.0 + t, -alpha_m_ - 1.0);
  return fb_(t);
}

double CoefficientProfile::tail_abs_a(double T) const {
  if (!is_scattering()) return 0.0;
  return mu_ / (beta_ - 1.0) * std::pow(1.0 + T, 1.0 - beta_);
}

double CoefficientProfile::tail_Ib(double T) const {
  if (!is_scattering()) return 0.0;
  return mu2_ / alpha_m_ * std::pow(1.0 + T, -alpha_m_);
}

double CoefficientProfile::tail_int_Ib(double T) const {
  if (!is_scattering()) return 0.0;
  return mu2_ / (alpha_m_ * (alpha_m_ - 1.0)) *
         std::pow(1.0 + T, 1.0 - alpha_m_);
}

double CoefficientProfile::tail_int_aIb(double T) const {
  if (!is_scattering()) return 0.0;
  double s = beta_ + alpha_m_ - 1.0;
  return mu_ * mu2_ / (alpha_m_ * s) * std::pow(1.0 + T, -s);
}

double CoefficientProfile::tail_int_Ib2(double T) const {
  if (!is_scattering()) return 0.0;
  double s = 2.0 * alpha_m_ - 1.0;
  return mu2_ * mu2_ / (alpha_m_ * alpha_m_ * s) * std::pow(1.0 + T, -s);
}

double CoefficientProfile::tail_int2_aIb(double T) const {
  if (!is_scattering()) return 0.0;
  double s = beta_ + alpha_m_ - 1.0;
  return mu_ * mu2_ / (alpha_m_ * s * (s - 1.0)) * std::pow(1.0 + T, 1.0 - s);
}

double CoefficientProfile::tail_int2_Ib2(double T) const {
  if (!is_scattering()) return 0.0;
  double s = 2.0 * alpha_m_ - 1.0;
  return mu2_ * mu2_ / (alpha_m_ * alpha_m_ * s * (s - 1.0)) *
         std::pow(1.0 + T, 1.0 - s);
}

CoefficientProfile::IntegrabilityAudit CoefficientProfile::audit_integrability(
    double tol, double max_horizon) const {
  // Horizon-doubling increments of an integrable power tail shrink
  // geometrically; a borderline 1/t tail gives constant increments. Converged
  // when the increments decay (ratio < 0.9) or fall below the tolerance.
  auto tail_converges = [&](auto f, double& total) {
    double H = 16.0;
    const double h = 1.0 / 64.0;
    double acc = 0.0;
    double prev_val = f(0.0);
    double t = 0.0;
    double prev_inc = -1.0;
    bool decaying = false;
    while (H <= max_horizon) {
      double inc = 0.0;
      while (t < H - 0.5 * h) {
        double next = f(t + h);
        inc += 0.5 * h * (prev_val + next);
        prev_val = next;
        t += h;
      }
      acc += inc;
      if (inc < tol) {
        total = acc;
        return true;
      }
      decaying = prev_inc > 0.0 && inc < 0.9 * prev_inc;
      prev_inc = inc;
      H *= 2.0;
      if (decaying && H > 256.0) {
        total = acc;
        return true;
      }
    }
    total = acc;
    return decaying;
  };

  IntegrabilityAudit audit{};
  audit.a_integrable =
      tail_converges([&](double t) { return std::abs(a(t)); }, audit.int_abs_a);
  audit.tb_integrable = tail_converges(
      [&](double t) { return t * std::abs(b(t)); }, audit.int_abs_tb);
  return audit;
}

}  // namespace blowup
