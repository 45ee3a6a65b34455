#ifndef BLOWUP_COEFFICIENTS_HPP
#define BLOWUP_COEFFICIENTS_HPP

#include <functional>
#include <string>

namespace blowup {

// Damping/mass coefficient pair (a(t), b(t)) with a' available.
// ScatteringPower: a(t) = mu/(1+t)^beta with beta > 1 (scattering range),
// b(t) = mu2/(1+t)^(alpha_m+1) with alpha_m > 1 (fast-decaying mass, either
// sign). Custom profiles carry user evaluators and no tail metadata.
class CoefficientProfile {
 public:
  enum class Family { ScatteringPower, Custom };

  static CoefficientProfile scattering_power(double mu, double beta, double mu2,
                                             double alpha_m);
  static CoefficientProfile zero();
  static CoefficientProfile custom(std::function<double(double)> a,
                                   std::function<double(double)> da,
                                   std::function<double(double)> b,
                                   std::string label = "custom");

  double a(double t) const;
  double da(double t) const;   // a'(t)
  double b(double t) const;

  Family family() const { return family_; }
  bool is_scattering() const { return family_ == Family::ScatteringPower; }
  const std::string& label() const { return label_; }

  double mu() const { return mu_; }
  double beta() const { return beta_; }
  double mu2() const { return mu2_; }
  double alpha_m() const { return alpha_m_; }

  // Tail integrals beyond T of the leading asymptotics; exact power-law
  // formulas for ScatteringPower, zero (with has_tail false) for Custom.
  bool has_analytic_tail() const { return is_scattering(); }
  double tail_abs_a(double T) const;       // int_T^inf |a|
  double tail_Ib(double T) const;          // I_b(T) = int_T^inf b        (signed)
  double tail_int_Ib(double T) const;      // int_T^inf I_b(t) dt         (signed)
  double tail_int_aIb(double T) const;     // int_T^inf a I_b dt          (signed)
  double tail_int_Ib2(double T) const;     // int_T^inf I_b^2 dt
  double tail_int2_aIb(double T) const;    // int_T^inf int_t^inf a I_b ds dt
  double tail_int2_Ib2(double T) const;    // int_T^inf int_t^inf I_b^2 ds dt

  // Numerical integrability audit: grows the horizon until the increments of
  // int |a| and int t|b| fall below tol; returns false if they keep growing.
  struct IntegrabilityAudit {
    bool a_integrable;
    bool tb_integrable;
    double int_abs_a;
    double int_abs_tb;
  };
  IntegrabilityAudit audit_integrability(double tol = 1e-8,
                                         double max_horizon = 1e6) const;

 private:
  Family family_ = Family::Custom;
  double mu_ = 0.0, beta_ = 2.0, mu2_ = 0.0, alpha_m_ = 2.0;
  std::function<double(double)> fa_, fda_, fb_;
  std::string label_;
};

}  // namespace blowup

#endif
