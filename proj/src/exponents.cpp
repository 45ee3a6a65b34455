#include "blowup/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {

void validate(const ProblemIndex& idx) {
  if (idx.n < 2) throw std::invalid_argument("ProblemIndex: n must be >= 2");
  if (!(idx.p > 1.0)) throw std::invalid_argument("ProblemIndex: p must be > 1");
}

double gamma_pn(int n, double p) {
  return 2.0 + (n + 1.0) * p - (n - 1.0) * p * p;
}

double gamma_pn(const ProblemIndex& idx) { return gamma_pn(idx.n, idx.p); }

double strauss_exponent(int n) {
  if (n < 2) throw std::invalid_argument("strauss_exponent: n must be >= 2");
  double nn = n;
  return (nn + 1.0 + std::sqrt(nn * nn + 10.0 * nn - 7.0)) / (2.0 * (nn - 1.0));
}

double fujita_exponent(int n) {
  if (n < 1) throw std::invalid_argument("fujita_exponent: n must be >= 1");
  return 1.0 + 2.0 / n;
}

CriticalityVerdict classify(const ProblemIndex& idx, double tol) {
  validate(idx);
  if (!(tol > 0.0)) throw std::invalid_argument("classify: tol must be > 0");

  const double ps = strauss_exponent(idx.n);
  const double g = gamma_pn(idx);
  CriticalityVerdict v{};
  v.gamma_value = g;

  if (std::abs(idx.p - ps) <= tol * ps) {
    v.cls = Criticality::Critical;
    v.lifespan_rate = idx.p * (idx.p - 1.0);
    v.form = LifespanForm::Exponential;
  } else if (idx.p < ps) {
    v.cls = Criticality::SubCritical;
    if (g <= 0.0)
      throw std::logic_error("classify: sub-critical p with gamma <= 0");
    v.lifespan_rate = 2.0 * idx.p * (idx.p - 1.0) / g;
    v.form = LifespanForm::PowerLaw;
  } else {
    v.cls = Criticality::SuperCritical;
    v.lifespan_rate = 0.0;
    v.form = LifespanForm::None;
  }
  return v;
}

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::SubCritical: return "sub-critical";
    case Criticality::Critical: return "critical";
    case Criticality::SuperCritical: return "super-critical";
  }
  return "?";
}

const char* to_string(LifespanForm f) {
  switch (f) {
    case LifespanForm::PowerLaw: return "power-law";
    case LifespanForm::Exponential: return "exponential";
    case LifespanForm::None: return "none";
  }
  return "?";
}

}  // namespace blowup
