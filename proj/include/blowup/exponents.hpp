#ifndef BLOWUP_EXPONENTS_HPP
#define BLOWUP_EXPONENTS_HPP

namespace blowup {

// Spatial dimension and nonlinearity power of the problem.
struct ProblemIndex {
  int n;     // >= 2
  double p;  // > 1
};

void validate(const ProblemIndex& idx);

// gamma(p,n) = 2 + (n+1)p - (n-1)p^2. Positive iff p is below the Strauss
// exponent.
double gamma_pn(int n, double p);
double gamma_pn(const ProblemIndex& idx);

// Strauss exponent p_S(n): positive root of gamma(p,n) = 0. Requires n >= 2.
double strauss_exponent(int n);

// Fujita exponent p_F(n) = 1 + 2/n. Requires n >= 1.
double fujita_exponent(int n);

enum class Criticality { SubCritical, Critical, SuperCritical };
enum class LifespanForm { PowerLaw, Exponential, None };

struct CriticalityVerdict {
  Criticality cls;
  double gamma_value;
  double lifespan_rate;  // exponent of eps in the lifespan bound
  LifespanForm form;
};

// Classifies p against p_S(n) with a relative tolerance. Sub-critical rate is
// 2p(p-1)/gamma(p,n); critical rate is p(p-1); super-critical has no bound.
CriticalityVerdict classify(const ProblemIndex& idx, double tol = 1e-9);

const char* to_string(Criticality c);
const char* to_string(LifespanForm f);

}  // namespace blowup

#endif
