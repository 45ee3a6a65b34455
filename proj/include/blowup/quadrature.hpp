#ifndef BLOWUP_QUADRATURE_HPP
#define BLOWUP_QUADRATURE_HPP

#include <vector>

namespace blowup {

// Nodes and weights of an n-point rule. For the Jacobi rules the weight
// function is absorbed into w, so integral(f) ~ sum w_i f(x_i).
struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Gauss-Jacobi rule on [-1,1] for the weight (1-x)^alpha (1+x)^beta,
// alpha, beta > -1. Computed by Golub-Welsch.
QuadRule gauss_jacobi(int n, double alpha, double beta);

// Gauss-Legendre on [-1,1] (alpha = beta = 0).
QuadRule gauss_legendre(int n);

// Rule for integrals of the form int_0^upper f(s) s^q ds with q > -1.
// Nodes lie in (0, upper); the s^q factor is inside the weights.
QuadRule power_weight_rule(int n, double q, double upper);

// Surface area of the unit m-sphere S^m embedded in R^{m+1}.
double sphere_area(int m);

}  // namespace blowup

#endif
