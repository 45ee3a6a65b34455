#include "blowup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blowup {

namespace {

// Symmetric tridiagonal QL with implicit shifts, accumulating only the first
// row of the eigenvector matrix (all that Golub-Welsch needs). diag holds the
// diagonal, off[i] couples i and i+1; first starts as e_1.
void tql_first_row(std::vector<double>& diag, std::vector<double>& off,
                   std::vector<double>& first) {
  const int n = static_cast<int>(diag.size());
  off.resize(n, 0.0);  // off[n-1] is a workspace slot
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(off[m]) <= 1e-15 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw std::runtime_error("tql: too many iterations");
        double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
        double r = std::hypot(g, 1.0);
        g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * off[i];
          double b = c * off[i];
          r = std::hypot(f, g);
          off[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            off[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = diag[i + 1] - p;
          r = (diag[i] - g) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = g + p;
          g = c * r - b;
          f = first[i + 1];
          first[i + 1] = s * first[i] + c * f;
          first[i] = c * first[i] - s * f;
        }
        if (r == 0.0 && i >= l) continue;
        diag[l] -= p;
        off[l] = g;
        off[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

QuadRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be positive");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("gauss_jacobi: alpha, beta must exceed -1");

  const double ab = alpha + beta;
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);

  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < n; ++k) {
    double b;
    if (k == 1) {
      // (k + ab) cancelled against the (2k + ab - 1) factor; valid at ab = -1.
      b = 4.0 * (1.0 + alpha) * (1.0 + beta) /
          ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
          ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) *
           (2.0 * k + ab - 1.0));
    }
    off[k - 1] = std::sqrt(b);
  }

  std::vector<double> first(n, 0.0);
  first[0] = 1.0;
  tql_first_row(diag, off, first);

  // Total mass of the weight: 2^{a+b+1} B(a+1, b+1).
  const double mu0 = std::pow(2.0, ab + 1.0) *
                     std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));

  // Eigenvalues come out unsorted; sort nodes with their weights.
  std::vector<std::size_t> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });

  QuadRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = diag[order[i]];
    rule.w[i] = mu0 * first[order[i]] * first[order[i]];
  }
  return rule;
}

QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadRule power_weight_rule(int n, double q, double upper) {
  if (upper <= 0.0) throw std::invalid_argument("power_weight_rule: upper <= 0");
  QuadRule base = gauss_jacobi(n, 0.0, q);
  const double half = 0.5 * upper;
  const double scale = std::pow(half, q + 1.0);
  QuadRule rule;
  rule.x.resize(base.size());
  rule.w.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    rule.x[i] = half * (1.0 + base.x[i]);
    rule.w[i] = scale * base.w[i];
  }
  return rule;
}

double sphere_area(int m) {
  const double half = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace blowup
