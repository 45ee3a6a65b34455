#include <cmath>
#include <numbers>

#include "blowup/quadrature.hpp"
#include "doctest.h"

using namespace blowup;

namespace {

double integrate(const QuadRule& rule, double (*f)(double)) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.w[i] * f(rule.x[i]);
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre integrates monomials exactly") {
  QuadRule rule = gauss_legendre(16);
  double total = 0.0;
  for (double w : rule.w) total += w;
  CHECK(total == doctest::Approx(2.0).epsilon(1e-14));
  // degree 30 still exact for a 16-point rule
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    s += rule.w[i] * std::pow(rule.x[i], 30);
  CHECK(s == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
  // odd powers vanish
  double odd = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    odd += rule.w[i] * std::pow(rule.x[i], 7);
  CHECK(std::abs(odd) < 1e-15);
}

TEST_CASE("gauss-legendre handles exponentials") {
  QuadRule rule = gauss_legendre(40);
  double v = integrate(rule, [](double x) { return std::exp(3.0 * x); });
  double exact = (std::exp(3.0) - std::exp(-3.0)) / 3.0;
  CHECK(v == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("gauss-jacobi chebyshev weight mass") {
  // alpha = beta = -1/2: int (1-x^2)^{-1/2} dx = pi
  QuadRule rule = gauss_jacobi(12, -0.5, -0.5);
  double total = 0.0;
  for (double w : rule.w) total += w;
  CHECK(total == doctest::Approx(std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("gauss-jacobi half-integer weight") {
  // int sqrt(1-x^2) dx = pi/2, and second moment pi/8
  QuadRule rule = gauss_jacobi(12, 0.5, 0.5);
  double total = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    total += rule.w[i];
    m2 += rule.w[i] * rule.x[i] * rule.x[i];
  }
  CHECK(total == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-12));
}

TEST_CASE("power weight rule moments") {
  // int_0^L s^q s^k ds = L^{q+k+1}/(q+k+1)
  for (double q : {-0.5, 0.0, 0.5858, 1.0}) {
    QuadRule rule = power_weight_rule(24, q, 0.5);
    for (int k : {0, 1, 2, 5}) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i)
        s += rule.w[i] * std::pow(rule.x[i], k);
      double exact = std::pow(0.5, q + k + 1.0) / (q + k + 1.0);
      CHECK(s == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("power weight rule exponential integrand") {
  // int_0^{1/2} e^{-s} s ds = 1 - 1.5 e^{-1/2}
  QuadRule rule = power_weight_rule(32, 1.0, 0.5);
  double v = integrate(rule, [](double s) { return std::exp(-s); });
  CHECK(v == doctest::Approx(1.0 - 1.5 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(0) == doctest::Approx(2.0));
  CHECK(sphere_area(1) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(sphere_area(2) == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(sphere_area(3) ==
        doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi));
}

}  // TEST_SUITE
