#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "blowup/errors.hpp"
#include "blowup/exponents.hpp"
#include "blowup/testfuncs.hpp"
#include "doctest.h"

using namespace blowup;
using std::numbers::pi;

TEST_SUITE("testfuncs") {

TEST_CASE("phi at the origin is the sphere area") {
  for (int n : {2, 3, 4, 5}) {
    PhiEvaluator phi(n);
    CHECK(phi(0.7, 0.0) ==
          doctest::Approx(sphere_area(n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("phi n=3 closed form 4 pi sinh(z)/z up to z = 50") {
  PhiEvaluator phi(3);
  for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0}) {
    double exact = 4.0 * pi * std::sinh(z) / z;
    // split z into lambda * r two ways
    CHECK(phi(1.0, z) == doctest::Approx(exact).epsilon(1e-10));
    CHECK(phi(0.5, 2.0 * z) == doctest::Approx(exact).epsilon(1e-10));
  }
  // spec example: n=3, lambda=1, r=2
  CHECK(phi(1.0, 2.0) ==
        doctest::Approx(2.0 * pi * std::sinh(2.0)).epsilon(1e-12));
}

TEST_CASE("phi n=2 matches 2 pi I0(z)") {
  PhiEvaluator phi(2);
  CHECK(phi(0.5, 0.0) == doctest::Approx(2.0 * pi).epsilon(1e-13));
  for (double z : {0.3, 1.0, 3.0, 10.0}) {
    double exact = 2.0 * pi * std::cyl_bessel_i(0.0, z);
    CHECK(phi(1.0, z) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("phi increases in r and passes the doubling check") {
  PhiEvaluator phi(3);
  double prev = phi(0.5, 0.0);
  for (double r = 1.0; r <= 60.0; r += 1.0) {
    double v = phi(0.5, r);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_NOTHROW(phi.value_checked(0.5, 100.0));  // z = 50
}

TEST_CASE("phi_bound_fit brackets the envelope") {
  PhiEvaluator phi(3);
  std::vector<double> lambdas{0.05, 0.1, 0.25, 0.5};
  std::vector<double> rs;
  for (int i = 0; i <= 100; ++i) rs.push_back(i);
  auto [d0, d1] = phi_bound_fit(phi, lambdas, rs);
  CHECK(d0 > 0.0);
  CHECK(d1 >= d0);
  CHECK(std::isfinite(d1));
  // r = 0 ratio is |S^2| = 4 pi; the large-z ratio tends to 2 pi
  CHECK(d1 == doctest::Approx(4.0 * pi).epsilon(1e-12));
  double big_z_ratio = 4.0 * pi * std::sinh(50.0) / 50.0 *
                       std::sqrt(1.0 + 2500.0) * std::exp(-50.0);
  CHECK(big_z_ratio == doctest::Approx(2.0 * pi).epsilon(3e-4));
  CHECK(d0 <= big_z_ratio);
}

TEST_CASE("xi closed form at the origin") {
  // q=1, r=0, t=0, n=3, lambda0=1/2, R=1:
  // 4 pi int_0^{1/2} e^{-lam} lam dlam = 4 pi (1 - 1.5 e^{-1/2})
  SpectralKernel kernel(3, 1.0, 0.5, 1.0);
  double exact = 4.0 * pi * (1.0 - 1.5 * std::exp(-0.5));
  CHECK(kernel.xi(0.0, 0.0) == doctest::Approx(exact).epsilon(1e-12));
  CHECK(exact == doctest::Approx(1.1335370259780932).epsilon(1e-12));
  // eta(r,0,0) has cosh(0) = sinhc(0) = 1, so it coincides with xi there
  CHECK(kernel.eta(0.0, 0.0, 0.0) == doctest::Approx(exact).epsilon(1e-12));
  CHECK_NOTHROW(kernel.xi_checked(0.0, 0.0));
}

TEST_CASE("xi stays bounded below for r <= R") {
  SpectralKernel kernel(3, 0.6, 0.5, 1.0);
  double floor_seen = 1e300;
  for (double t : {0.0, 1.0, 5.0, 20.0, 60.0, 150.0}) {
    for (double r : {0.0, 0.5, 1.0}) {
      double v = kernel.xi(r, t);
      CHECK(v > 0.0);
      floor_seen = std::min(floor_seen, v);
    }
  }
  CHECK(floor_seen > 1e-4);  // no decay toward zero on the audited range
}

TEST_CASE("eta diagonal equals the removable limit") {
  SpectralKernel kernel(3, 0.6, 0.5, 1.0);
  double t = 3.0, r = 1.5;
  double diag = kernel.eta(r, t, t);
  // symmetric-limit consistency: |eta(r,t,t-d) - eta(r,t,t)| = O(d^2)
  double d1 = std::abs(kernel.eta(r, t, t - 1e-2) - diag);
  double d2 = std::abs(kernel.eta(r, t, t - 5e-3) - diag);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(diag > 0.0);
}

TEST_CASE("lemma41 audit fits positive stable constants") {
  int n = 3;
  double p = strauss_exponent(n);
  double q = 0.5 * (n - 1) - 1.0 / p;
  CHECK(q == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(q > 0.0);
  CHECK(q > 0.5 * (n - 3));

  SpectralKernel kernel(n, q, 0.5, 1.0, 96, 48);
  std::vector<double> t_grid, s_grid, r_grid;
  for (int i = 0; i <= 20; ++i) t_grid.push_back(50.0 * i / 20.0);
  s_grid = t_grid;
  for (int i = 0; i <= 25; ++i) r_grid.push_back(52.0 * i / 25.0);
  BoundAudit a1 = lemma41_audit(kernel, t_grid, s_grid, r_grid);
  CHECK(a1.A0_hat > 0.0);
  CHECK(a1.B0_hat > 0.0);
  CHECK(a1.B1_hat > 0.0);
  CHECK(a1.B2_hat > 0.0);
  CHECK(std::isfinite(a1.B2_hat));

  // trivial-grid reduction at t = 0: parts (i)/(ii) ratios are 3 eta(r,0,0)
  std::vector<double> t0{0.0};
  BoundAudit a0 = lemma41_audit(kernel, t0, t0, r_grid);
  CHECK(a0.B0_hat ==
        doctest::Approx(3.0 * kernel.eta(a0.B0_r, 0.0, 0.0)).epsilon(1e-12));

  // doubling grids and quadrature moves the constants by < 5%
  SpectralKernel kernel2(n, q, 0.5, 1.0, 192, 96);
  std::vector<double> t2, s2, r2;
  for (int i = 0; i <= 40; ++i) t2.push_back(50.0 * i / 40.0);
  s2 = t2;
  for (int i = 0; i <= 50; ++i) r2.push_back(52.0 * i / 50.0);
  BoundAudit a2 = lemma41_audit(kernel2, t2, s2, r2);
  CHECK(std::abs(a2.A0_hat - a1.A0_hat) / a1.A0_hat < 0.05);
  CHECK(std::abs(a2.B0_hat - a1.B0_hat) / a1.B0_hat < 0.05);
  CHECK(std::abs(a2.B1_hat - a1.B1_hat) / a1.B1_hat < 0.05);
  CHECK(std::abs(a2.B2_hat - a1.B2_hat) / a1.B2_hat < 0.05);
}

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS(SpectralKernel(3, -1.0, 0.5, 1.0));
  CHECK_THROWS(SpectralKernel(3, 0.5, 0.0, 1.0));
  CHECK_THROWS(PhiEvaluator(1));
}

}  // TEST_SUITE
