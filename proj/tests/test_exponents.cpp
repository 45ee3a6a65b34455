#include <cmath>
#include <initializer_list>

#include "blowup/exponents.hpp"
#include "doctest.h"

using namespace blowup;

TEST_SUITE("exponents") {

TEST_CASE("gamma closed-form values") {
  CHECK(gamma_pn(3, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  // p = 1 gives 2 + (n+1) - (n-1) = 4 for every n
  for (int n = 2; n <= 10; ++n) CHECK(gamma_pn(n, 1.0) == doctest::Approx(4.0));
  CHECK(std::abs(gamma_pn(3, 1.0 + std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("strauss exponent closed forms") {
  CHECK(strauss_exponent(3) ==
        doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-13));
  CHECK(strauss_exponent(2) ==
        doctest::Approx((3.0 + std::sqrt(17.0)) / 2.0).epsilon(1e-13));
  CHECK_THROWS(strauss_exponent(1));
}

TEST_CASE("strauss exponent is the gamma root, n = 2..10") {
  for (int n = 2; n <= 10; ++n)
    CHECK(std::abs(gamma_pn(n, strauss_exponent(n))) < 1e-12);
}

TEST_CASE("strauss exponent strictly decreasing in n") {
  for (int n = 2; n < 10; ++n)
    CHECK(strauss_exponent(n + 1) < strauss_exponent(n));
}

TEST_CASE("fujita exponent") {
  CHECK(fujita_exponent(2) == doctest::Approx(2.0));
  CHECK(fujita_exponent(1) == doctest::Approx(3.0));
  CHECK(fujita_exponent(3) == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("classify sub-critical") {
  CriticalityVerdict v = classify({3, 2.0}, 1e-9);
  CHECK(v.cls == Criticality::SubCritical);
  CHECK(v.form == LifespanForm::PowerLaw);
  CHECK(v.lifespan_rate == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("classify critical") {
  double p = 1.0 + std::sqrt(2.0);
  CriticalityVerdict v = classify({3, p}, 1e-9);
  CHECK(v.cls == Criticality::Critical);
  CHECK(v.form == LifespanForm::Exponential);
  CHECK(v.lifespan_rate == doctest::Approx(p * (p - 1.0)).epsilon(1e-14));
  CHECK(v.lifespan_rate == doctest::Approx(3.41421356).epsilon(1e-8));
}

TEST_CASE("classify super-critical") {
  CriticalityVerdict v = classify({2, 4.0}, 1e-9);
  CHECK(v.cls == Criticality::SuperCritical);
  CHECK(v.form == LifespanForm::None);
}

TEST_CASE("sub-critical rate diverges approaching the critical power") {
  int n = 3;
  double ps = strauss_exponent(n);
  double prev = 0.0;
  for (double delta : {1e-2, 1e-3}) {
    CriticalityVerdict v = classify({n, ps * (1.0 - delta)}, 1e-12);
    CHECK(v.cls == Criticality::SubCritical);
    CHECK(v.lifespan_rate > 0.0);
    CHECK(v.lifespan_rate > prev);
    prev = v.lifespan_rate;
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS(classify({1, 2.0}, 1e-9));
  CHECK_THROWS(classify({3, 0.5}, 1e-9));
  CHECK_THROWS(classify({3, 2.0}, 0.0));
}

}  // TEST_SUITE
