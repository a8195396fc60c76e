// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blr/real.hpp"
#include "blr/sinc.hpp"

using namespace blr;

TEST_CASE("construction and conversion round-trips") {
  Real a(0.1, 256);
  CHECK(a.bits() == 256);
  CHECK(a.to_double() == 0.1);  // 0.1 as a double is exact in 256 bits
  Real b(128);
  CHECK(b.is_zero());
  CHECK(Real(3.0, 64).is_integer());
}

TEST_CASE("arithmetic works at the wider operand precision") {
  Real a(1.0, 256), b(3.0, 128);
  Real c = a / b;
  CHECK(c.bits() == 256);
  CHECK(std::fabs(c.to_double() - 1.0 / 3.0) < 1e-16);
  CHECK((c * 3.0).to_double() == doctest::Approx(1.0).epsilon(1e-30));
}

TEST_CASE("exactness of double-representable operations") {
  Real x(0.5, 64), y(0.25, 64);
  CHECK((x - y) == Real(0.25, 64));
  Real t(0.43, 256);
  Real lag = t - 7.0;
  CHECK((lag + 7.0) == t);
}

TEST_CASE("elementary functions match libm at double precision") {
  for (double v : {0.1, 0.9, 2.3, 14.0}) {
    CHECK(sin(Real(v, 200)).to_double() == doctest::Approx(std::sin(v)).epsilon(1e-15));
    CHECK(cos(Real(v, 200)).to_double() == doctest::Approx(std::cos(v)).epsilon(1e-15));
    CHECK(exp(Real(v, 200)).to_double() == doctest::Approx(std::exp(v)).epsilon(1e-15));
    CHECK(sqrt(Real(v, 200)).to_double() == doctest::Approx(std::sqrt(v)).epsilon(1e-15));
    CHECK(log(Real(v, 200)).to_double() == doctest::Approx(std::log(v)).epsilon(1e-15));
  }
  CHECK(Real::pi(200).to_double() == doctest::Approx(kPi).epsilon(1e-16));
}

TEST_CASE("precision truly exceeds double") {
  // (1 + 2^-100) - 1 vanishes in double but not at 256 bits
  Real one(1.0, 256);
  Real tiny = ldexp2(Real(1.0, 256), -100);
  Real sum = one + tiny;
  CHECK(!(sum - one).is_zero());
  CHECK((sum - one) == tiny);
}

TEST_CASE("extended-precision sinc is integer-exact") {
  CHECK(sinc_xp(Real(5.0, 256)).is_zero());
  CHECK(sinc_xp(Real(0.0, 256)) == Real(1.0, 256));
  const Real half = sinc_xp(Real(0.5, 256));
  CHECK(half.to_double() == doctest::Approx(2.0 / kPi).epsilon(1e-16));
}

TEST_CASE("kd kernel at extended precision matches the double lane") {
  for (double u : {0.3, 1.7, -2.2, 9.99}) {
    const double d = kd_value(kPi / 3.0, u);
    CHECK(kd_value_xp(kPi / 3.0, Real(u, 192)).to_double() ==
          doctest::Approx(d).epsilon(1e-14));
  }
  CHECK(kd_value_xp(kPi / 2.0, Real(0.0, 192)).to_double() == doctest::Approx(0.5));
}
