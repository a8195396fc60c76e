// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blr/quadrature.hpp"
#include "blr/sinc.hpp"
#include "support/oracles.hpp"

using namespace blr;

TEST_CASE("rule integrates polynomials of degree 2n-1 exactly") {
  const auto& r = quad::gl_rule(8);
  // x^15 over [0,1] = 1/16
  const double v = quad::integrate<double>([](double x) { return std::pow(x, 15); }, 0.0, 1.0, r);
  CHECK(v == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("adaptive order doubling hits the 1e-12 target") {
  const double v = quad::adaptive_gl([](double x) { return std::exp(-x * x / 2.0); },
                                     -kPi / 2.0, kPi / 2.0);
  // frozen from an independent high-precision evaluation
  CHECK(v == doctest::Approx(2.2152829565818244).epsilon(1e-13));
  // cross-check against the test-local Simpson oracle
  const double simpson =
      oracles::integrate([](double x) { return std::exp(-x * x / 2.0); }, -kPi / 2.0, kPi / 2.0);
  CHECK(v == doctest::Approx(simpson).epsilon(1e-11));
}

TEST_CASE("oscillatory integrand converges by raising the order") {
  const double tau = 37.0;
  const double v = quad::adaptive_gl([tau](double x) { return std::cos(tau * x); }, 0.0, 1.0);
  CHECK(v == doctest::Approx(std::sin(tau) / tau).epsilon(1e-11));
}

TEST_CASE("non-stabilizing request throws") {
  quad::AdaptiveOpts opts;
  opts.max_order = 32;  // too small for this frequency
  CHECK_THROWS_AS(
      quad::adaptive_gl([](double x) { return std::cos(4000.0 * x); }, 0.0, 1.0, opts),
      QuadratureNotConverged);
}

TEST_CASE("extended-precision rule refines the double nodes") {
  const Real v = quad::adaptive_gl_xp(
      [](const Real& x) { return exp(-(x * x) / 2.0); }, -kPi / 2.0, kPi / 2.0, 192);
  CHECK(v.to_double() == doctest::Approx(2.2152829565818244).epsilon(1e-15));
  // the 192-bit result should agree with the double result well beyond 1e-12
  const double d = quad::adaptive_gl([](double x) { return std::exp(-x * x / 2.0); },
                                     -kPi / 2.0, kPi / 2.0);
  CHECK(std::fabs(v.to_double() - d) < 1e-12);
}
