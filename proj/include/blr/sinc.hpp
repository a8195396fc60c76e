// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

#include "blr/real.hpp"

namespace blr {

inline constexpr double kPi = std::numbers::pi;

// sin(pi t)/(pi t) with exact values at integers.  Detecting integer
// arguments matters: sin(pi*j) evaluated in floating point is not zero, and
// the exactness-at-samples contract needs coefficient vectors that are exact
// unit vectors at grid points.
inline double sinc(double t) {
  if (t == std::nearbyint(t)) return t == 0.0 ? 1.0 : 0.0;
  const double x = kPi * t;
  return std::sin(x) / x;
}

// Paley-Wiener kernel section sin(delta u)/(pi u).  The removable
// singularity at u = 0 evaluates to delta/pi; for |delta u| < 1e-6 the
// degree-5 Taylor expansion of sin is used.  delta == pi falls back to the
// integer-exact sinc so that the critical-rate Gram matrix is exactly the
// identity.
inline double kd_value(double delta, double u) {
  if (delta == kPi) return sinc(u);
  const double x = delta * u;
  if (std::fabs(x) < 1e-6) {
    const double x2 = x * x;
    return delta / kPi * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
  }
  return std::sin(x) / (kPi * u);
}

inline Real sinc_xp(const Real& t) {
  if (t.is_integer()) return t.is_zero() ? Real(1.0, t.bits()) : Real(0.0, t.bits());
  const Real x = Real::pi(t.bits()) * t;
  return sin(x) / x;
}

inline Real kd_value_xp(double delta, const Real& u) {
  if (delta == kPi) return sinc_xp(u);
  const int bits = u.bits();
  if (u.is_zero()) return Real(delta, bits) / Real::pi(bits);
  const Real x = Real(delta, bits) * u;
  return sin(x) / (Real::pi(bits) * u);
}

}  // namespace blr
