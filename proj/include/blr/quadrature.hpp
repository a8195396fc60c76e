// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "blr/errors.hpp"
#include "blr/real.hpp"

namespace blr::quad {

template <class T>
struct Rule {
  std::vector<T> x;  // nodes on [-1, 1]
  std::vector<T> w;
};

// Gauss-Legendre rule of the given order; double rules are cached.
const Rule<double>& gl_rule(int order);
Rule<Real> gl_rule_xp(int order, int bits);

struct AdaptiveOpts {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int initial_order = 16;
  int max_order = 4096;
};

template <class T, class F>
T integrate(const F& f, const T& a, const T& b, const Rule<T>& r) {
  const T mid = (a + b) / 2.0;
  const T half = (b - a) / 2.0;
  T acc = (a - a);  // zero at working precision
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return half * acc;
}

// Order-doubling Gauss-Legendre on [a, b]: 16, 32, ... until two successive
// estimates agree to max(abs_tol, rel_tol*|I|).  Throws QuadratureNotConverged
// past max_order.  The integrands here are entire, so convergence is
// spectral in the order.
double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   const AdaptiveOpts& opts = {});

// Same scheme at extended precision; tolerance scales with the requested
// precision (relative 2^(16-bits), floored by opts).
Real adaptive_gl_xp(const std::function<Real(const Real&)>& f, double a, double b,
                    int bits, const AdaptiveOpts& opts = {});

}  // namespace blr::quad
