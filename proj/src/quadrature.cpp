// SPDX-License-Identifier: Apache-2.0
#include "blr/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace blr::quad {

namespace {

inline double one_like(double) { return 1.0; }
inline Real one_like(const Real& z) { return Real(1.0, z.bits()); }

// Legendre P_n and derivative at z via the three-term recurrence.
template <class T>
void legendre(int n, const T& z, T& p, T& dp) {
  T p1 = one_like(z);
  T p0 = z;
  for (int j = 2; j <= n; ++j) {
    T p2 = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * p1) / double(j);
    p1 = p0;
    p0 = p2;
  }
  p = p0;
  dp = double(n) * (z * p0 - p1) / (z * z - 1.0);
}

Rule<double> make_rule(int order) {
  Rule<double> r;
  r.x.resize(order);
  r.w.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (order + 0.5));
    double p, dp, z1;
    do {
      legendre(order, z, p, dp);
      z1 = z;
      z = z1 - p / dp;
    } while (std::fabs(z - z1) > 1e-15);
    legendre(order, z, p, dp);
    r.x[i - 1] = -z;
    r.x[order - i] = z;
    r.w[i - 1] = r.w[order - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return r;
}

}  // namespace

const Rule<double>& gl_rule(int order) {
  static std::mutex mu;
  static std::map<int, Rule<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

Rule<Real> gl_rule_xp(int order, int bits) {
  const Rule<double>& seed = gl_rule(order);
  Rule<Real> r;
  r.x.reserve(order);
  r.w.reserve(order);
  const Real tol = ldexp2(Real(1.0, bits), -(bits - 4));
  for (int i = 0; i < order; ++i) {
    Real z(seed.x[i], bits);
    Real p(bits), dp(bits);
    for (int iter = 0; iter < 64; ++iter) {
      legendre(order, z, p, dp);
      const Real step = p / dp;
      z -= step;
      if (abs(step) <= tol) break;
    }
    legendre(order, z, p, dp);
    r.x.push_back(z);
    r.w.push_back(2.0 / ((1.0 - z * z) * dp * dp));
  }
  return r;
}

double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   const AdaptiveOpts& opts) {
  double prev = integrate<double>(f, a, b, gl_rule(opts.initial_order));
  for (int order = 2 * opts.initial_order; order <= opts.max_order; order *= 2) {
    const double cur = integrate<double>(f, a, b, gl_rule(order));
    if (std::fabs(cur - prev) < std::max(opts.abs_tol, opts.rel_tol * std::fabs(cur)))
      return cur;
    prev = cur;
  }
  throw QuadratureNotConverged("adaptive Gauss-Legendre did not stabilize by order " +
                               std::to_string(opts.max_order));
}

Real adaptive_gl_xp(const std::function<Real(const Real&)>& f, double a, double b,
                    int bits, const AdaptiveOpts& opts) {
  const Real ra(a, bits), rb(b, bits);
  const double rel = std::min(opts.rel_tol, std::ldexp(1.0, 16 - bits));
  Real prev = integrate<Real>(f, ra, rb, gl_rule_xp(opts.initial_order, bits));
  for (int order = 2 * opts.initial_order; order <= opts.max_order; order *= 2) {
    const Real cur = integrate<Real>(f, ra, rb, gl_rule_xp(order, bits));
    Real diff = abs(cur - prev);
    if (diff.to_double() < std::max(opts.abs_tol * std::ldexp(1.0, 53 - bits),
                                    rel * std::fabs(cur.to_double())))
      return cur;
    prev = cur;
  }
  throw QuadratureNotConverged("extended-precision Gauss-Legendre did not stabilize");
}

}  // namespace blr::quad
