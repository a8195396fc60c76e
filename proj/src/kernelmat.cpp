// SPDX-License-Identifier: Apache-2.0
#include "blr/kernelmat.hpp"

#include <cmath>
#include <cstdio>

namespace blr {

double kd_kernel(double delta, double x, double y) {
  if (!(delta > 0) || delta > kPi)
    throw InvalidDensity("kd_kernel requires 0 < delta <= pi");
  return kd_value(delta, x - y);
}

GramMatrix assemble(const std::function<Real(double, double)>& kernel, SampleGrid grid,
                    int bits, std::string source) {
  const int m = grid.size();
  GramMatrix g;
  g.entries = SymMatrix<Real>(m, Real(0.0, bits));
  g.precision_bits = bits;
  g.grid_n = grid.n;
  g.source = std::move(source);
  std::vector<Real> lag;
  lag.reserve(m);
  const double p0 = grid.point(0);
  for (int l = 0; l < m; ++l) lag.push_back(kernel(p0 + l, p0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.entries.at(i, j) = lag[std::abs(i - j)];
  return g;
}

GramMatrix assemble_kd(double delta, SampleGrid grid, const PrecisionConfig& p) {
  return assemble(
      [delta, &p](double x, double y) {
        return kd_value_xp(delta, Real(x - y, p.bits));
      },
      grid, p.bits, "Kdelta(delta=" + std::to_string(delta) + ")[J_" + std::to_string(grid.n) + "]");
}

GramMatrix assemble_autocorr(const Autocorrelation& a, SampleGrid grid,
                             const PrecisionConfig& p) {
  return assemble(
      [&a, &p](double x, double y) { return a.xp(x - y, p.bits); }, grid, p.bits,
      "R_X[J_" + std::to_string(grid.n) + "] " + a.density().id());
}

namespace {

SymMatrix<Real> rounded_entries(const GramMatrix& g, int bits) {
  const int m = g.dim();
  SymMatrix<Real> a(m, Real(0.0, bits));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a.at(i, j) = g.entries.at(i, j).rounded_to(bits);
  return a;
}

}  // namespace

std::vector<Real> jacobi_eigenvalues(SymMatrix<Real> a, int max_sweeps) {
  const int n = a.dim();
  if (n == 1) return {a.at(0, 0)};
  int bits = a.at(0, 0).bits();
  const Real zero(0.0, bits);

  auto off_norm2 = [&] {
    Real s = zero;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a.at(i, j) * a.at(i, j);
    return s;
  };
  Real frob = zero;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) frob += a.at(i, j) * a.at(i, j);
  // converged when the off-diagonal mass is negligible at working precision
  const Real tol = ldexp2(frob, -2 * (bits - 6));

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm2() <= tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Real apq = a.at(p, q);
        if (apq.is_zero()) continue;
        const Real theta = (a.at(q, q) - a.at(p, p)) / (ldexp2(apq, 1));
        Real t = 1.0 / (abs(theta) + sqrt(theta * theta + 1.0));
        if (theta.sign() < 0) t = -t;
        const Real c = 1.0 / sqrt(t * t + 1.0);
        const Real s = t * c;
        const Real tau = s / (1.0 + c);
        const Real app = a.at(p, p), aqq = a.at(q, q);
        a.at(p, p) = app - t * apq;
        a.at(q, q) = aqq + t * apq;
        a.at(p, q) = zero;
        a.at(q, p) = zero;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const Real aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = aip - s * (aiq + tau * aip);
          a.at(p, i) = a.at(i, p);
          a.at(i, q) = aiq + s * (aip - tau * aiq);
          a.at(q, i) = a.at(i, q);
        }
      }
    }
  }
  std::vector<Real> ev;
  ev.reserve(n);
  for (int i = 0; i < n; ++i) ev.push_back(a.at(i, i));
  return ev;
}

double condition_number(const GramMatrix& g, const PrecisionConfig& p) {
  if (p.bits < 53) throw Error("precision bits must be >= 53");
  std::vector<Real> ev = jacobi_eigenvalues(rounded_entries(g, p.bits));
  Real lmin = ev[0], lmax = ev[0];
  for (const Real& e : ev) {
    if (e < lmin) lmin = e;
    if (e > lmax) lmax = e;
  }
  if (!(lmin > 0.0))
    throw NotPositiveDefinite("smallest eigenvalue " + lmin.str(6) +
                              " is not positive at " + std::to_string(p.bits) + " bits");
  return (lmax / lmin).to_double();
}

SpdFactor::SpdFactor(const GramMatrix& g, const PrecisionConfig& p) : bits_(p.bits) {
  if (p.bits < 53) throw Error("precision bits must be >= 53");
  if (p.bits == 53 && p.fallback_to_native) {
    // hardware Cholesky; 53-bit MPFR and IEEE doubles round identically, so
    // this is a pure speed path with bitwise-equal results
    const int m = g.dim();
    SymMatrix<double> a(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a.at(i, j) = g.entries.at(i, j).to_double();
    if (!cholesky_in_place(a))
      throw NotPositiveDefinite("Cholesky pivot <= 0 in native doubles; increase precision-bits");
    l_ = SymMatrix<Real>(m, Real(0.0, 53));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) l_.at(i, j) = Real(a.at(i, j), 53);
    return;
  }
  l_ = rounded_entries(g, bits_);
  if (!cholesky_in_place(l_))
    throw NotPositiveDefinite("Cholesky pivot <= 0 at " + std::to_string(bits_) +
                              " bits; increase precision-bits");
}

std::vector<Real> SpdFactor::forward(std::span<const Real> rhs) const {
  const int n = l_.dim();
  std::vector<Real> y(static_cast<std::size_t>(n), Real(0.0, bits_));
  for (int i = 0; i < n; ++i) {
    Real s = rhs[i].rounded_to(bits_);
    for (int k = 0; k < i; ++k) s -= l_.at(i, k) * y[k];
    y[i] = s / l_.at(i, i);
  }
  return y;
}

std::vector<Real> SpdFactor::solve(std::span<const Real> rhs) const {
  const int n = l_.dim();
  std::vector<Real> x = forward(rhs);
  for (int i = n - 1; i >= 0; --i) {
    Real s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l_.at(k, i) * x[k];
    x[i] = s / l_.at(i, i);
  }
  return x;
}

std::vector<Real> solve_spd(const GramMatrix& g, std::span<const Real> rhs,
                            const PrecisionConfig& p) {
  if (static_cast<int>(rhs.size()) != g.dim())
    throw Error("solve_spd: rhs length does not match matrix dimension");
  return SpdFactor(g, p).solve(rhs);
}

std::string to_csv(const GramMatrix& g) {
  std::string out;
  const int m = g.dim();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j) out += ',';
      out += g.entries.at(i, j).str(40);
    }
    out += '\n';
  }
  return out;
}

}  // namespace blr
