// SPDX-License-Identifier: Apache-2.0
#include "blr/reconstruct.hpp"

#include <cmath>
#include <cstdio>

#include "blr/kernels.hpp"

namespace blr {

namespace {

bool integer_in_grid(double t, int n, int* j_out) {
  if (t != std::nearbyint(t)) return false;
  const double j = std::nearbyint(t);
  if (j < -n + 1 || j > n) return false;
  *j_out = static_cast<int>(j);
  return true;
}

}  // namespace

CoefficientVector coefficients(const WeightSpec& spec, int n, double t) {
  if (n < 1) throw Error("grid half-size must be >= 1");
  WeightEvaluator eval(spec, n);
  CoefficientVector c;
  c.t = t;
  c.n = n;
  c.method = spec.name();
  c.extrapolation = t < 0.0 || t > 1.0;
  c.values.reserve(2 * n);
  for (int j = -n + 1; j <= n; ++j) c.values.push_back(eval(t, j));
  return c;
}

CoefficientVector coefficients_xp(const WeightSpec& spec, int n, double t, int bits) {
  if (n < 1) throw Error("grid half-size must be >= 1");
  WeightEvaluator eval(spec, n);
  CoefficientVector c;
  c.t = t;
  c.n = n;
  c.method = spec.name();
  c.precision_bits = bits;
  c.extrapolation = t < 0.0 || t > 1.0;
  c.values.reserve(2 * n);
  c.xp.emplace();
  c.xp->reserve(2 * n);
  for (int j = -n + 1; j <= n; ++j) {
    c.xp->push_back(eval.xp(t, j, bits));
    c.values.push_back(c.xp->back().to_double());
  }
  return c;
}

CoefficientVector optimal_coefficients(const Autocorrelation& a, int n, double t,
                                       const PrecisionConfig& p) {
  if (n < 1) throw Error("grid half-size must be >= 1");
  CoefficientVector c;
  c.t = t;
  c.n = n;
  c.method = "optimal";
  c.precision_bits = p.bits;
  c.extrapolation = t < 0.0 || t > 1.0;

  int j0 = 0;
  if (integer_in_grid(t, n, &j0)) {
    // rhs equals a Gram row, so interpolation at a sample is exact
    c.values.assign(2 * n, 0.0);
    c.xp.emplace(2 * n, Real(0.0, p.bits));
    c.values[c.index_of(j0)] = 1.0;
    (*c.xp)[c.index_of(j0)] = Real(1.0, p.bits);
    return c;
  }

  SampleGrid grid{n};
  GramMatrix g = assemble_autocorr(a, grid, p);
  const Real rt(t, p.bits);
  std::vector<Real> rhs;
  rhs.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) rhs.push_back(a.xp(rt - double(grid.point(i))));
  std::vector<Real> x;
  try {
    x = solve_spd(g, rhs, p);
  } catch (const NotPositiveDefinite& e) {
    throw NotPositiveDefinite(std::string(e.what()) +
                              " (Gram solve for optimal coefficients; increase precision-bits)");
  }
  c.xp = std::move(x);
  c.values.reserve(2 * n);
  for (const Real& v : *c.xp) c.values.push_back(v.to_double());
  return c;
}

double mse(const Autocorrelation& a, const CoefficientVector& c) {
  const int n = c.n;
  const int m = 2 * n;
  SampleGrid grid{n};
  const int bits = c.precision_bits;

  if (bits > 53 || c.xp.has_value()) {
    const int wb = std::max(64, bits);
    std::vector<Real> cv;
    cv.reserve(m);
    if (c.xp.has_value())
      for (const Real& v : *c.xp) cv.push_back(v.rounded_to(wb));
    else
      for (double v : c.values) cv.push_back(Real(v, wb));

    const Real r0 = a.xp(0.0, wb);
    std::vector<Real> lag;
    lag.reserve(m);
    for (int l = 0; l < m; ++l) lag.push_back(a.xp(l, wb));
    const Real rt(c.t, wb);
    Real cross(0.0, wb);
    for (int i = 0; i < m; ++i) cross += cv[i] * a.xp(rt - double(grid.point(i)));
    Real quad(0.0, wb);
    for (int i = 0; i < m; ++i) {
      Real row(0.0, wb);
      for (int j = 0; j < m; ++j) row += lag[std::abs(i - j)] * cv[j];
      quad += cv[i] * row;
    }
    const Real val = r0 - 2.0 * cross + quad;
    if (val < 0.0) {
      if (val > -1e-12 * r0) return 0.0;
      throw NegativeMse("quadratic form returned " + val.str(6) +
                        "; precision failure at " + std::to_string(wb) + " bits");
    }
    return val.to_double();
  }

  const double r0 = a(0.0);
  std::vector<double> rvec(m), lag(m), gc(m, 0.0);
  for (int i = 0; i < m; ++i) rvec[i] = a(c.t - grid.point(i));
  for (int l = 0; l < m; ++l) lag[l] = a(l);
  const double cross = kernels::dot(c.values, rvec);
  for (int i = 0; i < m; ++i) {
    double row = 0;
    for (int j = 0; j < m; ++j) row += lag[std::abs(i - j)] * c.values[j];
    gc[i] = row;
  }
  const double quad = kernels::dot(c.values, gc);
  const double val = r0 - 2.0 * cross + quad;
  if (val < 0.0) {
    if (val > -1e-12 * r0) return 0.0;
    throw NegativeMse("quadratic form returned " + std::to_string(val) +
                      "; precision failure in the double lane");
  }
  return val;
}

namespace {

double intrinsic_from_factor(const Autocorrelation& a, const SpdFactor& f, int n, double t,
                             int bits) {
  int j0 = 0;
  if (integer_in_grid(t, n, &j0)) return 0.0;
  SampleGrid grid{n};
  const Real rt(t, bits);
  std::vector<Real> rhs;
  rhs.reserve(2 * n);
  for (int i = 0; i < 2 * n; ++i) rhs.push_back(a.xp(rt - double(grid.point(i))));
  const std::vector<Real> y = f.forward(rhs);
  Real s(0.0, bits);
  for (const Real& v : y) s += v * v;
  const Real r0 = a.xp(0.0, bits);
  const Real val = r0 - s;
  if (val < 0.0) {
    if (val > -1e-12 * r0) return 0.0;
    throw NegativeMse("intrinsic quadratic form went negative; increase precision-bits");
  }
  return sqrt(val).to_double();
}

}  // namespace

double intrinsic_error(const Autocorrelation& a, int n, double t, const PrecisionConfig& p) {
  if (n < 1) throw Error("grid half-size must be >= 1");
  SampleGrid grid{n};
  GramMatrix g = assemble_autocorr(a, grid, p);
  SpdFactor f(g, p);
  return intrinsic_from_factor(a, f, n, t, p.bits);
}

std::vector<double> default_t_grid() {
  std::vector<double> g;
  g.reserve(101);
  g.push_back(1e-6);
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  g.push_back(1.0 - 1e-6);
  return g;
}

namespace {

ErrorReport finalize(std::vector<ErrorPoint> pts, std::string method, int n, double delta,
                     std::string density_id, int bits) {
  ErrorReport r;
  r.per_point = std::move(pts);
  r.method = std::move(method);
  r.n = n;
  r.delta = delta;
  r.density_id = std::move(density_id);
  r.precision_bits = bits;
  r.sup_rmse = 0;
  r.argmax_t = r.per_point.empty() ? 0 : r.per_point.front().t;
  for (const ErrorPoint& p : r.per_point) {
    if (p.rmse > r.sup_rmse) {
      r.sup_rmse = p.rmse;
      r.argmax_t = p.t;
    }
  }
  return r;
}

}  // namespace

ErrorReport sup_error_scan(const WeightSpec& spec, const Autocorrelation& a, int n,
                           std::span<const double> grid, const ScanOptions& opts) {
  if (grid.empty()) throw Error("scan grid must be nonempty");
  std::vector<ErrorPoint> pts;
  pts.reserve(grid.size());
  for (double t : grid) {
    CoefficientVector c = opts.xp_weights
                              ? coefficients_xp(spec, n, t, opts.precision.bits)
                              : coefficients(spec, n, t);
    pts.push_back({t, std::sqrt(mse(a, c))});
  }
  return finalize(std::move(pts), spec.name(), n, a.density().delta(), a.density().id(),
                  opts.xp_weights ? opts.precision.bits : 53);
}

ErrorReport sup_error_scan_optimal(const Autocorrelation& a, int n,
                                   std::span<const double> grid, const PrecisionConfig& p) {
  if (grid.empty()) throw Error("scan grid must be nonempty");
  SampleGrid sg{n};
  GramMatrix g = assemble_autocorr(a, sg, p);
  SpdFactor f(g, p);
  std::vector<ErrorPoint> pts;
  pts.reserve(grid.size());
  for (double t : grid) pts.push_back({t, intrinsic_from_factor(a, f, n, t, p.bits)});
  return finalize(std::move(pts), "optimal", n, a.density().delta(), a.density().id(), p.bits);
}

std::string ErrorReport::to_csv() const {
  std::string out = "t,rmse,method,n,delta,density_id,precision_bits\n";
  char buf[160];
  for (const ErrorPoint& p : per_point) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", p.t, p.rmse);
    out += buf;
    out += method + ",";
    std::snprintf(buf, sizeof buf, "%d,%.17g,", n, delta);
    out += buf;
    out += density_id + "," + std::to_string(precision_bits) + "\n";
  }
  return out;
}

}  // namespace blr
