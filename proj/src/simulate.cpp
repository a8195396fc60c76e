// SPDX-License-Identifier: Apache-2.0
#include "blr/simulate.hpp"

#include <cmath>

#include "blr/kernels.hpp"

namespace blr {

int PathEnsemble::index_of(double point) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] == point) return static_cast<int>(i);
  return -1;
}

namespace {

PathEnsemble sample_exact(const Autocorrelation& a, std::span<const double> points,
                          const SimConfig& cfg) {
  const int p = static_cast<int>(points.size());
  const double jitter = cfg.jitter.value_or(1e-12 * a.r0());
  SymMatrix<double> cov(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) cov.at(i, j) = a(points[i] - points[j]);
  for (int i = 0; i < p; ++i) cov.at(i, i) += jitter;
  if (!cholesky_in_place(cov))
    throw CovarianceNotPD("path covariance is not positive definite; raise jitter");

  PathEnsemble e;
  e.points.assign(points.begin(), points.end());
  e.trials = cfg.trials;
  e.mode = SimMode::exact_gaussian;
  e.seed = cfg.seed;
  e.samples.assign(p, std::vector<double>(cfg.trials));
  std::vector<double> z(p), x(p);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    rng::NormalStream stream(cfg.seed, static_cast<std::uint64_t>(trial));
    for (int i = 0; i < p; ++i) z[i] = stream.next();
    for (int i = 0; i < p; ++i) {
      double s = 0;
      for (int k = 0; k <= i; ++k) s += cov.at(i, k) * z[k];
      x[i] = s;
    }
    for (int i = 0; i < p; ++i) e.samples[i][trial] = x[i];
  }
  return e;
}

PathEnsemble sample_spectral(const Autocorrelation& a, std::span<const double> points,
                             const SimConfig& cfg) {
  const int p = static_cast<int>(points.size());
  const int modes = cfg.spectral_modes;
  const double delta = a.density().delta();
  const double dxi = delta / modes;

  // midpoint frequencies and per-mode amplitudes
  std::vector<double> amp(modes);
  std::vector<std::vector<double>> cosm(p, std::vector<double>(modes));
  std::vector<std::vector<double>> sinm(p, std::vector<double>(modes));
  for (int k = 0; k < modes; ++k) {
    const double xi = (k + 0.5) * dxi;
    amp[k] = std::sqrt(2.0 * a.density()(xi) * dxi);
    for (int i = 0; i < p; ++i) {
      cosm[i][k] = std::cos(xi * points[i]);
      sinm[i][k] = std::sin(xi * points[i]);
    }
  }

  PathEnsemble e;
  e.points.assign(points.begin(), points.end());
  e.trials = cfg.trials;
  e.mode = SimMode::spectral;
  e.seed = cfg.seed;
  e.samples.assign(p, std::vector<double>(cfg.trials));
  std::vector<double> ca(modes), cb(modes);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    rng::NormalStream stream(cfg.seed, static_cast<std::uint64_t>(trial));
    for (int k = 0; k < modes; ++k) {
      ca[k] = amp[k] * stream.next();
      cb[k] = amp[k] * stream.next();
    }
    for (int i = 0; i < p; ++i)
      e.samples[i][trial] = kernels::dot(ca, cosm[i]) + kernels::dot(cb, sinm[i]);
  }
  return e;
}

}  // namespace

PathEnsemble sample_paths(const Autocorrelation& a, std::span<const double> points,
                          const SimConfig& cfg) {
  if (cfg.trials < 1) throw Error("trials must be >= 1");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw Error("ensemble points must be distinct");
  return cfg.mode == SimMode::exact_gaussian ? sample_exact(a, points, cfg)
                                             : sample_spectral(a, points, cfg);
}

EmpiricalMse empirical_mse(const PathEnsemble& e, const CoefficientVector& c, int t_index) {
  if (t_index < 0 || t_index >= static_cast<int>(e.points.size()) ||
      e.points[static_cast<std::size_t>(t_index)] != c.t)
    throw PointNotInEnsemble("evaluation time is not in the ensemble");
  const int m = e.trials;
  std::vector<double> resid = e.samples[static_cast<std::size_t>(t_index)];
  for (int j = -c.n + 1; j <= c.n; ++j) {
    const int idx = e.index_of(static_cast<double>(j));
    if (idx < 0) throw PointNotInEnsemble("sample point " + std::to_string(j) +
                                          " is not in the ensemble");
    kernels::axpy(-c.values[static_cast<std::size_t>(c.index_of(j))],
                  e.samples[static_cast<std::size_t>(idx)], resid);
  }
  const double s2 = kernels::sum_squares(resid);
  const double s4 = kernels::sum_quads(resid);
  EmpiricalMse out;
  out.mean = s2 / m;
  if (m > 1) {
    const double var = std::max(0.0, (s4 - m * out.mean * out.mean) / (m - 1.0));
    out.stderr_ = std::sqrt(var / m);
  }
  return out;
}

}  // namespace blr
