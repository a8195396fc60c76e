// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite.  Each criterion prints one PASS/FAIL line with its key
// numbers; the binary exits nonzero if any selected criterion fails.
// Run as `acceptance [c1|...|c7|all]`.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "blr/bounds.hpp"
#include "blr/kernelmat.hpp"
#include "blr/reconstruct.hpp"
#include "blr/simulate.hpp"

using namespace blr;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

Autocorrelation normalized_flat(double delta) {
  return Autocorrelation(
      SpectralDensity::flat(delta, 1.0 / (2.0 * kPi)).normalized_unit_ball());
}

bool report(int idx, const char* name, bool ok, double secs, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%.2fs) %s\n", ok ? "PASS" : "FAIL", idx, name, secs,
              detail.c_str());
  return ok;
}

// --- criterion 1: condition-number table reproduction -----------------------

bool criterion1() {
  Timer timer;
  struct Cell {
    double delta;
    int n;
    double published;
  };
  const double d34 = 3.0 * kPi / 4.0, d2 = kPi / 2.0, d3 = kPi / 3.0;
  const std::vector<Cell> cells{
      {d34, 1, 1.86},  {d34, 3, 15.5},    {d34, 5, 248.0},   {d34, 7, 4.98e3},
      {d34, 9, 1.08e5},{d2, 1, 4.50},     {d2, 3, 2.19e3},   {d2, 5, 1.84e6},
      {d2, 7, 1.75e9}, {d2, 9, 1.76e12},  {d3, 1, 10.6},     {d3, 3, 2.51e5},
      {d3, 5, 7.06e9}, {d3, 7, 2.23e14},  {d3, 9, 5.13e16}};
  bool ok = true;
  double worst_small = 0, worst_large = 0;
  std::string failures;
  for (const Cell& c : cells) {
    const double kappa = condition_number(
        assemble_kd(c.delta, SampleGrid{c.n}, PrecisionConfig{256}), PrecisionConfig{256});
    const double rel = std::fabs(kappa - c.published) / c.published;
    const double tol = c.published < 1e12 ? 0.02 : 0.10;
    if (c.published < 1e12)
      worst_small = std::max(worst_small, rel);
    else
      worst_large = std::max(worst_large, rel);
    if (rel > tol) {
      ok = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, " [delta=%.6g n=%d computed=%.6g published=%.3g dev=%.3g]",
                    c.delta, c.n, kappa, c.published, rel);
      failures += buf;
    }
  }
  const double secs = timer.seconds();
  char buf[200];
  std::snprintf(buf, sizeof buf, "max dev %.2f%% (tol 2%%) / %.2f%% (tol 10%%)",
                100.0 * worst_small, 100.0 * worst_large);
  std::string detail = std::string(buf) + failures;
  if (secs > 5.0) {
    ok = false;
    detail += " [over 5 s budget]";
  }
  return report(1, "condition-number table reproduction", ok, secs, detail);
}

// --- criterion 2: bound sandwich --------------------------------------------

bool criterion2() {
  Timer timer;
  const double delta = kPi / 2.0;
  const auto a = normalized_flat(delta);
  const DensityNorms norms = a.density().norms();
  const double level = a.density().scale() * a.density().flat_level();
  const auto grid = default_t_grid();
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 10; ++n) {
    const PrecisionConfig prec{256};
    const double computed = sup_error_scan_optimal(a, n, grid, prec).sup_rmse;
    const double kappa =
        condition_number(assemble_autocorr(a, SampleGrid{n}, prec), prec);
    const double floor =
        std::sqrt(a.r0() * kappa * std::ldexp(1.0, 1 - prec.bits));
    BoundParams p;
    p.delta = delta;
    p.n = n;
    p.rho_l1 = norms.l1;
    p.rho_linf = norms.linf;
    p.a = -delta;
    p.b = delta;
    p.m = level;
    const double lower = eval_bound(BoundTag::thm210_lower, p).value.value();
    const auto b24 = eval_bound(BoundTag::thm24_upper, p);
    const auto b29 = eval_bound(BoundTag::thm29_upper, p);
    double upper = b24.value.value();
    if (b29.valid) upper = std::min(upper, b29.value.value());
    if (computed <= 10.0 * floor) continue;  // below the precision floor
    if (!(lower <= computed && computed <= upper)) {
      ok = false;
      char buf[200];
      std::snprintf(buf, sizeof buf, " [n=%d: %.3g <= %.3g <= %.3g violated]", n, lower,
                    computed, upper);
      detail += buf;
    }
  }
  const double secs = timer.seconds();
  if (detail.empty()) detail = "thm210 lower <= computed <= min(thm24, thm29) for n=1..10";
  if (secs > 30.0) {
    ok = false;
    detail += " [over 30 s budget]";
  }
  return report(2, "intrinsic error inside the bound sandwich", ok, secs, detail);
}

// --- criterion 3: exponential rates ------------------------------------------

bool criterion3() {
  Timer timer;
  const double delta = kPi / 2.0;
  const auto a = normalized_flat(delta);
  const auto grid = default_t_grid();
  std::vector<std::pair<double, double>> s_a2, s_a1, s_opt;
  ScanOptions deep;
  deep.precision = PrecisionConfig{256};
  deep.xp_weights = true;
  // the practical-rule errors dip to the 1e-9 scale by n = 14, where the
  // double-lane quadratic form floors out, so the deep lane runs throughout
  for (int n = 4; n <= 14; ++n) {
    s_a2.emplace_back(n, sup_error_scan(WeightSpec::a2(delta), a, n, grid, deep).sup_rmse);
    s_a1.emplace_back(n, sup_error_scan(WeightSpec::a1(delta), a, n, grid, deep).sup_rmse);
    s_opt.emplace_back(n,
                       sup_error_scan_optimal(a, n, grid, PrecisionConfig{256}).sup_rmse);
  }
  const double slope_a2 = rate_fit(s_a2).slope;
  const double slope_a1 = rate_fit(s_a1).slope;
  const double slope_opt = rate_fit(s_opt).slope;
  const double thr_a2 = -0.9 * 0.5 * (kPi - delta);
  const double thr_a1 = -0.9 * thm32_exponent(delta);
  const auto [lo, hi] = optimal_exponent_interval(delta);
  const double lo_adj = lo * 1.15, hi_adj = hi * 0.85;
  const bool ok_a2 = slope_a2 <= thr_a2;
  const bool ok_a1 = slope_a1 <= thr_a1;
  const bool ok_opt = slope_opt >= lo_adj && slope_opt <= hi_adj;
  bool ok = ok_a2 && ok_a1 && ok_opt;
  const double secs = timer.seconds();
  char buf[260];
  std::snprintf(buf, sizeof buf,
                "a2 slope %.4f <= %.4f: %s; a1 slope %.4f <= %.4f: %s; optimal %.4f in "
                "[%.4f, %.4f]: %s",
                slope_a2, thr_a2, ok_a2 ? "yes" : "NO", slope_a1, thr_a1, ok_a1 ? "yes" : "NO",
                slope_opt, lo_adj, hi_adj, ok_opt ? "yes" : "NO");
  std::string detail = buf;
  if (secs > 60.0) {
    ok = false;
    detail += " [over 60 s budget]";
  }
  return report(3, "exponential decay rates", ok, secs, detail);
}

// --- criterion 4: slow baseline and the oversampling payoff ------------------

bool criterion4() {
  Timer timer;
  const auto grid = default_t_grid();

  const Autocorrelation nyq(SpectralDensity::flat(kPi, 1.0 / (2.0 * kPi)).normalized_unit_ball());
  std::vector<std::pair<double, double>> series;
  for (int n : {16, 32, 64, 128, 256})
    series.emplace_back(
        n, sup_error_scan(WeightSpec::shannon(kPi), nyq, n, grid, ScanOptions{}).sup_rmse);
  const double slope = rate_fit_loglog(series).slope;
  const bool ok_slope = std::fabs(slope + 0.5) <= 0.15;

  const double delta = kPi / 2.0;
  const auto a = normalized_flat(delta);
  ScanOptions deep;
  deep.precision = PrecisionConfig{256};
  deep.xp_weights = true;
  const double plain =
      sup_error_scan(WeightSpec::shannon(delta), a, 32, grid, ScanOptions{}).sup_rmse;
  const double a2 = sup_error_scan(WeightSpec::a2(delta), a, 32, grid, deep).sup_rmse;
  const double factor = plain / a2;
  const bool ok_factor = factor >= 100.0;

  bool ok = ok_slope && ok_factor;
  const double secs = timer.seconds();
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "critical-rate log-log slope %.4f (need -0.5 +/- 0.15): %s; n=32 plain/a2 = "
                "%.3g/%.3g = %.3g (need >= 100): %s",
                slope, ok_slope ? "yes" : "NO", plain, a2, factor, ok_factor ? "yes" : "NO");
  std::string detail = buf;
  if (secs > 60.0) {
    ok = false;
    detail += " [over budget]";
  }
  return report(4, "slow baseline vs oversampling payoff", ok, secs, detail);
}

// --- criterion 5: Monte Carlo consistency ------------------------------------

bool criterion5() {
  Timer timer;
  const double delta = kPi / 2.0;
  const auto a = normalized_flat(delta);
  const int n = 6;
  const int trials = 10000;
  const std::uint64_t seed = 20240801;
  int passed = 0, total = 0;
  for (int ti = 0; ti <= 10; ++ti) {
    const double t = ti / 10.0;
    std::vector<double> points;
    for (int j = -n + 1; j <= n; ++j) points.push_back(j);
    int t_index;
    if (ti == 0 || ti == 10) {
      t_index = static_cast<int>(std::nearbyint(t)) + n - 1;
    } else {
      t_index = static_cast<int>(points.size());
      points.push_back(t);
    }
    SimConfig cfg;
    cfg.seed = rng::splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (ti + 1)));
    cfg.trials = trials;
    const PathEnsemble ens = sample_paths(a, points, cfg);
    for (const auto& spec : {WeightSpec::shannon(delta), WeightSpec::a1(delta),
                             WeightSpec::a2(delta)}) {
      const auto c = coefficients(spec, n, t);
      const double det = mse(a, c);
      const auto emp = empirical_mse(ens, c, t_index);
      double z = 0;
      if (emp.stderr_ > 0)
        z = (emp.mean - det) / emp.stderr_;
      else if (std::fabs(emp.mean - det) > 1e-14)
        z = 1e9;
      passed += std::fabs(z) <= 3.0;
      ++total;
    }
  }
  bool ok = passed >= 30 && total == 33;
  const double secs = timer.seconds();
  char buf[120];
  std::snprintf(buf, sizeof buf, "z-tests within 3 sigma: %d/%d (need >= 30/33)", passed,
                total);
  std::string detail = buf;
  if (secs > 60.0) {
    ok = false;
    detail += " [over 60 s budget]";
  }
  return report(5, "Monte Carlo validates the deterministic mse", ok, secs, detail);
}

// --- criterion 6: spline weight properties -----------------------------------

bool criterion6() {
  Timer timer;
  bool ok_norm = true, ok_decay = true, ok_recon = true;
  for (int k = 1; k <= 20; ++k) {
    const SplineWeight w(k, kPi / 2.0);
    if (std::fabs(w.fhat(0.0) - 1.0) > 1e-10) ok_norm = false;
    if (std::fabs(w.fhat(1e-12) - 1.0) > 1e-10) ok_norm = false;
  }
  for (double delta : {kPi / 3.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
    for (int k = 1; k <= 20 && ok_decay; ++k) {
      const SplineWeight w(k, delta);
      for (int i = 0; i < 50; ++i) {
        const double xi = 0.1 * std::pow(1000.0, i / 49.0);
        const double bound = SplineWeight::decay_bound(k, delta, xi);
        const double val = std::fabs(w.fhat_xp(xi, 192).to_double());
        if (val > bound * (1.0 + 1e-12)) {
          ok_decay = false;
          break;
        }
      }
    }
  }
  const double delta = kPi / 2.0, t0 = 0.3;
  double worst_recon = 0;
  for (int k : {3, 5, 7}) {
    const SplineWeight w(k, delta);
    for (double t : {0.2, 0.5, 0.8}) {
      double sum = 0;
      for (int j = -200; j <= 200; ++j)
        sum += kd_value(delta, j - t0) * sinc(t - j) * w.fhat(t - j);
      worst_recon = std::max(worst_recon, std::fabs(sum - kd_value(delta, t - t0)));
    }
  }
  ok_recon = worst_recon <= 1e-8;
  bool ok = ok_norm && ok_decay && ok_recon;
  const double secs = timer.seconds();
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "normalization at zero: %s; decay envelope (k<=20, 3 bandwidths, 50-point log "
                "grid): %s; windowed reconstruction residual %.2e (need <= 1e-8): %s",
                ok_norm ? "yes" : "NO", ok_decay ? "yes" : "NO", worst_recon,
                ok_recon ? "yes" : "NO");
  std::string detail = buf;
  if (secs > 20.0) {
    ok = false;
    detail += " [over 20 s budget]";
  }
  return report(6, "spline weight properties", ok, secs, detail);
}

// --- criterion 7: optimality and orthogonality --------------------------------

bool criterion7() {
  Timer timer;
  std::mt19937_64 eng(771177);
  std::uniform_real_distribution<double> udelta(kPi / 3.0, 3.0 * kPi / 4.0);
  std::uniform_int_distribution<int> un(2, 8);
  std::uniform_real_distribution<double> ut(0.05, 0.95);
  std::normal_distribution<double> gauss;
  bool ok = true;
  std::string detail;
  const PrecisionConfig prec{256};
  for (int cfg = 0; cfg < 5; ++cfg) {
    const double delta = udelta(eng);
    const int n = un(eng);
    const double t = ut(eng);
    const auto a = normalized_flat(delta);
    const auto copt = optimal_coefficients(a, n, t, prec);
    const double best = mse(a, copt);

    // orthogonality residuals at 256 bits
    const Real rt(t, prec.bits);
    double worst_resid = 0;
    for (int k = -n + 1; k <= n; ++k) {
      Real resid = a.xp(rt - double(k));
      for (int j = -n + 1; j <= n; ++j)
        resid -= (*copt.xp)[static_cast<std::size_t>(copt.index_of(j))] *
                 a.xp(double(j - k), prec.bits);
      worst_resid = std::max(worst_resid, abs(resid).to_double());
    }
    if (worst_resid > 1e-15 * a.r0()) {
      ok = false;
      detail += " [orthogonality residual " + std::to_string(worst_resid) + "]";
    }

    // 100 alternatives: the three practical rules plus random perturbations
    int alts = 0, beaten = 0;
    for (const auto& spec :
         {WeightSpec::shannon(delta), WeightSpec::a1(delta), WeightSpec::a2(delta)}) {
      auto alt = coefficients(spec, n, t);
      alt.precision_bits = prec.bits;  // evaluate the same quadratic form deeply
      ++alts;
      if (mse(a, alt) < best) ++beaten;
    }
    while (alts < 100) {
      CoefficientVector alt;
      alt.t = t;
      alt.n = n;
      alt.method = "custom";
      alt.precision_bits = prec.bits;
      alt.values = copt.values;
      const double scale = std::pow(10.0, -8.0 + (alts % 8));
      for (double& v : alt.values) v += scale * gauss(eng);
      ++alts;
      if (mse(a, alt) < best) ++beaten;
    }
    if (beaten > 0) {
      ok = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, " [config %d: %d alternatives beat the optimal rule]",
                    cfg, beaten);
      detail += buf;
    }
  }
  const double secs = timer.seconds();
  if (detail.empty())
    detail = "5 random configurations, 100 alternatives each, residuals <= 1e-15 R(0)";
  if (secs > 30.0) {
    ok = false;
    detail += " [over 30 s budget]";
  }
  return report(7, "optimality of the Gram-solve coefficients", ok, secs, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  bool ran = false;
  auto maybe = [&](const char* name, bool (*fn)()) {
    if (which == "all" || which == name) {
      ok = fn() && ok;
      ran = true;
    }
  };
  maybe("c1", criterion1);
  maybe("c2", criterion2);
  maybe("c3", criterion3);
  maybe("c4", criterion4);
  maybe("c5", criterion5);
  maybe("c6", criterion6);
  maybe("c7", criterion7);
  if (!ran) {
    std::fprintf(stderr, "usage: acceptance [c1..c7|all]\n");
    return 2;
  }
  return ok ? 0 : 1;
}
