// SPDX-License-Identifier: Apache-2.0
#include "blr/bounds.hpp"

#include <cmath>
#include <numbers>

#include "blr/errors.hpp"
#include "blr/sinc.hpp"
#include "blr/weights.hpp"

namespace blr {

namespace {

constexpr double kE = std::numbers::e;

double exp_decay(double delta, int n) { return std::exp(-0.5 * (kPi - delta) * n); }

}  // namespace

std::string to_string(BoundTag tag) {
  switch (tag) {
    case BoundTag::lemma22_lower: return "lemma22-lower";
    case BoundTag::lemma22_upper: return "lemma22-upper";
    case BoundTag::thm24_upper: return "thm24-upper";
    case BoundTag::thm29_upper: return "thm29-upper";
    case BoundTag::thm210_lower: return "thm210-lower";
    case BoundTag::thm32_rate: return "thm32-rate";
    case BoundTag::thm34_upper: return "thm34-upper";
  }
  return "?";
}

BoundTag bound_tag_from_string(const std::string& s) {
  if (s == "lemma22-lower") return BoundTag::lemma22_lower;
  if (s == "lemma22-upper") return BoundTag::lemma22_upper;
  if (s == "thm24-upper") return BoundTag::thm24_upper;
  if (s == "thm29-upper") return BoundTag::thm29_upper;
  if (s == "thm210-lower") return BoundTag::thm210_lower;
  if (s == "thm32-rate") return BoundTag::thm32_rate;
  if (s == "thm34-upper") return BoundTag::thm34_upper;
  throw Error("unknown bound tag '" + s + "'");
}

BoundValue eval_bound(BoundTag tag, const BoundParams& p) {
  if (!(p.delta > 0) || p.delta > kPi) throw Error("bound requires 0 < delta <= pi");
  if (p.n < 1) throw Error("bound requires n >= 1");
  BoundValue out;
  out.tag = tag;
  out.params = p;
  out.n_threshold = 1;
  const double delta = p.delta;
  const int n = p.n;

  switch (tag) {
    case BoundTag::lemma22_lower:
      out.value = 5.0 / (11.0 * kE * std::sqrt(3.0 * kPi)) * (delta / (2.0 * n + 1.0)) *
                  std::pow(delta / 4.0, 2.0 * n);
      break;
    case BoundTag::lemma22_upper:
      out.value = std::sqrt(2.0 + kPi - delta) * (std::sqrt(3.0) * kE / (std::sqrt(2.0) * kPi)) /
                  std::sqrt(double(n)) * exp_decay(delta, n);
      break;
    case BoundTag::thm24_upper:
      out.value = std::sqrt(p.rho_linf) * std::sqrt(2.0 + kPi - delta) *
                  (std::sqrt(3.0) * kE / std::sqrt(kPi * n)) * exp_decay(delta, n);
      break;
    case BoundTag::thm29_upper: {
      out.n_threshold = 4.0 / (kPi - delta);
      out.valid = n >= out.n_threshold;
      out.value = std::sqrt(p.rho_l1) * (11.0 * kE / (10.0 * std::sqrt(kPi))) *
                  (std::sqrt(kPi - delta) / 2.0 + 2.0 * std::sqrt(2.0) / std::sqrt(kPi - delta)) /
                  std::sqrt(double(n)) * exp_decay(delta, n);
      break;
    }
    case BoundTag::thm210_lower: {
      if (!(p.a < p.b) || p.a < -delta - 1e-12 || p.b > delta + 1e-12)
        throw BadInterval("thm210 needs [a,b] inside [-delta, delta] with a < b");
      if (!(p.m > 0)) throw BadInterval("thm210 needs a positive density floor m");
      const double dprime = 0.5 * (p.b - p.a);
      out.value = 5.0 * std::sqrt(2.0 * p.m) / (11.0 * kE * std::sqrt(3.0)) *
                  (dprime / (2.0 * n + 1.0)) * std::pow(dprime / 4.0, 2.0 * n);
      break;
    }
    case BoundTag::thm32_rate:
      out.n_threshold = std::max(kE / (kPi - delta), kE * kE);
      out.valid = n >= out.n_threshold;
      out.value.reset();  // only the rate is known; the constant is unspecified
      break;
    case BoundTag::thm34_upper: {
      out.n_threshold = std::max(2.0 / (kPi - delta), kE);
      out.valid = n > out.n_threshold;
      out.value = std::sqrt(121.0 / 200.0) * std::exp(0.75) * std::sqrt(2.0 + kPi - delta) *
                  std::pow((std::log(double(n)) + 1.0) / (2.0 * n), 0.25) * exp_decay(delta, n);
      break;
    }
  }
  return out;
}

double thm32_exponent(double delta) { return (kPi - delta) / (2.0 * kE); }

double thm32_shape(double delta, int n) {
  return std::sqrt(std::log(double(n)) / (n * (kPi - delta)));
}

std::pair<double, double> optimal_exponent_interval(double delta) {
  return {2.0 * std::log(delta / 4.0), -0.5 * (kPi - delta)};
}

namespace {

RateFit fit_line(std::span<const std::pair<double, double>> series, bool log_x) {
  if (series.size() < 4)
    throw InsufficientData("rate fit needs at least 4 points, got " +
                           std::to_string(series.size()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double nlo = series.front().first, nhi = series.front().first;
  for (const auto& [n, err] : series) {
    if (!(err > 0))
      throw NonpositiveError("rate fit requires positive errors (n=" + std::to_string(n) + ")");
    const double x = log_x ? std::log(n) : n;
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    nlo = std::min(nlo, n);
    nhi = std::max(nhi, n);
  }
  const double cnt = double(series.size());
  const double denom = cnt * sxx - sx * sx;
  RateFit f;
  f.points = static_cast<int>(series.size());
  f.n_lo = nlo;
  f.n_hi = nhi;
  f.slope = (cnt * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / cnt;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / cnt;
  for (const auto& [n, err] : series) {
    const double x = log_x ? std::log(n) : n;
    const double y = std::log(err);
    const double fit = f.intercept + f.slope * x;
    ss_res += (y - fit) * (y - fit);
    ss_tot += (y - ybar) * (y - ybar);
  }
  // a constant series is fit perfectly by the horizontal line
  f.r_squared = ss_tot > 0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return f;
}

}  // namespace

RateFit rate_fit(std::span<const std::pair<double, double>> series) {
  return fit_line(series, /*log_x=*/false);
}

RateFit rate_fit_loglog(std::span<const std::pair<double, double>> series) {
  return fit_line(series, /*log_x=*/true);
}

double stirling_upper(int k) {
  if (k < 1) throw Error("stirling_upper requires k >= 1");
  return 11.0 * std::sqrt(2.0 * kPi) / 10.0 * std::pow(k / kE, double(k)) * std::sqrt(double(k));
}

double lemma27_infimum(int k, double delta) { return SplineWeight::decay_constant(k, delta); }

}  // namespace blr
