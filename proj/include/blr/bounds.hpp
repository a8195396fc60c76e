// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace blr {

enum class BoundTag {
  lemma22_lower,
  lemma22_upper,
  thm24_upper,
  thm29_upper,
  thm210_lower,
  thm32_rate,
  thm34_upper,
};

std::string to_string(BoundTag tag);
BoundTag bound_tag_from_string(const std::string& s);

struct BoundParams {
  double delta = 0;
  int n = 1;
  // density norms, used by thm24 (linf of rho) and thm29 (L1 of rho)
  double rho_l1 = 0;
  double rho_linf = 0;
  // thm210: rho >= m on [a, b] inside [-delta, delta]
  double a = 0, b = 0, m = 0;
};

struct BoundValue {
  BoundTag tag{};
  std::optional<double> value;  // absent for thm32_rate (unspecified constant)
  bool valid = true;            // n-threshold satisfied
  double n_threshold = 0;       // smallest n for which the bound applies
  BoundParams params;
};

// Exact evaluation of the stated closed forms.  Out-of-threshold requests
// return the formula value with valid=false (documented extrapolation).
// thm210 throws BadInterval if [a,b] is not inside [-delta, delta] or m <= 0.
BoundValue eval_bound(BoundTag tag, const BoundParams& p);

// Rate exponent (pi-delta)/(2e) and shape sqrt(ln n / (n (pi-delta))) of the
// first practical method's bound; the multiplying constant is unspecified,
// so only these are exposed.
double thm32_exponent(double delta);
double thm32_shape(double delta, int n);

// Two-sided per-n exponent interval for the optimal error: the lower-bound
// rate 2 ln(delta/4) and the upper-bound rate -(pi-delta)/2.
std::pair<double, double> optimal_exponent_interval(double delta);

struct RateFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  double n_lo = 0, n_hi = 0;
  int points = 0;
};

// Least-squares line through (n, ln error).  Throws InsufficientData with
// fewer than 4 points and NonpositiveError if any error is <= 0.
RateFit rate_fit(std::span<const std::pair<double, double>> series);
// Same through (ln n, ln error) for algebraic-order fits.
RateFit rate_fit_loglog(std::span<const std::pair<double, double>> series);

// (11 sqrt(2 pi)/10) (k/e)^k sqrt(k), an upper bound for k!.
double stirling_upper(int k);

// 2^(k-1) k! / (pi-delta)^k: the minimal L1 norm of the k-th derivative over
// admissible window functions; single-sourced from the spline weight module.
double lemma27_infimum(int k, double delta);

}  // namespace blr
