// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "blr/real.hpp"

namespace blr {

enum class WeightKind { plain_sinc, jagerman, spline, custom };

// Reconstruction coefficient rule.  The order (m for the Jagerman multiplier,
// k for the spline weight) is normally derived from the grid half-size, but
// can be pinned explicitly.
struct WeightSpec {
  WeightKind kind = WeightKind::plain_sinc;
  double delta = 0;
  std::optional<int> order;          // explicit order override
  std::vector<double> custom_table;  // c_j for j in J_n, custom kind only

  static WeightSpec shannon(double delta);
  static WeightSpec a1(double delta, std::optional<int> order = {});
  static WeightSpec a2(double delta, std::optional<int> order = {});
  static WeightSpec custom(std::vector<double> table);
  // {"method":"shannon"|"a1"|"a2"|"optimal", "order": optional}
  static WeightSpec from_json(const nlohmann::json& j, double delta);

  std::string name() const;
};

struct OrderSelection {
  int m = 1;
  bool below_threshold = false;  // n was too small for the floor formula
};

// m = max(1, floor(n (pi - delta)/e)); flags n < e/(pi - delta).
OrderSelection select_order_a1(int n, double delta);
// m = max(1, floor(n (pi - delta)/2)); flags n <= 2/(pi - delta).
OrderSelection select_order_a2(int n, double delta);

// g_m(t) = sinc(t) sinc^m((pi - delta) t / (pi m)).
double jagerman_weight(int m, double delta, double t);
Real jagerman_weight_xp(int m, double delta, const Real& t);

// Spline weight of order k for bandwidth delta.
//
// The coefficients alpha_kj sit on the Chebyshev extreme points
// x_kj = cos(j pi / k) and are the divided-difference weights
// (-1)^(k-j) alpha_kj ∝ 1/omega'(x_kj), scaled so that
// sum_j alpha_kj = sqrt(2 pi) 2^(k-1) k!.
//
// The Fourier-side evaluation fhat(xi) switches between three routes:
//  - a cancellation-free even power series in u = (pi-delta) xi, valid for
//    small |u| (the divided-difference moment structure cancels the leading
//    k Taylor terms analytically, leaving complete homogeneous symmetric
//    sums of the squared positive nodes);
//  - the direct exponential-sum formula once |u| is large enough that its
//    cancellation stays below ~1e-13 of the decay envelope;
//  - a 256-bit evaluation of the direct formula in the remaining band.
class SplineWeight {
 public:
  static constexpr int kDefaultMaxOrder = 60;

  SplineWeight(int k, double delta, int max_order = kDefaultMaxOrder);

  int order() const { return k_; }
  double delta() const { return delta_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& alphas() const { return alphas_; }
  double sum_alpha() const { return sum_alpha_; }

  double fhat(double xi) const;
  Real fhat_xp(const Real& xi) const;
  Real fhat_xp(double xi, int bits) const { return fhat_xp(Real(xi, bits)); }

  // 2^(k-1) k! / ((pi - delta)^k |xi|^k), the decay envelope of fhat.
  static double decay_bound(int k, double delta, double xi);
  // 2^(k-1) k! / (pi - delta)^k; shared constant between the weight decay
  // envelope and the truncation-bound evaluators.
  static double decay_constant(int k, double delta);

 private:
  // Extended-precision twins of the node/coefficient tables.  The direct
  // exponential-sum formula amplifies coefficient rounding by its own
  // cancellation factor, so the alphas themselves must carry the working
  // precision.
  struct XpTables {
    std::vector<Real> nodes;
    std::vector<Real> alphas;
    std::vector<Real> h;  // complete homogeneous sums of squared pair nodes
  };

  double fhat_series(double u) const;
  double fhat_direct(double u) const;
  Real fhat_direct_xp(const Real& u, const XpTables& t) const;
  Real fhat_series_xp(const Real& u, int bits, const XpTables& t) const;
  const XpTables& tables_xp(int bits) const;

  int k_;
  double delta_;
  std::vector<double> nodes_;   // x_kj, j = 0..k
  std::vector<double> alphas_;  // alpha_kj >= 0
  double sum_alpha_ = 0;
  std::vector<double> pair_sq_;  // squared positive-pair nodes
  std::vector<double> h_;        // complete homogeneous sums of pair_sq_
  double u_safe_ = 0;            // series radius with monotone term decay
  double ln_sum_alpha_ = 0;

  mutable std::mutex xp_mu_;
  mutable std::map<int, std::shared_ptr<const XpTables>> xp_;
};

// Evaluates weight rules with the spline table built once; use this for
// scans instead of the one-shot weight_value.
class WeightEvaluator {
 public:
  WeightEvaluator(const WeightSpec& spec, int n);
  double operator()(double t, int j) const;
  Real xp(double t, int j, int bits) const;
  int order() const { return order_; }
  const WeightSpec& spec() const { return spec_; }

 private:
  WeightSpec spec_;
  int n_;
  int order_ = 0;
  std::shared_ptr<const SplineWeight> spline_;
};

// Coefficient of X(j, .) in the reconstruction at time t (one-shot form).
double weight_value(const WeightSpec& spec, int n, double t, int j);

}  // namespace blr
