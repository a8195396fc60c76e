// SPDX-License-Identifier: Apache-2.0
#include "blr/weights.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "blr/errors.hpp"
#include "blr/sinc.hpp"

namespace blr {

namespace {

constexpr double kEps = 2.220446049250313e-16;

double powi(double base, int e) {
  double r = 1.0, b = base;
  for (int m = e; m > 0; m >>= 1) {
    if (m & 1) r *= b;
    b *= b;
  }
  return r;
}

Real powi_xp(const Real& base, int e) { return pow_int(base, e); }

void require_oversampling(double delta) {
  if (!(delta > 0) || !(delta < kPi))
    throw Error("weight construction requires 0 < delta < pi (oversampling)");
}

}  // namespace

WeightSpec WeightSpec::shannon(double delta) {
  WeightSpec s;
  s.kind = WeightKind::plain_sinc;
  s.delta = delta;
  return s;
}

WeightSpec WeightSpec::a1(double delta, std::optional<int> order) {
  WeightSpec s;
  s.kind = WeightKind::jagerman;
  s.delta = delta;
  s.order = order;
  return s;
}

WeightSpec WeightSpec::a2(double delta, std::optional<int> order) {
  WeightSpec s;
  s.kind = WeightKind::spline;
  s.delta = delta;
  s.order = order;
  return s;
}

WeightSpec WeightSpec::custom(std::vector<double> table) {
  WeightSpec s;
  s.kind = WeightKind::custom;
  s.custom_table = std::move(table);
  return s;
}

WeightSpec WeightSpec::from_json(const nlohmann::json& j, double delta) {
  const std::string method = j.at("method").get<std::string>();
  std::optional<int> order;
  if (j.contains("order") && !j["order"].is_null()) order = j["order"].get<int>();
  if (method == "shannon") return shannon(delta);
  if (method == "a1") return a1(delta, order);
  if (method == "a2") return a2(delta, order);
  throw Error("unknown weight method '" + method + "'");
}

std::string WeightSpec::name() const {
  switch (kind) {
    case WeightKind::plain_sinc: return "shannon";
    case WeightKind::jagerman: return "a1";
    case WeightKind::spline: return "a2";
    case WeightKind::custom: return "custom";
  }
  return "?";
}

OrderSelection select_order_a1(int n, double delta) {
  require_oversampling(delta);
  if (n < 1) throw Error("grid half-size must be >= 1");
  OrderSelection sel;
  const double raw = n * (kPi - delta) / std::numbers::e;
  sel.m = std::max(1, static_cast<int>(std::floor(raw)));
  sel.below_threshold = n < std::numbers::e / (kPi - delta);
  return sel;
}

OrderSelection select_order_a2(int n, double delta) {
  require_oversampling(delta);
  if (n < 1) throw Error("grid half-size must be >= 1");
  OrderSelection sel;
  const double raw = n * (kPi - delta) / 2.0;
  sel.m = std::max(1, static_cast<int>(std::floor(raw)));
  sel.below_threshold = n <= 2.0 / (kPi - delta);
  return sel;
}

double jagerman_weight(int m, double delta, double t) {
  require_oversampling(delta);
  if (m < 1) throw Error("jagerman order must be >= 1");
  return sinc(t) * powi(sinc((kPi - delta) * t / (kPi * m)), m);
}

Real jagerman_weight_xp(int m, double delta, const Real& t) {
  require_oversampling(delta);
  if (m < 1) throw Error("jagerman order must be >= 1");
  const int bits = t.bits();
  // sinc((pi-delta) t/(pi m)) with the pi of the sinc folded in: the sine
  // argument collapses to (pi-delta) t / m
  const Real arg = Real(kPi - delta, bits) * t / double(m);
  Real s(1.0, bits);
  if (!arg.is_zero()) s = sin(arg) / arg;
  return sinc_xp(t) * powi_xp(s, m);
}

// ---------------------------------------------------------------------------

SplineWeight::SplineWeight(int k, double delta, int max_order) : k_(k), delta_(delta) {
  require_oversampling(delta);
  if (k < 1) throw Error("spline order must be >= 1");
  if (k > max_order)
    throw OrderTooLarge("spline order " + std::to_string(k) + " exceeds the stability limit " +
                        std::to_string(max_order));

  nodes_.resize(k + 1);
  for (int j = 0; j <= k; ++j) nodes_[j] = std::cos(j * kPi / k);

  // Divided-difference weights 1/omega'(x_j); signs alternate with j on the
  // strictly decreasing Chebyshev extreme points.
  std::vector<double> w(k + 1);
  for (int j = 0; j <= k; ++j) {
    double prod = 1.0;
    for (int i = 0; i <= k; ++i)
      if (i != j) prod *= nodes_[j] - nodes_[i];
    w[j] = 1.0 / prod;
  }
  double abs_sum = 0;
  for (int j = 0; j <= k; ++j) {
    if (w[j] == 0 || ((j & 1) ? -w[j] : w[j]) < 0)
      throw Error("divided-difference weights lost their sign pattern");
    abs_sum += std::fabs(w[j]);
  }
  sum_alpha_ = std::sqrt(2.0 * kPi) * powi(2.0, k - 1) * std::tgamma(double(k) + 1.0);
  alphas_.resize(k + 1);
  for (int j = 0; j <= k; ++j) alphas_[j] = std::fabs(w[j]) / abs_sum * sum_alpha_;
  ln_sum_alpha_ = 0.5 * std::log(2.0 * kPi) + (k - 1) * std::log(2.0) + std::lgamma(double(k) + 1.0);

  // moment conditions must hold to near roundoff
  for (int l = 0; l < k_; ++l) {
    double resid = 0;
    for (int j = 0; j <= k_; ++j)
      resid += (((k_ - j) & 1) ? -alphas_[j] : alphas_[j]) * powi(nodes_[j], l);
    if (std::fabs(resid) > 1e-10 * sum_alpha_)
      throw Error("spline moment condition violated at order " + std::to_string(l));
  }

  // Positive-pair squared nodes: j and k-j carry opposite node signs, so the
  // even-series coefficients are complete homogeneous sums of these squares.
  for (int j = 0; 2 * j < k; ++j) pair_sq_.push_back(nodes_[j] * nodes_[j]);
  const int terms = 72;
  h_.assign(terms + 1, 0.0);
  h_[0] = 1.0;
  for (double y : pair_sq_) {
    for (int s = 1; s <= terms; ++s) h_[s] += y * h_[s - 1];
  }
  const double h1 = h_[1];
  u_safe_ = std::sqrt(0.5 * (k + 1.0) * (k + 2.0) / h1);
}

double SplineWeight::fhat_series(double u) const {
  // fhat = sum_s (-1)^s u^(2s) h_s k!/(k+2s)!, term ratio <= 1/2 inside u_safe
  double factor = 1.0;
  double total = 1.0;
  const double u2 = u * u;
  for (std::size_t s = 1; s < h_.size(); ++s) {
    factor *= u2 / ((k_ + 2.0 * s - 1.0) * (k_ + 2.0 * s));
    const double term = h_[s] * factor;
    total += (s & 1) ? -term : term;
    if (term < 0.25 * kEps * std::fabs(total)) break;
  }
  return total;
}

double SplineWeight::fhat_direct(double u) const {
  std::complex<double> acc(0.0, 0.0);
  for (int j = 0; j <= k_; ++j) {
    const double a = ((k_ - j) & 1) ? -alphas_[j] : alphas_[j];
    acc += a * std::complex<double>(std::cos(nodes_[j] * u), -std::sin(nodes_[j] * u));
  }
  // divide by sqrt(2 pi) (i u)^k
  const double uk = powi(u, k_);
  std::complex<double> denom;
  switch (k_ & 3) {
    case 0: denom = {uk, 0}; break;
    case 1: denom = {0, uk}; break;
    case 2: denom = {-uk, 0}; break;
    default: denom = {0, -uk}; break;
  }
  const std::complex<double> val = acc / (std::sqrt(2.0 * kPi) * denom);
  if (std::fabs(val.imag()) > 1e-10 * std::max(1.0, std::fabs(val.real())))
    throw Error("spline fhat lost its real symmetry");
  return val.real();
}

double SplineWeight::decay_constant(int k, double delta) {
  require_oversampling(delta);
  return std::exp((k - 1) * std::log(2.0) + std::lgamma(double(k) + 1.0) -
                  k * std::log(kPi - delta));
}

double SplineWeight::decay_bound(int k, double delta, double xi) {
  return std::exp((k - 1) * std::log(2.0) + std::lgamma(double(k) + 1.0) -
                  k * std::log((kPi - delta) * std::fabs(xi)));
}

double SplineWeight::fhat(double xi) const {
  if (xi == 0.0) return 1.0;
  const double u = (kPi - delta_) * xi;
  const double au = std::fabs(u);
  if (au <= u_safe_) return fhat_series(au);
  // absolute error targets scale with the decay envelope once it drops
  // below one
  const double ln_env = ln_sum_alpha_ - 0.5 * std::log(2.0 * kPi) - k_ * std::log(au);
  const double tol = 1e-13 * std::exp(std::min(0.0, ln_env));
  const double direct_err = (k_ + 1) * kEps * std::exp(ln_env);
  if (direct_err <= tol) return fhat_direct(u);
  return fhat_xp(xi, 256).to_double();
}

const SplineWeight::XpTables& SplineWeight::tables_xp(int bits) const {
  std::lock_guard<std::mutex> lock(xp_mu_);
  auto it = xp_.find(bits);
  if (it == xp_.end()) {
    auto t = std::make_shared<XpTables>();
    const Real pib = Real::pi(bits);
    t->nodes.reserve(k_ + 1);
    for (int j = 0; j <= k_; ++j) t->nodes.push_back(cos(double(j) * pib / double(k_)));

    // divided-difference weights, normalized against sqrt(2 pi) 2^(k-1) k!
    std::vector<Real> w;
    w.reserve(k_ + 1);
    Real abs_sum(0.0, bits);
    for (int j = 0; j <= k_; ++j) {
      Real prod(1.0, bits);
      for (int i = 0; i <= k_; ++i)
        if (i != j) prod *= t->nodes[j] - t->nodes[i];
      w.push_back(1.0 / prod);
      abs_sum += abs(w.back());
    }
    Real fact(1.0, bits);
    for (int i = 2; i <= k_; ++i) fact *= double(i);
    const Real total = sqrt(2.0 * pib) * ldexp2(fact, k_ - 1);
    t->alphas.reserve(k_ + 1);
    for (int j = 0; j <= k_; ++j) t->alphas.push_back(abs(w[j]) / abs_sum * total);

    const int terms = bits + 64;
    t->h.assign(terms + 1, Real(0.0, bits));
    t->h[0] = Real(1.0, bits);
    for (int p = 0; 2 * p < k_; ++p) {
      const Real y = t->nodes[p] * t->nodes[p];
      for (int s = 1; s <= terms; ++s) t->h[s] += y * t->h[s - 1];
    }
    it = xp_.emplace(bits, std::move(t)).first;
  }
  return *it->second;
}

Real SplineWeight::fhat_series_xp(const Real& u, int bits, const XpTables& t) const {
  Real factor(1.0, bits);
  Real total(1.0, bits);
  const Real u2 = u * u;
  const Real cutoff = ldexp2(Real(1.0, bits), -bits - 8);
  for (std::size_t s = 1; s < t.h.size(); ++s) {
    factor *= u2 / ((k_ + 2.0 * s - 1.0) * (k_ + 2.0 * s));
    const Real term = t.h[s] * factor;
    if ((s & 1) != 0)
      total -= term;
    else
      total += term;
    if (term < cutoff * abs(total)) break;
  }
  return total;
}

Real SplineWeight::fhat_direct_xp(const Real& u, const XpTables& t) const {
  const int bits = u.bits();
  Real re(0.0, bits), im(0.0, bits);
  for (int j = 0; j <= k_; ++j) {
    const Real arg = t.nodes[j] * u;
    if ((k_ - j) & 1) {
      re -= t.alphas[j] * cos(arg);
      im += t.alphas[j] * sin(arg);
    } else {
      re += t.alphas[j] * cos(arg);
      im -= t.alphas[j] * sin(arg);
    }
  }
  const Real uk = powi_xp(u, k_);
  const Real norm = sqrt(2.0 * Real::pi(bits)) * uk;
  // 1/(i^k): rotate (re, im) by (-i)^k and keep the real part
  Real val(bits);
  switch (k_ & 3) {
    case 0: val = re; break;
    case 1: val = im; break;
    case 2: val = -re; break;
    default: val = -im; break;
  }
  return val / norm;
}

Real SplineWeight::fhat_xp(const Real& xi) const {
  const int bits = std::max(128, xi.bits());  // headroom for the cancellation
  if (xi.is_zero()) return Real(1.0, bits);
  const XpTables& t = tables_xp(bits);
  const Real u = Real(kPi - delta_, bits) * xi.rounded_to(bits);
  if (abs(u) <= Real(u_safe_, bits)) return fhat_series_xp(abs(u), bits, t);
  return fhat_direct_xp(u, t);
}

// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<const SplineWeight> shared_spline(int k, double delta) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::shared_ptr<const SplineWeight>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, delta);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_shared<SplineWeight>(k, delta)).first;
  return it->second;
}

}  // namespace

WeightEvaluator::WeightEvaluator(const WeightSpec& spec, int n) : spec_(spec), n_(n) {
  switch (spec_.kind) {
    case WeightKind::jagerman:
      order_ = spec_.order.value_or(select_order_a1(n, spec_.delta).m);
      break;
    case WeightKind::spline:
      order_ = spec_.order.value_or(select_order_a2(n, spec_.delta).m);
      spline_ = shared_spline(order_, spec_.delta);
      break;
    case WeightKind::custom:
      if (static_cast<int>(spec_.custom_table.size()) != 2 * n)
        throw Error("custom weight table must have 2n entries");
      break;
    default:
      break;
  }
}

double WeightEvaluator::operator()(double t, int j) const {
  const double u = t - j;
  switch (spec_.kind) {
    case WeightKind::plain_sinc:
      return sinc(u);
    case WeightKind::jagerman:
      return jagerman_weight(order_, spec_.delta, u);
    case WeightKind::spline:
      return sinc(u) * spline_->fhat(u);
    case WeightKind::custom:
      return spec_.custom_table[static_cast<std::size_t>(j + n_ - 1)];
  }
  return 0.0;
}

Real WeightEvaluator::xp(double t, int j, int bits) const {
  const Real u = Real(t, bits) - double(j);  // exact lag at working precision
  switch (spec_.kind) {
    case WeightKind::plain_sinc:
      return sinc_xp(u);
    case WeightKind::jagerman:
      return jagerman_weight_xp(order_, spec_.delta, u);
    case WeightKind::spline:
      return sinc_xp(u) * spline_->fhat_xp(u).rounded_to(bits);
    case WeightKind::custom:
      return Real(spec_.custom_table[static_cast<std::size_t>(j + n_ - 1)], bits);
  }
  return Real(0.0, bits);
}

double weight_value(const WeightSpec& spec, int n, double t, int j) {
  if (j < -n + 1 || j > n) throw Error("j outside J_n");
  return WeightEvaluator(spec, n)(t, j);
}

}  // namespace blr
