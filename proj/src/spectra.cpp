// SPDX-License-Identifier: Apache-2.0
#include "blr/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "blr/errors.hpp"
#include "blr/sinc.hpp"

namespace blr {

namespace {

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

SpectralDensity SpectralDensity::flat(double delta, double level, double scale) {
  SpectralDensity d;
  d.kind_ = DensityKind::flat;
  d.delta_ = delta;
  d.level_ = level;
  d.scale_ = scale;
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::truncated_gaussian(double delta, double sigma, double scale) {
  SpectralDensity d;
  d.kind_ = DensityKind::gauss;
  d.delta_ = delta;
  d.sigma_ = sigma;
  d.scale_ = scale;
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::piecewise_constant(double delta, std::vector<double> edges,
                                                    std::vector<double> levels, double scale) {
  SpectralDensity d;
  d.kind_ = DensityKind::pwc;
  d.delta_ = delta;
  d.edges_ = std::move(edges);
  d.levels_ = std::move(levels);
  d.scale_ = scale;
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::tabulated(double delta, std::vector<double> xi,
                                           std::vector<double> rho, double scale) {
  SpectralDensity d;
  d.kind_ = DensityKind::table;
  d.delta_ = delta;
  d.xi_ = std::move(xi);
  d.rho_ = std::move(rho);
  d.scale_ = scale;
  d.validate();
  return d;
}

void SpectralDensity::validate() const {
  if (!(delta_ > 0) || delta_ > kPi)
    throw InvalidDensity("bandwidth delta must lie in (0, pi], got " + fmt_g(delta_));
  if (!(scale_ >= 0)) throw InvalidDensity("scale must be nonnegative");
  switch (kind_) {
    case DensityKind::flat:
      if (level_ < 0) throw InvalidDensity("flat level must be nonnegative");
      break;
    case DensityKind::gauss:
      if (!(sigma_ > 0)) throw InvalidDensity("gauss sigma must be positive");
      break;
    case DensityKind::pwc: {
      if (edges_.size() < 2 || levels_.size() + 1 != edges_.size())
        throw InvalidDensity("pwc needs ascending edges and one level per cell");
      if (!std::is_sorted(edges_.begin(), edges_.end()))
        throw InvalidDensity("pwc edges must be ascending");
      if (edges_.front() < -delta_ - 1e-12 || edges_.back() > delta_ + 1e-12)
        throw InvalidDensity("pwc support must lie inside [-delta, delta]");
      double linf = 0;
      for (double c : levels_) {
        if (c < 0) throw InvalidDensity("pwc levels must be nonnegative");
        linf = std::max(linf, c);
      }
      for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        const double mid = 0.5 * (edges_[i] + edges_[i + 1]);
        if (std::fabs((*this)(mid) - (*this)(-mid)) > 1e-12 * (linf * scale_ + 1e-300))
          throw InvalidDensity("pwc profile must be even");
      }
      break;
    }
    case DensityKind::table: {
      if (xi_.size() < 2 || xi_.size() != rho_.size())
        throw InvalidDensity("table needs matching xi/rho samples");
      if (!std::is_sorted(xi_.begin(), xi_.end()))
        throw InvalidDensity("table xi must be ascending");
      if (xi_.front() < -delta_ - 1e-12 || xi_.back() > delta_ + 1e-12)
        throw InvalidDensity("table support must lie inside [-delta, delta]");
      double linf = 0;
      for (double r : rho_) {
        if (r < 0) throw InvalidDensity("table rho must be nonnegative");
        linf = std::max(linf, r);
      }
      for (std::size_t i = 0; i + 1 < xi_.size(); ++i) {
        const double mid = 0.5 * (xi_[i] + xi_[i + 1]);
        if (std::fabs((*this)(mid) - (*this)(-mid)) > 1e-10 * (linf * scale_ + 1e-300))
          throw InvalidDensity("table profile must be even");
      }
      break;
    }
  }
}

double SpectralDensity::operator()(double xi) const {
  if (std::fabs(xi) > delta_) return 0.0;
  switch (kind_) {
    case DensityKind::flat:
      return scale_ * level_;
    case DensityKind::gauss:
      return scale_ * std::exp(-xi * xi / (2.0 * sigma_ * sigma_));
    case DensityKind::pwc: {
      if (xi < edges_.front() || xi > edges_.back()) return 0.0;
      auto it = std::upper_bound(edges_.begin(), edges_.end(), xi);
      std::size_t cell = static_cast<std::size_t>(it - edges_.begin());
      if (cell == 0) return scale_ * levels_.front();
      if (cell >= edges_.size()) return scale_ * levels_.back();
      return scale_ * levels_[cell - 1];
    }
    case DensityKind::table: {
      if (xi < xi_.front() || xi > xi_.back()) return 0.0;
      auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
      std::size_t hi = static_cast<std::size_t>(it - xi_.begin());
      if (hi == 0) return scale_ * rho_.front();
      if (hi >= xi_.size()) return scale_ * rho_.back();
      const double x0 = xi_[hi - 1], x1 = xi_[hi];
      const double w = (xi - x0) / (x1 - x0);
      return scale_ * ((1.0 - w) * rho_[hi - 1] + w * rho_[hi]);
    }
  }
  return 0.0;
}

Real SpectralDensity::eval_xp(const Real& xi) const {
  const int bits = xi.bits();
  switch (kind_) {
    case DensityKind::gauss: {
      const Real s(sigma_, bits);
      return Real(scale_, bits) * exp(-(xi * xi) / (2.0 * s * s));
    }
    default:
      // piecewise kinds carry no extra precision beyond their double samples
      return Real((*this)(xi.to_double()), bits);
  }
}

DensityNorms SpectralDensity::norms() const {
  DensityNorms n;
  switch (kind_) {
    case DensityKind::flat: {
      const double c = scale_ * level_;
      n.l1 = 2.0 * delta_ * c;
      n.l2 = c * std::sqrt(2.0 * delta_);
      n.linf = c;
      break;
    }
    case DensityKind::gauss: {
      n.l1 = quad::adaptive_gl([this](double x) { return (*this)(x); }, -delta_, delta_);
      n.l2 = std::sqrt(quad::adaptive_gl(
          [this](double x) { double v = (*this)(x); return v * v; }, -delta_, delta_));
      n.linf = scale_;
      break;
    }
    case DensityKind::pwc: {
      double l1 = 0, l2sq = 0, linf = 0;
      for (std::size_t i = 0; i < levels_.size(); ++i) {
        const double len = edges_[i + 1] - edges_[i];
        const double c = scale_ * levels_[i];
        l1 += c * len;
        l2sq += c * c * len;
        linf = std::max(linf, c);
      }
      n.l1 = l1;
      n.l2 = std::sqrt(l2sq);
      n.linf = linf;
      break;
    }
    case DensityKind::table: {
      double l1 = 0, l2sq = 0, linf = 0;
      for (std::size_t i = 0; i + 1 < xi_.size(); ++i) {
        const double h = xi_[i + 1] - xi_[i];
        const double f0 = scale_ * rho_[i], f1 = scale_ * rho_[i + 1];
        l1 += 0.5 * (f0 + f1) * h;
        // exact integral of the linear interpolant squared
        l2sq += (f0 * f0 + f0 * f1 + f1 * f1) / 3.0 * h;
        linf = std::max({linf, f0, f1});
      }
      n.l1 = l1;
      n.l2 = std::sqrt(l2sq);
      n.linf = linf;
      break;
    }
  }
  return n;
}

SpectralDensity SpectralDensity::normalized_unit_ball() const {
  const double l2 = norms().l2;
  if (!(l2 > 0)) throw DegenerateDensity("cannot normalize a density with zero L2 norm");
  SpectralDensity d = *this;
  d.scale_ = scale_ / (std::sqrt(2.0 * kPi) * l2);
  return d;
}

double SpectralDensity::min_on(double a, double b) const {
  if (!(a < b) || a < -delta_ - 1e-12 || b > delta_ + 1e-12)
    throw BadInterval("interval must satisfy a < b inside [-delta, delta]");
  switch (kind_) {
    case DensityKind::flat:
      return scale_ * level_;
    case DensityKind::gauss: {
      const double edge = std::max(std::fabs(a), std::fabs(b));
      return (*this)(edge);
    }
    default: {
      // sample finely; piecewise kinds have finitely many features
      double m = (*this)(a);
      const int steps = 4096;
      for (int i = 1; i <= steps; ++i) m = std::min(m, (*this)(a + (b - a) * i / steps));
      return m;
    }
  }
}

std::string SpectralDensity::id() const {
  switch (kind_) {
    case DensityKind::flat:
      return "flat(delta=" + fmt_g(delta_) + ";level=" + fmt_g(level_) +
             ";scale=" + fmt_g(scale_) + ")";
    case DensityKind::gauss:
      return "gauss(delta=" + fmt_g(delta_) + ";sigma=" + fmt_g(sigma_) +
             ";scale=" + fmt_g(scale_) + ")";
    case DensityKind::pwc:
      return "pwc(delta=" + fmt_g(delta_) + ";cells=" + std::to_string(levels_.size()) +
             ";scale=" + fmt_g(scale_) + ")";
    case DensityKind::table:
      return "table(delta=" + fmt_g(delta_) + ";samples=" + std::to_string(xi_.size()) +
             ";scale=" + fmt_g(scale_) + ")";
  }
  return "?";
}

double SpectralDensity::flat_level() const {
  if (kind_ != DensityKind::flat) throw std::logic_error("not a flat density");
  return level_;
}
double SpectralDensity::gauss_sigma() const {
  if (kind_ != DensityKind::gauss) throw std::logic_error("not a gauss density");
  return sigma_;
}
const std::vector<double>& SpectralDensity::pwc_edges() const {
  if (kind_ != DensityKind::pwc) throw std::logic_error("not a pwc density");
  return edges_;
}
const std::vector<double>& SpectralDensity::pwc_levels() const {
  if (kind_ != DensityKind::pwc) throw std::logic_error("not a pwc density");
  return levels_;
}
const std::vector<double>& SpectralDensity::table_xi() const {
  if (kind_ != DensityKind::table) throw std::logic_error("not a table density");
  return xi_;
}
const std::vector<double>& SpectralDensity::table_rho() const {
  if (kind_ != DensityKind::table) throw std::logic_error("not a table density");
  return rho_;
}

SpectralDensity SpectralDensity::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double delta = j.at("delta").get<double>();
  const double scale = j.value("scale", 1.0);
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  if (kind == "flat") return flat(delta, params.value("level", 1.0 / (2.0 * kPi)), scale);
  if (kind == "gauss") return truncated_gaussian(delta, params.value("sigma", 1.0), scale);
  if (kind == "pwc")
    return piecewise_constant(delta, params.at("edges").get<std::vector<double>>(),
                              params.at("levels").get<std::vector<double>>(), scale);
  if (kind == "table")
    return tabulated(delta, params.at("xi").get<std::vector<double>>(),
                     params.at("rho").get<std::vector<double>>(), scale);
  throw InvalidDensity("unknown density kind '" + kind + "'");
}

nlohmann::json SpectralDensity::to_json() const {
  nlohmann::json j;
  j["delta"] = delta_;
  j["scale"] = scale_;
  switch (kind_) {
    case DensityKind::flat:
      j["kind"] = "flat";
      j["params"] = {{"level", level_}};
      break;
    case DensityKind::gauss:
      j["kind"] = "gauss";
      j["params"] = {{"sigma", sigma_}};
      break;
    case DensityKind::pwc:
      j["kind"] = "pwc";
      j["params"] = {{"edges", edges_}, {"levels", levels_}};
      break;
    case DensityKind::table:
      j["kind"] = "table";
      j["params"] = {{"xi", xi_}, {"rho", rho_}};
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------

Autocorrelation::Autocorrelation(SpectralDensity d, AutocorrMode mode, int quadrature_order)
    : density_(std::move(d)), mode_(mode) {
  quad_opts_.initial_order = std::max(4, quadrature_order);
  if (mode_ == AutocorrMode::automatic)
    mode_ = density_.has_closed_form_autocorr() ? AutocorrMode::closed_form
                                                : AutocorrMode::quadrature;
  if (mode_ == AutocorrMode::closed_form && !density_.has_closed_form_autocorr())
    throw InvalidDensity("no closed-form autocorrelation for " + density_.id());
  r0_ = (*this)(0.0);
}

double Autocorrelation::eval_closed(double tau) const {
  const double delta = density_.delta();
  switch (density_.kind()) {
    case DensityKind::flat: {
      const double c = density_.scale() * density_.flat_level();
      // 2 c sin(delta tau)/tau, routed through the kernel evaluator so the
      // delta == pi and tau -> 0 cases stay exact.
      return 2.0 * kPi * c * kd_value(delta, tau);
    }
    case DensityKind::pwc: {
      const auto& e = density_.pwc_edges();
      const auto& c = density_.pwc_levels();
      if (tau == 0.0) {
        double acc = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
          acc += density_.scale() * c[i] * (e[i + 1] - e[i]);
        return acc;
      }
      double acc = 0;
      for (std::size_t i = 0; i < c.size(); ++i)
        acc += density_.scale() * c[i] * (std::sin(tau * e[i + 1]) - std::sin(tau * e[i]));
      return acc / tau;
    }
    default:
      throw std::logic_error("closed form not available");
  }
}

double Autocorrelation::eval_quadrature(double tau) const {
  const double delta = density_.delta();
  if (density_.kind() == DensityKind::table) {
    // refined trapezoid on the sample grid; the interpolant is linear so the
    // only refinement driver is the cos(tau xi) factor
    const auto& xs = density_.table_xi();
    double acc = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double a = xs[i], b = xs[i + 1];
      const int sub = 1 + static_cast<int>(std::ceil(std::fabs(tau) * (b - a) / 0.05));
      double prev = std::cos(tau * a) * density_(a);
      for (int s = 1; s <= sub; ++s) {
        const double x = a + (b - a) * s / sub;
        const double cur = std::cos(tau * x) * density_(x);
        acc += 0.5 * (prev + cur) * (b - a) / sub;
        prev = cur;
      }
    }
    return acc;
  }
  // even integrand: integrate over [0, delta] and double
  return 2.0 * quad::adaptive_gl(
                   [this, tau](double x) { return std::cos(tau * x) * density_(x); }, 0.0,
                   delta, quad_opts_);
}

double Autocorrelation::operator()(double tau) const {
  return mode_ == AutocorrMode::closed_form ? eval_closed(tau) : eval_quadrature(tau);
}

Real Autocorrelation::eval_closed_xp(const Real& tau) const {
  const int bits = tau.bits();
  const double delta = density_.delta();
  switch (density_.kind()) {
    case DensityKind::flat: {
      const double c = density_.scale() * density_.flat_level();
      return 2.0 * kPi * c * kd_value_xp(delta, tau);
    }
    case DensityKind::pwc: {
      const auto& e = density_.pwc_edges();
      const auto& c = density_.pwc_levels();
      Real acc(0.0, bits);
      if (tau.is_zero()) {
        for (std::size_t i = 0; i < c.size(); ++i)
          acc += Real(density_.scale() * c[i], bits) * (Real(e[i + 1], bits) - Real(e[i], bits));
        return acc;
      }
      for (std::size_t i = 0; i < c.size(); ++i)
        acc += Real(density_.scale() * c[i], bits) *
               (sin(tau * Real(e[i + 1], bits)) - sin(tau * Real(e[i], bits)));
      return acc / tau;
    }
    default:
      throw std::logic_error("closed form not available");
  }
}

Real Autocorrelation::xp(const Real& tau) const {
  const int bits = tau.bits();
  if (bits <= 53) return Real((*this)(tau.to_double()), bits);
  if (mode_ == AutocorrMode::closed_form) return eval_closed_xp(tau);
  if (density_.kind() == DensityKind::table) return Real((*this)(tau.to_double()), bits);
  const Real two(2.0, bits);
  return two * quad::adaptive_gl_xp(
                   [this, &tau](const Real& x) { return cos(tau * x) * density_.eval_xp(x); },
                   0.0, density_.delta(), bits, quad_opts_);
}

}  // namespace blr
