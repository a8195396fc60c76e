// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "blr/quadrature.hpp"
#include "blr/real.hpp"

namespace blr {

enum class DensityKind { flat, gauss, pwc, table };

struct DensityNorms {
  double l1 = 0;
  double l2 = 0;
  double linf = 0;
};

// Spectral density of a bandlimited wide-sense-stationary process: a
// nonnegative even function supported on [-delta, delta].  The catalog
// covers a flat level, a truncated Gaussian exp(-xi^2/(2 sigma^2)), a
// piecewise-constant profile, and a tabulated profile with linear
// interpolation.  Values are immutable after construction.
class SpectralDensity {
 public:
  static SpectralDensity flat(double delta, double level, double scale = 1.0);
  static SpectralDensity truncated_gaussian(double delta, double sigma, double scale = 1.0);
  // edges: ascending breakpoints covering the support; levels[i] holds on
  // [edges[i], edges[i+1]).  The profile must be even.
  static SpectralDensity piecewise_constant(double delta, std::vector<double> edges,
                                            std::vector<double> levels, double scale = 1.0);
  // Samples (xi_i, rho_i) with linear interpolation between them; even profile.
  static SpectralDensity tabulated(double delta, std::vector<double> xi,
                                   std::vector<double> rho, double scale = 1.0);

  // {"kind":"flat"|"gauss"|"pwc"|"table", "delta":x, "params":{...}, "scale":s}
  static SpectralDensity from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  double operator()(double xi) const;  // rho(xi); 0 outside [-delta, delta]
  Real eval_xp(const Real& xi) const;

  DensityKind kind() const { return kind_; }
  double delta() const { return delta_; }
  double scale() const { return scale_; }

  DensityNorms norms() const;
  // Rescales so that ||R_X||_{L2(R)} = sqrt(2 pi) ||rho||_{L2} = 1.
  SpectralDensity normalized_unit_ball() const;
  // Infimum of rho over [a, b] (sampled for gauss/table, exact otherwise).
  double min_on(double a, double b) const;

  bool has_closed_form_autocorr() const {
    return kind_ == DensityKind::flat || kind_ == DensityKind::pwc;
  }
  std::string id() const;

  // kind-specific accessors (throw std::logic_error on mismatch)
  double flat_level() const;
  double gauss_sigma() const;
  const std::vector<double>& pwc_edges() const;
  const std::vector<double>& pwc_levels() const;
  const std::vector<double>& table_xi() const;
  const std::vector<double>& table_rho() const;

 private:
  SpectralDensity() = default;
  void validate() const;

  DensityKind kind_ = DensityKind::flat;
  double delta_ = 0;
  double scale_ = 1;
  double level_ = 0;   // flat
  double sigma_ = 1;   // gauss
  std::vector<double> edges_, levels_;  // pwc
  std::vector<double> xi_, rho_;        // table
};

enum class AutocorrMode { automatic, closed_form, quadrature };

// Evaluator for R_X(tau) = integral over [-delta, delta] of cos(tau xi) rho(xi).
// Closed forms serve the flat and piecewise-constant kinds; the Gaussian kind
// integrates by adaptive Gauss-Legendre and the tabulated kind by refined
// trapezoid (documented lower accuracy).
class Autocorrelation {
 public:
  explicit Autocorrelation(SpectralDensity d, AutocorrMode mode = AutocorrMode::automatic,
                           int quadrature_order = 16);

  double operator()(double tau) const;
  // Extended-precision evaluation.  Call with an exactly formed lag (for a
  // lag t - j build Real(t, bits) - j) so no double rounding enters the
  // optimal-path right-hand sides.
  Real xp(const Real& tau) const;
  Real xp(double tau, int bits) const { return xp(Real(tau, bits)); }

  double r0() const { return r0_; }
  const SpectralDensity& density() const { return density_; }
  AutocorrMode mode() const { return mode_; }

 private:
  double eval_closed(double tau) const;
  double eval_quadrature(double tau) const;
  Real eval_closed_xp(const Real& tau) const;

  SpectralDensity density_;
  AutocorrMode mode_;
  quad::AdaptiveOpts quad_opts_;
  double r0_ = 0;
};

}  // namespace blr
