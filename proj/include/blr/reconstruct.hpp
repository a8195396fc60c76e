// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blr/kernelmat.hpp"
#include "blr/spectra.hpp"
#include "blr/weights.hpp"

namespace blr {

// Reconstruction coefficients c_j, j in J_n, for one evaluation time t.
// The optimal solver (and any deep evaluation) carries extended-precision
// values alongside the double copies; precision_bits records the lane.
struct CoefficientVector {
  double t = 0;
  int n = 1;
  std::vector<double> values;
  std::optional<std::vector<Real>> xp;
  std::string method;
  int precision_bits = 53;
  bool extrapolation = false;  // t outside [0, 1]

  int index_of(int j) const { return j + n - 1; }
};

CoefficientVector coefficients(const WeightSpec& spec, int n, double t);
// Same rule evaluated in extended precision (used where the reconstruction
// error sits below double roundoff).
CoefficientVector coefficients_xp(const WeightSpec& spec, int n, double t, int bits);

// Optimal linear coefficients: c(t) = (R_X(t-j))_j (R_X[J_n])^{-1}.
// At integer t in J_n the solution is the exact unit vector.
CoefficientVector optimal_coefficients(const Autocorrelation& a, int n, double t,
                                       const PrecisionConfig& p = {});

// Deterministic mean-square error of the rule c at its time t:
//   R(0) - 2 sum_j c_j R(t-j) + sum_{j,k} c_j c_k R(j-k).
// Computed at c.precision_bits; tiny negative roundoff (> -1e-12 R(0)) clamps
// to zero, anything more negative throws NegativeMse.
double mse(const Autocorrelation& a, const CoefficientVector& c);

// Pointwise optimal rmse (R(0) - b G^{-1} b')^{1/2} via one Cholesky forward
// sweep; equals sqrt(mse(optimal_coefficients)) to working precision.
double intrinsic_error(const Autocorrelation& a, int n, double t,
                       const PrecisionConfig& p = {});

struct ErrorPoint {
  double t = 0;
  double rmse = 0;
};

struct ErrorReport {
  std::vector<ErrorPoint> per_point;
  double sup_rmse = 0;
  double argmax_t = 0;
  std::string method;
  int n = 0;
  double delta = 0;
  std::string density_id;
  int precision_bits = 53;

  // columns: t,rmse,method,n,delta,density_id,precision_bits
  std::string to_csv() const;
};

// 99 interior hundredths plus 1e-6 insets at both endpoints (101 points).
std::vector<double> default_t_grid();

struct ScanOptions {
  PrecisionConfig precision{};
  // evaluate the weight rule itself in extended precision (deep error levels)
  bool xp_weights = false;
};

ErrorReport sup_error_scan(const WeightSpec& spec, const Autocorrelation& a, int n,
                           std::span<const double> grid, const ScanOptions& opts = {});
ErrorReport sup_error_scan_optimal(const Autocorrelation& a, int n,
                                   std::span<const double> grid,
                                   const PrecisionConfig& p = {});

}  // namespace blr
