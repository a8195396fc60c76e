// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "blr/errors.hpp"
#include "blr/real.hpp"
#include "blr/sinc.hpp"
#include "blr/spectra.hpp"

namespace blr {

// Uniform sample grid J_n = {-n+1, ..., n} (2n consecutive integers).
struct SampleGrid {
  int n = 1;
  int size() const { return 2 * n; }
  int point(int i) const { return -n + 1 + i; }     // i = 0..2n-1
  int index_of(int j) const { return j + n - 1; }   // inverse of point()
  bool contains(int j) const { return j >= -n + 1 && j <= n; }
};

struct PrecisionConfig {
  int bits = 256;                  // significand bits, >= 53
  bool fallback_to_native = false; // bits == 53 may use hardware doubles
};

template <class T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, const T& init = T()) : n_(n), a_(std::size_t(n) * n, init) {}
  int dim() const { return n_; }
  T& at(int i, int j) { return a_[std::size_t(i) * n_ + j]; }
  const T& at(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }

 private:
  int n_ = 0;
  std::vector<T> a_;
};

// Gram matrix on a sample grid.  Translation invariance makes it Toeplitz;
// assembly evaluates one kernel value per distinct lag.
struct GramMatrix {
  SymMatrix<Real> entries;
  int precision_bits = 53;
  int grid_n = 0;
  std::string source;

  int dim() const { return entries.dim(); }
};

// sin(delta (x-y)) / (pi (x-y)) with the removable singularity at x == y.
double kd_kernel(double delta, double x, double y);

// Assembles a Gram matrix from a translation-invariant pair evaluator; the
// evaluator is invoked once per distinct lag.
GramMatrix assemble(const std::function<Real(double, double)>& kernel, SampleGrid grid,
                    int bits, std::string source);
GramMatrix assemble_kd(double delta, SampleGrid grid, const PrecisionConfig& p = {});
GramMatrix assemble_autocorr(const Autocorrelation& a, SampleGrid grid,
                             const PrecisionConfig& p = {});

// Spectral (2-norm) condition number via a Jacobi eigensolve at p.bits.
// Throws NotPositiveDefinite when the smallest eigenvalue is <= 0 at working
// precision.
double condition_number(const GramMatrix& g, const PrecisionConfig& p = {});

// Solves g x = rhs by Cholesky at p.bits.  Throws NotPositiveDefinite on a
// nonpositive pivot (signal that higher precision is required).
std::vector<Real> solve_spd(const GramMatrix& g, std::span<const Real> rhs,
                            const PrecisionConfig& p = {});

// Cholesky factorization retained across many right-hand sides (t-grid scans).
class SpdFactor {
 public:
  SpdFactor(const GramMatrix& g, const PrecisionConfig& p);
  std::vector<Real> solve(std::span<const Real> rhs) const;
  // Forward substitution only: y with L y = rhs (so |y|^2 = rhs' G^{-1} rhs).
  std::vector<Real> forward(std::span<const Real> rhs) const;
  int bits() const { return bits_; }
  int dim() const { return l_.dim(); }

 private:
  SymMatrix<Real> l_;
  int bits_;
};

// Full-precision CSV dump (row-major) for debugging.
std::string to_csv(const GramMatrix& g);

// --- generic dense routines (shared by the double and extended lanes) ---

// Cholesky in place (lower triangle); returns false on a nonpositive pivot.
template <class T>
bool cholesky_in_place(SymMatrix<T>& a) {
  const int n = a.dim();
  for (int j = 0; j < n; ++j) {
    T d = a.at(j, j);
    for (int k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
    if (!(d > 0.0)) return false;
    const T root = sqrt(d);
    a.at(j, j) = root;
    for (int i = j + 1; i < n; ++i) {
      T s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
      a.at(i, j) = s / root;
    }
  }
  return true;
}

inline bool cholesky_in_place(SymMatrix<double>& a) {
  const int n = a.dim();
  for (int j = 0; j < n; ++j) {
    double d = a.at(j, j);
    for (int k = 0; k < j; ++k) d -= a.at(j, k) * a.at(j, k);
    if (!(d > 0.0)) return false;
    const double root = std::sqrt(d);
    a.at(j, j) = root;
    for (int i = j + 1; i < n; ++i) {
      double s = a.at(i, j);
      for (int k = 0; k < j; ++k) s -= a.at(i, k) * a.at(j, k);
      a.at(i, j) = s / root;
    }
  }
  return true;
}

// Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method.
// Dimension stays tiny here, so simplicity and precision-agnostic code win
// over performance.
std::vector<Real> jacobi_eigenvalues(SymMatrix<Real> a, int max_sweeps = 64);

}  // namespace blr
