// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "blr/reconstruct.hpp"
#include "blr/spectra.hpp"

namespace blr {

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic per-trial substream: the engine seed mixes (seed, trial), so
// trials can run in any order (or in parallel) and reproduce bit-for-bit.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t trial)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(trial * 0x9e3779b97f4a7c15ULL + 1))) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller on explicitly constructed uniforms: identical output on any
    // standard library.
    std::uint64_t u;
    do {
      u = eng_() >> 11;
    } while (u == 0);
    const double u1 = static_cast<double>(u) * 0x1p-53;
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.141592653589793 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace rng

enum class SimMode { exact_gaussian, spectral };

struct SimConfig {
  std::uint64_t seed = 0;
  int trials = 1;
  // diagonal regularization added to the path covariance; defaults to
  // 1e-12 * R_X(0)
  std::optional<double> jitter;
  SimMode mode = SimMode::exact_gaussian;
  int spectral_modes = 2048;
};

// One realization per row conceptually; stored column-major (per point) so
// the residual reductions stream contiguously.
struct PathEnsemble {
  std::vector<double> points;
  std::vector<std::vector<double>> samples;  // samples[p][trial]
  int trials = 0;
  SimMode mode = SimMode::exact_gaussian;
  std::uint64_t seed = 0;

  int index_of(double point) const;
};

// Draws `cfg.trials` independent zero-mean Gaussian realizations on the given
// points.  Exact mode: joint draw through a Cholesky factor of
// [R(p_i - p_j)] + jitter I.  Spectral mode: midpoint-rule synthesis
// X(t) = sum_k sqrt(2 rho(xi_k) dxi) (A_k cos xi_k t + B_k sin xi_k t).
PathEnsemble sample_paths(const Autocorrelation& a, std::span<const double> points,
                          const SimConfig& cfg);

struct EmpiricalMse {
  double mean = 0;
  double stderr_ = 0;
};

// Mean of |X(t) - sum_j c_j X(j)|^2 over trials with its standard error.
// The ensemble must contain t (at t_index) and every integer of J_n.
EmpiricalMse empirical_mse(const PathEnsemble& e, const CoefficientVector& c, int t_index);

}  // namespace blr
