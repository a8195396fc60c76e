// SPDX-License-Identifier: Apache-2.0
// AVX2 kernel variants.  Compiled with -mavx2 in its own translation unit;
// callers reach it only through the runtime dispatcher.  No FMA: mul+add
// keeps results bitwise-equal to the scalar reference.
#ifdef BLR_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "blr/kernels.hpp"

namespace blr::kernels::avx2 {

bool available() {
#if defined(__GNUC__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

inline double combine(__m256d acc, std::span<const double> a, std::size_t n4) {
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (std::size_t i = n4; i < a.size(); ++i) lanes[i & 3] += a[i];
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

}  // namespace

double sum(std::span<const double> a) {
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(a.data() + i));
  return combine(acc, a, n4);
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a.data() + i),
                                    _mm256_loadu_pd(b.data() + i));
    acc = _mm256_add_pd(acc, p);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (std::size_t i = n4; i < n; ++i) lanes[i & 3] += a[i] * b[i];
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

double sum_squares(std::span<const double> a) {
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(a.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (std::size_t i = n4; i < n; ++i) lanes[i & 3] += a[i] * a[i];
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

double sum_quads(std::span<const double> a) {
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v = _mm256_loadu_pd(a.data() + i);
    const __m256d q = _mm256_mul_pd(v, v);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(q, q));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (std::size_t i = n4; i < n; ++i) {
    const double q = a[i] * a[i];
    lanes[i & 3] += q * q;
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

double sum_abs_pow_3_2(std::span<const double> a) {
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d t = _mm256_andnot_pd(signmask, _mm256_loadu_pd(a.data() + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(t, _mm256_sqrt_pd(t)));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  for (std::size_t i = n4; i < n; ++i) {
    const double t = std::fabs(a[i]);
    lanes[i & 3] += t * std::sqrt(t);
  }
  return (lanes[0] + lanes[2]) + (lanes[1] + lanes[3]);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size(), n4 = n & ~std::size_t(3);
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const __m256d p = _mm256_mul_pd(av, _mm256_loadu_pd(x.data() + i));
    _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), p));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace blr::kernels::avx2

#endif  // BLR_HAVE_AVX2
