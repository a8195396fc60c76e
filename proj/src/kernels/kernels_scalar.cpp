// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <cstddef>

#include "blr/kernels.hpp"

namespace blr::kernels::scalar {

double sum(std::span<const double> a) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    s0 += a[i];
    s1 += a[i + 1];
    s2 += a[i + 2];
    s3 += a[i + 3];
  }
  double tail[4] = {s0, s1, s2, s3};
  for (; i < n; ++i) tail[i & 3] += a[i];
  return (tail[0] + tail[2]) + (tail[1] + tail[3]);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double tail[4] = {s0, s1, s2, s3};
  for (; i < n; ++i) tail[i & 3] += a[i] * b[i];
  return (tail[0] + tail[2]) + (tail[1] + tail[3]);
}

double sum_squares(std::span<const double> a) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    s0 += a[i] * a[i];
    s1 += a[i + 1] * a[i + 1];
    s2 += a[i + 2] * a[i + 2];
    s3 += a[i + 3] * a[i + 3];
  }
  double tail[4] = {s0, s1, s2, s3};
  for (; i < n; ++i) tail[i & 3] += a[i] * a[i];
  return (tail[0] + tail[2]) + (tail[1] + tail[3]);
}

double sum_quads(std::span<const double> a) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const double q0 = a[i] * a[i], q1 = a[i + 1] * a[i + 1];
    const double q2 = a[i + 2] * a[i + 2], q3 = a[i + 3] * a[i + 3];
    s0 += q0 * q0;
    s1 += q1 * q1;
    s2 += q2 * q2;
    s3 += q3 * q3;
  }
  double tail[4] = {s0, s1, s2, s3};
  for (; i < n; ++i) {
    const double q = a[i] * a[i];
    tail[i & 3] += q * q;
  }
  return (tail[0] + tail[2]) + (tail[1] + tail[3]);
}

double sum_abs_pow_3_2(std::span<const double> a) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  const std::size_t n = a.size(), n4 = n & ~std::size_t(3);
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    const double t0 = std::fabs(a[i]), t1 = std::fabs(a[i + 1]);
    const double t2 = std::fabs(a[i + 2]), t3 = std::fabs(a[i + 3]);
    s0 += t0 * std::sqrt(t0);
    s1 += t1 * std::sqrt(t1);
    s2 += t2 * std::sqrt(t2);
    s3 += t3 * std::sqrt(t3);
  }
  double tail[4] = {s0, s1, s2, s3};
  for (; i < n; ++i) {
    const double t = std::fabs(a[i]);
    tail[i & 3] += t * std::sqrt(t);
  }
  return (tail[0] + tail[2]) + (tail[1] + tail[3]);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace blr::kernels::scalar
