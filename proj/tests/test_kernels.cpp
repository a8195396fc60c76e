// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "blr/kernels.hpp"

using namespace blr;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(eng);
  return v;
}

}  // namespace

TEST_CASE("scalar reductions agree with naive loops") {
  const auto a = random_vec(1001, 7);
  const auto b = random_vec(1001, 8);
  double s = 0, d = 0, sq = 0, q = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i];
    d += a[i] * b[i];
    sq += a[i] * a[i];
    q += a[i] * a[i] * a[i] * a[i];
  }
  CHECK(kernels::scalar::sum(a) == doctest::Approx(s).epsilon(1e-13));
  CHECK(kernels::scalar::dot(a, b) == doctest::Approx(d).epsilon(1e-13));
  CHECK(kernels::scalar::sum_squares(a) == doctest::Approx(sq).epsilon(1e-13));
  CHECK(kernels::scalar::sum_quads(a) == doctest::Approx(q).epsilon(1e-13));
}

TEST_CASE("abs power 3/2 reduction") {
  const std::vector<double> a{-4.0, 1.0, 0.0, 9.0};
  // 8 + 1 + 0 + 27
  CHECK(kernels::scalar::sum_abs_pow_3_2(a) == doctest::Approx(36.0).epsilon(1e-15));
}

TEST_CASE("dispatched backend is bitwise-identical to the scalar reference") {
  INFO("active backend: ", kernels::backend());
  for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(2), std::size_t(3),
                        std::size_t(4), std::size_t(5), std::size_t(7), std::size_t(8),
                        std::size_t(64), std::size_t(1000), std::size_t(4097)}) {
    const auto a = random_vec(n, 100 + n);
    const auto b = random_vec(n, 200 + n);
    CHECK(kernels::sum(a) == kernels::scalar::sum(a));
    CHECK(kernels::dot(a, b) == kernels::scalar::dot(a, b));
    CHECK(kernels::sum_squares(a) == kernels::scalar::sum_squares(a));
    CHECK(kernels::sum_quads(a) == kernels::scalar::sum_quads(a));
    CHECK(kernels::sum_abs_pow_3_2(a) == kernels::scalar::sum_abs_pow_3_2(a));
    std::vector<double> y1 = b, y2 = b;
    kernels::axpy(0.37, a, y1);
    kernels::scalar::axpy(0.37, a, y2);
    CHECK(y1 == y2);
  }
}

#ifdef BLR_HAVE_AVX2
TEST_CASE("avx2 variants match scalar bitwise when available") {
  if (!kernels::avx2::available()) return;
  for (std::size_t n : {std::size_t(1), std::size_t(3), std::size_t(4), std::size_t(6),
                        std::size_t(127), std::size_t(2048)}) {
    const auto a = random_vec(n, 300 + n);
    const auto b = random_vec(n, 400 + n);
    CHECK(kernels::avx2::sum(a) == kernels::scalar::sum(a));
    CHECK(kernels::avx2::dot(a, b) == kernels::scalar::dot(a, b));
    CHECK(kernels::avx2::sum_squares(a) == kernels::scalar::sum_squares(a));
    CHECK(kernels::avx2::sum_quads(a) == kernels::scalar::sum_quads(a));
    CHECK(kernels::avx2::sum_abs_pow_3_2(a) == kernels::scalar::sum_abs_pow_3_2(a));
    std::vector<double> y1 = b, y2 = b;
    kernels::avx2::axpy(-1.25, a, y1);
    kernels::scalar::axpy(-1.25, a, y2);
    CHECK(y1 == y2);
  }
}
#endif
