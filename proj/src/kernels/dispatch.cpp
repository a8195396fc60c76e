// SPDX-License-Identifier: Apache-2.0
#include "blr/kernels.hpp"

namespace blr::kernels {

namespace {

bool pick_avx2() {
#ifdef BLR_HAVE_AVX2
  return avx2::available();
#else
  return false;
#endif
}

const bool g_use_avx2 = pick_avx2();

}  // namespace

const char* backend() { return g_use_avx2 ? "avx2" : "scalar"; }

#ifdef BLR_HAVE_AVX2
#define BLR_DISPATCH(expr_avx2, expr_scalar) \
  return g_use_avx2 ? (expr_avx2) : (expr_scalar)
#else
#define BLR_DISPATCH(expr_avx2, expr_scalar) return (expr_scalar)
#endif

double sum(std::span<const double> a) { BLR_DISPATCH(avx2::sum(a), scalar::sum(a)); }
double dot(std::span<const double> a, std::span<const double> b) {
  BLR_DISPATCH(avx2::dot(a, b), scalar::dot(a, b));
}
double sum_squares(std::span<const double> a) {
  BLR_DISPATCH(avx2::sum_squares(a), scalar::sum_squares(a));
}
double sum_quads(std::span<const double> a) {
  BLR_DISPATCH(avx2::sum_quads(a), scalar::sum_quads(a));
}
double sum_abs_pow_3_2(std::span<const double> a) {
  BLR_DISPATCH(avx2::sum_abs_pow_3_2(a), scalar::sum_abs_pow_3_2(a));
}

#undef BLR_DISPATCH

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
#ifdef BLR_HAVE_AVX2
  if (g_use_avx2) {
    avx2::axpy(alpha, x, y);
    return;
  }
#endif
  scalar::axpy(alpha, x, y);
}

}  // namespace blr::kernels
