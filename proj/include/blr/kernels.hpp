// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

namespace blr::kernels {

// Double-precision array kernels used by the Monte Carlo reductions and the
// long sinc-window sums.  Every reduction accumulates into four stripes
// (element i goes to stripe i mod 4) and combines them as
// (s0+s2)+(s1+s3), so the scalar reference and the AVX2 variant produce
// bitwise-identical results.  The AVX2 code uses separate mul/add rather
// than FMA for the same reason.

double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
double sum_quads(std::span<const double> a);          // sum a_i^4
double sum_abs_pow_3_2(std::span<const double> a);    // sum |a_i|^(3/2)
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Name of the backend the dispatched entry points resolved to.
const char* backend();

// Reference implementations, always available (used by equivalence tests).
namespace scalar {
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
double sum_quads(std::span<const double> a);
double sum_abs_pow_3_2(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace scalar

#ifdef BLR_HAVE_AVX2
namespace avx2 {
bool available();
double sum(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
double sum_quads(std::span<const double> a);
double sum_abs_pow_3_2(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
}  // namespace avx2
#endif

}  // namespace blr::kernels
