// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace blr {

// Software floating-point value with a configurable significand width,
// backed by MPFR.  Every value carries its own precision; binary operations
// produce results at the wider of the two operand precisions, so a
// computation seeded with N-bit inputs stays at N bits throughout.
//
// Values are immutable in spirit: the arithmetic interface is值-semantic and
// all library code treats Real as a plain number type.
class Real {
 public:
  static constexpr int kMinBits = 2;

  Real() { mpfr_init2(v_, 53); mpfr_set_zero(v_, 1); }
  explicit Real(int bits) { mpfr_init2(v_, clamp_bits(bits)); mpfr_set_zero(v_, 1); }
  Real(double x, int bits) { mpfr_init2(v_, clamp_bits(bits)); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(double x) : Real(x, 53) {}

  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real pi(int bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // Round to a (possibly narrower) precision.
  Real rounded_to(int bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  std::string str(int digits = 20) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend Real operator-(const Real& a) {
    Real r(a.bits());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

#define BLR_REAL_BINOP(op, fn)                             \
  friend Real operator op(const Real& a, const Real& b) {  \
    Real r(std::max(a.bits(), b.bits()));                  \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                       \
    return r;                                              \
  }                                                        \
  friend Real operator op(const Real& a, double b) {       \
    Real r(a.bits());                                      \
    fn##_d(r.v_, a.v_, b, MPFR_RNDN);                      \
    return r;                                              \
  }

  BLR_REAL_BINOP(+, mpfr_add)
  BLR_REAL_BINOP(-, mpfr_sub)
  BLR_REAL_BINOP(*, mpfr_mul)
  BLR_REAL_BINOP(/, mpfr_div)
#undef BLR_REAL_BINOP

  friend Real operator+(double a, const Real& b) { return b + a; }
  friend Real operator*(double a, const Real& b) { return b * a; }
  friend Real operator-(double a, const Real& b) {
    Real r(b.bits());
    mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(double a, const Real& b) {
    Real r(b.bits());
    mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(double o) { mpfr_add_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator-=(double o) { mpfr_sub_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator*=(double o) { mpfr_mul_d(v_, v_, o, MPFR_RNDN); return *this; }
  Real& operator/=(double o) { mpfr_div_d(v_, v_, o, MPFR_RNDN); return *this; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

#define BLR_REAL_FN1(name, fn)          \
  friend Real name(const Real& a) {     \
    Real r(a.bits());                   \
    fn(r.v_, a.v_, MPFR_RNDN);          \
    return r;                           \
  }

  BLR_REAL_FN1(sqrt, mpfr_sqrt)
  BLR_REAL_FN1(abs, mpfr_abs)
  BLR_REAL_FN1(sin, mpfr_sin)
  BLR_REAL_FN1(cos, mpfr_cos)
  BLR_REAL_FN1(exp, mpfr_exp)
  BLR_REAL_FN1(log, mpfr_log)
#undef BLR_REAL_FN1

  friend Real pow_int(const Real& a, long e) {
    Real r(a.bits());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

  friend Real ldexp2(const Real& a, long e) {  // a * 2^e, exact
    Real r(a.bits());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }

  friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.v_, b.v_); }

 private:
  static mpfr_prec_t clamp_bits(int bits) {
    return bits < kMinBits ? kMinBits : static_cast<mpfr_prec_t>(bits);
  }
  mpfr_t v_;
};

inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

}  // namespace blr
