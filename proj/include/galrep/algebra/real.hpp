#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "galrep/algebra/bigint.hpp"

namespace galrep::algebra {

/// Owning MPFR float with its own precision. Binary operations round to the
/// larger of the two operand precisions, to nearest.
class Real {
 public:
  explicit Real(long precision_bits = 53);
  Real(long value, long precision_bits);
  Real(int value, long precision_bits) : Real(static_cast<long>(value), precision_bits) {}
  Real(double value, long precision_bits);
  Real(const BigInt& value, long precision_bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  static Real pi(long precision_bits);
  /// 2^e at the given precision.
  static Real exp2(long e, long precision_bits);

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Nearest integer (ties away from zero).
  BigInt round() const;
  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real pow(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);

struct Complex {
  Real re;
  Real im;

  explicit Complex(long precision_bits = 53) : re(precision_bits), im(precision_bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  long precision() const { return re.precision() > im.precision() ? re.precision() : im.precision(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re, -im); }
};

Real abs(const Complex& z);
Complex sqrt(const Complex& z);

}  // namespace galrep::algebra
