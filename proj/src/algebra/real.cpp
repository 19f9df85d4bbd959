#include "galrep/algebra/real.hpp"

#include <algorithm>
#include <utility>

#include "galrep/error.hpp"

namespace galrep::algebra {

namespace {

long joint_precision(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

void check_precision(long bits) {
  if (bits < MPFR_PREC_MIN || bits > 1L << 24) {
    throw Error(ErrorCode::InvalidArgument, "precision out of range: " + std::to_string(bits));
  }
}

}  // namespace

Real::Real(long precision_bits) {
  check_precision(precision_bits);
  mpfr_init2(v_, precision_bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, long precision_bits) : Real(precision_bits) { mpfr_set_si(v_, value, MPFR_RNDN); }

Real::Real(double value, long precision_bits) : Real(precision_bits) { mpfr_set_d(v_, value, MPFR_RNDN); }

Real::Real(const BigInt& value, long precision_bits) : Real(precision_bits) {
  mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(long precision_bits) {
  Real r(precision_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::exp2(long e, long precision_bits) {
  Real r(1L, precision_bits);
  mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
  return r;
}

// Operands are copied into a result of the joint precision before combining,
// so a lower-precision left operand never truncates the result.
#define GALREP_REAL_BINOP(op, fn)                       \
  Real& Real::operator op(const Real& o) {              \
    const long prec = joint_precision(*this, o);        \
    if (precision() < prec) mpfr_prec_round(v_, prec, MPFR_RNDN); \
    fn(v_, v_, o.v_, MPFR_RNDN);                        \
    return *this;                                       \
  }

GALREP_REAL_BINOP(+=, mpfr_add)
GALREP_REAL_BINOP(-=, mpfr_sub)
GALREP_REAL_BINOP(*=, mpfr_mul)
GALREP_REAL_BINOP(/=, mpfr_div)
#undef GALREP_REAL_BINOP

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigInt Real::round() const {
  if (!is_finite()) throw Error(ErrorCode::PrecisionFailure, "rounding a non-finite value");
  Real t(*this);
  mpfr_round(t.v_, t.v_);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), t.v_, MPFR_RNDN);
  return out;
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "Re";
  mpfr_asprintf(&buf, fmt.c_str(), v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real cos(const Real& x) {
  Real r(x);
  mpfr_cos(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real sin(const Real& x) {
  Real r(x);
  mpfr_sin(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(joint_precision(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real den = o.re * o.re + o.im * o.im;
  if (den.is_zero()) throw Error(ErrorCode::PrecisionFailure, "complex division by zero");
  Real r = (re * o.re + im * o.im) / den;
  Real i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Real abs(const Complex& z) {
  Real r(z.precision());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Complex sqrt(const Complex& z) {
  // Principal branch: sqrt((|z| + re)/2) + i*sign(im)*sqrt((|z| - re)/2).
  const long prec = z.precision();
  Real m = abs(z);
  Real two(2L, prec);
  Real a = sqrt((m + z.re) / two);
  Real b = sqrt(max((m - z.re) / two, Real(0L, prec)));
  if (mpfr_sgn(z.im.get()) < 0) b = -b;
  return Complex(std::move(a), std::move(b));
}

}  // namespace galrep::algebra
