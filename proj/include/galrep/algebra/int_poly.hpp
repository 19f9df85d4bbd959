#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "galrep/algebra/bigint.hpp"

namespace galrep::algebra {

/// Dense univariate polynomial over Z, coefficients stored constant term first.
/// The highest stored coefficient is nonzero; the zero polynomial is empty.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  /// x^k
  static IntPoly monomial(int k, const BigInt& c = 1);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && lc() == 1; }

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  /// Zero for indices above the degree.
  BigInt coeff(int i) const;
  const BigInt& lc() const;

  BigInt eval(const BigInt& x) const;
  IntPoly derivative() const;
  BigInt content() const;
  IntPoly primitive_part() const;
  /// f(x + c)
  IntPoly shift(const BigInt& c) const;
  /// f(s * x)
  IntPoly scale_variable(const BigInt& s) const;
  /// Exact division of every coefficient; throws if not divisible.
  IntPoly divexact(const BigInt& d) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const BigInt& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend IntPoly operator*(IntPoly a, const BigInt& c) { return a *= c; }
  friend IntPoly operator*(const BigInt& c, IntPoly a) { return a *= c; }
  IntPoly operator-() const;
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  IntPoly pow(unsigned k) const;

  /// "x^5 + 13040*x^2 - 117360*x + 307744"
  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q * b + r.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Res(f, g) = lc(f)^deg(g) * prod_{f(alpha)=0} g(alpha), via the subresultant PRS.
/// Throws Error(InvalidArgument) if either input is zero.
BigInt resultant(const IntPoly& f, const IntPoly& g);

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f). Throws for deg f < 1.
BigInt discriminant(const IntPoly& f);

/// f has no repeated complex root (equivalently gcd(f, f') is constant).
bool is_squarefree(const IntPoly& f);

/// R(Y) = Res_x(f(x), G(x, Y)) where G(x, Y) = sum_i g[i](Y) x^i. The leading
/// x-coefficient g.back() must be a nonzero constant. Computed exactly by
/// evaluating at integer Y and interpolating over Q.
IntPoly resultant_in_x(const IntPoly& f, const std::vector<IntPoly>& g);

/// Characteristic polynomial of beta = h(alpha) over Q(alpha), f monic.
IntPoly characteristic_polynomial(const IntPoly& f, const IntPoly& h);

}  // namespace galrep::algebra
