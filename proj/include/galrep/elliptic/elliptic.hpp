#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "galrep/algebra/int_poly.hpp"
#include "json.hpp"

namespace galrep::elliptic {

using algebra::BigInt;
using algebra::IntPoly;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
class CurveQ {
 public:
  CurveQ(long a1, long a2, long a3, long a4, long a6);
  static CurveQ from_json(const nlohmann::json& ainvs);

  long a1() const { return a_[0]; }
  long a2() const { return a_[1]; }
  long a3() const { return a_[2]; }
  long a4() const { return a_[3]; }
  long a6() const { return a_[4]; }
  const BigInt& b2() const { return b2_; }
  const BigInt& b4() const { return b4_; }
  const BigInt& b6() const { return b6_; }
  const BigInt& b8() const { return b8_; }
  const BigInt& discriminant() const { return disc_; }

  /// Left minus right side of the Weierstrass equation, as a polynomial in x
  /// with coefficients in Y (index i holds the x^i coefficient).
  std::vector<IntPoly> relation_in_x() const;

  nlohmann::json to_json() const;

 private:
  std::array<long, 5> a_;
  BigInt b2_, b4_, b6_, b8_, disc_;
};

/// a_l = l + 1 - #E(F_l) by counting all (x, y) in F_l^2 plus infinity.
/// Throws Error(BadReduction) when l divides the discriminant.
long count_points(const CurveQ& c, long l);

struct TraceTable {
  std::map<long, long> traces;   // good primes
  std::vector<long> bad_primes;  // skipped
  nlohmann::json to_json() const;
};

/// Traces at every prime below `upto`; Hasse bound is checked for each entry.
TraceTable trace_table(const CurveQ& c, long upto);

/// psi_n for odd n >= 1, degree (n^2 - 1)/2 and leading coefficient n.
/// Throws Error(Unsupported) for even n.
IntPoly division_polynomial(const CurveQ& c, int n);

/// psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
IntPoly psi2_squared(const CurveQ& c);

/// Monic prod (X - p y_j) over the y-coordinates of the nonzero p-torsion
/// points, via R(Y) = Res_x(psi_p, curve) and X = pY scaling.
IntPoly torsion_field_polynomial(const CurveQ& c, int p);

struct NumericTorsion {
  IntPoly poly;
  double max_residual = 0;
};

/// Same product from numeric roots of psi_p and the quadratic formula in y.
NumericTorsion torsion_field_polynomial_numeric(const CurveQ& c, int p, long precision_bits = 300);

struct FactorShape {
  int degree;
  int multiplicity;
};

struct TorsionFieldReport {
  std::vector<int> cycle_mod_47;
  std::vector<int> cycle_mod_19;
  bool irreducible_mod_47 = false;
  int max_part_mod_19 = 0;
  bool has_order_24 = false;
  bool has_order_20 = false;
  std::vector<FactorShape> factorization_mod_2;  // informational only
  bool group_facts_ok = false;
  bool full_gl2 = false;  // orders 20 and 24 present and the subgroup facts hold
  nlohmann::json to_json() const;
};

TorsionFieldReport verify_torsion_field(const IntPoly& f);

}  // namespace galrep::elliptic
