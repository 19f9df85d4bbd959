#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace galrep::gl2 {

/// Residue mod 5 in [0, 5).
inline int mod5(long x) noexcept {
  const long r = x % 5;
  return static_cast<int>(r < 0 ? r + 5 : r);
}

/// Invertible 2x2 matrix over F_5, row major [[a, b], [c, d]].
class MatGF5 {
 public:
  /// Throws Error(InvalidArgument) when the determinant vanishes mod 5.
  MatGF5(long a, long b, long c, long d);

  static MatGF5 identity() { return MatGF5(1, 0, 0, 1); }
  static MatGF5 scalar(long s) { return MatGF5(s, 0, 0, s); }
  static MatGF5 diag(long a, long d) { return MatGF5(a, 0, 0, d); }
  /// Companion matrix of X^2 - b X + d.
  static MatGF5 companion(long b, long d) { return MatGF5(0, -d, 1, b); }

  int a() const noexcept { return e_[0]; }
  int b() const noexcept { return e_[1]; }
  int c() const noexcept { return e_[2]; }
  int d() const noexcept { return e_[3]; }
  int trace() const noexcept { return mod5(e_[0] + e_[3]); }
  int det() const noexcept { return mod5(e_[0] * e_[3] - e_[1] * e_[2]); }
  bool is_scalar() const noexcept { return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3]; }
  /// Dense code in [0, 625) for table lookups.
  int code() const noexcept { return ((e_[0] * 5 + e_[1]) * 5 + e_[2]) * 5 + e_[3]; }

  MatGF5 inverse() const;
  MatGF5 pow(unsigned long k) const;

  friend MatGF5 operator*(const MatGF5& x, const MatGF5& y);
  friend bool operator==(const MatGF5&, const MatGF5&) = default;
  friend auto operator<=>(const MatGF5& x, const MatGF5& y) { return x.code() <=> y.code(); }

  std::string to_string() const;

 private:
  std::array<int, 4> e_;
};

/// Characteristic polynomial X^2 - b X + d of a Frobenius image; d = l mod 5.
struct CharPoly2 {
  int b;
  int d;

  /// Throws Error(InvalidArgument) when d = 0 mod 5.
  static CharPoly2 make(long b, long d);
  int discriminant() const noexcept { return mod5(b * b - 4 * d); }
  friend auto operator<=>(const CharPoly2&, const CharPoly2&) = default;
};

/// Element u + v t of F_25 = F_5[t]/(t^2 - 2).
class F25Elem {
 public:
  static constexpr int kNonResidue = 2;  // t^2 = 2

  F25Elem(long u = 0, long v = 0) : u_(mod5(u)), v_(mod5(v)) {}
  int u() const noexcept { return u_; }
  int v() const noexcept { return v_; }
  bool is_zero() const noexcept { return u_ == 0 && v_ == 0; }

  friend F25Elem operator+(const F25Elem& x, const F25Elem& y) { return {x.u_ + y.u_, x.v_ + y.v_}; }
  friend F25Elem operator-(const F25Elem& x, const F25Elem& y) { return {x.u_ - y.u_, x.v_ - y.v_}; }
  friend F25Elem operator*(const F25Elem& x, const F25Elem& y) {
    return {x.u_ * y.u_ + kNonResidue * x.v_ * y.v_, x.u_ * y.v_ + x.v_ * y.u_};
  }
  friend bool operator==(const F25Elem&, const F25Elem&) = default;
  F25Elem inverse() const;
  /// Multiplicative order; throws for zero.
  int order() const;

 private:
  int u_, v_;
};

/// Square roots of a in F_25 (a in F_5): both roots, possibly equal.
std::pair<F25Elem, F25Elem> sqrt_in_f25(int a);

int element_order(const MatGF5& m);

/// All 480 elements of GL_2(F_5), sorted by code. Computed once.
std::span<const MatGF5> all_elements();

/// Orders of all matrices with the given characteristic polynomial, by exhaustive enumeration.
std::set<int> orders_for_charpoly(CharPoly2 c);

/// Same set from the eigenvalues in F_25 (lcm of eigenvalue orders; 5x for a Jordan block).
std::set<int> orders_for_charpoly_analytic(CharPoly2 c);

/// Least k with M^k scalar, over all M with the given characteristic polynomial.
std::set<int> pgl_orders_for_charpoly(CharPoly2 c);

/// Number of matrices with each characteristic polynomial; values sum to 480.
std::map<CharPoly2, int> charpoly_class_sizes();

/// Subgroup generated by the inputs (breadth-first closure), sorted by code.
std::vector<MatGF5> subgroup_closure(std::span<const MatGF5> generators);

/// Conjugacy classes of GL_2(F_5), each sorted, ordered by smallest element.
std::vector<std::vector<MatGF5>> conjugacy_classes();

struct GroupFactsReport {
  // (a) order-24 class representatives with any order-5 element generate G.
  bool order24_with_order5_generates = false;
  int order24_classes = 0;
  int order5_elements = 0;
  int pairs_checked = 0;
  int smallest_pair_closure = 0;
  // (b) Borel H, its subgroup J, and H/J.
  bool borel_structure = false;
  int borel_order = 0;
  int j_order = 0;
  bool j_normal_in_borel = false;
  int quotient_order = 0;
  int quotient_generator_order = 0;
  // (c) no nontrivial subgroup of J is normal in G.
  bool no_normal_subgroup_in_j = false;
  int j_subgroups = 0;
  std::vector<int> j_subgroup_orders;
  // (d) the Borel is self-normalizing, hence has 6 conjugates.
  bool borel_self_normalizing = false;
  int borel_normalizer_order = 0;
  int borel_conjugates = 0;
  // Closure of the two standard generators.
  int generated_group_order = 0;

  bool all_passed() const noexcept {
    return order24_with_order5_generates && borel_structure && no_normal_subgroup_in_j && borel_self_normalizing;
  }
  nlohmann::json to_json() const;
};

GroupFactsReport verify_group_facts();

}  // namespace galrep::gl2
