#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "galrep/algebra/int_poly.hpp"

namespace galrep::algebra {

/// Dense polynomial over F_p for a prime p < 2^31, constant term first.
class ModPoly {
 public:
  using Residue = std::uint64_t;

  explicit ModPoly(std::uint64_t p) : p_(p) {}
  ModPoly(std::uint64_t p, std::vector<Residue> coeffs);

  /// Reduces every coefficient of f modulo p.
  static ModPoly reduce(const IntPoly& f, std::uint64_t p);
  static ModPoly constant(std::uint64_t p, Residue c);
  static ModPoly x(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<Residue>& coeffs() const noexcept { return c_; }
  Residue coeff(int i) const { return (i < 0 || i > degree()) ? 0 : c_[static_cast<std::size_t>(i)]; }
  Residue lc() const;

  ModPoly monic() const;
  ModPoly derivative() const;
  Residue eval(Residue x) const;

  ModPoly& operator+=(const ModPoly& o);
  ModPoly& operator-=(const ModPoly& o);
  ModPoly& operator*=(const ModPoly& o);
  ModPoly& operator*=(Residue c);
  friend ModPoly operator+(ModPoly a, const ModPoly& b) { return a += b; }
  friend ModPoly operator-(ModPoly a, const ModPoly& b) { return a -= b; }
  friend ModPoly operator*(ModPoly a, const ModPoly& b) { return a *= b; }
  friend bool operator==(const ModPoly&, const ModPoly&) = default;
  friend bool operator<(const ModPoly& a, const ModPoly& b);

  /// "x^2 + 3*x + 1 (mod 5)"
  std::string to_string() const;

 private:
  void normalize();
  std::uint64_t p_;
  std::vector<Residue> c_;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);

/// Quotient and remainder; throws Error(InvalidArgument) when dividing by zero.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
ModPoly operator%(const ModPoly& a, const ModPoly& b);
ModPoly operator/(const ModPoly& a, const ModPoly& b);

/// Monic gcd (zero if both inputs are zero).
ModPoly gcd(const ModPoly& a, const ModPoly& b);

/// base^e mod m.
ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m);

bool is_squarefree(const ModPoly& f);

/// Res(f, g) in F_p with the same convention as the integer resultant.
std::uint64_t resultant(const ModPoly& f, const ModPoly& g);

struct ModFactor {
  ModPoly factor;
  int multiplicity;
};

/// Complete factorisation into monic irreducibles, sorted by degree and then
/// coefficient vector (constant term first, compared from the top). The unit
/// lc(f) is dropped. Equal-degree splitting draws from mt19937_64(seed).
std::vector<ModFactor> factor_mod_p(const ModPoly& f, std::uint64_t seed = 0x5eed);

/// Ascending factor degrees of a squarefree f via distinct-degree factorisation.
/// Throws Error(NotSquarefree) when f has a repeated factor.
std::vector<int> degree_pattern(const ModPoly& f);

bool is_irreducible(const ModPoly& f);

}  // namespace galrep::algebra
