#include "galrep/elliptic/elliptic.hpp"

#include <cmath>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/complex_roots.hpp"
#include "galrep/algebra/mod_poly.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/algebra/real.hpp"
#include "galrep/error.hpp"
#include "galrep/gl2/gl2.hpp"

namespace galrep::elliptic {

using algebra::Complex;
using algebra::ModPoly;
using algebra::Real;

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

IntPoly X() { return IntPoly::monomial(1); }

IntPoly C(const BigInt& c) { return IntPoly::constant(c); }

// Division polynomials with the factor psi_2 removed from even indices, so
// every entry is a polynomial in x alone.
class ReducedDivision {
 public:
  explicit ReducedDivision(const CurveQ& c) : F_(psi2_squared(c)) {
    const IntPoly x = X();
    memo_[0] = IntPoly{};
    memo_[1] = IntPoly{1};
    memo_[2] = IntPoly{1};
    memo_[3] = C(3) * x.pow(4) + C(c.b2()) * x.pow(3) + C(3 * c.b4()) * x.pow(2) + C(3 * c.b6()) * x + C(c.b8());
    memo_[4] = C(2) * x.pow(6) + C(c.b2()) * x.pow(5) + C(5 * c.b4()) * x.pow(4) + C(10 * c.b6()) * x.pow(3) +
               C(10 * c.b8()) * x.pow(2) + C(c.b2() * c.b8() - c.b4() * c.b6()) * x +
               C(c.b4() * c.b8() - c.b6() * c.b6());
  }

  const IntPoly& get(int n) {
    if (auto it = memo_.find(n); it != memo_.end()) return it->second;
    IntPoly r;
    const int m = n / 2;
    if (n % 2 == 1) {
      const IntPoly a = get(m + 2) * get(m).pow(3);
      const IntPoly b = get(m - 1) * get(m + 1).pow(3);
      const IntPoly F2 = F_ * F_;
      r = (m % 2 == 0) ? F2 * a - b : a - F2 * b;
    } else {
      r = get(m) * (get(m + 2) * get(m - 1).pow(2) - get(m - 2) * get(m + 1).pow(2));
    }
    return memo_[n] = std::move(r);
  }

 private:
  IntPoly F_;
  std::map<int, IntPoly> memo_;
};

}  // namespace

CurveQ::CurveQ(long a1, long a2, long a3, long a4, long a6) : a_{a1, a2, a3, a4, a6} {
  const BigInt A1(a1), A2(a2), A3(a3), A4(a4), A6(a6);
  b2_ = A1 * A1 + 4 * A2;
  b4_ = 2 * A4 + A1 * A3;
  b6_ = A3 * A3 + 4 * A6;
  b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (disc_ == 0) throw Error(ErrorCode::InvalidArgument, "singular Weierstrass equation");
}

CurveQ CurveQ::from_json(const nlohmann::json& ainvs) {
  if (!ainvs.is_array() || ainvs.size() != 5) throw Error(ErrorCode::Schema, "curve needs five a-invariants");
  std::array<long, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) {
    const BigInt v = algebra::bigint_from_json(ainvs[i]);
    if (!v.fits_slong_p()) throw Error(ErrorCode::Unsupported, "a-invariant out of range");
    a[i] = v.get_si();
  }
  return CurveQ(a[0], a[1], a[2], a[3], a[4]);
}

std::vector<IntPoly> CurveQ::relation_in_x() const {
  // Y^2 + a1 x Y + a3 Y - x^3 - a2 x^2 - a4 x - a6
  return {IntPoly{-a6(), a3(), 1}, IntPoly{-a4(), a1()}, IntPoly{-a2()}, IntPoly{-1}};
}

nlohmann::json CurveQ::to_json() const {
  return {{"ainvs", a_},
          {"b", {algebra::to_string(b2_), algebra::to_string(b4_), algebra::to_string(b6_), algebra::to_string(b8_)}},
          {"discriminant", algebra::to_string(disc_)}};
}

long count_points(const CurveQ& c, long l) {
  if (!algebra::is_prime(l)) throw Error(ErrorCode::InvalidArgument, std::to_string(l) + " is not prime");
  if (mpz_divisible_ui_p(c.discriminant().get_mpz_t(), static_cast<unsigned long>(l))) {
    throw Error(ErrorCode::BadReduction, "bad reduction at " + std::to_string(l));
  }
  const long a1 = mod(c.a1(), l), a2 = mod(c.a2(), l), a3 = mod(c.a3(), l), a4 = mod(c.a4(), l), a6 = mod(c.a6(), l);
  long points = 1;  // infinity
  for (long x = 0; x < l; ++x) {
    const long rhs = mod(((x * x % l) * x + a2 * x % l * x + a4 * x + a6), l);
    for (long y = 0; y < l; ++y) {
      if (mod(y * y + a1 * x % l * y + a3 * y - rhs, l) == 0) ++points;
    }
  }
  const long a = l + 1 - points;
  if (a * a > 4 * l) throw Error(ErrorCode::Internal, "Hasse bound violated at " + std::to_string(l));
  return a;
}

nlohmann::json TraceTable::to_json() const {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [l, a] : traces) t[std::to_string(l)] = a;
  return {{"traces", t}, {"bad_primes", bad_primes}};
}

TraceTable trace_table(const CurveQ& c, long upto) {
  TraceTable t;
  for (long l : algebra::primes_below(upto)) {
    if (mpz_divisible_ui_p(c.discriminant().get_mpz_t(), static_cast<unsigned long>(l))) {
      t.bad_primes.push_back(l);
      continue;
    }
    t.traces[l] = count_points(c, l);
  }
  return t;
}

IntPoly psi2_squared(const CurveQ& c) {
  return IntPoly(std::vector<BigInt>{c.b6(), 2 * c.b4(), c.b2(), 4});
}

IntPoly division_polynomial(const CurveQ& c, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "division polynomial index must be positive");
  if (n % 2 == 0) throw Error(ErrorCode::Unsupported, "even division polynomials are not x-polynomials");
  ReducedDivision d(c);
  return d.get(n);
}

IntPoly torsion_field_polynomial(const CurveQ& c, int p) {
  if (p < 3 || !algebra::is_prime(p)) throw Error(ErrorCode::InvalidArgument, "torsion prime must be odd");
  const IntPoly psi = division_polynomial(c, p);
  const IntPoly R = algebra::resultant_in_x(psi, c.relation_in_x());
  const int deg = p * p - 1;
  // Res_x = lc(psi)^3 prod_x G(x, Y) = p^3 prod_j (Y - y_j); hence
  // prod_j (X - p y_j) = p^(deg - 3) R(X / p).
  const BigInt lead = algebra::pow(BigInt(p), 3);
  if (R.degree() != deg || R.lc() != lead) {
    throw Error(ErrorCode::Internal, "degenerate torsion resultant (degree " + std::to_string(R.degree()) + ")");
  }
  std::vector<BigInt> out(static_cast<std::size_t>(deg) + 1);
  for (int k = 0; k <= deg; ++k) {
    const int e = deg - 3 - k;
    BigInt v = R.coeff(k);
    if (e >= 0) {
      v *= algebra::pow(BigInt(p), static_cast<unsigned long>(e));
    } else {
      const BigInt d = algebra::pow(BigInt(p), static_cast<unsigned long>(-e));
      if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
        throw Error(ErrorCode::Internal, "torsion polynomial is not integral at X^" + std::to_string(k));
      }
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    }
    out[static_cast<std::size_t>(k)] = v;
  }
  return IntPoly(std::move(out));
}

NumericTorsion torsion_field_polynomial_numeric(const CurveQ& c, int p, long precision_bits) {
  const IntPoly psi = division_polynomial(c, p);
  const long prec = precision_bits;
  auto re = [&](long v) { return Complex(Real(v, prec), Real(0, prec)); };
  std::vector<Complex> ys;
  for (const auto& root : algebra::complex_roots(psi, prec)) {
    const Complex& x = root.z;
    const Complex A = re(c.a1()) * x + re(c.a3());
    const Complex rhs = ((x + re(c.a2())) * x + re(c.a4())) * x + re(c.a6());
    const Complex s = algebra::sqrt(A * A + re(4) * rhs);
    ys.push_back((s - A) / re(2));
    ys.push_back((-s - A) / re(2));
  }
  std::vector<Complex> poly{re(1)};
  for (const auto& y : ys) {
    const Complex t = re(p) * y;
    std::vector<Complex> next(poly.size() + 1, Complex(prec));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * t;
    }
    poly = std::move(next);
  }
  NumericTorsion out;
  std::vector<BigInt> coeffs;
  Real worst(0, 53);
  for (const auto& z : poly) {
    const BigInt r = z.re.round();
    const Real err = max(abs(z.re - Real(r, z.re.precision())), abs(z.im));
    if (err > worst) worst = err;
    coeffs.push_back(r);
  }
  out.poly = IntPoly(std::move(coeffs));
  out.max_residual = worst.to_double();
  return out;
}

nlohmann::json TorsionFieldReport::to_json() const {
  nlohmann::json mod2 = nlohmann::json::array();
  for (const auto& f : factorization_mod_2) mod2.push_back({{"degree", f.degree}, {"multiplicity", f.multiplicity}});
  return {{"cycle_mod_47", cycle_mod_47},
          {"cycle_mod_19", cycle_mod_19},
          {"irreducible_mod_47", irreducible_mod_47},
          {"max_part_mod_19", max_part_mod_19},
          {"has_order_24", has_order_24},
          {"has_order_20", has_order_20},
          {"factorization_mod_2", mod2},
          {"group_facts_ok", group_facts_ok},
          {"full_gl2", full_gl2}};
}

TorsionFieldReport verify_torsion_field(const IntPoly& f) {
  TorsionFieldReport r;
  r.cycle_mod_47 = algebra::degree_pattern(ModPoly::reduce(f, 47));
  r.cycle_mod_19 = algebra::degree_pattern(ModPoly::reduce(f, 19));
  r.irreducible_mod_47 = r.cycle_mod_47.size() == 1;
  r.max_part_mod_19 = r.cycle_mod_19.empty() ? 0 : r.cycle_mod_19.back();
  auto order = [](const std::vector<int>& cyc) {
    long o = 1;
    for (int c : cyc) o = algebra::lcm(o, c);
    return o;
  };
  r.has_order_24 = order(r.cycle_mod_47) == 24;
  r.has_order_20 = order(r.cycle_mod_19) == 20;
  for (const auto& fa : algebra::factor_mod_p(ModPoly::reduce(f, 2))) {
    r.factorization_mod_2.push_back({fa.factor.degree(), fa.multiplicity});
  }
  r.group_facts_ok = gl2::verify_group_facts().all_passed();
  r.full_gl2 = r.has_order_24 && r.has_order_20 && r.group_facts_ok;
  return r;
}

}  // namespace galrep::elliptic
