#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/complex_roots.hpp"
#include "galrep/algebra/int_poly.hpp"
#include "galrep/algebra/mod_poly.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/error.hpp"

using namespace galrep;
using namespace galrep::algebra;

namespace {

const IntPoly g1{307744, -117360, 13040, 0, 0, 1};

IntPoly random_poly(std::mt19937_64& rng, int max_deg, long bound, bool nonzero_lead = true) {
  std::uniform_int_distribution<int> deg_dist(1, max_deg);
  std::uniform_int_distribution<long> coef(-bound, bound);
  const int d = deg_dist(rng);
  std::vector<BigInt> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng));
  if (nonzero_lead && c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

// Independent oracle: Durand-Kerner in long double.
std::vector<std::complex<long double>> dk_roots(const IntPoly& f) {
  using C = std::complex<long double>;
  const int n = f.degree();
  std::vector<C> c;
  for (int i = 0; i <= n; ++i) c.emplace_back(f.coeff(i).get_d() / f.lc().get_d(), 0.0L);
  std::vector<C> z;
  for (int k = 0; k < n; ++k) z.push_back(std::pow(C(0.4L, 0.9L), k));
  for (int it = 0; it < 2000; ++it) {
    for (int i = 0; i < n; ++i) {
      C num = 0;
      for (int k = n; k >= 0; --k) num = num * z[i] + c[k];
      C den = 1;
      for (int j = 0; j < n; ++j) {
        if (j != i) den *= (z[i] - z[j]);
      }
      z[i] -= num / den;
    }
  }
  return z;
}

BigInt disc_mod(const IntPoly& f, std::uint64_t p) {
  ModPoly fp = ModPoly::reduce(f, p);
  const int n = fp.degree();
  ModPoly d = fp.derivative();
  if (d.is_zero()) return 0;
  // The integer derivative has degree n - 1; its reduction may drop degree when p | n.
  std::uint64_t r = resultant(fp, d);
  r = r * mod_pow(fp.lc(), static_cast<std::uint64_t>(n - 1 - d.degree()), p) % p;
  r = r * mod_inverse(fp.lc(), p) % p;
  if ((n * (n - 1) / 2) % 2 == 1) r = (p - r) % p;
  return BigInt(static_cast<unsigned long>(r));
}

}  // namespace

TEST_CASE("resultant small cases") {
  CHECK(resultant(IntPoly{-1, 0, 1}, IntPoly{-2, 1}) == 3);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int i = 0; i < 50; ++i) {
    long a = d(rng), b = d(rng);
    CHECK(resultant(IntPoly{-a, 1}, IntPoly{-b, 1}) == a - b);
  }
  CHECK_THROWS_AS(resultant(IntPoly{}, IntPoly{1, 1}), Error);
}

TEST_CASE("resultant equals numeric root product") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    IntPoly f = random_poly(rng, 4, 9);
    IntPoly g = random_poly(rng, 4, 9);
    auto roots = dk_roots(f);
    std::complex<long double> prod = std::pow(static_cast<long double>(f.lc().get_d()), g.degree());
    for (auto& a : roots) {
      std::complex<long double> v = 0;
      for (int k = g.degree(); k >= 0; --k) v = v * a + static_cast<long double>(g.coeff(k).get_d());
      prod *= v;
    }
    const long double exact = resultant(f, g).get_d();
    const long double scale = std::max(1.0L, std::abs(exact));
    CHECK(std::abs(prod.real() - exact) / scale < 1e-6L);
    CHECK(std::abs(prod.imag()) / scale < 1e-6L);
  }
}

TEST_CASE("resultant is multiplicative") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    IntPoly f = random_poly(rng, 4, 12), g = random_poly(rng, 3, 12), h = random_poly(rng, 3, 12);
    CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
  }
}

TEST_CASE("discriminants") {
  CHECK(discriminant(IntPoly{1, 0, 1}) == -4);
  for (long c : {1L, 2L, 3L}) CHECK(discriminant(IntPoly{c, 0, 0, 1}) == -27 * c * c);
  CHECK_THROWS_AS(discriminant(IntPoly{5}), Error);

  BigInt d1 = discriminant(g1);
  CHECK(d1 == parse_bigint("2233688597342799872000000000"));
  const long allowed[] = {5, 163, -1};
  SquarePart sp = integer_square_part(d1, allowed);
  CHECK(sp.square_free == pow(BigInt(5), 9) * pow(BigInt(163), 4));
  CHECK(sp.square_free * sp.square_root * sp.square_root == d1);
}

TEST_CASE("discriminant reduces mod p") {
  std::mt19937_64 rng(17);
  const auto primes = primes_below(60);
  for (int trial = 0; trial < 60; ++trial) {
    IntPoly f = random_poly(rng, 6, 30);
    if (f.degree() < 2) continue;
    for (long p : primes) {
      if (mpz_divisible_ui_p(f.lc().get_mpz_t(), static_cast<unsigned long>(p))) continue;
      BigInt d = discriminant(f);
      BigInt dm;
      mpz_fdiv_r_ui(dm.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(p));
      CHECK(dm == disc_mod(f, static_cast<std::uint64_t>(p)));
    }
  }
}

TEST_CASE("integer_square_part") {
  const long allowed[] = {5, 163, -1};
  SquarePart a = integer_square_part(BigInt(4), allowed);
  CHECK(a.square_free == 1);
  CHECK(a.square_root == 2);
  BigInt target = pow(BigInt(5), 5) * pow(BigInt(163), 4);
  SquarePart b = integer_square_part(target * 36, allowed);
  CHECK(b.square_free == target);
  CHECK(b.square_root == 6);
  CHECK_THROWS_AS(integer_square_part(BigInt(12), allowed), Error);
  CHECK_THROWS_AS(integer_square_part(BigInt(0), allowed), Error);
}

TEST_CASE("factor_mod_p examples") {
  auto f = factor_mod_p(ModPoly::reduce(IntPoly{1, 0, 1}, 5));
  REQUIRE(f.size() == 2);
  CHECK(f[0].factor == ModPoly(5, {2, 1}));
  CHECK(f[1].factor == ModPoly(5, {3, 1}));

  auto h = factor_mod_p(ModPoly::reduce(g1, 163));
  REQUIRE(h.size() == 1);
  CHECK(h[0].factor == ModPoly::x(163));
  CHECK(h[0].multiplicity == 5);

  auto k = factor_mod_p(ModPoly::reduce(g1, 5));
  REQUIRE(k.size() == 1);
  CHECK(k[0].factor == ModPoly(5, {4, 1}));
  CHECK(k[0].multiplicity == 5);
}

TEST_CASE("factor_mod_p round trip and irreducibility") {
  std::mt19937_64 rng(19);
  const auto primes = primes_below(100);
  for (int trial = 0; trial < 150; ++trial) {
    const long p = primes[static_cast<std::size_t>(trial) % primes.size()];
    std::uniform_int_distribution<int> deg(1, 24);
    std::uniform_int_distribution<long> coef(0, p - 1);
    std::vector<std::uint64_t> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = static_cast<std::uint64_t>(coef(rng));
    if (c.back() == 0) c.back() = 1;
    // Force repeated factors in a third of the cases.
    ModPoly f(static_cast<std::uint64_t>(p), c);
    if (trial % 3 == 0) f = f * f * ModPoly(static_cast<std::uint64_t>(p), {1, 1});
    auto facs = factor_mod_p(f, 42);
    ModPoly prod = ModPoly::constant(static_cast<std::uint64_t>(p), 1);
    for (const auto& fa : facs) {
      CHECK(fa.factor.lc() == 1);
      CHECK(is_irreducible(fa.factor));
      for (int i = 0; i < fa.multiplicity; ++i) prod *= fa.factor;
    }
    CHECK(prod == f.monic());
    for (std::size_t i = 1; i < facs.size(); ++i) CHECK(facs[i - 1].factor < facs[i].factor);
    CHECK(factor_mod_p(f, 42).size() == facs.size());
  }
}

TEST_CASE("p = 2 and p-th powers") {
  // (x^2 + x + 1)^2 (x + 1)^3 over F_2
  ModPoly a(2, {1, 1, 1}), b(2, {1, 1});
  auto facs = factor_mod_p(a * a * b * b * b, 3);
  REQUIRE(facs.size() == 2);
  CHECK(facs[0].factor == b);
  CHECK(facs[0].multiplicity == 3);
  CHECK(facs[1].factor == a);
  CHECK(facs[1].multiplicity == 2);
  // x^(p+1) has multiplicity spanning a p-th power layer
  auto g = factor_mod_p(ModPoly(3, {0, 0, 0, 0, 1}));
  REQUIRE(g.size() == 1);
  CHECK(g[0].multiplicity == 4);
}

TEST_CASE("degree_pattern") {
  CHECK(degree_pattern(ModPoly::reduce(IntPoly{1, 0, 1}, 5)) == std::vector<int>{1, 1});
  CHECK(degree_pattern(ModPoly::reduce(IntPoly{1, 0, 1}, 7)) == std::vector<int>{2});
  CHECK_THROWS_AS(degree_pattern(ModPoly::reduce(g1, 2)), Error);
}

TEST_CASE("complex roots") {
  auto r = complex_roots(IntPoly{1, 0, 1}, 128);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].z.re.to_double()) < 1e-20);
  CHECK(std::abs(std::abs(r[0].z.im.to_double()) - 1.0) < 1e-20);
  CHECK(r[0].z.im.to_double() == doctest::Approx(-r[1].z.im.to_double()));

  auto u = complex_roots(IntPoly{-1, 0, 0, 0, 0, 1}, 128);
  Complex sum(160);
  for (auto& x : u) sum += x.z;
  CHECK(abs(sum).to_double() < 1e-15);

  CHECK_THROWS_AS(complex_roots(IntPoly{1, 2, 1}, 64), Error);
}

TEST_CASE("g1 power sums match Newton identities") {
  auto roots = complex_roots(g1, 256);
  REQUIRE(roots.size() == 5);
  // Newton: e1 = 0, e2 = 0, e3 = -13040, e4 = -117360, e5 = -307744 for x^5 - e1 x^4 + ...
  const BigInt e[] = {0, 0, 0, -13040, -117360, -307744};
  std::vector<BigInt> s(5);
  for (int k = 1; k <= 4; ++k) {
    BigInt acc = (k % 2 == 1 ? 1 : -1) * k * e[k];
    for (int i = 1; i < k; ++i) acc += ((i - 1) % 2 == 0 ? 1 : -1) * e[i] * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = acc;
  }
  for (int k = 1; k <= 4; ++k) {
    Complex total(300);
    for (auto& r : roots) {
      Complex zk(Real(1L, 300), Real(300));
      for (int i = 0; i < k; ++i) zk *= r.z;
      total += zk;
    }
    CHECK(total.re.round() == s[static_cast<std::size_t>(k)]);
    CHECK(std::abs(total.im.to_double()) < 1e-30);
  }
  CHECK(s[3] == -39120);
  CHECK(s[4] == 469440);
}

TEST_CASE("complex root residual bound and trace") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    IntPoly f = random_poly(rng, 8, 50);
    if (!is_squarefree(f) || f.degree() < 1) continue;
    auto roots = complex_roots_adaptive(f, 128, 1024);
    REQUIRE(static_cast<int>(roots.size()) == f.degree());
    Complex sum(200);
    for (auto& r : roots) {
      CHECK(abs(evaluate(f, r.z)) <= r.residual_bound);
      sum += r.z;
    }
    Real expect = Real(-f.coeff(f.degree() - 1), 200) / Real(f.lc(), 200);
    CHECK(std::abs((sum.re - expect).to_double()) < 1e-20);
    CHECK(std::abs(sum.im.to_double()) < 1e-20);
  }
}

TEST_CASE("characteristic polynomial and bivariate resultant") {
  // alpha = sqrt(2): beta = alpha + 1 has charpoly X^2 - 2X - 1.
  CHECK(characteristic_polynomial(IntPoly{-2, 0, 1}, IntPoly{1, 1}) == IntPoly{-1, -2, 1});
  // beta = alpha^2 for alpha a root of x^3 - 2 has charpoly X^3 - 4.
  CHECK(characteristic_polynomial(IntPoly{-2, 0, 0, 1}, IntPoly{0, 0, 1}) == IntPoly{-4, 0, 0, 1});
  CHECK(characteristic_polynomial(IntPoly{-2, 0, 0, 1}, IntPoly{3}) == IntPoly{-27, 27, -9, 1});
}

TEST_CASE("shift, scale, json round trip") {
  IntPoly f = g1.shift(1);
  CHECK(f.shift(-1) == g1);
  CHECK(discriminant(f) == discriminant(g1));
  CHECK(g1.scale_variable(2).coeff(5) == 32);
  auto j = poly_to_json(g1);
  CHECK(j.dump() == R"(["307744","-117360","13040","0","0","1"])");
  CHECK(poly_from_json(j) == g1);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(R"(["1.5"])")), Error);
  CHECK(g1.to_string() == "x^5 + 13040*x^2 - 117360*x + 307744");
}
