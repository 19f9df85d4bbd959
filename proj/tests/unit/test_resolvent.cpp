#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/complex_roots.hpp"
#include "galrep/error.hpp"
#include "galrep/resolvent/resolvent.hpp"

using namespace galrep;
using namespace galrep::resolvent;
using algebra::BigInt;
using algebra::Real;

namespace {

const IntPoly g1{307744, -117360, 13040, 0, 0, 1};
const IntPoly g2{254932, -104320, 10595, 0, 0, 1};
const IntPoly g3{-8319520, -104320, 13040, 0, 0, 1};
const IntPoly f1{-91, -118, -95, 60, 5, -3, 1};
const IntPoly f2{1712, -336, -315, 190, -25, -2, 1};
const IntPoly f3{213824, 585072, -62915, 5185, -25, -3, 1};

std::vector<Complex> roots_of(const IntPoly& f, long bits) {
  std::vector<Complex> out;
  for (const auto& a : algebra::complex_roots(f, bits)) out.push_back(a.z);
  return out;
}

}  // namespace

TEST_CASE("Frobenius group and cosets") {
  CHECK(frobenius_group().size() == 20);
  CHECK(coset_representatives().size() == 6);
  CHECK(coset_representatives().front() == Perm5{0, 1, 2, 3, 4});

  std::mt19937 rng(11);
  std::uniform_int_distribution<long> dist(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<long, 5> x{};
    for (auto& v : x) v = dist(rng);
    const long base = theta(std::span<const long>(x));
    for (const auto& h : frobenius_group()) {
      std::array<long, 5> y{};
      for (int i = 0; i < 5; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(h[static_cast<std::size_t>(i)])];
      CHECK(theta(std::span<const long>(y)) == base);
    }
  }
  // Distinct values on the six cosets for generic integers.
  const std::array<long, 5> x{1, 3, 7, 20, 51};
  std::set<long> values;
  for (const auto& s : coset_representatives()) {
    std::array<long, 5> y{};
    for (int i = 0; i < 5; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
    values.insert(theta(std::span<const long>(y)));
  }
  CHECK(values.size() == 6);
}

TEST_CASE("sum of the theta conjugates matches its symmetric expansion") {
  // Oracle: sum over cosets of theta = 2 (e1 e3 - 4 e4), checked on integers first.
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> small(-6, 6);
  for (int trial = 0; trial < 30; ++trial) {
    std::array<long, 5> x{};
    for (auto& v : x) v = small(rng);
    long sum = 0;
    for (const auto& s : coset_representatives()) {
      std::array<long, 5> y{};
      for (int i = 0; i < 5; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
      sum += theta(std::span<const long>(y));
    }
    long e1 = 0, e3 = 0, e4 = 0;
    for (int a = 0; a < 5; ++a) {
      e1 += x[a];
      for (int b = a + 1; b < 5; ++b)
        for (int c = b + 1; c < 5; ++c) {
          e3 += x[a] * x[b] * x[c];
          for (int d = c + 1; d < 5; ++d) e4 += x[a] * x[b] * x[c] * x[d];
        }
    }
    CHECK(sum == 2 * (e1 * e3 - 4 * e4));
  }

  // Numeric: the X^5 coefficient of the resolvent is -2(e1 e3 - 4 e4) in q's coefficients.
  std::uniform_int_distribution<long> coef(-20, 20);
  int done = 0;
  while (done < 20) {
    IntPoly q{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), 1};
    if (!algebra::is_squarefree(q)) continue;
    Resolvent r;
    try {
      r = sextic_resolvent(q);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);  // reducible draws
      continue;
    }
    const BigInt e1 = -q.coeff(4), e3 = -q.coeff(2), e4 = q.coeff(1);
    CHECK(r.poly.coeff(5) == -2 * (e1 * e3 - 4 * e4));
    CHECK(r.poly.degree() == 6);
    CHECK(r.poly.is_monic());
    ++done;
  }
}

TEST_CASE("resolvents of the quintics") {
  for (const auto* q : {&g1, &g2, &g3}) {
    const auto r = sextic_resolvent(*q, 256);
    CHECK(r.poly.degree() == 6);
    CHECK(r.poly.is_monic());
    CHECK(r.max_residual < 1e-9);
    CHECK(r.precision_bits == 256);
    // Discriminant supported on 5 and 163 up to squares.
    const std::array<long, 3> allowed{-1, 5, 163};
    CHECK_NOTHROW(algebra::integer_square_part(algebra::discriminant(r.poly), allowed));
  }
  const auto r1 = sextic_resolvent(g1).poly;
  const auto r2 = sextic_resolvent(g2).poly;
  const auto r3 = sextic_resolvent(g3).poly;
  CHECK(same_splitting_field_heuristic(r1, f1, 50).verdict == Verdict::ConsistentUpToBound);
  CHECK(same_splitting_field_heuristic(r2, f2, 50).verdict == Verdict::ConsistentUpToBound);
  CHECK(same_splitting_field_heuristic(r3, f3, 50).verdict == Verdict::ConsistentUpToBound);
  CHECK(same_splitting_field_heuristic(r1, f2, 50).verdict == Verdict::CertainlyDifferent);
}

TEST_CASE("root order does not matter") {
  auto roots = roots_of(g2, 256);
  const auto base = resolvent_from_roots(roots).poly;
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(roots.begin(), roots.end(), rng);
    CHECK(resolvent_from_roots(roots).poly == base);
  }
}

TEST_CASE("splitting field heuristic") {
  const auto cmp = same_splitting_field_heuristic(g1, f2, 50);
  CHECK(cmp.verdict == Verdict::CertainlyDifferent);
  CHECK(cmp.witness > 0);
  CHECK(same_splitting_field_heuristic(g1, f1, 50).verdict == Verdict::ConsistentUpToBound);
  const auto self = same_splitting_field_heuristic(f3, f3, 100);
  CHECK(self.verdict == Verdict::ConsistentUpToBound);
  CHECK(!self.compared.empty());
  CHECK(self.to_json()["verdict"] == "consistent-up-to-bound");
}

TEST_CASE("resolvent errors") {
  CHECK_THROWS_AS(sextic_resolvent(IntPoly{0, 1, 0, 0, 0, 1}), Error);  // x (x^4 + 1)
  CHECK_THROWS_AS(sextic_resolvent(IntPoly{1, 0, 1}), Error);
  CHECK_THROWS_AS(sextic_resolvent(IntPoly{1, 0, 0, 0, 0, 2}), Error);
  auto roots = roots_of(g1, 128);
  roots[0].re += Real(0.01, 128);
  try {
    resolvent_from_roots(roots);
    FAIL("expected a precision failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionFailure);
  }
}
