#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "galrep/algebra/bigint.hpp"
#include "galrep/error.hpp"
#include "galrep/numberfield/numberfield.hpp"

using namespace galrep;
using namespace galrep::numberfield;
using algebra::parse_bigint;

namespace {

IntPoly poly(std::initializer_list<const char*> coeffs) {
  std::vector<BigInt> c;
  for (const char* s : coeffs) c.push_back(parse_bigint(s));
  return IntPoly(std::move(c));
}

const IntPoly g1{307744, -117360, 13040, 0, 0, 1};
const IntPoly g2{254932, -104320, 10595, 0, 0, 1};
const IntPoly g3{-8319520, -104320, 13040, 0, 0, 1};
const BigInt kTarget = parse_bigint("2205974253125");  // 5^5 * 163^4

IntPoly tau() {
  return poly({"615432262420654296875", "359581947326660156250", "-156774902343750000000",
               "-1327285671234130859375", "-1700718978881835937500", "-1095723202056884765625",
               "-407675512695312500000", "-82465359191894531250", "-3487057855224609375",
               "2785809996337890625", "849863511181640625", "132599856298828125", "14279768203125000",
               "1413835025390625", "179155477734375", "24464219093750", "2491765593750", "169517221875",
               "8309320000", "354220875", "13913355", "402875", "8475", "60", "1"});
}

// v_p of the discriminant of Q(sqrt(m)), computed from the squarefree part.
long quadratic_field_valuation(long m, long p) {
  long s = m;
  for (long q = 2; q * q <= std::abs(s); ++q) {
    while (s % (q * q) == 0) s /= q * q;
  }
  const long d = ((s % 4) + 4) % 4 == 1 ? s : 4 * s;
  long v = 0;
  for (long t = d; t % p == 0; t /= p) ++v;
  return v;
}

}  // namespace

TEST_CASE("Dedekind criterion on small examples") {
  CHECK(dedekind_p_maximal(IntPoly{0, -1, 1}, 3));
  CHECK(dedekind_p_maximal(IntPoly{1, 0, 1}, 2));    // Z[i]
  CHECK_FALSE(dedekind_p_maximal(IntPoly{4, 0, 1}, 2));   // Z[2i]
  CHECK_FALSE(dedekind_p_maximal(IntPoly{-5, 0, 1}, 2));  // Z[sqrt 5]
  CHECK(dedekind_p_maximal(IntPoly{-5, 0, 1}, 5));
  CHECK(dedekind_p_maximal(IntPoly{-2, 0, 0, 0, 0, 1}, 5));  // Eisenstein after shift
  CHECK_THROWS_AS(dedekind_p_maximal(IntPoly{1, 2}, 3), Error);
}

TEST_CASE("Dedekind on the quintics") {
  CHECK_FALSE(dedekind_p_maximal(g1, 5));
  CHECK(dedekind_p_maximal(g1, 163));
  CHECK(dedekind_p_maximal(g2, 163));
  CHECK(dedekind_p_maximal(g3, 163));
}

TEST_CASE("index from the Newton polygon") {
  CHECK(ore_index(IntPoly{-5, 0, 1}, 2) == 1);
  CHECK(ore_index(IntPoly{-5, 0, 1}, 3) == 0);
  CHECK(ore_index(IntPoly{4, 0, 1}, 2) == std::nullopt);  // residual polynomial (y + 1)^2
  CHECK(ore_index(g1, 5) == 2);
  const auto v = local_discriminant_valuation(g1, 5);
  REQUIRE(v);
  CHECK(v->value == 5);
  CHECK(v->method == "ore");
}

TEST_CASE("local valuations agree with quadratic field discriminants") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-3000, 3000);
  int decided = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const long m = dist(rng);
    if (m == 0 || m == 1) continue;
    bool square = false;
    for (long r = 0; r * r <= m; ++r) square = square || r * r == m;
    if (square) continue;
    for (long p : {2L, 3L, 5L, 7L}) {
      const auto v = local_discriminant_valuation(IntPoly{-m, 0, 1}, p);
      if (!v) continue;
      ++decided;
      CHECK_MESSAGE(v->value == quadratic_field_valuation(m, p), "m=" << m << " p=" << p);
    }
  }
  CHECK(decided > 800);
}

TEST_CASE("discriminant certificates for the quintics") {
  const std::vector<long> ram{5, 163};
  for (const auto* f : {&g1, &g2, &g3}) {
    const auto c = certify_discriminant_detailed(*f, kTarget, ram);
    CHECK(c.square_shape);
    CHECK(c.cofactor_factored);
    CHECK(c.certified);
  }
  const auto c1 = certify_discriminant_detailed(g1, kTarget, ram);
  CHECK(c1.dedekind_failures == std::vector<long>{5});
  CHECK(c1.poly_discriminant == parse_bigint("2233688597342799872000000000"));
  CHECK(c1.to_json()["certified"] == true);

  CHECK_FALSE(certify_discriminant(IntPoly{-2, 0, 0, 0, 0, 1}, kTarget, ram));
  // Right shape but a wrong target exponent.
  CHECK_FALSE(certify_discriminant(g1, kTarget * 25, ram));
}

TEST_CASE("total ramification congruences") {
  CHECK(total_ram_congruence(g1, 5) == 1);
  CHECK(total_ram_congruence(g2, 5) == 3);
  CHECK(total_ram_congruence(g3, 5) == 0);
  for (const auto* f : {&g1, &g2, &g3}) CHECK(total_ram_congruence(*f, 163) == 0);
  CHECK(total_ram_congruence(g1, 7) == std::nullopt);
}

TEST_CASE("order compatibility") {
  const hecke::OrderEntry irreg{{4, 20}, {1, 5}};
  const hecke::OrderEntry split{{4}, {4}};
  const hecke::OrderEntry full{{24}, {6}};
  CHECK(compatible_orders(5, irreg).strong);
  CHECK(compatible_orders(1, irreg).strong);
  const auto c = compatible_orders(2, split);
  CHECK_FALSE(c.strong);
  CHECK(c.weak);
  CHECK(compatible_orders(6, full).strong);
  CHECK_FALSE(compatible_orders(4, full).strong);
  CHECK_FALSE(compatible_orders(5, full).weak);
  CHECK_THROWS_AS(compatible_orders(0, full), Error);
}

TEST_CASE("Frobenius records") {
  CHECK_THROWS_AS(frobenius_record(g1, 2), Error);
  try {
    frobenius_record(g1, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSquarefree);
  }
  CHECK_THROWS_AS(frobenius_record(IntPoly{1, 0, 3}, 3), Error);

  const auto r47 = frobenius_record(tau(), 47);
  CHECK(r47.cycle == std::vector<int>{24});
  CHECK(r47.order == 24);
  const auto r19 = frobenius_record(tau(), 19);
  CHECK(r19.cycle == std::vector<int>{4, 20});
  CHECK(r19.order == 20);

  const auto t = frobenius_table(g1, 50);
  CHECK(t.find(2) == nullptr);
  CHECK(t.records.size() + t.skipped.size() == 15);
  for (const auto& s : t.skipped) CHECK(s.reason == "not-squarefree");
  const auto j = to_json(t, "g1");
  CHECK(j["poly"] == "g1");
}

TEST_CASE("fingerprints") {
  const auto a = fingerprint(g1);
  CHECK(a.patterns.size() == 25);
  CHECK(a == fingerprint(g1.shift(BigInt(1))));
  CHECK(a == fingerprint(g1.shift(BigInt(-7))));
  CHECK(likely_isomorphic(a, fingerprint(g1.shift(BigInt(3)))));
  CHECK_FALSE(likely_isomorphic(a, fingerprint(g2)));
  CHECK_FALSE(likely_isomorphic(a, fingerprint(g3)));
  CHECK(fingerprint(g1, 10, kTarget).discriminant_key == kTarget);
}

TEST_CASE("irreducibility certificates") {
  for (const auto* f : {&g1, &g2, &g3}) CHECK(certify_irreducible(*f).status == Irreducibility::Proven);
  CHECK(certify_irreducible(tau()).status == Irreducibility::Proven);
  // Irreducible over Q but reducible modulo every prime.
  CHECK(certify_irreducible(IntPoly{1, 0, -10, 0, 1}).status == Irreducibility::Unproven);
  CHECK(certify_irreducible(IntPoly{0, 1, 0, 1}).status == Irreducibility::Reducible);
  CHECK(certify_irreducible(IntPoly{2, 0, 2}).status == Irreducibility::Proven);  // irreducible over Q
  CHECK(certify_irreducible(IntPoly{1, 0, 1}).status == Irreducibility::Proven);
}
