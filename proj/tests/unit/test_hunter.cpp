#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "galrep/algebra/bigint.hpp"
#include "galrep/error.hpp"
#include "galrep/hunter/hunter.hpp"

using namespace galrep;
using namespace galrep::hunter;
using algebra::parse_bigint;

namespace {

const BigInt kTarget = parse_bigint("2205974253125");  // 5^5 * 163^4
const IntPoly g1{307744, -117360, 13040, 0, 0, 1};
const IntPoly g2{254932, -104320, 10595, 0, 0, 1};
const IntPoly g3{-8319520, -104320, 13040, 0, 0, 1};

SearchSpec base_spec(std::optional<long> a5, std::optional<long> a163) {
  SearchSpec s;
  s.target = kTarget;
  s.congruences = {{5, a5}, {163, a163}};
  s.a1_values = {0};
  return s;
}

// Window of +-steps multiples of 815 around the elementary symmetric values of f.
SearchSpec windowed(const IntPoly& f, long steps, std::optional<long> a5) {
  auto s = base_spec(a5, 0);
  const auto e = elementary_from_poly(f);
  for (std::size_t k = 1; k < e.size(); ++k) s.window.push_back(Range{e[k] - 815 * steps, e[k] + 815 * steps});
  return s;
}

std::vector<IntPoly> polys(const SearchResult& r) {
  std::vector<IntPoly> out;
  for (const auto& c : r.candidates) out.push_back(c.poly);
  return out;
}

std::uint64_t stage(const SearchResult& r, const std::string& name) {
  for (const auto& s : r.stats) {
    if (s.stage == name) return s.count;
  }
  return ~0ULL;
}

}  // namespace

TEST_CASE("Hunter bound") {
  const double t0 = hunter_t2_bound(5, kTarget, 0).to_double();
  CHECK(t0 == doctest::Approx(815 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hunter_t2_bound(5, kTarget, 2).to_double() == doctest::Approx(0.8 + 815 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(hunter_t2_bound(5, kTarget, 3), Error);
  CHECK_THROWS_AS(hunter_t2_bound(5, kTarget, -1), Error);
  // Degree 3: gamma_2 = sqrt(4/3), bound sqrt(4/3) * sqrt(|d|/3).
  CHECK(hunter_t2_bound(3, BigInt(243), 0).to_double() == doctest::Approx(std::sqrt(4.0 / 3.0) * 9.0));
}

TEST_CASE("coefficient boxes") {
  const auto t2 = hunter_t2_bound(5, kTarget, 0);
  const auto boxes = coefficient_boxes(t2, 0);
  REQUIRE(boxes.size() == 5);
  // Independent double-precision evaluation of the Newton recursion with a1 = 0.
  const double T = t2.to_double();
  const double e2 = std::floor(T / 2);
  const double e3 = std::floor(std::pow(T, 1.5) / 3);
  const double e4 = std::floor((e2 * T + T * T) / 4);
  const double e5 = std::floor((e3 * T + e2 * std::pow(T, 1.5) + std::pow(T, 2.5)) / 5);
  CHECK(boxes[0] == Range{0, 0});
  CHECK(boxes[1].hi == BigInt(static_cast<long>(e2)));
  CHECK(boxes[2].hi == BigInt(static_cast<long>(e3)));
  CHECK(boxes[3].hi == BigInt(static_cast<long>(e4)));
  CHECK(boxes[4].hi == BigInt(static_cast<long>(e5)));
  CHECK(boxes[1].hi == 576);
  CHECK(boxes[2].hi == 13043);

  for (const auto* f : {&g1, &g2, &g3}) {
    const auto e = elementary_from_poly(*f);
    for (std::size_t k = 0; k < 5; ++k) CHECK(boxes[k].contains(e[k]));
  }

  const auto bigger = coefficient_boxes(t2 + Real(100, 128), 0);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(bigger[k].lo <= boxes[k].lo);
    CHECK(bigger[k].hi >= boxes[k].hi);
  }
  for (const auto& r : coefficient_boxes(Real(0, 128), 0)) CHECK(r == Range{0, 0});
}

TEST_CASE("elementary symmetric round trip") {
  CHECK(poly_from_elementary(elementary_from_poly(g1)) == g1);
  CHECK(elementary_from_poly(g1) == std::vector<BigInt>{0, 0, -13040, -117360, -307744});
  CHECK(poly_from_elementary({1, 2}) == IntPoly{2, -1, 1});
}

TEST_CASE("windowed searches recover each quintic") {
  const auto r1 = enumerate_search(windowed(g1, 5, 1), full_partition(windowed(g1, 5, 1)));
  CHECK(polys(r1) == std::vector<IntPoly>{g1});
  // e2 is pinned to 0 by the 576 box; e3 = -13040 sits 3 inside the 13043 edge.
  CHECK(stage(r1, "enumerated") == 6 * 11 * 11);
  CHECK(stage(r1, "dedup") == 1);

  const auto r2 = enumerate_search(windowed(g2, 3, 3), full_partition(windowed(g2, 3, 3)));
  CHECK(polys(r2) == std::vector<IntPoly>{g2});
  const auto r3 = enumerate_search(windowed(g3, 3, 0), full_partition(windowed(g3, 3, 0)));
  CHECK(polys(r3) == std::vector<IntPoly>{g3});
  CHECK(r1.candidates[0].irreducibility.status == numberfield::Irreducibility::Proven);
}

TEST_CASE("impossible target yields nothing") {
  auto s = windowed(g1, 2, std::nullopt);
  s.target = 7 * 7 * 7 * 7;
  const auto r = enumerate_search(s, full_partition(s));
  CHECK(r.candidates.empty());
  CHECK(stage(r, "discriminant-shape") == 0);
}

TEST_CASE("pruned and unpruned enumeration agree") {
  auto s = base_spec(std::nullopt, 0);
  s.window = {Range{0, 0}, Range{-13040, -13040}, Range{-117360 - 600, -117360 + 600},
              Range{-307744 - 600, -307744 + 600}};
  const auto pruned = enumerate_search(s, full_partition(s));
  const auto brute = enumerate_unpruned(s, full_partition(s));
  CHECK(polys(pruned) == polys(brute));
  CHECK(polys(pruned) == std::vector<IntPoly>{g1});
  CHECK(stage(brute, "visited") == 1201 * 1201);
  CHECK(stage(brute, "enumerated") == stage(pruned, "enumerated"));
}

TEST_CASE("merging partitions") {
  const auto s = windowed(g1, 3, 1);
  const auto whole = enumerate_search(s, full_partition(s));
  const auto halves = split_partition(full_partition(s), 2);
  REQUIRE(halves.size() == 2);
  const auto a = enumerate_search(s, halves[0]);
  const auto b = enumerate_search(s, halves[1]);
  const auto ab = merge_results({a, b});
  const auto ba = merge_results({b, a});
  CHECK(polys(ab) == polys(whole));
  CHECK(ab.to_json().dump() == ba.to_json().dump());
  CHECK(stage(ab, "enumerated") == stage(whole, "enumerated"));
  CHECK_THROWS_AS(merge_results({a, a}), Error);
  CHECK(merge_results({}).candidates.empty());

  const auto back = SearchResult::from_json(ab.to_json());
  CHECK(back.to_json().dump() == ab.to_json().dump());
}

TEST_CASE("threads and checkpoints do not change results") {
  const auto s = windowed(g1, 3, std::nullopt);
  const auto one = run_search(s, full_partition(s), 1);
  const auto four = run_search(s, full_partition(s), 4);
  CHECK(one.to_json().dump() == four.to_json().dump());
  CHECK(polys(one) == std::vector<IntPoly>{g1});

  const auto path = std::filesystem::temp_directory_path() / "galrep_hunter_checkpoint.json";
  std::filesystem::remove(path);
  const auto first = run_search(s, full_partition(s), 2, path);
  CHECK(std::filesystem::exists(path));
  const auto resumed = run_search(s, full_partition(s), 3, path);
  CHECK(resumed.to_json().dump() == one.to_json().dump());
  CHECK(first.to_json().dump() == one.to_json().dump());
  auto other = s;
  other.target = kTarget * 4;
  CHECK_THROWS_AS(run_search(other, full_partition(other), 1, path), Error);
  std::filesystem::remove(path);
}

TEST_CASE("search spec JSON") {
  auto s = windowed(g1, 1, 1);
  const auto back = SearchSpec::from_json(s.to_json());
  CHECK(back.to_json() == s.to_json());
  nlohmann::json bad = s.to_json();
  bad["target"] = "-5";
  CHECK_THROWS_AS(SearchSpec::from_json(bad), Error);
  bad = s.to_json();
  bad["congruences"] = nlohmann::json::array({{{"p", 5}}, {{"p", 5}}});
  CHECK_THROWS_AS(SearchSpec::from_json(bad), Error);
}
