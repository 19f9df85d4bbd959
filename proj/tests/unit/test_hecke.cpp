#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "galrep/error.hpp"
#include "galrep/hecke/hecke.hpp"

using namespace galrep;
using namespace galrep::hecke;

namespace {

const long kPrimes[] = {2, 3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

// Eigenvalue table, rows (a(l,1), a(l,2)) per system.
const int kTable1[6][2][14] = {
    {{4, 4, 1, 0, 3, 4, 0, 0, 2, 0, 1, 4, 1, 0}, {1, 1, 0, 0, 3, 1, 2, 4, 0, 0, 0, 4, 2, 3}},
    {{1, 1, 0, 0, 3, 1, 2, 4, 0, 0, 0, 4, 2, 3}, {4, 4, 1, 0, 3, 4, 0, 0, 2, 0, 1, 4, 1, 0}},
    {{2, 2, 1, 2, 3, 4, 4, 3, 4, 2, 0, 2, 1, 0}, {2, 0, 0, 2, 3, 1, 3, 3, 3, 2, 3, 2, 2, 3}},
    {{2, 0, 0, 2, 3, 1, 3, 3, 3, 2, 3, 2, 2, 3}, {2, 2, 1, 2, 3, 4, 4, 3, 4, 2, 0, 2, 1, 0}},
    {{3, 2, 2, 0, 3, 2, 0, 2, 2, 1, 0, 2, 3, 0}, {4, 0, 2, 0, 3, 2, 2, 0, 0, 1, 3, 2, 3, 3}},
    {{4, 0, 2, 0, 3, 2, 2, 0, 0, 1, 3, 2, 3, 3}, {3, 2, 2, 0, 3, 2, 0, 2, 2, 1, 0, 2, 3, 0}},
};

const int kTable2[3][14] = {
    {0, 0, 2, 4, 4, 0, 4, 1, 1, 4, 2, 3, 2, 1},
    {3, 3, 2, 1, 4, 0, 3, 4, 3, 1, 1, 1, 2, 1},
    {4, 3, 3, 4, 4, 3, 4, 3, 1, 0, 1, 1, 4, 1},
};

std::vector<EigenSystem> table1() {
  std::vector<EigenSystem> out;
  for (int s = 0; s < 6; ++s) {
    EigenSystem e{"a" + std::to_string(s + 1), {}};
    for (int k = 0; k < 14; ++k) e.entries[kPrimes[k]] = {kTable1[s][0][k], kTable1[s][1][k]};
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::vector<int>> derived_rows(const std::vector<EigenSystem>& sys) {
  std::vector<std::vector<int>> rows;
  for (const auto& p : pair_systems(sys)) {
    auto t = recover_trace(sys[p.first], sys[p.second]);
    std::vector<int> row;
    for (long l : kPrimes) row.push_back(t.b.at(l));
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST_CASE("hecke polynomial") {
  CHECK(hecke_polynomial(2, 4, 1) == HeckeCubic{{1, 1, 2, 2}});
  CHECK(hecke_polynomial(2, 0, 0) == HeckeCubic{{1, 0, 0, 2}});
  CHECK(hecke_polynomial(7, 1, 0) == HeckeCubic{{1, 4, 0, 2}});
  CHECK_THROWS_AS(hecke_polynomial(5, 1, 1), Error);
}

TEST_CASE("theta charpolys") {
  auto [t, tp] = theta_charpolys(0, 2);
  CHECK(t == HeckeCubic{{1, 1, 2, 2}});
  // theta' X^2 coefficient is l^3 + l b = 8 = 3; it also equals l * a2(2,2) = 2 * 4 for the a2 system.
  CHECK(tp == HeckeCubic{{1, 4, 3, 2}});
  CHECK(tp == hecke_polynomial(2, 1, 4));
  CHECK(theta_charpolys(3, 3).first == HeckeCubic{{1, 3, 0, 3}});
  for (long l : kPrimes) CHECK(theta_charpolys(0, l).first.c[1] == (5 - l * l % 5) % 5);
  CHECK_THROWS_AS(theta_charpolys(1, 5), Error);
}

TEST_CASE("theta charpolys factor as claimed") {
  // (1 - bX + lX^2)(1 - l^2 X) and (1 - lbX + l^3X^2)(1 - X), expanded independently.
  for (long l : kPrimes) {
    for (int b = 0; b < 5; ++b) {
      auto mul = [](std::array<long, 3> p, std::array<long, 2> q) {
        std::array<int, 4> r{};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 2; ++j) r[static_cast<std::size_t>(i + j)] += static_cast<int>(((p[i] * q[j]) % 5 + 5) % 5);
        for (auto& x : r) x %= 5;
        return r;
      };
      auto [t, tp] = theta_charpolys(b, l);
      CHECK(t.c == mul({1, -b, l}, {1, -l * l}));
      CHECK(tp.c == mul({1, -l * b, l * l * l}, {1, -1}));
    }
  }
}

TEST_CASE("pairing of the eigenvalue table") {
  auto sys = table1();
  auto pairs = pair_systems(sys);
  CHECK(pairs == std::vector<SystemPair>{{0, 1}, {2, 3}, {4, 5}});

  std::vector<EigenSystem> same(6, sys[0]);
  for (auto& e : same)
    for (auto& [l, v] : e.entries) v.a2 = v.a1;
  CHECK_THROWS_AS(pair_systems(same), Error);

  auto mutated = sys;
  mutated[2].entries[23].a1 = (mutated[2].entries[23].a1 + 1) % 5;
  try {
    pair_systems(mutated);
    FAIL("expected pairing failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PairingFailure);
    CHECK(std::string(e.what()).find("23") != std::string::npos);
  }
}

TEST_CASE("trace recovery reproduces the printed trace rows") {
  auto sys = table1();
  std::vector<std::vector<int>> printed;
  for (const auto& r : kTable2) printed.emplace_back(std::begin(r), std::end(r));
  std::sort(printed.begin(), printed.end());
  CHECK(derived_rows(sys) == printed);

  auto t1 = recover_trace(sys[0], sys[1]);
  CHECK(t1.theta_source == "a1");
  CHECK(t1.b.at(2) == 0);
  CHECK(recover_trace(sys[3], sys[2]).b.at(2) == 3);
  CHECK(recover_trace(sys[4], sys[5]).b.at(2) == 4);
  CHECK(recover_trace(sys[5], sys[4]).theta_source == "a5");

  // Each pair's systems match the theta / theta' charpolys exactly.
  for (const auto& p : pair_systems(sys)) {
    auto t = recover_trace(sys[p.first], sys[p.second]);
    const auto& th = t.theta_source == sys[p.first].name ? sys[p.first] : sys[p.second];
    const auto& tp = t.theta_source == sys[p.first].name ? sys[p.second] : sys[p.first];
    for (long l : kPrimes) {
      auto [ct, ctp] = theta_charpolys(t.b.at(l), l);
      CHECK(hecke_polynomial(l, th.entries.at(l).a1, th.entries.at(l).a2) == ct);
      CHECK(hecke_polynomial(l, tp.entries.at(l).a1, tp.entries.at(l).a2) == ctp);
    }
  }

  auto broken = sys;
  broken[0].entries[13].a2 = (broken[0].entries[13].a2 + 2) % 5;
  broken[1].entries[13].a1 = broken[0].entries[13].a2;
  try {
    recover_trace(broken[0], broken[1]);
    FAIL("expected inconsistent pair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentPair);
    CHECK(std::string(e.what()).find("13") != std::string::npos);
  }
}

TEST_CASE("order predictions") {
  TraceSystem t{"x", "y", {{2, 4}, {19, 4}, {41, 3}, {5, 1}}};
  auto p = predict_orders(t);
  CHECK(p.entries.at(2).gl == std::set<int>{24});
  CHECK(p.entries.at(19).gl == std::set<int>{4, 20});
  CHECK(p.entries.at(41).gl == std::set<int>{2, 10});
  CHECK(!p.entries.count(5));
  // Size 2 exactly when b^2 - 4l = 0 mod 5.
  for (long l : kPrimes) {
    for (int b = 0; b < 5; ++b) {
      auto q = predict_orders(TraceSystem{"x", "y", {{l, b}}});
      CHECK((q.entries.at(l).gl.size() == 2) == (((b * b - 4 * l) % 5 + 5) % 5 == 0));
    }
  }
}
