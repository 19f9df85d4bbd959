#include "galrep/hecke/hecke.hpp"

#include <functional>

#include "galrep/error.hpp"
#include "galrep/gl2/gl2.hpp"

namespace galrep::hecke {

using gl2::mod5;

namespace {

void check_prime(long l) {
  if (mod5(l) == 0) throw Error(ErrorCode::ExcludedPrime, "l = " + std::to_string(l) + " is the residue characteristic");
}

// Primes at which x and y violate the swap relation (or where only one is defined).
std::vector<long> swap_mismatches(const EigenSystem& x, const EigenSystem& y) {
  std::vector<long> bad;
  for (const auto& [l, e] : x.entries) {
    auto it = y.entries.find(l);
    if (it == y.entries.end() || e.a1 != it->second.a2 || e.a2 != it->second.a1) bad.push_back(l);
  }
  for (const auto& [l, e] : y.entries) {
    if (!x.entries.count(l)) bad.push_back(l);
  }
  return bad;
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// First prime where the (theta, theta') identities fail, or 0 when all hold.
long first_failure(const EigenSystem& theta, const EigenSystem& theta_prime, std::map<long, int>& b) {
  b.clear();
  for (const auto& [l, e] : theta.entries) {
    auto it = theta_prime.entries.find(l);
    if (it == theta_prime.entries.end()) return l;
    const long l2 = mod5(l * l);
    const int bl = mod5(e.a1 - l2);
    const EigenPair& f = it->second;
    const bool ok = e.a2 == mod5(1 + l * bl) && f.a1 == mod5(l * bl + 1) && f.a2 == mod5(l2 + bl);
    if (!ok) return l;
    b[l] = bl;
  }
  if (theta_prime.entries.size() != theta.entries.size()) return -1;
  return 0;
}

}  // namespace

std::string HeckeCubic::to_string() const {
  std::string s = "1";
  for (int k = 1; k <= 3; ++k) {
    if (c[static_cast<std::size_t>(k)] == 0) continue;
    s += " + " + std::to_string(c[static_cast<std::size_t>(k)]) + "X";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

HeckeCubic hecke_polynomial(long l, int a1, int a2) {
  check_prime(l);
  const long l3 = l % 5 * (l % 5) * (l % 5);
  return HeckeCubic{{1, mod5(-a1), mod5(l * a2), mod5(-l3)}};
}

std::pair<HeckeCubic, HeckeCubic> theta_charpolys(int b, long l) {
  check_prime(l);
  const long lm = mod5(l);
  const long l2 = lm * lm, l3 = l2 * lm;
  HeckeCubic theta{{1, mod5(-(b + l2)), mod5(lm + l2 * b), mod5(-l3)}};
  HeckeCubic theta_prime{{1, mod5(-(lm * b + 1)), mod5(l3 + lm * b), mod5(-l3)}};
  return {theta, theta_prime};
}

std::vector<SystemPair> pair_systems(const std::vector<EigenSystem>& systems) {
  const std::size_t n = systems.size();
  if (n == 0 || n % 2 != 0) {
    throw Error(ErrorCode::PairingFailure, "need an even, nonzero number of systems, got " + std::to_string(n));
  }
  std::vector<std::vector<bool>> compat(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      compat[i][j] = compat[j][i] = swap_mismatches(systems[i], systems[j]).empty();

  std::vector<std::vector<SystemPair>> matchings;
  std::vector<SystemPair> current;
  std::vector<bool> used(n, false);
  std::function<void()> extend = [&] {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      matchings.push_back(current);
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j] || !compat[i][j]) continue;
      used[j] = true;
      current.push_back({i, j});
      extend();
      current.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  extend();

  if (matchings.size() == 1) return matchings.front();
  if (matchings.empty()) {
    // Witness: a system without partner, against its nearest candidate.
    for (std::size_t i = 0; i < n; ++i) {
      bool has_partner = false;
      for (std::size_t j = 0; j < n; ++j) has_partner = has_partner || (i != j && compat[i][j]);
      if (has_partner) continue;
      std::size_t best = n;
      std::vector<long> best_bad;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        auto bad = swap_mismatches(systems[i], systems[j]);
        if (best == n || bad.size() < best_bad.size()) {
          best = j;
          best_bad = std::move(bad);
        }
      }
      throw Error(ErrorCode::PairingFailure, "system " + systems[i].name + " has no swap partner; nearest is " +
                                                 systems[best].name + ", differing at l = " + join(best_bad));
    }
    throw Error(ErrorCode::PairingFailure, "no perfect matching under the swap relation");
  }
  throw Error(ErrorCode::PairingFailure,
              "swap relation admits " + std::to_string(matchings.size()) + " perfect matchings");
}

TraceSystem recover_trace(const EigenSystem& x, const EigenSystem& y) {
  std::map<long, int> bx, by;
  const long fx = first_failure(x, y, bx);
  const long fy = first_failure(y, x, by);
  if (fx == 0 && fy == 0) {
    throw Error(ErrorCode::InconsistentPair, "both orientations of " + x.name + "/" + y.name + " fit");
  }
  if (fx == 0) return TraceSystem{x.name, y.name, std::move(bx)};
  if (fy == 0) return TraceSystem{y.name, x.name, std::move(by)};
  // Report the orientation that survives longer.
  const long witness = (fx < 0 || (fy > 0 && fy > fx)) ? fy : fx;
  throw Error(ErrorCode::InconsistentPair,
              x.name + "/" + y.name + " violate the trace identities at l = " + std::to_string(witness));
}

OrderPrediction predict_orders(const TraceSystem& t) {
  OrderPrediction out;
  out.source = t.theta_source;
  for (const auto& [l, b] : t.b) {
    if (l == 5 || l == 163) continue;
    const auto c = gl2::CharPoly2::make(b, l);
    out.entries[l] = OrderEntry{gl2::orders_for_charpoly(c), gl2::pgl_orders_for_charpoly(c)};
  }
  return out;
}

}  // namespace galrep::hecke
