#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace galrep::hecke {

/// Eigenvalues (a(l,1), a(l,2)) in F_5; a(l,0) = a(l,3) = 1 are implicit.
struct EigenPair {
  int a1 = 0;
  int a2 = 0;
  friend bool operator==(const EigenPair&, const EigenPair&) = default;
};

struct EigenSystem {
  std::string name;
  std::map<long, EigenPair> entries;  // keyed by prime l != 5
};

/// 1 + c1 X + c2 X^2 + c3 X^3 over F_5, coefficients in [0, 5).
struct HeckeCubic {
  std::array<int, 4> c{1, 0, 0, 0};
  friend bool operator==(const HeckeCubic&, const HeckeCubic&) = default;
  std::string to_string() const;
};

/// 1 - a1 X + l a2 X^2 - l^3 X^3 mod 5. Throws Error(ExcludedPrime) for l = 5.
HeckeCubic hecke_polynomial(long l, int a1, int a2);

/// Characteristic polynomials of omega^2 + sigma and omega sigma + 1 at Frob_l
/// when tr sigma(Frob_l) = b and det = l.
std::pair<HeckeCubic, HeckeCubic> theta_charpolys(int b, long l);

/// Index pair (i, j), i < j, of systems related by swapping a(l,1) and a(l,2).
struct SystemPair {
  std::size_t first;
  std::size_t second;
  friend bool operator==(const SystemPair&, const SystemPair&) = default;
};

/// The unique perfect matching under the swap relation. Throws
/// Error(PairingFailure) when there is none (with an l witness) or several.
std::vector<SystemPair> pair_systems(const std::vector<EigenSystem>& systems);

struct TraceSystem {
  std::string theta_source;        // system matching omega^2 + sigma
  std::string theta_prime_source;  // system matching omega sigma + 1
  std::map<long, int> b;
};

/// b(l) = a(l,1) - l^2 for the system in the theta role, with all four
/// identities checked at every l. The theta role is detected, not assumed.
/// Throws Error(InconsistentPair) naming the first failing l.
TraceSystem recover_trace(const EigenSystem& x, const EigenSystem& y);

struct OrderEntry {
  std::set<int> gl;   // possible orders in GL_2(F_5)
  std::set<int> pgl;  // possible orders in PGL_2(F_5) = S_5
  friend bool operator==(const OrderEntry&, const OrderEntry&) = default;
};

struct OrderPrediction {
  std::string source;
  std::map<long, OrderEntry> entries;
};

/// Per l: order sets for charpoly X^2 - b(l) X + l. Primes 5 and 163 are skipped.
OrderPrediction predict_orders(const TraceSystem& t);

}  // namespace galrep::hecke
