#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "galrep/algebra/int_poly.hpp"
#include "galrep/algebra/real.hpp"
#include "galrep/numberfield/numberfield.hpp"
#include "json.hpp"

namespace galrep::hunter {

using algebra::BigInt;
using algebra::IntPoly;
using algebra::Real;

/// Closed integer interval.
struct Range {
  BigInt lo;
  BigInt hi;
  bool empty() const { return lo > hi; }
  bool contains(const BigInt& v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Range&, const Range&) = default;
};

std::optional<Range> intersect(const Range& a, const Range& b);

/// a1^2/n + gamma_{n-1} (|dK|/n)^{1/(n-1)}, at `precision_bits`. Requires
/// 2 <= n <= 9 and 0 <= a1 <= n/2.
Real hunter_t2_bound(int n, const BigInt& dK, int a1, long precision_bits = 128);

/// Bounds |e_k| for the elementary symmetric functions e_1..e_n of the roots,
/// i.e. f = x^n - e1 x^(n-1) + e2 x^(n-2) - ... from |s_1| = a1 and
/// |s_k| <= t2^(k/2), propagated through Newton's identities. Index k-1 holds e_k.
std::vector<Range> coefficient_boxes(const Real& t2, int a1, int n = 5);

/// Monic polynomial with the given elementary symmetric values e_1..e_n.
IntPoly poly_from_elementary(const std::vector<BigInt>& e);
std::vector<BigInt> elementary_from_poly(const IntPoly& f);

struct Congruence {
  long p = 0;
  std::optional<long> a;  // force f = (x - a)^n mod p; every a when unset
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

struct SearchSpec {
  int degree = 5;
  BigInt target;                       // field discriminant, > 0
  std::vector<Congruence> congruences;  // distinct primes
  std::vector<int> a1_values{0, 1, 2};
  std::vector<std::optional<Range>> window;  // optional overrides for e_2..e_n

  void validate() const;
  nlohmann::json to_json() const;
  static SearchSpec from_json(const nlohmann::json& j);
};

/// One block of the e_2..e_n coefficient space, in absolute coordinates.
struct Partition {
  std::string id;
  std::vector<Range> ranges;  // e_2..e_n
};

/// The spec's coefficient space (boxes for the largest allowed a1, clipped by
/// the window) as a single partition with id "all".
Partition full_partition(const SearchSpec& spec);

/// Cuts the partition into up to `parts` disjoint slices along its widest range.
std::vector<Partition> split_partition(const Partition& p, int parts);

struct StageCount {
  std::string stage;
  std::uint64_t count = 0;
  friend bool operator==(const StageCount&, const StageCount&) = default;
};

struct SearchResult {
  std::vector<numberfield::FieldCandidate> candidates;  // sorted, deduped
  std::vector<StageCount> stats;                         // survivors per stage, in filter order
  std::vector<Partition> partitions;                     // what this result covers
  nlohmann::json to_json() const;
  static SearchResult from_json(const nlohmann::json& j);
};

/// Iterates only tuples satisfying the congruences (steps of prod p), then
/// filters: discriminant shape, irreducibility, congruence re-check, field
/// discriminant certificate, fingerprint dedup.
SearchResult enumerate_search(const SearchSpec& spec, const Partition& partition);

/// Same filters, but visits every integer tuple and tests the congruences
/// afterwards. For validating the pruning on small windows.
SearchResult enumerate_unpruned(const SearchSpec& spec, const Partition& partition);

/// Union of results over disjoint partitions; throws Error(InvalidPartitioning)
/// when two partitions overlap.
SearchResult merge_results(const std::vector<SearchResult>& parts);

/// Splits over `threads` workers, resuming from and appending to `checkpoint`
/// (a JSON file of completed partitions) when given.
SearchResult run_search(const SearchSpec& spec, const Partition& partition, int threads,
                        const std::optional<std::filesystem::path>& checkpoint = std::nullopt);

}  // namespace galrep::hunter
