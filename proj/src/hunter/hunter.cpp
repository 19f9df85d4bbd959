#include "galrep/hunter/hunter.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/poly_json.hpp"
#include "galrep/error.hpp"

namespace galrep::hunter {

namespace {

constexpr int kCheckpointSlices = 16;

const std::vector<std::string> kStages = {"enumerated", "discriminant-shape", "irreducible",
                                          "congruence", "field-discriminant", "dedup"};

// Hermite constants gamma_d^d for d = 1..8, as exact rationals num/den.
constexpr std::array<std::pair<long, long>, 8> kHermitePow = {
    {{1, 1}, {4, 3}, {2, 1}, {4, 1}, {8, 1}, {64, 3}, {64, 1}, {256, 1}}};

BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt floor_of(const Real& x) {
  BigInt r;
  mpfr_get_z(r.get_mpz_t(), x.get(), MPFR_RNDD);
  return r;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Smallest v >= lo with v = r mod m.
BigInt first_at_least(const BigInt& lo, const BigInt& r, const BigInt& m) {
  return lo + mod(r - lo, m);
}

BigInt range_size(const Range& r) { return r.empty() ? BigInt(0) : BigInt(r.hi - r.lo + 1); }

std::vector<long> target_primes(const BigInt& target) {
  const auto fac = algebra::factor_integer(target);
  if (!fac.complete) throw Error(ErrorCode::InvalidArgument, "target discriminant could not be factored");
  std::vector<long> out;
  for (const auto& [p, e] : fac.factors) {
    if (!p.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "target prime too large");
    out.push_back(p.get_si());
  }
  return out;
}

// Residues (e_1..e_n mod p) of (x - a)^n, one vector per admissible a.
std::vector<std::vector<long>> forced_residues(const Congruence& c, int n) {
  std::set<std::vector<long>> out;
  const BigInt p(c.p);
  for (long a = 0; a < c.p; ++a) {
    if (c.a && *c.a != a) continue;
    std::vector<long> res;
    for (int k = 1; k <= n; ++k) {
      res.push_back(mod(binomial(n, k) * algebra::pow(BigInt(a), static_cast<unsigned long>(k)), p).get_si());
    }
    out.insert(res);
  }
  return {out.begin(), out.end()};
}

bool lex_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

std::vector<numberfield::FieldCandidate> dedup(std::vector<numberfield::FieldCandidate> in) {
  std::sort(in.begin(), in.end(), [](const auto& x, const auto& y) { return lex_less(x.poly, y.poly); });
  std::vector<numberfield::FieldCandidate> kept;
  for (auto& c : in) {
    const bool dup = std::any_of(kept.begin(), kept.end(),
                                 [&](const auto& k) { return numberfield::likely_isomorphic(k.fp, c.fp); });
    if (!dup) kept.push_back(std::move(c));
  }
  return kept;
}

class Filter {
 public:
  explicit Filter(const SearchSpec& spec) : spec_(spec), ram_(target_primes(spec.target)) {
    for (const auto& s : kStages) counts_.push_back({s, 0});
  }

  void consider(const IntPoly& f) {
    ++counts_[0].count;
    const BigInt disc = algebra::discriminant(f);
    if (disc == 0 || sgn(disc) != sgn(spec_.target)) return;
    if (!mpz_divisible_p(disc.get_mpz_t(), spec_.target.get_mpz_t())) return;
    BigInt q;
    mpz_divexact(q.get_mpz_t(), disc.get_mpz_t(), spec_.target.get_mpz_t());
    if (!algebra::is_perfect_square(q)) return;
    ++counts_[1].count;

    auto irr = numberfield::certify_irreducible(f);
    if (irr.status != numberfield::Irreducibility::Proven) return;
    ++counts_[2].count;

    for (const auto& c : spec_.congruences) {
      const auto a = numberfield::total_ram_congruence(f, c.p);
      if (!a || (c.a && *c.a != *a)) return;
    }
    ++counts_[3].count;

    if (!numberfield::certify_discriminant(f, spec_.target, ram_)) return;
    ++counts_[4].count;

    numberfield::FieldCandidate cand;
    cand.poly = f;
    cand.poly_discriminant = disc;
    cand.field_discriminant = spec_.target;
    cand.fp = numberfield::fingerprint(f, 25, spec_.target);
    cand.irreducibility = std::move(irr);
    found_.push_back(std::move(cand));
  }

  SearchResult finish(const Partition& partition, std::vector<StageCount> prefix = {}) {
    SearchResult r;
    r.candidates = dedup(std::move(found_));
    counts_.back().count = r.candidates.size();
    r.stats = std::move(prefix);
    r.stats.insert(r.stats.end(), counts_.begin(), counts_.end());
    r.partitions = {partition};
    return r;
  }

 private:
  const SearchSpec& spec_;
  std::vector<long> ram_;
  std::vector<StageCount> counts_;
  std::vector<numberfield::FieldCandidate> found_;
};

// Odometer over e_2..e_n: values in ranges[i] congruent to residues[i] mod m.
void for_each_tuple(const std::vector<Range>& ranges, const std::vector<BigInt>& residues, const BigInt& m,
                    const std::function<void(const std::vector<BigInt>&)>& visit) {
  const std::size_t d = ranges.size();
  std::vector<BigInt> start(d), cur(d);
  for (std::size_t i = 0; i < d; ++i) {
    start[i] = first_at_least(ranges[i].lo, residues[i], m);
    if (start[i] > ranges[i].hi) return;
  }
  cur = start;
  while (true) {
    visit(cur);
    std::size_t i = d;
    while (i > 0) {
      --i;
      cur[i] += m;
      if (cur[i] <= ranges[i].hi) break;
      cur[i] = start[i];
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

// Partition ranges clipped to the boxes for a1 and the spec window; nullopt if empty.
std::optional<std::vector<Range>> clipped_ranges(const SearchSpec& spec, const Partition& part, int a1,
                                                 std::vector<Range>& boxes) {
  boxes = coefficient_boxes(hunter_t2_bound(spec.degree, spec.target, a1), a1, spec.degree);
  if (!boxes[0].contains(BigInt(a1))) return std::nullopt;
  std::vector<Range> out;
  for (int k = 2; k <= spec.degree; ++k) {
    const auto idx = static_cast<std::size_t>(k - 2);
    auto r = intersect(part.ranges.at(idx), boxes[static_cast<std::size_t>(k - 1)]);
    if (r && idx < spec.window.size() && spec.window[idx]) r = intersect(*r, *spec.window[idx]);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

std::vector<BigInt> full_tuple(int a1, const std::vector<BigInt>& tail) {
  std::vector<BigInt> e{BigInt(a1)};
  e.insert(e.end(), tail.begin(), tail.end());
  return e;
}

bool ranges_overlap(const Partition& a, const Partition& b) {
  if (a.ranges.size() != b.ranges.size()) return false;
  for (std::size_t i = 0; i < a.ranges.size(); ++i) {
    if (!intersect(a.ranges[i], b.ranges[i])) return false;
  }
  return true;
}

nlohmann::json range_to_json(const Range& r) {
  return nlohmann::json::array({algebra::bigint_to_json(r.lo), algebra::bigint_to_json(r.hi)});
}

Range range_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::Schema, "range must be [lo, hi]");
  return Range{algebra::bigint_from_json(j[0]), algebra::bigint_from_json(j[1])};
}

nlohmann::json partition_to_json(const Partition& p) {
  nlohmann::json j{{"id", p.id}, {"ranges", nlohmann::json::array()}};
  for (const auto& r : p.ranges) j["ranges"].push_back(range_to_json(r));
  return j;
}

Partition partition_from_json(const nlohmann::json& j) {
  Partition p;
  p.id = j.at("id").get<std::string>();
  for (const auto& r : j.at("ranges")) p.ranges.push_back(range_from_json(r));
  return p;
}

}  // namespace

std::optional<Range> intersect(const Range& a, const Range& b) {
  Range r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.empty()) return std::nullopt;
  return r;
}

Real hunter_t2_bound(int n, const BigInt& dK, int a1, long precision_bits) {
  if (n < 2 || n > 9) throw Error(ErrorCode::Unsupported, "Hunter bound implemented for degrees 2..9");
  if (a1 < 0 || 2 * a1 > n) throw Error(ErrorCode::InvalidArgument, "a1 must lie in [0, n/2]");
  if (dK == 0) throw Error(ErrorCode::InvalidArgument, "discriminant must be nonzero");
  const auto [hn, hd] = kHermitePow[static_cast<std::size_t>(n - 2)];
  const long prec = precision_bits;
  // gamma_{n-1} (|dK|/n)^{1/(n-1)} = (gamma^{n-1} |dK| / n)^{1/(n-1)}
  Real base = Real(BigInt(abs(dK)) * hn, prec) / Real(BigInt(hd) * n, prec);
  Real root = pow(base, Real(1, prec) / Real(n - 1, prec));
  return Real(a1 * a1, prec) / Real(n, prec) + root;
}

std::vector<Range> coefficient_boxes(const Real& t2, int a1, int n) {
  if (t2 < Real(0, t2.precision())) throw Error(ErrorCode::InvalidArgument, "t2 must be nonnegative");
  const long prec = t2.precision();
  std::vector<Real> s(static_cast<std::size_t>(n) + 1, Real(prec));
  s[1] = Real(std::abs(a1), prec);
  for (int k = 2; k <= n; ++k) s[static_cast<std::size_t>(k)] = pow(t2, Real(k, prec) / Real(2, prec));
  // |e_k| <= (1/k) sum_i |e_{k-i}| |s_i|, floored since e_k is an integer.
  std::vector<BigInt> e(static_cast<std::size_t>(n) + 1);
  e[0] = 1;
  std::vector<Range> out;
  for (int k = 1; k <= n; ++k) {
    Real acc(0, prec);
    for (int i = 1; i <= k; ++i) acc += Real(e[static_cast<std::size_t>(k - i)], prec) * s[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(k)] = floor_of(acc / Real(k, prec));
    if (k == 1) e[1] = std::abs(a1);
    out.push_back(Range{-e[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]});
  }
  return out;
}

IntPoly poly_from_elementary(const std::vector<BigInt>& e) {
  const std::size_t n = e.size();
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) c[n - k] = (k % 2 == 1) ? BigInt(-e[k - 1]) : e[k - 1];
  return IntPoly(std::move(c));
}

std::vector<BigInt> elementary_from_poly(const IntPoly& f) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidArgument, "elementary_from_poly needs a monic polynomial");
  const int n = f.degree();
  std::vector<BigInt> e;
  for (int k = 1; k <= n; ++k) {
    const BigInt c = f.coeff(n - k);
    e.push_back(k % 2 == 1 ? BigInt(-c) : c);
  }
  return e;
}

void SearchSpec::validate() const {
  if (degree < 2 || degree > 9) throw Error(ErrorCode::Unsupported, "search degree must be in 2..9");
  if (target <= 0) throw Error(ErrorCode::InvalidArgument, "target discriminant must be positive");
  std::set<long> seen;
  for (const auto& c : congruences) {
    if (!algebra::is_prime(c.p)) throw Error(ErrorCode::InvalidArgument, "congruence modulus must be prime");
    if (!seen.insert(c.p).second) throw Error(ErrorCode::InvalidArgument, "congruence primes must be distinct");
    if (c.a && (*c.a < 0 || *c.a >= c.p)) throw Error(ErrorCode::InvalidArgument, "forced root out of range");
  }
  for (int a1 : a1_values) {
    if (a1 < 0 || 2 * a1 > degree) throw Error(ErrorCode::InvalidArgument, "a1 must lie in [0, n/2]");
  }
  if (window.size() > static_cast<std::size_t>(degree - 1)) {
    throw Error(ErrorCode::InvalidArgument, "window has more entries than coefficients");
  }
}

nlohmann::json SearchSpec::to_json() const {
  nlohmann::json j{{"degree", degree}, {"target", algebra::to_string(target)}, {"a1", a1_values}};
  j["congruences"] = nlohmann::json::array();
  for (const auto& c : congruences) {
    nlohmann::json e{{"p", c.p}};
    if (c.a) e["a"] = *c.a;
    j["congruences"].push_back(e);
  }
  j["window"] = nlohmann::json::array();
  for (const auto& w : window) j["window"].push_back(w ? range_to_json(*w) : nlohmann::json(nullptr));
  return j;
}

SearchSpec SearchSpec::from_json(const nlohmann::json& j) {
  try {
    SearchSpec s;
    s.degree = j.value("degree", 5);
    s.target = algebra::bigint_from_json(j.at("target"));
    if (j.contains("a1")) s.a1_values = j.at("a1").get<std::vector<int>>();
    for (const auto& c : j.value("congruences", nlohmann::json::array())) {
      Congruence cg;
      cg.p = c.at("p").get<long>();
      if (c.contains("a") && !c.at("a").is_null()) cg.a = c.at("a").get<long>();
      s.congruences.push_back(cg);
    }
    for (const auto& w : j.value("window", nlohmann::json::array())) {
      s.window.push_back(w.is_null() ? std::nullopt : std::optional<Range>(range_from_json(w)));
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("search spec: ") + e.what());
  }
}

Partition full_partition(const SearchSpec& spec) {
  spec.validate();
  const int a1 = *std::max_element(spec.a1_values.begin(), spec.a1_values.end());
  const auto boxes = coefficient_boxes(hunter_t2_bound(spec.degree, spec.target, a1), a1, spec.degree);
  Partition p{"all", {}};
  for (int k = 2; k <= spec.degree; ++k) {
    const auto idx = static_cast<std::size_t>(k - 2);
    Range r = boxes[static_cast<std::size_t>(k - 1)];
    if (idx < spec.window.size() && spec.window[idx]) {
      r = intersect(r, *spec.window[idx]).value_or(Range{BigInt(1), BigInt(0)});
    }
    p.ranges.push_back(r);
  }
  return p;
}

std::vector<Partition> split_partition(const Partition& p, int parts) {
  if (parts < 1) throw Error(ErrorCode::InvalidArgument, "parts must be positive");
  std::size_t widest = 0;
  for (std::size_t i = 1; i < p.ranges.size(); ++i) {
    if (range_size(p.ranges[i]) > range_size(p.ranges[widest])) widest = i;
  }
  const BigInt total = p.ranges.empty() ? BigInt(0) : range_size(p.ranges[widest]);
  const BigInt k = std::min(BigInt(parts), std::max(total, BigInt(1)));
  std::vector<Partition> out;
  BigInt lo = p.ranges.empty() ? BigInt(0) : p.ranges[widest].lo;
  for (long i = 0; i < k.get_si(); ++i) {
    Partition q = p;
    q.id = p.id + "." + std::to_string(i);
    if (!p.ranges.empty()) {
      const BigInt len = total / k + (BigInt(i) < total % k ? 1 : 0);
      q.ranges[widest] = Range{lo, lo + len - 1};
      lo += len;
    }
    out.push_back(std::move(q));
  }
  return out;
}

SearchResult enumerate_search(const SearchSpec& spec, const Partition& partition) {
  spec.validate();
  Filter filter(spec);
  const int n = spec.degree;
  for (int a1 : spec.a1_values) {
    std::vector<Range> boxes;
    const auto ranges = clipped_ranges(spec, partition, a1, boxes);
    if (!ranges) continue;

    // Combine the residue choices prime by prime (CRT), keeping e_1 = a1.
    std::vector<std::pair<std::vector<BigInt>, BigInt>> combos{{std::vector<BigInt>(static_cast<std::size_t>(n), 0), 1}};
    for (const auto& c : spec.congruences) {
      std::vector<std::pair<std::vector<BigInt>, BigInt>> next;
      const BigInt p(c.p);
      for (const auto& res : forced_residues(c, n)) {
        if (mod(BigInt(a1), p) != res[0]) continue;
        for (const auto& [r, m] : combos) {
          std::vector<BigInt> merged(static_cast<std::size_t>(n));
          for (std::size_t k = 0; k < merged.size(); ++k) {
            // x = r mod m, x = res mod p
            BigInt inv;
            mpz_invert(inv.get_mpz_t(), BigInt(m % p).get_mpz_t(), p.get_mpz_t());
            merged[k] = r[k] + m * mod((BigInt(res[k]) - r[k]) * inv, p);
          }
          next.emplace_back(std::move(merged), m * p);
        }
      }
      combos = std::move(next);
    }
    for (const auto& [res, m] : combos) {
      const std::vector<BigInt> tail(res.begin() + 1, res.end());
      for_each_tuple(*ranges, tail, m, [&](const std::vector<BigInt>& t) {
        filter.consider(poly_from_elementary(full_tuple(a1, t)));
      });
    }
  }
  return filter.finish(partition);
}

SearchResult enumerate_unpruned(const SearchSpec& spec, const Partition& partition) {
  spec.validate();
  Filter filter(spec);
  const int n = spec.degree;
  std::vector<std::pair<long, std::set<std::vector<long>>>> allowed;
  for (const auto& c : spec.congruences) {
    const auto r = forced_residues(c, n);
    allowed.emplace_back(c.p, std::set<std::vector<long>>(r.begin(), r.end()));
  }
  StageCount visited{"visited", 0};
  for (int a1 : spec.a1_values) {
    std::vector<Range> boxes;
    const auto ranges = clipped_ranges(spec, partition, a1, boxes);
    if (!ranges) continue;
    std::vector<BigInt> zero(ranges->size(), 0);
    for_each_tuple(*ranges, zero, BigInt(1), [&](const std::vector<BigInt>& t) {
      ++visited.count;
      const auto e = full_tuple(a1, t);
      for (const auto& [p, set] : allowed) {
        std::vector<long> res;
        for (const auto& v : e) res.push_back(mod(v, BigInt(p)).get_si());
        if (!set.count(res)) return;
      }
      filter.consider(poly_from_elementary(e));
    });
  }
  return filter.finish(partition, {visited});
}

nlohmann::json SearchResult::to_json() const {
  nlohmann::json j;
  j["candidates"] = nlohmann::json::array();
  for (const auto& c : candidates) {
    j["candidates"].push_back({{"poly", algebra::poly_to_json(c.poly)},
                               {"poly_discriminant", algebra::to_string(c.poly_discriminant)},
                               {"field_discriminant", c.field_discriminant ? nlohmann::json(algebra::to_string(*c.field_discriminant))
                                                                           : nlohmann::json(nullptr)},
                               {"irreducibility", c.irreducibility.to_json()},
                               {"fingerprint", c.fp.to_json()}});
  }
  j["stats"] = nlohmann::json::array();
  for (const auto& s : stats) j["stats"].push_back({{"stage", s.stage}, {"count", s.count}});
  j["partitions"] = nlohmann::json::array();
  for (const auto& p : partitions) j["partitions"].push_back(partition_to_json(p));
  return j;
}

SearchResult SearchResult::from_json(const nlohmann::json& j) {
  try {
    SearchResult r;
    for (const auto& c : j.at("candidates")) {
      numberfield::FieldCandidate fc;
      fc.poly = algebra::poly_from_json(c.at("poly"));
      fc.poly_discriminant = algebra::discriminant(fc.poly);
      if (!c.at("field_discriminant").is_null()) fc.field_discriminant = algebra::bigint_from_json(c.at("field_discriminant"));
      fc.fp = numberfield::fingerprint(fc.poly, 25, fc.field_discriminant);
      fc.irreducibility = numberfield::certify_irreducible(fc.poly);
      r.candidates.push_back(std::move(fc));
    }
    for (const auto& s : j.at("stats")) r.stats.push_back({s.at("stage").get<std::string>(), s.at("count").get<std::uint64_t>()});
    for (const auto& p : j.at("partitions")) r.partitions.push_back(partition_from_json(p));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("search result: ") + e.what());
  }
}

SearchResult merge_results(const std::vector<SearchResult>& parts) {
  SearchResult out;
  std::vector<numberfield::FieldCandidate> all;
  std::vector<std::string> order;
  std::map<std::string, std::uint64_t> sums;
  for (const auto& r : parts) {
    for (const auto& p : r.partitions) {
      for (const auto& q : out.partitions) {
        if (ranges_overlap(p, q)) {
          throw Error(ErrorCode::InvalidPartitioning, "partitions " + q.id + " and " + p.id + " overlap");
        }
      }
      out.partitions.push_back(p);
    }
    for (const auto& s : r.stats) {
      if (!sums.count(s.stage)) order.push_back(s.stage);
      sums[s.stage] += s.count;
    }
    all.insert(all.end(), r.candidates.begin(), r.candidates.end());
  }
  out.candidates = dedup(std::move(all));
  // Canonical stage order: "visited" (unpruned runs) first, then the filter chain.
  std::vector<std::string> stages;
  if (sums.count("visited")) stages.push_back("visited");
  for (const auto& s : kStages) {
    if (sums.count(s)) stages.push_back(s);
  }
  for (const auto& s : stages) out.stats.push_back({s, s == "dedup" ? out.candidates.size() : sums[s]});
  std::sort(out.partitions.begin(), out.partitions.end(), [](const Partition& a, const Partition& b) {
    for (std::size_t i = 0; i < std::min(a.ranges.size(), b.ranges.size()); ++i) {
      if (a.ranges[i].lo != b.ranges[i].lo) return a.ranges[i].lo < b.ranges[i].lo;
    }
    return a.id < b.id;
  });
  return out;
}

SearchResult run_search(const SearchSpec& spec, const Partition& partition, int threads,
                        const std::optional<std::filesystem::path>& checkpoint) {
  spec.validate();
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be positive");
  // The slicing is fixed so that checkpoints stay valid across thread counts.
  const auto slices = split_partition(partition, kCheckpointSlices);

  std::vector<SearchResult> done;
  std::set<std::string> done_ids;
  if (checkpoint && std::filesystem::exists(*checkpoint)) {
    std::ifstream in(*checkpoint);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Schema, std::string("checkpoint: ") + e.what());
    }
    if (j.at("spec") != spec.to_json()) throw Error(ErrorCode::InvalidArgument, "checkpoint belongs to a different search");
    for (const auto& r : j.at("completed")) {
      done.push_back(SearchResult::from_json(r));
      for (const auto& p : done.back().partitions) done_ids.insert(p.id);
    }
  }

  std::vector<const Partition*> todo;
  for (const auto& s : slices) {
    if (!done_ids.count(s.id)) todo.push_back(&s);
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto save = [&] {
    if (!checkpoint) return;
    nlohmann::json j{{"spec", spec.to_json()}, {"completed", nlohmann::json::array()}};
    for (const auto& r : done) j["completed"].push_back(r.to_json());
    const auto tmp = checkpoint->string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, *checkpoint);
  };
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) {
      try {
        auto r = enumerate_search(spec, *todo[i]);
        std::lock_guard lock(mu);
        done.push_back(std::move(r));
        save();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return merge_results(done);
}

}  // namespace galrep::hunter
