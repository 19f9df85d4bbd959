#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galrep/algebra/int_poly.hpp"
#include "galrep/hecke/hecke.hpp"
#include "json.hpp"

namespace galrep::numberfield {

using algebra::BigInt;
using algebra::IntPoly;

struct FrobeniusRecord {
  long l = 0;
  std::vector<int> cycle;  // ascending factor degrees of f mod l
  int order = 0;           // lcm of the cycle type
};

/// Throws Error(InvalidArgument) if l divides lc(f), Error(NotSquarefree) if
/// f mod l has a repeated factor.
FrobeniusRecord frobenius_record(const IntPoly& f, long l);

struct SkippedPrime {
  long l = 0;
  std::string reason;  // "not-squarefree" or "divides-leading-coefficient"
};

struct FrobeniusTable {
  std::vector<FrobeniusRecord> records;
  std::vector<SkippedPrime> skipped;
  const FrobeniusRecord* find(long l) const;
};

/// Records for every prime l < upto, with unusable primes listed and justified.
FrobeniusTable frobenius_table(const IntPoly& f, long upto);

nlohmann::json to_json(const FrobeniusTable& t, const std::string& name);

/// Dedekind criterion: Z[alpha] is maximal at p. Throws for non-monic f.
bool dedekind_p_maximal(const IntPoly& f, long p);

/// v_p([O_K : Z[alpha]]) by Ore's theorem of the index, when every repeated
/// factor of f mod p is linear and its Newton polygon is regular. nullopt otherwise.
std::optional<long> ore_index(const IntPoly& f, long p);

struct LocalValuation {
  long value = 0;      // v_p(d_K)
  std::string method;  // "unramified", "dedekind", "ore", or "ore:alpha^2+a*alpha+b"
};

/// Exact v_p(d_K) for K = Q[x]/(f), f monic irreducible, or nullopt when none of
/// the available criteria decides it.
std::optional<LocalValuation> local_discriminant_valuation(const IntPoly& f, long p);

struct PrimeCertificate {
  BigInt p;
  long poly_valuation = 0;
  std::optional<LocalValuation> field;
  bool ok = false;
};

struct DiscriminantCertificate {
  BigInt poly_discriminant;
  BigInt target;
  bool square_shape = false;   // disc = target * k^2
  BigInt cofactor_root;        // k
  bool cofactor_factored = false;
  std::vector<PrimeCertificate> primes;  // target primes, then primes of k
  std::vector<long> dedekind_failures;   // target primes where Z[alpha] is not maximal
  bool certified = false;                // d_K = target
  nlohmann::json to_json() const;
};

DiscriminantCertificate certify_discriminant_detailed(const IntPoly& f, const BigInt& target,
                                                      const std::vector<long>& ram_primes);

/// True iff disc(f) = target * square and the field discriminant equals target.
bool certify_discriminant(const IntPoly& f, const BigInt& target, const std::vector<long>& ram_primes);

/// a in [0, p) with f = (x - a)^deg f mod p, if any. f must be monic.
std::optional<long> total_ram_congruence(const IntPoly& f, long p);

struct Compatibility {
  bool strong = false;  // observed is a possible PGL order
  bool weak = false;    // observed | n and n / observed | 4 for some possible GL order n
};

Compatibility compatible_orders(int observed, const hecke::OrderEntry& prediction);

struct Fingerprint {
  BigInt discriminant_key;             // squarefree kernel of disc(f), or the certified d_K
  std::map<long, std::vector<int>> patterns;  // first usable primes -> cycle types
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  nlohmann::json to_json() const;
};

/// Deterministic fingerprint over the first `count` usable primes.
Fingerprint fingerprint(const IntPoly& f, int count = 25, std::optional<BigInt> field_discriminant = std::nullopt);

/// Same discriminant key and equal patterns at every common prime (heuristic).
bool likely_isomorphic(const Fingerprint& a, const Fingerprint& b);

enum class Irreducibility { Proven, Reducible, Unproven };

struct IrreducibilityCertificate {
  Irreducibility status = Irreducibility::Unproven;
  std::string method;  // "irreducible mod l", "degree sets", "rational root", ...
  long witness = 0;
  nlohmann::json to_json() const;
};

/// Looks for a prime below 500 with irreducible reduction; failing that, intersects
/// the possible factor degrees over all usable primes.
IrreducibilityCertificate certify_irreducible(const IntPoly& f);

struct FieldCandidate {
  IntPoly poly;
  BigInt poly_discriminant;
  std::optional<BigInt> field_discriminant;
  Fingerprint fp;
  IrreducibilityCertificate irreducibility;
};

}  // namespace galrep::numberfield
