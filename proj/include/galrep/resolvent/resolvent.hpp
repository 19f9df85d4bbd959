#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "galrep/algebra/int_poly.hpp"
#include "galrep/algebra/real.hpp"
#include "json.hpp"

namespace galrep::resolvent {

using algebra::Complex;
using algebra::IntPoly;

using Perm5 = std::array<int, 5>;  // images of 0..4

/// The order-20 subgroup generated by (12345) and (2354), sorted.
const std::vector<Perm5>& frobenius_group();

/// Six coset representatives s with S_5 = union of s F20, identity first.
const std::vector<Perm5>& coset_representatives();

/// x1^2(x2x5 + x3x4) + x2^2(x1x3 + x4x5) + x3^2(x1x5 + x2x4)
///   + x4^2(x1x2 + x3x5) + x5^2(x1x4 + x2x3), stabilised by F20.
Complex theta(std::span<const Complex> x);
long theta(std::span<const long> x);

struct Resolvent {
  IntPoly poly;
  double max_residual = 0;  // max |c - round(c)| over the coefficients
  long precision_bits = 0;  // working precision that succeeded
};

/// prod_k (X - theta(x o s_k)) rounded to integers. Throws Error(PrecisionFailure)
/// when some coefficient is farther than `tolerance` from an integer.
Resolvent resolvent_from_roots(std::span<const Complex> roots, double tolerance = 1e-6);

/// Degree-6 resolvent with the same splitting field as the quintic q. Doubles
/// the precision up to `max_bits` when rounding is not clean.
Resolvent sextic_resolvent(const IntPoly& q, long precision_bits = 256, long max_bits = 4096);

enum class Verdict { CertainlyDifferent, ConsistentUpToBound };

struct SplittingFieldComparison {
  Verdict verdict = Verdict::ConsistentUpToBound;
  long witness = 0;              // first l with differing Frobenius orders
  std::vector<long> compared;    // primes usable for both polynomials
  nlohmann::json to_json() const;
};

/// Compares Frobenius orders at every prime below `prime_bound` where both
/// reductions are squarefree.
SplittingFieldComparison same_splitting_field_heuristic(const IntPoly& f, const IntPoly& g, long prime_bound);

}  // namespace galrep::resolvent
