#include "galrep/resolvent/resolvent.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/complex_roots.hpp"
#include "galrep/error.hpp"
#include "galrep/numberfield/numberfield.hpp"

namespace galrep::resolvent {

using algebra::BigInt;
using algebra::Real;

namespace {

Perm5 compose(const Perm5& a, const Perm5& b) {
  Perm5 r{};
  for (int i = 0; i < 5; ++i) r[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(b[static_cast<std::size_t>(i)])];
  return r;
}

// Pairs (j, k) multiplying x_i^2 in each term, 0-indexed.
constexpr std::array<std::array<std::array<int, 2>, 2>, 5> kTerms = {{
    {{{1, 4}, {2, 3}}},
    {{{0, 2}, {3, 4}}},
    {{{0, 4}, {1, 3}}},
    {{{0, 1}, {2, 4}}},
    {{{0, 3}, {1, 2}}},
}};

template <typename T>
T theta_generic(std::span<const T> x, T zero) {
  if (x.size() != 5) throw Error(ErrorCode::InvalidArgument, "theta takes five values");
  T sum = zero;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& t = kTerms[i];
    T pairs = x[static_cast<std::size_t>(t[0][0])] * x[static_cast<std::size_t>(t[0][1])];
    pairs = pairs + x[static_cast<std::size_t>(t[1][0])] * x[static_cast<std::size_t>(t[1][1])];
    sum = sum + x[i] * x[i] * pairs;
  }
  return sum;
}

}  // namespace

const std::vector<Perm5>& frobenius_group() {
  static const std::vector<Perm5> group = [] {
    const Perm5 c{1, 2, 3, 4, 0};  // (12345)
    const Perm5 d{0, 2, 4, 1, 3};  // (2354)
    std::set<Perm5> seen{{0, 1, 2, 3, 4}};
    std::vector<Perm5> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<Perm5> next;
      for (const auto& p : frontier) {
        for (const auto& g : {c, d}) {
          const auto q = compose(p, g);
          if (seen.insert(q).second) next.push_back(q);
        }
      }
      frontier = std::move(next);
    }
    return std::vector<Perm5>(seen.begin(), seen.end());
  }();
  return group;
}

const std::vector<Perm5>& coset_representatives() {
  static const std::vector<Perm5> reps = [] {
    std::vector<Perm5> out;
    std::set<Perm5> covered;
    Perm5 s{0, 1, 2, 3, 4};
    do {
      if (covered.count(s)) continue;
      out.push_back(s);
      for (const auto& h : frobenius_group()) covered.insert(compose(s, h));
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
  }();
  return reps;
}

Complex theta(std::span<const Complex> x) {
  if (x.empty()) throw Error(ErrorCode::InvalidArgument, "theta takes five values");
  return theta_generic<Complex>(x, Complex(x[0].precision()));
}

long theta(std::span<const long> x) { return theta_generic<long>(x, 0L); }

Resolvent resolvent_from_roots(std::span<const Complex> roots, double tolerance) {
  if (roots.size() != 5) throw Error(ErrorCode::InvalidArgument, "resolvent needs five roots");
  const long prec = roots[0].precision();
  std::vector<Complex> poly{Complex(Real(1, prec), Real(0, prec))};  // ascending
  for (const auto& s : coset_representatives()) {
    std::vector<Complex> permuted;
    for (int i : s) permuted.push_back(roots[static_cast<std::size_t>(i)]);
    const Complex t = theta(permuted);
    std::vector<Complex> next(poly.size() + 1, Complex(prec));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * t;
    }
    poly = std::move(next);
  }

  Resolvent out;
  out.precision_bits = prec;
  std::vector<BigInt> coeffs;
  Real worst(0, 53);
  for (const auto& c : poly) {
    const BigInt r = c.re.round();
    const Real err = max(abs(c.re - Real(r, prec)), abs(c.im));
    if (err > worst) worst = err;
    coeffs.push_back(r);
  }
  out.max_residual = worst.to_double();
  if (!(out.max_residual <= tolerance)) {
    throw Error(ErrorCode::PrecisionFailure,
                "resolvent coefficient off an integer by " + worst.to_string(6) + " at " + std::to_string(prec) + " bits");
  }
  out.poly = IntPoly(std::move(coeffs));
  return out;
}

Resolvent sextic_resolvent(const IntPoly& q, long precision_bits, long max_bits) {
  if (q.degree() != 5 || !q.is_monic()) throw Error(ErrorCode::InvalidArgument, "resolvent needs a monic quintic");
  if (!algebra::is_squarefree(q)) throw Error(ErrorCode::InvalidArgument, "resolvent needs a squarefree quintic");
  if (numberfield::certify_irreducible(q).status == numberfield::Irreducibility::Reducible) {
    throw Error(ErrorCode::InvalidArgument, "resolvent input is reducible");
  }
  std::string last;
  for (long bits = precision_bits; bits <= max_bits; bits *= 2) {
    try {
      const auto approx = algebra::complex_roots(q, bits);
      std::vector<Complex> roots;
      for (const auto& a : approx) roots.push_back(a.z);
      auto r = resolvent_from_roots(roots);
      r.precision_bits = bits;
      return r;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionFailure) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::PrecisionFailure, "resolvent failed up to " + std::to_string(max_bits) + " bits: " + last);
}

nlohmann::json SplittingFieldComparison::to_json() const {
  return {{"verdict", verdict == Verdict::CertainlyDifferent ? "certainly-different" : "consistent-up-to-bound"},
          {"witness", witness == 0 ? nlohmann::json(nullptr) : nlohmann::json(witness)},
          {"compared", compared}};
}

SplittingFieldComparison same_splitting_field_heuristic(const IntPoly& f, const IntPoly& g, long prime_bound) {
  SplittingFieldComparison out;
  const auto tf = numberfield::frobenius_table(f, prime_bound);
  const auto tg = numberfield::frobenius_table(g, prime_bound);
  for (const auto& r : tf.records) {
    const auto* s = tg.find(r.l);
    if (!s) continue;
    out.compared.push_back(r.l);
    if (r.order != s->order && out.witness == 0) {
      out.verdict = Verdict::CertainlyDifferent;
      out.witness = r.l;
    }
  }
  return out;
}

}  // namespace galrep::resolvent
