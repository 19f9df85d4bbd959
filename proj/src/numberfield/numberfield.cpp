#include "galrep/numberfield/numberfield.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "galrep/algebra/bigint.hpp"
#include "galrep/algebra/mod_poly.hpp"
#include "galrep/error.hpp"

namespace galrep::numberfield {

using algebra::ModFactor;
using algebra::ModPoly;

namespace {

constexpr long kIrreducibilityPrimeBound = 500;
constexpr long kAlternateRange = 4;

IntPoly lift(const ModPoly& f) {
  std::vector<BigInt> c;
  for (auto r : f.coeffs()) c.emplace_back(static_cast<unsigned long>(r));
  return IntPoly(std::move(c));
}

bool divides(long p, const BigInt& n) { return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) != 0; }

struct Point {
  long x;
  long y;
};

// Lower convex hull of points sorted by x.
std::vector<Point> lower_hull(const std::vector<Point>& pts) {
  std::vector<Point> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      // Drop b if it lies on or above segment a -> pt.
      if ((b.y - a.y) * (pt.x - a.x) >= (pt.y - a.y) * (b.x - a.x)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  return hull;
}

// Index contribution and regularity of the principal polygon of f(x + c) at p,
// where (x - c) has multiplicity e in f mod p.
std::optional<long> linear_factor_index(const IntPoly& f, long c, int e, long p) {
  const IntPoly shifted = f.shift(BigInt(c));
  const BigInt bp(p);
  std::vector<Point> pts;
  std::vector<long> val(static_cast<std::size_t>(e) + 1, -1);
  for (int i = 0; i <= e; ++i) {
    const BigInt a = shifted.coeff(i);
    if (a == 0) continue;  // infinite valuation: not a vertex candidate
    val[static_cast<std::size_t>(i)] = static_cast<long>(algebra::valuation(a, bp));
    pts.push_back({i, val[static_cast<std::size_t>(i)]});
  }
  if (pts.empty() || pts.front().x != 0) return std::nullopt;  // f(c) = 0 exactly
  if (pts.back().x != e || pts.back().y != 0) {
    throw Error(ErrorCode::Internal, "multiplicity mismatch in Newton polygon");
  }
  const auto hull = lower_hull(pts);

  long index = 0;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const Point a = hull[s], b = hull[s + 1];
    const long L = b.x - a.x, H = a.y - b.y;
    // Lattice points with 1 <= y <= polygon, a.x < x <= b.x.
    for (long x = a.x + 1; x <= b.x; ++x) {
      // polygon value a.y - H (x - a.x) / L, floored
      const long num = a.y * L - H * (x - a.x);
      index += num / L;
    }
    // Residual polynomial of the side.
    const long g = std::gcd(L, H);
    const long step = L / g, rise = H / g;
    std::vector<ModPoly::Residue> res;
    for (long j = 0; j <= g; ++j) {
      const long i = a.x + j * step;
      const long expect = a.y - j * rise;
      const long v = val[static_cast<std::size_t>(i)];
      if (v != expect) {
        res.push_back(0);
        continue;
      }
      BigInt q = shifted.coeff(static_cast<int>(i));
      mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), algebra::pow(bp, static_cast<unsigned long>(v)).get_mpz_t());
      res.push_back(mpz_fdiv_ui(q.get_mpz_t(), static_cast<unsigned long>(p)));
    }
    ModPoly r(static_cast<std::uint64_t>(p), std::move(res));
    if (!algebra::is_squarefree(r)) return std::nullopt;
  }
  return index;
}

std::vector<int> subset_sums(const std::vector<int>& parts, int n) {
  std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
  reach[0] = true;
  for (int d : parts) {
    for (int s = n; s >= d; --s) {
      if (reach[static_cast<std::size_t>(s - d)]) reach[static_cast<std::size_t>(s)] = true;
    }
  }
  std::vector<int> out;
  for (int s = 0; s <= n; ++s) {
    if (reach[static_cast<std::size_t>(s)]) out.push_back(s);
  }
  return out;
}

BigInt squarefree_kernel(const BigInt& n) {
  if (n == 0) return 0;
  const auto fac = algebra::factor_integer(n, 100000);
  BigInt k = n < 0 ? -1 : 1;
  for (const auto& [p, e] : fac.factors) {
    if (e % 2 == 1) k *= p;
  }
  if (!fac.complete && !algebra::is_perfect_square(fac.unfactored)) k *= fac.unfactored;
  return k;
}

std::optional<LocalValuation> valuation_from_generator(const IntPoly& f, long p, const std::string& tag) {
  const BigInt d = algebra::discriminant(f);
  if (d == 0) return std::nullopt;
  const long vd = static_cast<long>(algebra::valuation(d, BigInt(p)));
  if (vd == 0) return LocalValuation{0, tag.empty() ? "unramified" : tag};
  if (dedekind_p_maximal(f, p)) return LocalValuation{vd, tag.empty() ? "dedekind" : tag};
  if (auto ind = ore_index(f, p)) return LocalValuation{vd - 2 * *ind, tag.empty() ? "ore" : tag};
  return std::nullopt;
}

}  // namespace

const FrobeniusRecord* FrobeniusTable::find(long l) const {
  for (const auto& r : records) {
    if (r.l == l) return &r;
  }
  return nullptr;
}

FrobeniusRecord frobenius_record(const IntPoly& f, long l) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "frobenius_record needs deg f >= 1");
  if (divides(l, f.lc())) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(l) + " divides the leading coefficient");
  }
  FrobeniusRecord r;
  r.l = l;
  r.cycle = algebra::degree_pattern(ModPoly::reduce(f, static_cast<std::uint64_t>(l)));
  r.order = 1;
  for (int c : r.cycle) r.order = std::lcm(r.order, c);
  return r;
}

FrobeniusTable frobenius_table(const IntPoly& f, long upto) {
  FrobeniusTable t;
  for (long l : algebra::primes_below(upto)) {
    if (divides(l, f.lc())) {
      t.skipped.push_back({l, "divides-leading-coefficient"});
      continue;
    }
    try {
      t.records.push_back(frobenius_record(f, l));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSquarefree) throw;
      t.skipped.push_back({l, "not-squarefree"});
    }
  }
  return t;
}

nlohmann::json to_json(const FrobeniusTable& t, const std::string& name) {
  nlohmann::json j;
  j["poly"] = name;
  j["records"] = nlohmann::json::array();
  for (const auto& r : t.records) j["records"].push_back({{"l", r.l}, {"cycle", r.cycle}, {"order", r.order}});
  j["skipped"] = nlohmann::json::array();
  for (const auto& s : t.skipped) j["skipped"].push_back({{"l", s.l}, {"reason", s.reason}});
  return j;
}

bool dedekind_p_maximal(const IntPoly& f, long p) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidArgument, "Dedekind criterion needs a monic polynomial");
  const auto up = static_cast<std::uint64_t>(p);
  const ModPoly fb = ModPoly::reduce(f, up);
  const auto factors = algebra::factor_mod_p(fb);
  ModPoly gb = ModPoly::constant(up, 1);
  IntPoly g = IntPoly::constant(1);
  for (const auto& fa : factors) {
    gb *= fa.factor;
    g *= lift(fa.factor);
  }
  const ModPoly hb = fb / gb;
  const IntPoly h = lift(hb);
  const IntPoly F = (g * h - f).divexact(BigInt(p));
  const ModPoly Fb = ModPoly::reduce(F, up);
  const ModPoly d = algebra::gcd(algebra::gcd(Fb, gb), hb);
  return d.degree() == 0;
}

std::optional<long> ore_index(const IntPoly& f, long p) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidArgument, "index computation needs a monic polynomial");
  const auto factors = algebra::factor_mod_p(ModPoly::reduce(f, static_cast<std::uint64_t>(p)));
  long total = 0;
  for (const auto& fa : factors) {
    if (fa.multiplicity == 1) continue;
    if (fa.factor.degree() != 1) return std::nullopt;
    const long c = static_cast<long>((static_cast<std::uint64_t>(p) - fa.factor.coeff(0)) % static_cast<std::uint64_t>(p));
    auto ind = linear_factor_index(f, c, fa.multiplicity, p);
    if (!ind) return std::nullopt;
    total += *ind;
  }
  return total;
}

std::optional<LocalValuation> local_discriminant_valuation(const IntPoly& f, long p) {
  if (auto v = valuation_from_generator(f, p, "")) return v;
  // Other generators beta = alpha^2 + a alpha + b of the same field.
  for (long a = 0; a < kAlternateRange; ++a) {
    for (long b = 0; b < kAlternateRange; ++b) {
      const IntPoly h = IntPoly::monomial(2) + IntPoly::monomial(1, a) + IntPoly::constant(b);
      const IntPoly cp = algebra::characteristic_polynomial(f, h);
      const std::string tag = "ore:alpha^2+" + std::to_string(a) + "*alpha+" + std::to_string(b);
      if (auto v = valuation_from_generator(cp, p, tag)) return v;
    }
  }
  return std::nullopt;
}

nlohmann::json DiscriminantCertificate::to_json() const {
  nlohmann::json j;
  j["poly_discriminant"] = algebra::to_string(poly_discriminant);
  j["target"] = algebra::to_string(target);
  j["square_shape"] = square_shape;
  j["cofactor_root"] = algebra::to_string(cofactor_root);
  j["cofactor_factored"] = cofactor_factored;
  j["primes"] = nlohmann::json::array();
  for (const auto& pc : primes) {
    nlohmann::json e{{"p", algebra::to_string(pc.p)}, {"poly_valuation", pc.poly_valuation}, {"ok", pc.ok}};
    if (pc.field) {
      e["field_valuation"] = pc.field->value;
      e["method"] = pc.field->method;
    } else {
      e["field_valuation"] = nullptr;
      e["method"] = "undecided";
    }
    j["primes"].push_back(e);
  }
  j["dedekind_failures"] = dedekind_failures;
  j["certified"] = certified;
  return j;
}

DiscriminantCertificate certify_discriminant_detailed(const IntPoly& f, const BigInt& target,
                                                      const std::vector<long>& ram_primes) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidArgument, "certify_discriminant needs a monic polynomial");
  if (target == 0) throw Error(ErrorCode::InvalidArgument, "target discriminant is zero");
  DiscriminantCertificate c;
  c.poly_discriminant = algebra::discriminant(f);
  c.target = target;
  if (c.poly_discriminant == 0) return c;
  if (!mpz_divisible_p(c.poly_discriminant.get_mpz_t(), target.get_mpz_t())) return c;
  BigInt q;
  mpz_divexact(q.get_mpz_t(), c.poly_discriminant.get_mpz_t(), target.get_mpz_t());
  if (!algebra::is_perfect_square(q)) return c;
  c.square_shape = true;
  mpz_sqrt(c.cofactor_root.get_mpz_t(), q.get_mpz_t());

  bool ok = true;
  for (long p : ram_primes) {
    PrimeCertificate pc;
    pc.p = p;
    pc.poly_valuation = static_cast<long>(algebra::valuation(c.poly_discriminant, BigInt(p)));
    pc.field = local_discriminant_valuation(f, p);
    const long want = static_cast<long>(algebra::valuation(target, BigInt(p)));
    pc.ok = pc.field && pc.field->value == want;
    if (!dedekind_p_maximal(f, p)) c.dedekind_failures.push_back(p);
    ok = ok && pc.ok;
    c.primes.push_back(std::move(pc));
  }
  // Target must be supported on the ramified primes.
  BigInt rest = abs(target);
  for (long p : ram_primes) algebra::strip_prime(rest, BigInt(p));
  ok = ok && rest == 1;

  const auto fac = algebra::factor_integer(c.cofactor_root);
  c.cofactor_factored = fac.complete;
  ok = ok && fac.complete;
  for (const auto& [p, e] : fac.factors) {
    if (std::find(ram_primes.begin(), ram_primes.end(), p.get_si()) != ram_primes.end()) continue;
    PrimeCertificate pc;
    pc.p = p;
    pc.poly_valuation = static_cast<long>(algebra::valuation(c.poly_discriminant, p));
    if (!p.fits_slong_p() || p >= (1L << 31)) {
      ok = false;
      c.primes.push_back(std::move(pc));
      continue;
    }
    pc.field = local_discriminant_valuation(f, p.get_si());
    pc.ok = pc.field && pc.field->value == 0;
    ok = ok && pc.ok;
    c.primes.push_back(std::move(pc));
  }
  c.certified = ok;
  return c;
}

bool certify_discriminant(const IntPoly& f, const BigInt& target, const std::vector<long>& ram_primes) {
  return certify_discriminant_detailed(f, target, ram_primes).certified;
}

std::optional<long> total_ram_congruence(const IntPoly& f, long p) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidArgument, "total_ram_congruence needs a monic polynomial");
  const auto up = static_cast<std::uint64_t>(p);
  const ModPoly fb = ModPoly::reduce(f, up);
  // The x^(n-1) coefficient of (x - a)^n is -n a, which pins a down unless p | n.
  for (long a = 0; a < p; ++a) {
    ModPoly lin(up, {static_cast<std::uint64_t>((p - a) % p), 1});
    ModPoly pw = ModPoly::constant(up, 1);
    for (int i = 0; i < f.degree(); ++i) pw *= lin;
    if (pw == fb) return a;
  }
  return std::nullopt;
}

Compatibility compatible_orders(int observed, const hecke::OrderEntry& prediction) {
  if (observed < 1) throw Error(ErrorCode::InvalidArgument, "observed order must be positive");
  Compatibility c;
  c.strong = prediction.pgl.count(observed) > 0;
  for (int n : prediction.gl) {
    if (n % observed == 0 && 4 % (n / observed) == 0) c.weak = true;
  }
  return c;
}

nlohmann::json Fingerprint::to_json() const {
  nlohmann::json j;
  j["discriminant_key"] = algebra::to_string(discriminant_key);
  nlohmann::json pats = nlohmann::json::object();
  for (const auto& [l, cyc] : patterns) pats[std::to_string(l)] = cyc;
  j["patterns"] = pats;
  return j;
}

Fingerprint fingerprint(const IntPoly& f, int count, std::optional<BigInt> field_discriminant) {
  Fingerprint fp;
  fp.discriminant_key = field_discriminant ? *field_discriminant : squarefree_kernel(algebra::discriminant(f));
  for (long l = 2; static_cast<int>(fp.patterns.size()) < count; ++l) {
    if (!algebra::is_prime(l) || divides(l, f.lc())) continue;
    const ModPoly fb = ModPoly::reduce(f, static_cast<std::uint64_t>(l));
    if (!algebra::is_squarefree(fb)) continue;
    fp.patterns[l] = algebra::degree_pattern(fb);
  }
  return fp;
}

bool likely_isomorphic(const Fingerprint& a, const Fingerprint& b) {
  if (a.discriminant_key != b.discriminant_key) return false;
  for (const auto& [l, cyc] : a.patterns) {
    auto it = b.patterns.find(l);
    if (it != b.patterns.end() && it->second != cyc) return false;
  }
  return true;
}

nlohmann::json IrreducibilityCertificate::to_json() const {
  const char* s = status == Irreducibility::Proven ? "proven" : status == Irreducibility::Reducible ? "reducible" : "unproven";
  return {{"status", s}, {"method", method}, {"witness", witness}};
}

IrreducibilityCertificate certify_irreducible(const IntPoly& input) {
  IrreducibilityCertificate c;
  const IntPoly f = input.is_zero() ? input : input.primitive_part();
  const int n = f.degree();
  if (n < 1) {
    c.status = Irreducibility::Reducible;
    c.method = "constant";
    return c;
  }
  if (n == 1) {
    c.status = Irreducibility::Proven;
    c.method = "linear";
    return c;
  }
  std::set<int> possible;
  for (int s = 0; s <= n; ++s) possible.insert(s);
  long last = 0;
  for (long l : algebra::primes_below(kIrreducibilityPrimeBound)) {
    if (divides(l, f.lc())) continue;
    const ModPoly fb = ModPoly::reduce(f, static_cast<std::uint64_t>(l));
    if (!algebra::is_squarefree(fb)) continue;
    const auto pattern = algebra::degree_pattern(fb);
    if (pattern.size() == 1) {
      c.status = Irreducibility::Proven;
      c.method = "irreducible mod l";
      c.witness = l;
      return c;
    }
    const auto sums = subset_sums(pattern, n);
    std::set<int> next;
    for (int s : sums) {
      if (possible.count(s)) next.insert(s);
    }
    possible = std::move(next);
    last = l;
    if (possible.size() == 2) {
      c.status = Irreducibility::Proven;
      c.method = "degree sets";
      c.witness = l;
      return c;
    }
  }
  if (f.eval(0) == 0) {
    c.status = Irreducibility::Reducible;
    c.method = "rational root 0";
    return c;
  }
  c.method = "no factor degree excluded";
  c.witness = last;
  return c;
}

}  // namespace galrep::numberfield
