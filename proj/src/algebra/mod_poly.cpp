#include "galrep/algebra/mod_poly.hpp"

#include <algorithm>
#include <random>

#include "galrep/error.hpp"

namespace galrep::algebra {

namespace {

using Residue = ModPoly::Residue;

void check_same_field(const ModPoly& a, const ModPoly& b) {
  if (a.modulus() != b.modulus()) throw Error(ErrorCode::InvalidArgument, "moduli differ");
}

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) { return (a * b) % m; }

ModPoly pth_root(const ModPoly& f) {
  const std::uint64_t p = f.modulus();
  std::vector<Residue> r;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r.push_back(f.coeff(i));
  return ModPoly(p, std::move(r));
}

void squarefree_decomposition(const ModPoly& f, int scale, std::vector<ModFactor>& out) {
  if (f.degree() < 1) return;
  const std::uint64_t p = f.modulus();
  ModPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_decomposition(pth_root(f), scale * static_cast<int>(p), out);
    return;
  }
  ModPoly c = gcd(f, d);
  ModPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    ModPoly y = gcd(w, c);
    ModPoly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree_decomposition(pth_root(c), scale * static_cast<int>(p), out);
}

// Splits a squarefree monic f into products of irreducibles of equal degree d.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f) {
  std::vector<std::pair<ModPoly, int>> out;
  const std::uint64_t p = f.modulus();
  const ModPoly x = ModPoly::x(p);
  ModPoly h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, BigInt(static_cast<unsigned long>(p)), f);
    ModPoly g = gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), f.degree());
  return out;
}

ModPoly random_poly(std::uint64_t p, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  std::vector<Residue> c(static_cast<std::size_t>(below_degree));
  for (auto& x : c) x = dist(rng);
  return ModPoly(p, std::move(c));
}

void equal_degree(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t p = f.modulus();
  const BigInt q = algebra::pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
  for (;;) {
    ModPoly a = random_poly(p, f.degree(), rng);
    if (a.degree() < 1) continue;
    ModPoly b(p);
    if (p == 2) {
      // Absolute trace to F_2: a + a^2 + ... + a^(2^(d-1)).
      ModPoly t = a % f;
      b = t;
      for (int i = 1; i < d; ++i) {
        t = mulmod(t, t, f);
        b += t;
      }
    } else {
      b = powmod(a, (q - 1) / 2, f) - ModPoly::constant(p, 1);
    }
    ModPoly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = r * a % p;
    a = a * a % p;
    e >>= 1U;
  }
  return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorCode::InvalidArgument, "zero has no inverse");
  return mod_pow(a, p - 2, p);
}

ModPoly::ModPoly(std::uint64_t p, std::vector<Residue> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2 || p >= (1ULL << 31)) throw Error(ErrorCode::InvalidArgument, "modulus must be a prime below 2^31");
  for (auto& c : c_) c %= p_;
  normalize();
}

ModPoly ModPoly::reduce(const IntPoly& f, std::uint64_t p) {
  std::vector<Residue> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) c.push_back(mpz_fdiv_ui(a.get_mpz_t(), p));
  return ModPoly(p, std::move(c));
}

ModPoly ModPoly::constant(std::uint64_t p, Residue c) { return ModPoly(p, {c}); }

ModPoly ModPoly::x(std::uint64_t p) { return ModPoly(p, {0, 1}); }

void ModPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly::Residue ModPoly::lc() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "leading coefficient of zero polynomial");
  return c_.back();
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  ModPoly r = *this;
  r *= mod_inverse(lc(), p_);
  return r;
}

ModPoly ModPoly::derivative() const {
  std::vector<Residue> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * (i % p_) % p_);
  return ModPoly(p_, std::move(d));
}

ModPoly::Residue ModPoly::eval(Residue x) const {
  Residue acc = 0;
  x %= p_;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
  return acc;
}

ModPoly& ModPoly::operator+=(const ModPoly& o) {
  check_same_field(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % p_;
  normalize();
  return *this;
}

ModPoly& ModPoly::operator-=(const ModPoly& o) {
  check_same_field(*this, o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = (c_[i] + p_ - o.c_[i]) % p_;
  normalize();
  return *this;
}

ModPoly& ModPoly::operator*=(const ModPoly& o) {
  check_same_field(*this, o);
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Residue> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p_;
  }
  c_ = std::move(r);
  normalize();
  return *this;
}

ModPoly& ModPoly::operator*=(Residue c) {
  c %= p_;
  for (auto& x : c_) x = x * c % p_;
  normalize();
  return *this;
}

bool operator<(const ModPoly& a, const ModPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

std::string ModPoly::to_string() const {
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    Residue c = coeff(i);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (c != 1 || i == 0) out += std::to_string(c);
    if (i > 0) {
      if (c != 1) out += "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  if (out.empty()) out = "0";
  return out + " (mod " + std::to_string(p_) + ")";
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  const std::uint64_t p = a.modulus();
  if (a.degree() < b.degree()) return {ModPoly(p), a};
  std::vector<Residue> r = a.coeffs();
  std::vector<Residue> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const Residue inv = mod_inverse(b.lc(), p);
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    Residue t = r[static_cast<std::size_t>(k)] * inv % p;
    q[static_cast<std::size_t>(k - db)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[static_cast<std::size_t>(k - db + j)];
      x = (x + p - t * b.coeff(j) % p) % p;
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
  check_same_field(a, b);
  ModPoly x = a, y = b;
  while (!y.is_zero()) {
    ModPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m) {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  ModPoly result = ModPoly::constant(m.modulus(), 1) % m;
  ModPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mulmod(result, result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mulmod(result, b, m);
  }
  return result;
}

bool is_squarefree(const ModPoly& f) {
  if (f.degree() < 1) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

std::uint64_t resultant(const ModPoly& f, const ModPoly& g) {
  check_same_field(f, g);
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::InvalidArgument, "resultant of zero polynomial");
  const std::uint64_t p = f.modulus();
  ModPoly a = f, b = g;
  std::uint64_t acc = 1;
  for (;;) {
    const int m = a.degree(), n = b.degree();
    if (n == 0) return acc * mod_pow(b.lc(), static_cast<std::uint64_t>(m), p) % p;
    if (m == 0) return acc * mod_pow(a.lc(), static_cast<std::uint64_t>(n), p) % p;
    ModPoly r = a % b;
    if (r.is_zero()) return 0;
    // Res(a, b) = (-1)^(mn) Res(b, a) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)
    if ((m & 1) && (n & 1)) acc = (p - acc) % p;
    acc = acc * mod_pow(b.lc(), static_cast<std::uint64_t>(m - r.degree()), p) % p;
    a = std::move(b);
    b = std::move(r);
  }
}

std::vector<ModFactor> factor_mod_p(const ModPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "factor_mod_p of zero polynomial");
  std::vector<ModFactor> sqf;
  squarefree_decomposition(f.monic(), 1, sqf);
  std::mt19937_64 rng(seed);
  std::vector<ModFactor> out;
  for (const auto& part : sqf) {
    for (auto& [block, d] : distinct_degree(part.factor)) {
      std::vector<ModPoly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& q : irr) out.push_back({std::move(q), part.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return a.factor < b.factor;
  });
  // The same irreducible can come out of a loop layer and a p-th root layer; merge.
  std::vector<ModFactor> merged;
  for (auto& fa : out) {
    if (!merged.empty() && merged.back().factor == fa.factor) {
      merged.back().multiplicity += fa.multiplicity;
    } else {
      merged.push_back(std::move(fa));
    }
  }
  return merged;
}

std::vector<int> degree_pattern(const ModPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "degree_pattern of zero polynomial");
  if (!is_squarefree(f)) throw Error(ErrorCode::NotSquarefree, f.to_string() + " has a repeated factor");
  std::vector<int> degs;
  for (const auto& [block, d] : distinct_degree(f.monic())) {
    for (int k = 0; k < block.degree() / d; ++k) degs.push_back(d);
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

bool is_irreducible(const ModPoly& f) {
  if (f.degree() < 1) return false;
  if (!is_squarefree(f)) return false;
  auto degs = degree_pattern(f);
  return degs.size() == 1;
}

}  // namespace galrep::algebra
