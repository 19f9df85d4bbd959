#include "galrep/algebra/int_poly.hpp"

#include <algorithm>
#include <utility>

#include "galrep/error.hpp"

namespace galrep::algebra {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(int k, const BigInt& c) {
  std::vector<BigInt> v(static_cast<std::size_t>(k) + 1, 0);
  v.back() = c;
  return IntPoly(std::move(v));
}

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

const BigInt& IntPoly::lc() const {
  if (is_zero()) throw Error(ErrorCode::InvalidArgument, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  BigInt c = content();
  if (lc() < 0) c = -c;
  return divexact(c);
}

IntPoly IntPoly::shift(const BigInt& c) const {
  // Horner-style Taylor shift.
  std::vector<BigInt> a = coeffs_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) a[j] += c * a[j + 1];
  }
  return IntPoly(std::move(a));
}

IntPoly IntPoly::scale_variable(const BigInt& s) const {
  std::vector<BigInt> a = coeffs_;
  BigInt power = 1;
  for (auto& c : a) {
    c *= power;
    power *= s;
  }
  return IntPoly(std::move(a));
}

IntPoly IntPoly::divexact(const BigInt& d) const {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  std::vector<BigInt> a = coeffs_;
  for (auto& c : a) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) {
      throw Error(ErrorCode::Internal, "inexact coefficient division");
    }
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  }
  return IntPoly(std::move(a));
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigInt> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
    }
  }
  coeffs_ = std::move(r);
  normalize();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly IntPoly::pow(unsigned k) const {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += (c < 0) ? " - " : " + ";
    }
    bool unit = (mag == 1);
    if (!unit || i == 0) out += mag.get_str();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "pseudo-division by zero");
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<BigInt> r = a.coeffs();
  const BigInt& lb = b.lc();
  // One multiplication by lc(b) per step: deg a - deg b + 1 in total.
  for (int k = a.degree(); k >= db; --k) {
    BigInt top = r[static_cast<std::size_t>(k)];
    for (auto& c : r) c *= lb;
    if (top != 0) {
      for (int j = 0; j <= db; ++j) {
        mpz_submul(r[static_cast<std::size_t>(k - db + j)].get_mpz_t(), top.get_mpz_t(),
                   b.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
      }
    }
    r.pop_back();
  }
  return IntPoly(std::move(r));
}

BigInt resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) throw Error(ErrorCode::InvalidArgument, "resultant of zero polynomial");
  if (f.degree() == 0) return algebra::pow(f.lc(), static_cast<unsigned long>(g.degree()));
  if (g.degree() == 0) return algebra::pow(g.lc(), static_cast<unsigned long>(f.degree()));

  // Subresultant PRS (Collins / Brown), primitive parts with tracked contents.
  IntPoly a = f, b = g;
  BigInt ca = a.content(), cb = b.content();
  a = a.divexact(ca);
  b = b.divexact(cb);
  BigInt t = algebra::pow(ca, static_cast<unsigned long>(b.degree())) *
             algebra::pow(cb, static_cast<unsigned long>(a.degree()));
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
  }
  BigInt gcoef = 1, h = 1;
  for (;;) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = r.divexact(gcoef * algebra::pow(h, static_cast<unsigned long>(delta)));
    gcoef = a.lc();
    if (delta > 0) {
      BigInt num = algebra::pow(gcoef, static_cast<unsigned long>(delta));
      BigInt den = algebra::pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (b.degree() <= 0) break;
  }
  const int da = a.degree();
  BigInt num = algebra::pow(b.lc(), static_cast<unsigned long>(da));
  if (da >= 1) {
    BigInt den = algebra::pow(h, static_cast<unsigned long>(da - 1));
    mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    h = num;
  }
  return BigInt(s) * t * h;
}

BigInt discriminant(const IntPoly& f) {
  const int n = f.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "discriminant of a constant polynomial");
  BigInt r = resultant(f, f.derivative());
  BigInt q;
  mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
  if (((n * (n - 1)) / 2) & 1) q = -q;
  return q;
}

bool is_squarefree(const IntPoly& f) {
  if (f.degree() < 1) return true;
  return discriminant(f) != 0;
}

IntPoly resultant_in_x(const IntPoly& f, const std::vector<IntPoly>& g) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "resultant_in_x needs deg f >= 1");
  if (g.empty() || g.back().degree() != 0) {
    throw Error(ErrorCode::InvalidArgument, "leading x-coefficient of G must be a nonzero constant");
  }
  int max_deg = 0;
  for (const auto& c : g) max_deg = std::max(max_deg, c.degree());
  const int bound = f.degree() * max_deg;

  std::vector<mpq_class> xs, ys;
  for (int k = 0; k <= bound; ++k) {
    std::vector<BigInt> coeffs;
    coeffs.reserve(g.size());
    for (const auto& c : g) coeffs.push_back(c.eval(k));
    xs.emplace_back(k);
    ys.emplace_back(resultant(f, IntPoly(std::move(coeffs))));
  }
  // Newton divided differences, then expansion into the monomial basis.
  const std::size_t n = xs.size();
  std::vector<mpq_class> dd = ys;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  }
  std::vector<mpq_class> poly(1, dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    // poly = poly * (Y - xs[i]) + dd[i]
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[i];
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  std::vector<BigInt> out;
  out.reserve(poly.size());
  for (auto& q : poly) {
    q.canonicalize();
    if (q.get_den() != 1) throw Error(ErrorCode::Internal, "non-integral interpolated resultant");
    out.push_back(q.get_num());
  }
  return IntPoly(std::move(out));
}

IntPoly characteristic_polynomial(const IntPoly& f, const IntPoly& h) {
  if (!f.is_monic()) throw Error(ErrorCode::InvalidArgument, "characteristic_polynomial needs monic f");
  if (h.degree() < 1) {
    // beta is rational: (X - h0)^n
    return IntPoly(std::vector<BigInt>{BigInt(-h.coeff(0)), BigInt(1)}).pow(static_cast<unsigned>(f.degree()));
  }
  // G(y, X) = X - h(y); coefficients in y are polynomials in X.
  std::vector<IntPoly> g;
  for (int i = 0; i <= h.degree(); ++i) g.push_back(IntPoly::constant(-h.coeff(i)));
  g[0] = IntPoly(std::vector<BigInt>{BigInt(-h.coeff(0)), BigInt(1)});
  // f monic: Res_y(f, X - h(y)) = prod (X - h(alpha_i)).
  return resultant_in_x(f, g);
}

}  // namespace galrep::algebra
