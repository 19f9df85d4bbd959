#include "galrep/algebra/bigint.hpp"

#include <numeric>

#include "galrep/error.hpp"

namespace galrep::algebra {

BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw Error(ErrorCode::InvalidArgument, "empty integer literal");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') {
      throw Error(ErrorCode::InvalidArgument, "not a decimal integer: '" + s + "'");
    }
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

unsigned valuation(const BigInt& n, const BigInt& p) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  BigInt m = n;
  return strip_prime(m, p);
}

unsigned strip_prime(BigInt& n, const BigInt& p) {
  if (n == 0) return 0;
  return static_cast<unsigned>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

bool is_perfect_square(const BigInt& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

SquarePart integer_square_part(const BigInt& n, std::span<const long> allowed_primes) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "integer_square_part of zero");
  SquarePart out{1, 0};
  BigInt rest = n;
  for (long p : allowed_primes) {
    if (p == -1) {
      if (rest < 0) {
        rest = -rest;
        out.square_free = -out.square_free;
      }
      continue;
    }
    BigInt bp(p);
    unsigned k = strip_prime(rest, bp);
    out.square_free *= pow(bp, k);
  }
  if (!is_perfect_square(rest)) {
    throw Error(ErrorCode::NotSquare, "cofactor " + to_string(rest) + " is not a perfect square");
  }
  mpz_sqrt(out.square_root.get_mpz_t(), rest.get_mpz_t());
  return out;
}

Factorization factor_integer(const BigInt& n, unsigned long trial_bound) {
  Factorization out;
  BigInt m = abs(n);
  if (m <= 1) return out;
  for (unsigned long p = 2; p <= trial_bound; p = (p == 2 ? 3 : p + 2)) {
    if (BigInt(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned k = strip_prime(m, BigInt(p));
      out.factors.emplace_back(BigInt(p), k);
    }
  }
  if (m > 1) {
    if (m <= BigInt(trial_bound) * trial_bound || mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
      out.factors.emplace_back(m, 1);
    } else {
      out.complete = false;
      out.unfactored = m;
    }
  }
  return out;
}

std::vector<long> primes_below(long bound) {
  std::vector<long> out;
  if (bound <= 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound), false);
  for (long i = 2; i < bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j < bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long lcm(long a, long b) { return std::lcm(a, b); }

}  // namespace galrep::algebra
