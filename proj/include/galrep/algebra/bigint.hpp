#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace galrep::algebra {

/// Arbitrary-precision signed integer. GMP keeps it canonical.
using BigInt = mpz_class;

/// Parses an optionally signed decimal string. Throws Error(InvalidArgument).
BigInt parse_bigint(std::string_view text);

std::string to_string(const BigInt& n);

BigInt pow(const BigInt& base, unsigned long exponent);

/// Largest k with p^k | n; n must be nonzero.
unsigned valuation(const BigInt& n, const BigInt& p);

/// Removes every factor p from n in place and returns how many were removed.
unsigned strip_prime(BigInt& n, const BigInt& p);

bool is_perfect_square(const BigInt& n);

struct SquarePart {
  BigInt square_free;  // the part built from the allowed primes (and sign)
  BigInt square_root;  // n == square_free * square_root^2
};

/// Moves every allowed prime power (and the sign, if -1 is allowed) of n into
/// `square_free`; the remaining cofactor must be a perfect square.
/// Throws Error(NotSquare) otherwise, Error(InvalidArgument) for n == 0.
SquarePart integer_square_part(const BigInt& n, std::span<const long> allowed_primes);

/// Prime factorisation of |n| by trial division up to `trial_bound`. A leftover
/// cofactor above the bound is reported with `complete == false` unless it is a
/// probable prime.
struct Factorization {
  std::vector<std::pair<BigInt, unsigned>> factors;  // ascending primes
  bool complete = true;
  BigInt unfactored = 1;
};

Factorization factor_integer(const BigInt& n, unsigned long trial_bound = 1'000'000);

std::vector<long> primes_below(long bound);

bool is_prime(long n);

long lcm(long a, long b);

}  // namespace galrep::algebra
