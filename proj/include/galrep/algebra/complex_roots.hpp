#pragma once

#include <vector>

#include "galrep/algebra/int_poly.hpp"
#include "galrep/algebra/real.hpp"

namespace galrep::algebra {

struct ComplexApprox {
  Complex z;
  /// Upper bound on |f(z)|, including the rounding error of the evaluation.
  Real residual_bound;
};

/// All deg f roots of a squarefree f by Aberth simultaneous iteration at the
/// given precision. Every accepted root has residual bound at most
/// 2^(-bits/2) * sum |c_i| |z|^i.
/// Throws Error(SquarefreeRequired) or Error(PrecisionFailure).
std::vector<ComplexApprox> complex_roots(const IntPoly& f, long precision_bits);

/// Retries complex_roots with doubled precision up to `max_bits`.
std::vector<ComplexApprox> complex_roots_adaptive(const IntPoly& f, long precision_bits, long max_bits);

/// Horner evaluation of f at z in the precision of z.
Complex evaluate(const IntPoly& f, const Complex& z);

}  // namespace galrep::algebra
