#include "galrep/algebra/complex_roots.hpp"

#include <algorithm>

#include "galrep/error.hpp"

namespace galrep::algebra {

namespace {

constexpr long kGuardBits = 32;

struct Evaluation {
  Complex value;
  Complex derivative;
};

Evaluation evaluate_with_derivative(const std::vector<Real>& c, const Complex& z) {
  const long prec = z.precision();
  Complex p(Real(c.back()), Real(prec));
  Complex d(prec);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * z + p;
    p = p * z;
    p.re += c[i];
  }
  return {std::move(p), std::move(d)};
}

// sum |c_i| |z|^i
Real magnitude_scale(const std::vector<Real>& c, const Real& r) {
  Real acc(r.precision());
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + abs(c[i]);
  return acc;
}

// 2 * max_k |c_{n-k} / c_n|^(1/k): every root lies inside this radius.
Real root_radius(const std::vector<Real>& c, long prec) {
  const std::size_t n = c.size() - 1;
  Real best(prec);
  for (std::size_t k = 1; k <= n; ++k) {
    Real ratio = abs(c[n - k] / c[n]);
    if (ratio.is_zero()) continue;
    Real root = pow(ratio, Real(1L, prec) / Real(static_cast<long>(k), prec));
    best = max(best, root);
  }
  if (best.is_zero()) best = Real(1L, prec);
  return best * Real(2L, prec);
}

}  // namespace

Complex evaluate(const IntPoly& f, const Complex& z) {
  const long prec = z.precision();
  Complex acc(prec);
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * z;
    acc.re += Real(f.coeff(i), prec);
  }
  return acc;
}

std::vector<ComplexApprox> complex_roots(const IntPoly& f, long precision_bits) {
  const int n = f.degree();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "complex_roots needs deg f >= 1");
  if (!is_squarefree(f)) throw Error(ErrorCode::SquarefreeRequired, f.to_string() + " has a repeated root");
  const long work = precision_bits + kGuardBits;

  std::vector<Real> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) c.emplace_back(f.coeff(i), work);

  std::vector<Complex> z;
  if (n == 1) {
    z.emplace_back(-c[0] / c[1], Real(work));
  } else {
    const Real radius = root_radius(c, work);
    const Real two_pi = Real::pi(work) * Real(2L, work);
    for (int k = 0; k < n; ++k) {
      // Perturbed circle: the angular offset breaks the symmetry of real polynomials.
      Real angle = two_pi * Real(k, work) / Real(n, work) + Real(0.4, work);
      z.emplace_back(radius * cos(angle), radius * sin(angle));
    }

    const Real tol = Real::exp2(-(work - 8), work);
    const int max_iter = 500 + 4 * static_cast<int>(work);
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    int iter = 0;
    for (; iter < max_iter; ++iter) {
      bool all_done = true;
      for (int i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(i);
        if (done[si]) continue;
        Evaluation e = evaluate_with_derivative(c, z[si]);
        if (e.value.re.is_zero() && e.value.im.is_zero()) {
          done[si] = true;
          continue;
        }
        Complex newton = e.value / e.derivative;
        Complex repulsion(work);
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          Complex diff = z[si] - z[static_cast<std::size_t>(j)];
          repulsion += Complex(Real(1L, work), Real(work)) / diff;
        }
        Complex denom = Complex(Real(1L, work), Real(work)) - newton * repulsion;
        Complex step = newton / denom;
        z[si] -= step;
        Real size = max(abs(z[si]), Real(1L, work));
        if (abs(step) <= tol * size) {
          done[si] = true;
        } else {
          all_done = false;
        }
      }
      if (all_done) break;
    }
    if (iter == max_iter) {
      throw Error(ErrorCode::PrecisionFailure,
                  "root iteration did not converge at " + std::to_string(precision_bits) + " bits");
    }
  }

  std::vector<ComplexApprox> out;
  out.reserve(z.size());
  const Real rounding = Real::exp2(-work, work) * Real(2L * n + 2, work);
  const Real accept = Real::exp2(-precision_bits / 2, work);
  for (auto& root : z) {
    Real scale = magnitude_scale(c, abs(root));
    Evaluation e = evaluate_with_derivative(c, root);
    Real bound = abs(e.value) + rounding * scale;
    if (bound > accept * scale) {
      throw Error(ErrorCode::PrecisionFailure,
                  "residual too large at " + std::to_string(precision_bits) + " bits");
    }
    out.push_back({std::move(root), std::move(bound)});
  }
  // Two approximations of one root would leave another root unfound.
  const Real sep = Real::exp2(-precision_bits / 4, work);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      Real size = max(max(abs(out[i].z), abs(out[j].z)), Real(1L, work));
      if (abs(out[i].z - out[j].z) <= sep * size) {
        throw Error(ErrorCode::PrecisionFailure, "root approximations collapsed onto one root");
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ComplexApprox& a, const ComplexApprox& b) {
    if (a.z.re < b.z.re) return true;
    if (b.z.re < a.z.re) return false;
    return a.z.im < b.z.im;
  });
  return out;
}

std::vector<ComplexApprox> complex_roots_adaptive(const IntPoly& f, long precision_bits, long max_bits) {
  for (long bits = precision_bits;; bits *= 2) {
    try {
      return complex_roots(f, bits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionFailure || bits * 2 > max_bits) throw;
    }
  }
}

}  // namespace galrep::algebra
