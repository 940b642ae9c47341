#pragma once

#include <array>

#include "biotcap/tensor2.hpp"

namespace biotcap {

/// Fourth-order tensor stored on the full 9x9 (ij),(kl) basis so that the
/// unsymmetrized transposition products are representable; minor symmetries
/// emerge where the construction provides them.
struct Tensor4 {
  double m[9][9];

  static Tensor4 zero();
  static Tensor4 identity_sym();  // I box I, the symmetrizer

  Tensor2 apply(const Tensor2& c) const;
  Tensor4 compose(const Tensor4& rhs) const;  // (*this) o rhs

  Tensor4 operator+(const Tensor4& o) const;
  Tensor4 operator-(const Tensor4& o) const;
  Tensor4 operator*(double s) const;
  Tensor4& operator+=(const Tensor4& o);

  double norm() const;  // Frobenius over all 81 components
  bool has_minor_symmetries(double rel_tol = 1e-12) const;
};

inline Tensor4 operator*(double s, const Tensor4& t) { return t * s; }

enum class ProductKind { Outer, Box, BoxT, BoxS };

/// (A (x) B)[C] = (C : B^T) A
Tensor4 outer_product(const Tensor2& a, const Tensor2& b);
/// (A box_t B)[C] = A C B^T
Tensor4 box_t(const Tensor2& a, const Tensor2& b);
/// (A box_s B)[C] = A C^T B^T
Tensor4 box_s(const Tensor2& a, const Tensor2& b);
/// (A box B)[C] = A (C + C^T) B^T / 2 = (box_t + box_s)/2
Tensor4 box(const Tensor2& a, const Tensor2& b);

Tensor2 tensor_product_apply(ProductKind kind, const Tensor2& a,
                             const Tensor2& b, const Tensor2& c);

/// Orthonormal (Mandel) 6x6 matrix of the operator restricted to symmetric
/// arguments; off-diagonal slots carry the sqrt(2) scaling.
using Mandel6 = std::array<std::array<double, 6>, 6>;
Mandel6 to_mandel(const Tensor4& t);
Tensor4 from_mandel(const Mandel6& m);

/// Inverse on symmetric arguments: result[t[A]] = sym(A). Throws Singular if
/// the 6x6 one-norm condition estimate exceeds 1e14.
Tensor4 tensor4_invert(const Tensor4& t);

/// Positive definiteness of the quadratic form x . T x on symmetric tensors
/// (Cholesky of the symmetrized Mandel matrix).
bool is_positive_definite(const Tensor4& t);

/// d(log Y)/dY as the alternating power series; requires the spectral radius
/// of (Y - I) to stay below the convergence guard 0.9, else throws
/// OutOfConvergenceRadius.
Tensor4 tensor_log_gradient_series(const Tensor2& y);

/// d(log Y)/dY through eigenprojections and divided differences; valid for any
/// SPD argument.
Tensor4 tensor_log_gradient_eig(const Tensor2& y);

/// Series form inside the guard, eigenprojection fallback outside it;
/// *used_fallback (optional) reports which branch ran.
Tensor4 tensor_log_gradient(const Tensor2& y, bool* used_fallback = nullptr);

/// d(exp E)/dE as the factorial power series (converges for every symmetric E).
Tensor4 tensor_exp_gradient_series(const Tensor2& e);

/// d(exp E)/dE through eigenprojections.
Tensor4 tensor_exp_gradient_eig(const Tensor2& e);

inline Tensor4 tensor_exp_gradient(const Tensor2& e) {
  return tensor_exp_gradient_series(e);
}

}  // namespace biotcap
