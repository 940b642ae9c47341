#pragma once

#include <array>

namespace biotcap {

/// Dense 3x3 second-order tensor. Symmetry is a contract of the call site, not
/// a stored flag.
struct Tensor2 {
  double v[3][3];

  static constexpr Tensor2 zero() {
    return Tensor2{{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}};
  }
  static constexpr Tensor2 identity() {
    return Tensor2{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  }
  static constexpr Tensor2 diagonal(double a, double b, double c) {
    return Tensor2{{{a, 0, 0}, {0, b, 0}, {0, 0, c}}};
  }

  double& operator()(int i, int j) { return v[i][j]; }
  double operator()(int i, int j) const { return v[i][j]; }

  Tensor2 operator+(const Tensor2& o) const;
  Tensor2 operator-(const Tensor2& o) const;
  Tensor2 operator-() const;
  Tensor2 operator*(const Tensor2& o) const;  // matrix product
  Tensor2 operator*(double s) const;
  Tensor2& operator+=(const Tensor2& o);
  Tensor2& operator-=(const Tensor2& o);
  Tensor2& operator*=(double s);

  double trace() const { return v[0][0] + v[1][1] + v[2][2]; }
  Tensor2 transposed() const;
  Tensor2 sym() const;       // (A + A^T)/2
  Tensor2 dev() const;       // A - (tr A / 3) I
  double det() const;
  Tensor2 inverse() const;   // throws NonInvertible
  double norm() const;       // Frobenius
  double ddot(const Tensor2& o) const;  // A : B
  bool is_symmetric(double rel_tol = 1e-12) const;
};

inline Tensor2 operator*(double s, const Tensor2& t) { return t * s; }

/// Integer tensor power (negative exponents go through the inverse).
Tensor2 int_power(const Tensor2& a, int m);

/// Voigt order (11, 22, 33, 23, 13, 12); plain tensor components.
std::array<double, 6> to_voigt(const Tensor2& a);
Tensor2 from_voigt(const std::array<double, 6>& w);

struct SymEig {
  double lambda[3];   // ascending
  Tensor2 vectors;    // columns are the corresponding unit eigenvectors
};

/// Eigendecomposition of the symmetric part, by cyclic Jacobi rotations.
SymEig eig_sym(const Tensor2& a);

enum class PolarSide { Right, Left };

struct PolarDecomposition {
  Tensor2 rotation;  // R, proper orthogonal
  Tensor2 stretch;   // U (right) or V (left), SPD
};

/// F = R U (right) or F = V R (left); throws NonInvertible when det F is not
/// positive or F is numerically rank-deficient.
PolarDecomposition polar_decompose(const Tensor2& f, PolarSide side);

/// log of an SPD tensor via eigendecomposition; throws NotSPD.
Tensor2 tensor_log(const Tensor2& a);

/// exp of a symmetric tensor via eigendecomposition.
Tensor2 tensor_exp(const Tensor2& a);

}  // namespace biotcap
