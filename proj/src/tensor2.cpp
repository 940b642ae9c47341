#include "biotcap/tensor2.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "biotcap/errors.hpp"

namespace biotcap {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::OutOfConvergenceRadius: return "OutOfConvergenceRadius";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NonCoaxial: return "NonCoaxial";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::GradientSingular: return "GradientSingular";
    case ErrorCode::LockingMaterial: return "LockingMaterial";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NonInvertibleRegime: return "NonInvertibleRegime";
    case ErrorCode::DriftNotConverged: return "DriftNotConverged";
    case ErrorCode::NewtonNotConverged: return "NewtonNotConverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

Tensor2 Tensor2::operator+(const Tensor2& o) const {
  Tensor2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.v[i][j] = v[i][j] + o.v[i][j];
  return r;
}

Tensor2 Tensor2::operator-(const Tensor2& o) const {
  Tensor2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.v[i][j] = v[i][j] - o.v[i][j];
  return r;
}

Tensor2 Tensor2::operator-() const {
  Tensor2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.v[i][j] = -v[i][j];
  return r;
}

Tensor2 Tensor2::operator*(const Tensor2& o) const {
  Tensor2 r = zero();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const double a = v[i][k];
      for (int j = 0; j < 3; ++j) r.v[i][j] += a * o.v[k][j];
    }
  return r;
}

Tensor2 Tensor2::operator*(double s) const {
  Tensor2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.v[i][j] = v[i][j] * s;
  return r;
}

Tensor2& Tensor2::operator+=(const Tensor2& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[i][j] += o.v[i][j];
  return *this;
}

Tensor2& Tensor2::operator-=(const Tensor2& o) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[i][j] -= o.v[i][j];
  return *this;
}

Tensor2& Tensor2::operator*=(double s) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[i][j] *= s;
  return *this;
}

Tensor2 Tensor2::transposed() const {
  Tensor2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.v[i][j] = v[j][i];
  return r;
}

Tensor2 Tensor2::sym() const {
  Tensor2 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.v[i][j] = 0.5 * (v[i][j] + v[j][i]);
  return r;
}

Tensor2 Tensor2::dev() const {
  Tensor2 r = *this;
  const double m = trace() / 3.0;
  for (int i = 0; i < 3; ++i) r.v[i][i] -= m;
  return r;
}

double Tensor2::det() const {
  return v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1]) -
         v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0]) +
         v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]);
}

Tensor2 Tensor2::inverse() const {
  const double d = det();
  const double scale = norm();
  if (std::abs(d) <= 1e-40 || std::abs(d) <= 1e-14 * scale * scale * scale) {
    raise(ErrorCode::NonInvertible, "3x3 determinant too small for inversion");
  }
  Tensor2 r;
  r.v[0][0] = (v[1][1] * v[2][2] - v[1][2] * v[2][1]) / d;
  r.v[0][1] = (v[0][2] * v[2][1] - v[0][1] * v[2][2]) / d;
  r.v[0][2] = (v[0][1] * v[1][2] - v[0][2] * v[1][1]) / d;
  r.v[1][0] = (v[1][2] * v[2][0] - v[1][0] * v[2][2]) / d;
  r.v[1][1] = (v[0][0] * v[2][2] - v[0][2] * v[2][0]) / d;
  r.v[1][2] = (v[0][2] * v[1][0] - v[0][0] * v[1][2]) / d;
  r.v[2][0] = (v[1][0] * v[2][1] - v[1][1] * v[2][0]) / d;
  r.v[2][1] = (v[0][1] * v[2][0] - v[0][0] * v[2][1]) / d;
  r.v[2][2] = (v[0][0] * v[1][1] - v[0][1] * v[1][0]) / d;
  return r;
}

double Tensor2::norm() const {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += v[i][j] * v[i][j];
  return std::sqrt(s);
}

double Tensor2::ddot(const Tensor2& o) const {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += v[i][j] * o.v[i][j];
  return s;
}

bool Tensor2::is_symmetric(double rel_tol) const {
  const double scale = norm();
  const double tol = rel_tol * (scale > 0 ? scale : 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(v[i][j] - v[j][i]) > tol) return false;
  return true;
}

Tensor2 int_power(const Tensor2& a, int m) {
  if (m == 0) return Tensor2::identity();
  const Tensor2 base = m > 0 ? a : a.inverse();
  Tensor2 r = base;
  for (int k = 1; k < std::abs(m); ++k) r = r * base;
  return r;
}

namespace {
constexpr int kVoigtI[6] = {0, 1, 2, 1, 0, 0};
constexpr int kVoigtJ[6] = {0, 1, 2, 2, 2, 1};
}  // namespace

std::array<double, 6> to_voigt(const Tensor2& a) {
  std::array<double, 6> w;
  for (int k = 0; k < 6; ++k) w[k] = a(kVoigtI[k], kVoigtJ[k]);
  return w;
}

Tensor2 from_voigt(const std::array<double, 6>& w) {
  Tensor2 a = Tensor2::zero();
  for (int k = 0; k < 6; ++k) {
    a(kVoigtI[k], kVoigtJ[k]) = w[k];
    a(kVoigtJ[k], kVoigtI[k]) = w[k];
  }
  return a;
}

SymEig eig_sym(const Tensor2& input) {
  // Cyclic Jacobi on the symmetric part; converges to machine precision in a
  // handful of sweeps for 3x3.
  Tensor2 a = input.sym();
  Tensor2 q = Tensor2::identity();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) off += a.v[i][j] * a.v[i][j];
    if (off <= 1e-62) break;
    for (int p = 0; p < 2; ++p) {
      for (int r = p + 1; r < 3; ++r) {
        const double apq = a.v[p][r];
        if (apq == 0.0) continue;
        const double app = a.v[p][p];
        const double aqq = a.v[r][r];
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a.v[k][p];
          const double akq = a.v[k][r];
          a.v[k][p] = c * akp - s * akq;
          a.v[k][r] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a.v[p][k];
          const double aqk = a.v[r][k];
          a.v[p][k] = c * apk - s * aqk;
          a.v[r][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double qkp = q.v[k][p];
          const double qkq = q.v[k][r];
          q.v[k][p] = c * qkp - s * qkq;
          q.v[k][r] = s * qkp + c * qkq;
        }
      }
    }
  }
  // Sort ascending, permuting columns alongside.
  int order[3] = {0, 1, 2};
  for (int i = 0; i < 2; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (a.v[order[j]][order[j]] < a.v[order[i]][order[i]])
        std::swap(order[i], order[j]);
  SymEig out;
  out.vectors = Tensor2::zero();
  for (int k = 0; k < 3; ++k) {
    out.lambda[k] = a.v[order[k]][order[k]];
    for (int i = 0; i < 3; ++i) out.vectors.v[i][k] = q.v[i][order[k]];
  }
  return out;
}

namespace {

Tensor2 spectral_apply(const SymEig& e, double (*fn)(double)) {
  Tensor2 r = Tensor2::zero();
  for (int k = 0; k < 3; ++k) {
    const double f = fn(e.lambda[k]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.v[i][j] += f * e.vectors.v[i][k] * e.vectors.v[j][k];
  }
  return r;
}

}  // namespace

PolarDecomposition polar_decompose(const Tensor2& f, PolarSide side) {
  const double d = f.det();
  if (!(d > 0)) {
    raise(ErrorCode::NonInvertible, "polar decomposition needs det F > 0");
  }
  const Tensor2 c =
      side == PolarSide::Right ? f.transposed() * f : f * f.transposed();
  const SymEig e = eig_sym(c);
  if (e.lambda[0] <= 1e-24 * e.lambda[2]) {
    raise(ErrorCode::NonInvertible, "deformation gradient numerically singular");
  }
  Tensor2 stretch = Tensor2::zero();
  Tensor2 stretch_inv = Tensor2::zero();
  for (int k = 0; k < 3; ++k) {
    const double s = std::sqrt(e.lambda[k]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double vv = e.vectors.v[i][k] * e.vectors.v[j][k];
        stretch.v[i][j] += s * vv;
        stretch_inv.v[i][j] += vv / s;
      }
  }
  PolarDecomposition out;
  out.stretch = stretch;
  out.rotation =
      side == PolarSide::Right ? f * stretch_inv : stretch_inv * f;
  return out;
}

Tensor2 tensor_log(const Tensor2& a) {
  const SymEig e = eig_sym(a);
  if (e.lambda[0] <= 1e-12 * std::max(e.lambda[2], 0.0) || e.lambda[0] <= 0) {
    raise(ErrorCode::NotSPD, "tensor_log requires positive eigenvalues");
  }
  return spectral_apply(e, [](double x) { return std::log(x); });
}

Tensor2 tensor_exp(const Tensor2& a) {
  const SymEig e = eig_sym(a);
  return spectral_apply(e, [](double x) { return std::exp(x); });
}

}  // namespace biotcap
