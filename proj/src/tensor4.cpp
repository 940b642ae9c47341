#include "biotcap/tensor4.hpp"

#include <cmath>
#include <cstring>
#include <vector>

#include "biotcap/errors.hpp"

namespace biotcap {

namespace {

inline int flat(int i, int j) { return 3 * i + j; }

constexpr double kSqrt2 = 1.4142135623730951;
constexpr int kPairI[6] = {0, 1, 2, 1, 0, 0};
constexpr int kPairJ[6] = {0, 1, 2, 2, 2, 1};

Tensor2 mandel_basis(int a) {
  Tensor2 b = Tensor2::zero();
  const int i = kPairI[a], j = kPairJ[a];
  if (i == j) {
    b(i, i) = 1.0;
  } else {
    b(i, j) = 1.0 / kSqrt2;
    b(j, i) = 1.0 / kSqrt2;
  }
  return b;
}

std::array<double, 6> mandel_vec(const Tensor2& s) {
  std::array<double, 6> w;
  for (int a = 0; a < 6; ++a) {
    const int i = kPairI[a], j = kPairJ[a];
    w[a] = (i == j) ? s(i, i) : kSqrt2 * 0.5 * (s(i, j) + s(j, i));
  }
  return w;
}

struct LinSolve6 {
  Mandel6 inverse;
  double cond1;
};

double norm1(const Mandel6& m) {
  double best = 0;
  for (int j = 0; j < 6; ++j) {
    double s = 0;
    for (int i = 0; i < 6; ++i) s += std::abs(m[i][j]);
    best = std::max(best, s);
  }
  return best;
}

LinSolve6 invert6(const Mandel6& m) {
  double a[6][12];
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      a[i][j] = m[i][j];
      a[i][6 + j] = (i == j) ? 1.0 : 0.0;
    }
  }
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    for (int r = col + 1; r < 6; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) {
      raise(ErrorCode::Singular, "6x6 Mandel matrix is singular");
    }
    if (piv != col)
      for (int j = 0; j < 12; ++j) std::swap(a[piv][j], a[col][j]);
    const double d = a[col][col];
    for (int j = 0; j < 12; ++j) a[col][j] /= d;
    for (int r = 0; r < 6; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 12; ++j) a[r][j] -= f * a[col][j];
    }
  }
  LinSolve6 out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out.inverse[i][j] = a[i][6 + j];
  out.cond1 = norm1(m) * norm1(out.inverse);
  return out;
}

}  // namespace

Tensor4 Tensor4::zero() {
  Tensor4 t;
  std::memset(t.m, 0, sizeof(t.m));
  return t;
}

Tensor4 Tensor4::identity_sym() {
  return box(Tensor2::identity(), Tensor2::identity());
}

Tensor2 Tensor4::apply(const Tensor2& c) const {
  Tensor2 r = Tensor2::zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      const double* row = m[flat(i, j)];
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += row[flat(k, l)] * c(k, l);
      r(i, j) = s;
    }
  return r;
}

Tensor4 Tensor4::compose(const Tensor4& rhs) const {
  Tensor4 r = zero();
  for (int i = 0; i < 9; ++i)
    for (int k = 0; k < 9; ++k) {
      const double a = m[i][k];
      if (a == 0.0) continue;
      for (int j = 0; j < 9; ++j) r.m[i][j] += a * rhs.m[k][j];
    }
  return r;
}

Tensor4 Tensor4::operator+(const Tensor4& o) const {
  Tensor4 r;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
  return r;
}

Tensor4 Tensor4::operator-(const Tensor4& o) const {
  Tensor4 r;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
  return r;
}

Tensor4 Tensor4::operator*(double s) const {
  Tensor4 r;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) r.m[i][j] = m[i][j] * s;
  return r;
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) m[i][j] += o.m[i][j];
  return *this;
}

double Tensor4::norm() const {
  double s = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) s += m[i][j] * m[i][j];
  return std::sqrt(s);
}

bool Tensor4::has_minor_symmetries(double rel_tol) const {
  const double tol = rel_tol * std::max(norm(), 1e-300);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double c = m[flat(i, j)][flat(k, l)];
          if (std::abs(c - m[flat(j, i)][flat(k, l)]) > tol) return false;
          if (std::abs(c - m[flat(i, j)][flat(l, k)]) > tol) return false;
        }
  return true;
}

Tensor4 outer_product(const Tensor2& a, const Tensor2& b) {
  Tensor4 t = Tensor4::zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t.m[flat(i, j)][flat(k, l)] = a(i, j) * b(l, k);
  return t;
}

Tensor4 box_t(const Tensor2& a, const Tensor2& b) {
  Tensor4 t = Tensor4::zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t.m[flat(i, j)][flat(k, l)] = a(i, k) * b(j, l);
  return t;
}

Tensor4 box_s(const Tensor2& a, const Tensor2& b) {
  Tensor4 t = Tensor4::zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t.m[flat(i, j)][flat(k, l)] = a(i, l) * b(j, k);
  return t;
}

Tensor4 box(const Tensor2& a, const Tensor2& b) {
  return (box_t(a, b) + box_s(a, b)) * 0.5;
}

Tensor2 tensor_product_apply(ProductKind kind, const Tensor2& a,
                             const Tensor2& b, const Tensor2& c) {
  switch (kind) {
    case ProductKind::Outer: return a * c.ddot(b.transposed());
    case ProductKind::Box: return (a * (c + c.transposed()) * b.transposed()) * 0.5;
    case ProductKind::BoxT: return a * c * b.transposed();
    case ProductKind::BoxS: return a * c.transposed() * b.transposed();
  }
  return Tensor2::zero();
}

Mandel6 to_mandel(const Tensor4& t) {
  Mandel6 m{};
  for (int b = 0; b < 6; ++b) {
    const Tensor2 out = t.apply(mandel_basis(b)).sym();
    const std::array<double, 6> col = mandel_vec(out);
    for (int a = 0; a < 6; ++a) m[a][b] = col[a];
  }
  return m;
}

Tensor4 from_mandel(const Mandel6& m) {
  Tensor4 t = Tensor4::zero();
  for (int a = 0; a < 6; ++a) {
    const int i = kPairI[a], j = kPairJ[a];
    const double fa = (i == j) ? 1.0 : kSqrt2;
    for (int b = 0; b < 6; ++b) {
      const int k = kPairI[b], l = kPairJ[b];
      const double fb = (k == l) ? 1.0 : kSqrt2;
      const double val = m[a][b] / (fa * fb);
      t.m[flat(i, j)][flat(k, l)] = val;
      t.m[flat(j, i)][flat(k, l)] = val;
      t.m[flat(i, j)][flat(l, k)] = val;
      t.m[flat(j, i)][flat(l, k)] = val;
    }
  }
  return t;
}

Tensor4 tensor4_invert(const Tensor4& t) {
  const LinSolve6 sol = invert6(to_mandel(t));
  if (!(sol.cond1 < 1e14)) {
    raise(ErrorCode::Singular,
          "fourth-order tensor conditioning exceeds 1e14 on Sym");
  }
  return from_mandel(sol.inverse);
}

bool is_positive_definite(const Tensor4& t) {
  const Mandel6 m = to_mandel(t);
  // Cholesky of the symmetric part; positivity of the quadratic form.
  double a[6][6];
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a[i][j] = 0.5 * (m[i][j] + m[j][i]);
  double scale = 0;
  for (int i = 0; i < 6; ++i) scale = std::max(scale, std::abs(a[i][i]));
  for (int k = 0; k < 6; ++k) {
    for (int i = 0; i <= k; ++i) {
      double s = a[k][i];
      for (int j = 0; j < i; ++j) s -= a[k][j] * a[i][j];
      if (i == k) {
        if (s <= 1e-14 * scale) return false;
        a[k][k] = std::sqrt(s);
      } else {
        a[k][i] = s / a[i][i];
      }
    }
  }
  return true;
}

namespace {

constexpr int kMaxSeriesTerms = 200;
constexpr double kSeriesStop = 1e-16;

// Shared driver for the two power series; coef(n) multiplies
// sum_{r+s=n-1} D^r box D^s.
template <typename CoefFn>
Tensor4 power_series_gradient(const Tensor2& d, CoefFn coef) {
  std::vector<Tensor2> powers;
  powers.push_back(Tensor2::identity());
  Tensor4 acc = Tensor4::zero();
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    while (static_cast<int>(powers.size()) < n)
      powers.push_back(powers.back() * d);
    Tensor4 term = Tensor4::zero();
    for (int r = 0; r <= n - 1; ++r) term += box(powers[r], powers[n - 1 - r]);
    term = term * coef(n);
    acc += term;
    if (term.norm() < kSeriesStop * acc.norm()) break;
  }
  return acc;
}

double spectral_radius_minus_identity(const Tensor2& y) {
  const SymEig e = eig_sym(y);
  double r = 0;
  for (double l : e.lambda) r = std::max(r, std::abs(l - 1.0));
  return r;
}

constexpr double kLogSeriesGuard = 0.9;
constexpr double kCoincidentRelTol = 1e-9;

// Divided-difference assembly sum_ij kappa(l_i, l_j) P_i box P_j.
template <typename Kappa>
Tensor4 eigenprojection_gradient(const SymEig& e, Kappa kappa) {
  Tensor2 proj[3];
  for (int k = 0; k < 3; ++k) {
    proj[k] = Tensor2::zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        proj[k](i, j) = e.vectors(i, k) * e.vectors(j, k);
  }
  Tensor4 acc = Tensor4::zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      acc += box(proj[i], proj[j]) * kappa(e.lambda[i], e.lambda[j]);
  return acc;
}

inline bool coincident(double a, double b) {
  return std::abs(a - b) <= kCoincidentRelTol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Tensor4 tensor_log_gradient_series(const Tensor2& y) {
  if (spectral_radius_minus_identity(y) >= kLogSeriesGuard) {
    raise(ErrorCode::OutOfConvergenceRadius,
          "spectral radius of (Y - I) at or beyond the 0.9 series guard");
  }
  const Tensor2 d = y - Tensor2::identity();
  return power_series_gradient(
      d, [](int n) { return (n % 2 ? 1.0 : -1.0) / n; });
}

Tensor4 tensor_log_gradient_eig(const Tensor2& y) {
  const SymEig e = eig_sym(y);
  if (e.lambda[0] <= 0) {
    raise(ErrorCode::NotSPD, "log gradient requires an SPD argument");
  }
  return eigenprojection_gradient(e, [](double li, double lj) {
    if (coincident(li, lj)) return 2.0 / (li + lj);
    return std::log1p((li - lj) / lj) / (li - lj);
  });
}

Tensor4 tensor_log_gradient(const Tensor2& y, bool* used_fallback) {
  if (spectral_radius_minus_identity(y) < kLogSeriesGuard) {
    if (used_fallback) *used_fallback = false;
    return tensor_log_gradient_series(y);
  }
  if (used_fallback) *used_fallback = true;
  return tensor_log_gradient_eig(y);
}

Tensor4 tensor_exp_gradient_series(const Tensor2& e) {
  double coef = 1.0;
  int last = 0;
  return power_series_gradient(e, [&coef, &last](int n) {
    // 1/n! built incrementally; the lambda is called with increasing n.
    if (n > last) {
      for (int k = last + 1; k <= n; ++k) coef /= k;
      last = n;
    }
    return coef;
  });
}

Tensor4 tensor_exp_gradient_eig(const Tensor2& e) {
  const SymEig eg = eig_sym(e);
  return eigenprojection_gradient(eg, [](double li, double lj) {
    if (coincident(li, lj)) return std::exp(0.5 * (li + lj));
    return std::exp(lj) * std::expm1(li - lj) / (li - lj);
  });
}

}  // namespace biotcap
