#include "biotcap/kinematics.hpp"

#include <cmath>
#include <string>

#include "biotcap/errors.hpp"

namespace biotcap {

DeformationState make_deformation_state(const Tensor2& f) {
  const PolarDecomposition rp = polar_decompose(f, PolarSide::Right);
  DeformationState s;
  s.F = f;
  s.R = rp.rotation;
  s.U = rp.stretch;
  s.V = (f * rp.rotation.transposed()).sym();
  s.J = f.det();
  return s;
}

Tensor2 strain_measure(const Tensor2& u, int m) {
  if (m == 0) return tensor_log(u);
  return (int_power(u, m) - Tensor2::identity()) * (1.0 / m);
}

Tensor2 conjugate_stress(const Tensor2& k, const DeformationState& state, int m) {
  switch (m) {
    case 2: {
      const Tensor2 fi = state.F.inverse();
      return fi * k * fi.transposed();
    }
    case 1: {
      const Tensor2 t2 = conjugate_stress(k, state, 2);
      return ((t2 * state.U) + (state.U * t2)) * 0.5;
    }
    case 0: {
      const double r = coaxiality_residual(k, state.V);
      if (r > 1e-8) {
        raise(ErrorCode::NonCoaxial,
              "rotated stress is conjugate to log U only for coaxial K, log V "
              "(residual " + std::to_string(r) + ")");
      }
      return state.R.transposed() * k * state.R;
    }
    default:
      raise(ErrorCode::OutOfRange,
            "conjugate stress implemented for m in {0, 1, 2}");
  }
}

double coaxiality_residual(const Tensor2& k, const Tensor2& v) {
  const Tensor2 lv = tensor_log(v);
  const double denom = k.norm() * lv.norm();
  if (denom == 0.0) return 0.0;
  return ((lv * k) - (k * lv)).norm() / denom;
}

MultiplicativeSplit multiplicative_split(const Tensor2& f, const Tensor2& up) {
  MultiplicativeSplit out;
  out.Fe = f * up.inverse();
  const PolarDecomposition lp = polar_decompose(out.Fe, PolarSide::Left);
  out.Ve = lp.stretch;
  out.eps_e = tensor_log(out.Ve);
  return out;
}

VolumetricSplit volumetric_split(const Tensor2& f, const Tensor2& up) {
  const MultiplicativeSplit ms = multiplicative_split(f, up);
  VolumetricSplit v;
  v.logJ = std::log(f.det());
  v.logJe = ms.eps_e.trace();
  v.logJp = std::log(up.det());
  return v;
}

namespace {

Tensor2 central_diff(const TensorPath& path, double t, double dt) {
  return (path(t + dt) - path(t - dt)) * (1.0 / (2.0 * dt));
}

}  // namespace

double work_conjugacy_residual(const TensorPath& f_path, const TensorPath& k_path,
                               int m, double t, double dt, double floor) {
  const Tensor2 f = f_path(t);
  const Tensor2 k = k_path(t);
  const DeformationState state = make_deformation_state(f);
  const Tensor2 tm = conjugate_stress(k, state, m);

  const auto e_path = [&](double tau) {
    const PolarDecomposition rp = polar_decompose(f_path(tau), PolarSide::Right);
    return strain_measure(rp.stretch, m);
  };
  const Tensor2 e_dot = central_diff(e_path, t, dt);
  const Tensor2 f_dot = central_diff(f_path, t, dt);

  const Tensor2 s = k * f.inverse().transposed();  // first Piola-Kirchhoff
  const double power = s.ddot(f_dot);
  return std::abs(tm.ddot(e_dot) - power) / std::max(std::abs(power), floor);
}

double eulerian_conjugacy_residual(const TensorPath& f_path,
                                   const TensorPath& k_path, double t,
                                   double dt, double floor) {
  const Tensor2 k = k_path(t);
  const DeformationState state = make_deformation_state(f_path(t));
  const Tensor2 t0 = conjugate_stress(k, state, 0);

  const auto e0_path = [&](double tau) {
    return tensor_log(polar_decompose(f_path(tau), PolarSide::Right).stretch);
  };
  const auto logv_path = [&](double tau) {
    return tensor_log(polar_decompose(f_path(tau), PolarSide::Left).stretch);
  };
  const double lhs = t0.ddot(central_diff(e0_path, t, dt));
  const double rhs = k.ddot(central_diff(logv_path, t, dt));
  return std::abs(lhs - rhs) / std::max(std::abs(rhs), floor);
}

}  // namespace biotcap
