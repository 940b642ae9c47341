#include "biotcap/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "biotcap/elastic.hpp"
#include "biotcap/errors.hpp"
#include "biotcap/kinematics.hpp"
#include "biotcap/plasticity.hpp"
#include "biotcap/yield.hpp"

namespace biotcap {

namespace {

double consistency_tol(const MaterialPoint& pt, const MaterialParams& p,
                       const StepControl& ctl) {
  return ctl.tol_F * p.M * pt.state.pc;
}

struct PlasticQuantities {
  Tensor4 elastic;
  Tensor4 g_inv;
  Tensor2 Q;
  Tensor2 P;
  double h;
  double g;
  double Phi;
  double theta;
};

PlasticQuantities plastic_quantities(const MaterialPoint& pt,
                                     const MaterialParams& p,
                                     const StepControl& ctl) {
  PlasticQuantities out;
  out.elastic = elastic_tangent(pt.U, pt.state.Up, pt.state, p);
  const YieldEval ev = yield_eval(pt.T1, pt.state, p);
  out.Phi = ev.Phi;
  out.theta = ev.inv.theta;
  out.Q = yield_gradient_clamped(pt.T1, pt.state, p, ctl.phi_guard);
  const double phi_cl =
      std::clamp(ev.Phi, ctl.phi_guard, 1.0 - ctl.phi_guard);
  out.P = flow_mode(out.Q, phi_cl, p);
  const Tensor4 g4 = coupling_tensor_G(pt.U, pt.state, p, &out.elastic);
  out.g_inv = tensor4_invert(g4);
  out.h = hardening_modulus(pt.T1, pt.state, out.P, p, out.g_inv, ctl.phi_guard);
  out.g = plastic_modulus(out.h, out.Q, out.P, out.elastic);
  return out;
}

// Exact hyperelastic stress increment at frozen internal state; elastic
// sub-steps integrate the rate equations exactly, so closed elastic strain
// loops return the stress bit-for-bit.
Tensor2 elastic_increment(const MaterialPoint& pt, const Tensor2& dU,
                          const MaterialParams& p) {
  const Tensor2 t_new = biot_stress(pt.U + dU, pt.state.Up, pt.state, p);
  const Tensor2 t_old = biot_stress(pt.U, pt.state.Up, pt.state, p);
  return t_new - t_old;
}

// Scalar state probe used by the drift correction: the state displaced by
// dLambda along the frozen relaxation directions.
struct DriftDirections {
  Tensor2 dT;   // -E[P]
  Tensor2 dEp;  // G^{-1}[P]
};

double drift_F(const MaterialPoint& pt, const DriftDirections& dir, double x,
               const MaterialParams& p) {
  const InternalState trial = state_from_Ep(pt.state.Ep0 + dir.dEp * x, p);
  return yield_value(pt.T1 + dir.dT * x, trial, p);
}

void drift_commit(MaterialPoint& pt, const DriftDirections& dir, double x,
                  const MaterialParams& p) {
  pt.T1 += dir.dT * x;
  pt.state = state_from_Ep(pt.state.Ep0 + dir.dEp * x, p);
  pt.Lambda += x;
}

// Cutting-plane pass: scale plastic-multiplier corrections along G^{-1}[P]
// (with the conjugate stress relaxation -E[P]) until the state returns to the
// yield surface. Returns the final |F|.
double drift_correct(MaterialPoint& pt, const StepControl& ctl,
                     const MaterialParams& p) {
  double f = yield_value(pt.T1, pt.state, p);
  for (int outer = 0; outer < ctl.max_drift_iters; ++outer) {
    const double tol = consistency_tol(pt, p, ctl);
    const double aim = 0.01 * tol;
    if (std::abs(f) <= aim) return std::abs(f);
    if (f < 0.0) {
      // Drifted inside: the explicit step over-relaxed. The state is
      // admissible; stop rather than un-load plastically.
      return std::abs(f);
    }

    const PlasticQuantities pq = plastic_quantities(pt, p, ctl);
    DriftDirections dir;
    dir.dT = pq.elastic.apply(pq.P) * (-1.0);
    dir.dEp = pq.g_inv.apply(pq.P);

    const YieldEval ev = yield_eval(pt.T1, pt.state, p);
    const double f_scale = ev.in_domain ? f : p.M * pt.state.pc;
    double hi = f_scale / pq.g;
    double psi_hi = drift_F(pt, dir, hi, p);
    if (std::abs(psi_hi) > aim) {
      int expand = 0;
      while (psi_hi > 0.0 && expand < 300) {
        hi *= 2.0;
        psi_hi = drift_F(pt, dir, hi, p);
        ++expand;
      }
      if (psi_hi > 0.0) {
        raise(ErrorCode::DriftNotConverged,
              "drift correction could not bracket the yield surface");
      }
      double lo = 0.0;
      double best_x = hi;
      double best_f = std::abs(psi_hi);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double psi = drift_F(pt, dir, mid, p);
        if (std::abs(psi) < best_f) {
          best_f = std::abs(psi);
          best_x = mid;
        }
        if (psi > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
        if (best_f <= aim || (hi - lo) <= 1e-18 * std::max(hi, 1e-30)) break;
      }
      hi = best_x;
    }
    drift_commit(pt, dir, hi, p);
    f = yield_value(pt.T1, pt.state, p);
    // A bracketed scalar pass lands at the resolution floor of F; accept it
    // inside the consistency band rather than re-running the direction.
    if (std::abs(f) <= tol) return std::abs(f);
  }
  const double tol = consistency_tol(pt, p, ctl);
  if (std::abs(f) > tol) {
    raise(ErrorCode::DriftNotConverged,
          "yield drift " + std::to_string(f) + " above tolerance " +
              std::to_string(tol));
  }
  return std::abs(f);
}

struct SubstepOutcome {
  StepMode mode;
  double dLambda;
  double drift;
  PlasticQuantities pq;
  bool has_pq = false;
};

SubstepOutcome plastic_substep(MaterialPoint& pt, const Tensor2& dE,
                               const StepControl& ctl, const MaterialParams& p) {
  SubstepOutcome out;
  const PlasticQuantities pq = plastic_quantities(pt, p, ctl);
  const double loading = pq.Q.ddot(pq.elastic.apply(dE));
  if (loading <= 0.0) {
    // Unloading or neutral: exact elastic move off the surface.
    pt.T1 += elastic_increment(pt, dE, p);
    pt.U += dE;
    out.mode = StepMode::Elastic;
    out.dLambda = 0.0;
    out.drift = 0.0;
    return out;
  }
  const double d_lambda = loading / pq.g;
  // Forward-Euler rates, then cutting-plane return to the surface.
  pt.T1 += pq.elastic.apply(dE) - pq.elastic.apply(pq.P) * d_lambda;
  pt.state = state_from_Ep(pt.state.Ep0 + pq.g_inv.apply(pq.P) * d_lambda, p);
  pt.U += dE;
  pt.Lambda += d_lambda;
  out.drift = drift_correct(pt, ctl, p);
  out.mode = StepMode::Plastic;
  out.dLambda = d_lambda;
  out.pq = pq;
  out.has_pq = true;
  return out;
}

SubstepOutcome advance_substep(MaterialPoint& pt, const Tensor2& dE,
                               const StepControl& ctl, const MaterialParams& p) {
  const double tol = consistency_tol(pt, p, ctl);
  const double f0 = yield_value(pt.T1, pt.state, p);
  if (f0 < -tol) {
    const Tensor2 dT = elastic_increment(pt, dE, p);
    const double f1 = yield_value(pt.T1 + dT, pt.state, p);
    if (f1 <= tol) {
      pt.T1 += dT;
      pt.U += dE;
      SubstepOutcome out;
      out.mode = StepMode::Elastic;
      out.dLambda = 0.0;
      out.drift = 0.0;
      return out;
    }
    // Bisect the crossing fraction before switching branches.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > ctl.crossing_tol) {
      const double mid = 0.5 * (lo + hi);
      const double fm =
          yield_value(pt.T1 + elastic_increment(pt, dE * mid, p), pt.state, p);
      if (fm <= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    pt.T1 += elastic_increment(pt, dE * lo, p);
    pt.U += dE * lo;
    return plastic_substep(pt, dE * (1.0 - lo), ctl, p);
  }
  return plastic_substep(pt, dE, ctl, p);
}

}  // namespace

MaterialPoint make_material_point(double pc0, const MaterialParams& p,
                                  const StepControl& ctl) {
  MaterialPoint pt;
  pt.state = state_from_pc(pc0, p);
  pt.U = Tensor2::identity();
  pt.T1 = biot_stress(pt.U, pt.state.Up, pt.state, p);
  pt.Lambda = 0.0;
  const double f = yield_value(pt.T1, pt.state, p);
  if (f > consistency_tol(pt, p, ctl)) {
    raise(ErrorCode::ValidationError,
          "initial stress state violates the initial yield surface (check p0 "
          "against pc0)");
  }
  return pt;
}

RateResult forward_rate(const MaterialPoint& pt, const Tensor2& e1_dot,
                        const MaterialParams& p, const StepControl& ctl) {
  RateResult out;
  const double f = yield_value(pt.T1, pt.state, p);
  if (f < -consistency_tol(pt, p, ctl)) {
    const Tensor4 e4 = elastic_tangent(pt.U, pt.state.Up, pt.state, p);
    out.T1_dot = e4.apply(e1_dot);
    out.Lambda_dot = 0.0;
    out.mode = StepMode::Elastic;
    return out;
  }
  const PlasticQuantities pq = plastic_quantities(pt, p, ctl);
  const double loading = pq.Q.ddot(pq.elastic.apply(e1_dot));
  out.Lambda_dot = std::max(loading, 0.0) / pq.g;
  out.T1_dot =
      pq.elastic.apply(e1_dot) - pq.elastic.apply(pq.P) * out.Lambda_dot;
  out.mode = out.Lambda_dot > 0.0 ? StepMode::Plastic : StepMode::Elastic;
  return out;
}

Tensor2 inverse_rate(const MaterialPoint& pt, const Tensor2& t1_dot,
                     const MaterialParams& p, const StepControl& ctl) {
  const double f = yield_value(pt.T1, pt.state, p);
  const Tensor4 e4 = elastic_tangent(pt.U, pt.state.Up, pt.state, p);
  const Tensor4 m4 = tensor4_invert(e4);
  if (f < -consistency_tol(pt, p, ctl)) {
    return m4.apply(t1_dot);
  }
  const PlasticQuantities pq = plastic_quantities(pt, p, ctl);
  if (!(pq.h > 0.0)) {
    raise(ErrorCode::NonInvertibleRegime,
          "inverse rate equations need positive hardening on the surface");
  }
  const double loading = std::max(pq.Q.ddot(t1_dot), 0.0);
  return m4.apply(t1_dot) + pq.P * (loading / pq.h);
}

StepResult integrate_step(MaterialPoint& pt, const Tensor2& dE1,
                          const StepControl& ctl, const MaterialParams& p) {
  if (!dE1.is_symmetric(1e-10)) {
    raise(ErrorCode::OutOfRange, "strain increment must be symmetric");
  }
  StepResult res;
  const double len = dE1.norm();
  const int nsub =
      std::max(1, static_cast<int>(std::ceil(len / ctl.max_substep)));
  const Tensor2 delta = dE1 * (1.0 / nsub);
  for (int k = 0; k < nsub; ++k) {
    const SubstepOutcome sub = advance_substep(pt, delta, ctl, p);
    res.substeps += 1;
    res.dLambda += sub.dLambda;
    res.drift_residual = std::max(res.drift_residual, sub.drift);
    if (sub.mode == StepMode::Plastic) {
      res.mode = StepMode::Plastic;
      res.h = sub.pq.h;
      res.g = sub.pq.g;
      res.Phi = sub.pq.Phi;
      res.theta = sub.pq.theta;
      if (!(sub.pq.h > 0.0)) res.softening = true;
    }
  }
  return res;
}

StepResult mixed_control_step(MaterialPoint& pt,
                              const std::array<bool, 6>& stress_mask,
                              const std::array<double, 6>& dE1,
                              const std::array<double, 6>& t1_target,
                              const StepControl& ctl, const MaterialParams& p) {
  int idx[6];
  int k = 0;
  for (int i = 0; i < 6; ++i)
    if (stress_mask[i]) idx[k++] = i;
  if (k == 0) {
    return integrate_step(pt, from_voigt(dE1), ctl, p);
  }

  const MaterialPoint start = pt;
  std::array<double, 6> x{};  // unknown strain increments on stress slots

  const auto run_trial = [&](const std::array<double, 6>& unknowns,
                             MaterialPoint& trial) {
    trial = start;
    std::array<double, 6> de = dE1;
    for (int a = 0; a < k; ++a) de[idx[a]] = unknowns[idx[a]];
    return integrate_step(trial, from_voigt(de), ctl, p);
  };

  // Warm start: elastic predictor on the stress slots.
  {
    const Tensor4 e4 = elastic_tangent(start.U, start.state.Up, start.state, p);
    const std::array<double, 6> t_now = to_voigt(start.T1);
    // Build the k x k elastic block in plain Voigt components.
    double a[6][7];
    for (int r = 0; r < k; ++r) {
      Tensor2 ei = Tensor2::zero();
      for (int cidx = 0; cidx < k; ++cidx) {
        std::array<double, 6> basis{};
        basis[idx[cidx]] = 1.0;
        ei = from_voigt(basis);
        a[r][cidx] = to_voigt(e4.apply(ei))[idx[r]];
      }
      a[r][k] = t1_target[idx[r]] - t_now[idx[r]];
    }
    // Solve the small system by Gaussian elimination (best effort; Newton
    // refines it).
    bool ok = true;
    for (int col = 0; col < k && ok; ++col) {
      int piv = col;
      for (int r = col + 1; r < k; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) < 1e-300) {
        ok = false;
        break;
      }
      for (int j = 0; j <= k; ++j) std::swap(a[piv][j], a[col][j]);
      for (int r = 0; r < k; ++r) {
        if (r == col) continue;
        const double fctr = a[r][col] / a[col][col];
        for (int j = 0; j <= k; ++j) a[r][j] -= fctr * a[col][j];
      }
    }
    if (ok)
      for (int r = 0; r < k; ++r) x[idx[r]] = a[r][k] / a[r][r];
  }

  MaterialPoint trial = start;
  StepResult res = run_trial(x, trial);
  std::array<double, 6> t_end = to_voigt(trial.T1);

  const auto residual_norm = [&](const std::array<double, 6>& t) {
    double rn = 0;
    for (int a = 0; a < k; ++a)
      rn = std::max(rn, std::abs(t[idx[a]] - t1_target[idx[a]]));
    return rn;
  };

  double jac[6][6];
  bool have_jac = false;
  int since_refresh = 0;
  for (int it = 0; it < ctl.max_newton; ++it) {
    const double tol = ctl.newton_tol * p.M * trial.state.pc;
    if (residual_norm(t_end) <= tol) {
      pt = trial;
      return res;
    }
    if (!have_jac || since_refresh >= 8) {
      // Finite-difference Jacobian of the end-of-step stress slots.
      const double step = 1e-7;
      for (int cidx = 0; cidx < k; ++cidx) {
        std::array<double, 6> xp = x;
        xp[idx[cidx]] += step;
        MaterialPoint tp = start;
        run_trial(xp, tp);
        const std::array<double, 6> tpv = to_voigt(tp.T1);
        for (int r = 0; r < k; ++r)
          jac[r][cidx] = (tpv[idx[r]] - t_end[idx[r]]) / step;
      }
      have_jac = true;
      since_refresh = 0;
    }
    // Solve jac * dx = -(t_end - target).
    double a[6][7];
    for (int r = 0; r < k; ++r) {
      for (int cidx = 0; cidx < k; ++cidx) a[r][cidx] = jac[r][cidx];
      a[r][k] = t1_target[idx[r]] - t_end[idx[r]];
    }
    for (int col = 0; col < k; ++col) {
      int piv = col;
      for (int r = col + 1; r < k; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) < 1e-300) {
        raise(ErrorCode::NewtonNotConverged,
              "mixed-control Jacobian is singular");
      }
      for (int j = 0; j <= k; ++j) std::swap(a[piv][j], a[col][j]);
      for (int r = 0; r < k; ++r) {
        if (r == col) continue;
        const double fctr = a[r][col] / a[col][col];
        for (int j = 0; j <= k; ++j) a[r][j] -= fctr * a[col][j];
      }
    }
    double dx[6];
    for (int r = 0; r < k; ++r) dx[r] = a[r][k] / a[r][r];

    // Damped update with a simple backtracking safeguard.
    const double r0 = residual_norm(t_end);
    double lambda = 1.0;
    for (int bt = 0; bt < 6; ++bt) {
      std::array<double, 6> xn = x;
      for (int r = 0; r < k; ++r) xn[idx[r]] += lambda * dx[r];
      MaterialPoint tn = start;
      const StepResult rn = run_trial(xn, tn);
      const std::array<double, 6> tv = to_voigt(tn.T1);
      if (residual_norm(tv) < r0 || bt == 5) {
        x = xn;
        trial = tn;
        res = rn;
        t_end = tv;
        break;
      }
      lambda *= 0.5;
    }
    ++since_refresh;
  }
  const double tol = ctl.newton_tol * p.M * trial.state.pc;
  if (residual_norm(t_end) <= tol) {
    pt = trial;
    return res;
  }
  raise(ErrorCode::NewtonNotConverged,
        "mixed-control step failed to meet the stress targets in " +
            std::to_string(ctl.max_newton) + " iterations");
}

VolumetricCheck volumetric_check(const MaterialPoint& pt) {
  const VolumetricSplit vs = volumetric_split(pt.U, pt.state.Up);
  VolumetricCheck out;
  out.logJ = vs.logJ;
  out.logJe = vs.logJe;
  out.logJp = vs.logJp;
  out.residual = std::abs(vs.logJ - vs.logJe - vs.logJp);
  return out;
}

}  // namespace biotcap
