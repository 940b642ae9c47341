#pragma once

#include <array>
#include <optional>

#include "biotcap/material.hpp"
#include "biotcap/tensor2.hpp"
#include "biotcap/tensor4.hpp"

namespace biotcap {

/// Material point advanced by the driver. Rotation-free convention: the
/// deformation gradient is the (symmetric) right stretch U, E = U - I is the
/// Biot-conjugate strain, T is the Biot stress integrated in rate form.
struct MaterialPoint {
  Tensor2 U;
  Tensor2 T1;
  InternalState state;
  double Lambda = 0.0;
};

struct StepControl {
  double max_substep = 1e-4;   // bound on ||dE|| per explicit sub-step
  double tol_F = 1e-8;         // consistency band, |F| <= tol_F * M * pc
  int max_drift_iters = 20;    // cutting-plane passes per sub-step
  double crossing_tol = 1e-10; // bisection width on the elastic-plastic crossing
  double phi_guard = 1e-8;     // vertex clamp for gradient evaluations
  int max_newton = 50;         // mixed-control iterations
  double newton_tol = 1e-8;    // stress residual, units of M * pc
};

enum class StepMode { Elastic = 0, Plastic = 1 };

struct StepResult {
  StepMode mode = StepMode::Elastic;
  double dLambda = 0.0;
  int substeps = 0;
  double drift_residual = 0.0;  // max |F| after correction over plastic sub-steps
  double h = 0.0;
  double g = 0.0;
  double Phi = 0.0;
  double theta = 0.0;
  bool softening = false;  // h <= 0 seen on some plastic sub-step
};

/// Fresh material point: isotropic plastic history consistent with pc0,
/// U = I, stress from the elastic law. Throws ValidationError when the
/// initial stress violates the initial yield surface.
MaterialPoint make_material_point(double pc0, const MaterialParams& p,
                                  const StepControl& ctl = {});

struct RateResult {
  Tensor2 T1_dot;
  double Lambda_dot;
  StepMode mode;
};

/// Forward rate equations: elastic inside the surface, Macaulay-switched
/// plastic relaxation on it.
RateResult forward_rate(const MaterialPoint& pt, const Tensor2& e1_dot,
                        const MaterialParams& p, const StepControl& ctl = {});

/// Inverse rate equations; requires h > 0 on the yield surface.
Tensor2 inverse_rate(const MaterialPoint& pt, const Tensor2& t1_dot,
                     const MaterialParams& p, const StepControl& ctl = {});

/// Advance by a strain increment with sub-stepping, elastic-plastic crossing
/// bisection and cutting-plane drift correction.
StepResult integrate_step(MaterialPoint& pt, const Tensor2& dE1,
                          const StepControl& ctl, const MaterialParams& p);

/// Mixed strain/stress control: stress_mask[k] selects Voigt slots
/// (11,22,33,23,13,12) where the end-of-step Biot stress is prescribed
/// (t1_target); the remaining slots take the prescribed strain increment dE1.
StepResult mixed_control_step(MaterialPoint& pt,
                              const std::array<bool, 6>& stress_mask,
                              const std::array<double, 6>& dE1,
                              const std::array<double, 6>& t1_target,
                              const StepControl& ctl, const MaterialParams& p);

/// log J = log Je + log Jp bookkeeping of the current point.
struct VolumetricCheck {
  double logJ, logJe, logJp, residual;
};
VolumetricCheck volumetric_check(const MaterialPoint& pt);

}  // namespace biotcap
