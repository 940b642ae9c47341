#pragma once

#include "biotcap/material.hpp"
#include "biotcap/tensor2.hpp"

namespace biotcap {

/// Invariants of the Biot stress; pressure positive in compression.
struct StressInvariants {
  double p;      // -tr T / 3
  double q;      // sqrt(3 J2)
  double theta;  // Lode angle in [0, pi/3]; 0 when lode_undefined
  double J2;
  double J3;
  double cos3theta;     // clamped to [-1, 1]
  bool lode_undefined;  // deviator below resolution
};

StressInvariants stress_invariants(const Tensor2& t1);

/// Out-of-domain states (Phi outside [0, 1]) report this finite sentinel value
/// scaled by M pc instead of +infinity.
constexpr double kYieldSentinelScale = 1e30;

struct YieldEval {
  double F;
  double Phi;
  bool in_domain;  // Phi within [0, 1]
  StressInvariants inv;
};

YieldEval yield_eval(const Tensor2& t1, const InternalState& s,
                     const MaterialParams& p);

double yield_value(const Tensor2& t1, const InternalState& s,
                   const MaterialParams& p);

/// 1/g(theta) expressed through cos 3 theta; multiplies q in F.
double lode_factor(double cos3theta, const MaterialParams& p);

/// Q = dF/dT; throws GradientSingular when Phi comes within 1e-9 of the cap
/// vertices 0 or 1 (where the meridian has infinite slope).
Tensor2 yield_gradient(const Tensor2& t1, const InternalState& s,
                       const MaterialParams& p);

/// Gradient evaluated with Phi clamped into [phi_guard, 1 - phi_guard]; the
/// deviatoric structure still comes from the actual stress. This is the guard
/// policy used by the integrator near the cap vertices.
Tensor2 yield_gradient_clamped(const Tensor2& t1, const InternalState& s,
                               const MaterialParams& p, double phi_guard);

/// Flow mode P = Q - (tr Q / 3) eps_na (1 - Phi) I.
Tensor2 flow_mode(const Tensor2& q, double phi, const MaterialParams& p);

struct YieldPartials {
  double dF_dpc;
  double dF_dc;
};

/// Closed-form dF/dpc and dF/dc; same vertex guard as yield_gradient.
YieldPartials yield_partials(const Tensor2& t1, const InternalState& s,
                             const MaterialParams& p);

YieldPartials yield_partials_clamped(const Tensor2& t1, const InternalState& s,
                                     const MaterialParams& p, double phi_guard);

}  // namespace biotcap
