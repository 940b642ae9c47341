#pragma once

#include "biotcap/elastic.hpp"
#include "biotcap/material.hpp"
#include "biotcap/tensor4.hpp"
#include "biotcap/yield.hpp"

namespace biotcap {

/// Coupling tensor mapping the plastic log-strain rate onto the irreversible
/// strain-rate direction:  Lambda_dot P = G[Ep0_dot].  Assembled from the
/// scalar coupling sensitivities (xi-weighted) and the geometric term through
/// d(exp Ep)/dEp, premultiplied by the elastic compliance. Throws
/// NotPositiveDefinite when the quadratic form fails positivity.
/// Pass the elastic tangent when already available to avoid recomputation.
Tensor4 coupling_tensor_G(const Tensor2& u, const InternalState& s,
                          const MaterialParams& p,
                          const Tensor4* elastic_tangent_opt = nullptr);

struct HardeningRates {
  double pc_dot;
  double c_dot;
};

/// pc and c rates driven by the volumetric plastic strain rate tr(Ep0_dot).
HardeningRates hardening_rates(const InternalState& s, double trEp_dot,
                               const MaterialParams& p);

/// Hardening modulus h = -(dF/dpc pc_bar + dF/dc c_bar) with the per-unit-
/// multiplier rates built from tr(G^{-1}[P]). phi_guard clamps the vertex
/// singularity of the yield partials.
double hardening_modulus(const Tensor2& t1, const InternalState& s,
                         const Tensor2& flow_p, const MaterialParams& p,
                         const Tensor4& g_inverse, double phi_guard = 1e-8);

/// Plastic modulus g = h + Q : E[P]; throws LockingMaterial when g <= 0.
double plastic_modulus(double h, const Tensor2& q, const Tensor2& flow_p,
                       const Tensor4& elastic);

}  // namespace biotcap
