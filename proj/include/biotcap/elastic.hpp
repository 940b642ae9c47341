#pragma once

#include "biotcap/material.hpp"
#include "biotcap/tensor2.hpp"
#include "biotcap/tensor4.hpp"

namespace biotcap {

/// Coupled hyperelastic potential phi(eps_e; c, d, mu), stress units.
double strain_energy(const Tensor2& eps_e, const InternalState& s,
                     const MaterialParams& p);

/// Kirchhoff stress K = d(phi)/d(eps_e); an isotropic function of eps_e.
Tensor2 kirchhoff_stress(const Tensor2& eps_e, const InternalState& s,
                         const MaterialParams& p);

/// K written against the elastic deformation argument X (enters through
/// log X X^T); khat(X) equals kirchhoff_stress at eps_e = log X X^T / 2.
Tensor2 khat(const Tensor2& x, const InternalState& s, const MaterialParams& p);

/// Tangent bulk coefficient K_t(X) of the volumetric response.
double Kt_scalar(double tr_logY, const InternalState& s, const MaterialParams& p);

/// d khat(X)/dX as a fourth-order operator on general (non-symmetric)
/// increments dX.
Tensor4 khat_gradient(const Tensor2& x, const InternalState& s,
                      const MaterialParams& p);

/// Biot stress T = (U^{-1} khat(U Up^{-1}) + khat(U Up^{-1}) U^{-1}) / 2.
Tensor2 biot_stress(const Tensor2& u, const Tensor2& up, const InternalState& s,
                    const MaterialParams& p);

/// Fourth-order elastic tangent dT/dE at fixed internal state, E = U - I.
Tensor4 elastic_tangent(const Tensor2& u, const Tensor2& up,
                        const InternalState& s, const MaterialParams& p);

}  // namespace biotcap
