#pragma once

#include <functional>

#include "biotcap/tensor2.hpp"

namespace biotcap {

/// Deformation gradient with its polar factors cached.
struct DeformationState {
  Tensor2 F;
  Tensor2 R;
  Tensor2 U;  // right stretch, SPD
  Tensor2 V;  // left stretch, SPD
  double J;   // det F > 0
};

DeformationState make_deformation_state(const Tensor2& f);

/// Lagrangean strain measure: (U^m - I)/m for m != 0, log U for m = 0.
Tensor2 strain_measure(const Tensor2& u, int m);

/// Stress measure conjugate to strain_measure(U, m) for m in {0, 1, 2},
/// given the Kirchhoff stress K. m = 0 requires coaxiality of K and log V.
Tensor2 conjugate_stress(const Tensor2& k, const DeformationState& state, int m);

/// Normalized commutator residual ||(log V) K - K (log V)|| / (||K|| ||log V||).
double coaxiality_residual(const Tensor2& k, const Tensor2& v);

struct MultiplicativeSplit {
  Tensor2 Fe;     // F Up^{-1}
  Tensor2 Ve;     // left stretch of Fe
  Tensor2 eps_e;  // log Ve
};

/// Elastic part of F = Fe Fp under the plastic-rotation-free convention
/// Fp = Up.
MultiplicativeSplit multiplicative_split(const Tensor2& f, const Tensor2& up);

struct VolumetricSplit {
  double logJ;
  double logJe;
  double logJp;
};

/// log J = log Je + log Jp decomposition of the volumetric deformation.
VolumetricSplit volumetric_split(const Tensor2& f, const Tensor2& up);

using TensorPath = std::function<Tensor2(double)>;

/// |T^(m) : dE^(m)/dt - S : dF/dt| / max(|S : dF/dt|, floor), rates by central
/// differences with step dt. Checks the conjugacy of the (T, E) pair built
/// from the Kirchhoff path K(t).
double work_conjugacy_residual(const TensorPath& f_path, const TensorPath& k_path,
                               int m, double t, double dt,
                               double floor = 1e-30);

/// |T^(0) : dE^(0)/dt - K : d(log V)/dt| / max(|K : d(log V)/dt|, floor);
/// the Eulerian counterpart, valid on coaxial (isotropic-response) paths.
double eulerian_conjugacy_residual(const TensorPath& f_path,
                                   const TensorPath& k_path, double t,
                                   double dt, double floor = 1e-30);

}  // namespace biotcap
