#pragma once

#include <string>
#include <vector>

#include "biotcap/tensor2.hpp"

namespace biotcap {

/// Constitutive constants. Stress-valued entries are in MPa at the CLI
/// surface; kappa_tilde is a dimensionless logarithmic compliance.
struct MaterialParams {
  double kappa_tilde;  // elastic logarithmic bulk compliance
  double p0;           // initial confining pressure
  double n;            // elastic exponent entering d^(1/n)
  double mu0;          // shear modulus of the uncoupled material
  double mu1;          // shear stiffening per unit cohesion
  double B;            // coupling slope of d, 1/stress
  double pcb;          // cohesion onset pressure (breakpoint)
  double c_inf;        // cohesion saturation value
  double Gamma;        // cohesion growth rate, 1/stress
  double a1_tilde;     // compaction-law weight
  double a2_tilde;     // compaction-law weight (a1 + a2 < 1)
  double Lambda1;      // compaction-law pressure scale
  double Lambda2;      // compaction-law pressure scale
  double M;            // meridian slope of the yield cap
  double m;            // cap shape exponent, > 1
  double alpha;        // cap distortion, in [0, 2]
  double beta;         // deviatoric shape, in [0, 2]
  double gamma;        // deviatoric convexity, in [0, 1)
  double eps_na;       // nonassociativity, in [0, 1]
};

/// Returns every violated parameter invariant (empty when valid).
std::vector<std::string> validate(const MaterialParams& p);

/// Throws ValidationError listing all violations.
void validate_or_throw(const MaterialParams& p);

struct CouplingParams {
  double c;
  double d;
  double mu;
};

/// Plastic dependence of the elastic constants: d = 1 + B<pc - pcb>,
/// c = c_inf (1 - exp(-Gamma<pc - pcb>)), mu = mu0 + c (d - 1/d) mu1.
/// The Heaviside convention at the breakpoint is H(0) = 0.
CouplingParams coupling_parameters(double pc, const MaterialParams& p);

/// Volumetric log plastic strain fixed by the hardening pressure:
/// tr Ep = log(1 - a1 exp(-Lambda1/pc) - a2 exp(-Lambda2/pc)).
double trEp_from_pc(double pc, const MaterialParams& p);

/// Numerical inverse of trEp_from_pc on (log(1 - a1 - a2), 0).
double pc_from_trEp(double trEp, const MaterialParams& p);

/// The internal-variable set: plastic log strain with its derived scalars,
/// kept mutually consistent on every rebuild.
struct InternalState {
  Tensor2 Ep0;   // plastic logarithmic strain, symmetric
  Tensor2 Up;    // exp(Ep0), SPD
  double trEp;   // tr Ep0
  double pc;     // hardening pressure, consistent with trEp
  double c, d, mu;
};

InternalState state_from_pc(double pc0, const MaterialParams& p);
InternalState state_from_Ep(const Tensor2& ep0, const MaterialParams& p);

}  // namespace biotcap
