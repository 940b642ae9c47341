#include "biotcap/plasticity.hpp"

#include <cmath>

#include "biotcap/errors.hpp"

namespace biotcap {

namespace {

// pc^2 exp(trEp) / (a1 L1 e^{-L1/pc} + a2 L2 e^{-L2/pc}); the common factor of
// the hardening rate and the xi coefficients.
double compaction_gain(const InternalState& s, const MaterialParams& p) {
  const double den = p.a1_tilde * p.Lambda1 * std::exp(-p.Lambda1 / s.pc) +
                     p.a2_tilde * p.Lambda2 * std::exp(-p.Lambda2 / s.pc);
  return s.pc * s.pc * std::exp(s.trEp) / den;
}

// M -> (A M + M A)/2 on symmetric arguments.
Tensor4 sym_wrap(const Tensor2& a) {
  const Tensor2 id = Tensor2::identity();
  return (box(a, id) + box(id, a)) * 0.5;
}

}  // namespace

Tensor4 coupling_tensor_G(const Tensor2& u, const InternalState& s,
                          const MaterialParams& p,
                          const Tensor4* elastic_tangent_opt) {
  const Tensor2 id = Tensor2::identity();
  const Tensor2 upi = s.Up.inverse();
  const Tensor2 x = u * upi;
  const Tensor2 ui = u.inverse();

  const Tensor2 logy = tensor_log((x * x.transposed()).sym());
  const double tr_logy = logy.trace();
  const double dn = std::pow(s.d, 1.0 / p.n);
  const double kap = p.kappa_tilde;
  const double decay = std::exp(-tr_logy / (2.0 * dn * kap));

  // Sensitivities of khat to the coupled scalars, holding the others fixed.
  const Tensor2 dk_dc =
      id * (1.0 + (s.d - 1.0 / s.d) * tr_logy / (2.0 * kap) - decay);
  const Tensor2 dk_dd =
      id * ((p.p0 + s.c) * tr_logy / (2.0 * kap) *
            (1.0 + 1.0 / (s.d * s.d) -
             decay / (p.n * std::pow(s.d, 1.0 + 1.0 / p.n))));
  const Tensor2 dk_dmu = id * (-tr_logy / 3.0) + logy;

  const double heav = s.pc > p.pcb ? 1.0 : 0.0;
  const double gain = compaction_gain(s, p);
  const double xi2 =
      -p.c_inf * p.Gamma * heav * std::exp(-p.Gamma * (s.pc - p.pcb)) * gain;
  const double xi3 = -p.B * heav * gain;
  const double xi4 = (s.d - 1.0 / s.d) * p.mu1 * xi2 +
                     s.c * (1.0 + 1.0 / (s.d * s.d)) * p.mu1 * xi3;

  const auto biot_sym = [&ui](const Tensor2& a) {
    return ((ui * a) + (a * ui)) * 0.5;
  };

  Tensor4 inner = outer_product(biot_sym(dk_dc), id) * (-xi2) +
                  outer_product(biot_sym(dk_dd), id) * (-xi3) +
                  outer_product(biot_sym(dk_dmu), id) * (-xi4);

  const Tensor4 dkhat = khat_gradient(x, s, p);
  const Tensor4 dexp = tensor_exp_gradient(s.Ep0);
  inner += sym_wrap(ui).compose(dkhat).compose(box(x, upi)).compose(dexp);

  const Tensor4 compliance =
      elastic_tangent_opt ? tensor4_invert(*elastic_tangent_opt)
                          : tensor4_invert(elastic_tangent(u, s.Up, s, p));
  const Tensor4 g = compliance.compose(inner);
  if (!is_positive_definite(g)) {
    raise(ErrorCode::NotPositiveDefinite,
          "coupling tensor lost positive definiteness (parameter set outside "
          "the assumed regime)");
  }
  return g;
}

HardeningRates hardening_rates(const InternalState& s, double trEp_dot,
                               const MaterialParams& p) {
  HardeningRates out;
  out.pc_dot = -compaction_gain(s, p) * trEp_dot;
  const double heav = s.pc > p.pcb ? 1.0 : 0.0;
  out.c_dot = p.c_inf * p.Gamma * heav *
              std::exp(-p.Gamma * (s.pc - p.pcb)) * out.pc_dot;
  return out;
}

double hardening_modulus(const Tensor2& t1, const InternalState& s,
                         const Tensor2& flow_p, const MaterialParams& p,
                         const Tensor4& g_inverse, double phi_guard) {
  const double tr_gip = g_inverse.apply(flow_p).trace();
  const HardeningRates bar = hardening_rates(s, tr_gip, p);
  const YieldPartials part = yield_partials_clamped(t1, s, p, phi_guard);
  return -(part.dF_dpc * bar.pc_dot + part.dF_dc * bar.c_dot);
}

double plastic_modulus(double h, const Tensor2& q, const Tensor2& flow_p,
                       const Tensor4& elastic) {
  const double g = h + q.ddot(elastic.apply(flow_p));
  if (!(g > 0)) {
    raise(ErrorCode::LockingMaterial,
          "plastic modulus g <= 0 (locking regime is outside the model)");
  }
  return g;
}

}  // namespace biotcap
