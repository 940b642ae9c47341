#include "biotcap/elastic.hpp"

#include <cmath>

namespace biotcap {

double strain_energy(const Tensor2& eps_e, const InternalState& s,
                     const MaterialParams& p) {
  const double tre = eps_e.trace();
  const double dn = std::pow(s.d, 1.0 / p.n);
  const double kap = p.kappa_tilde;
  return -(s.mu / 3.0) * tre * tre + s.c * tre +
         (p.p0 + s.c) * ((s.d - 1.0 / s.d) * tre * tre / (2.0 * kap) +
                         dn * kap * std::exp(-tre / (dn * kap))) +
         s.mu * eps_e.ddot(eps_e);
}

Tensor2 kirchhoff_stress(const Tensor2& eps_e, const InternalState& s,
                         const MaterialParams& p) {
  const double tre = eps_e.trace();
  const double dn = std::pow(s.d, 1.0 / p.n);
  const double kap = p.kappa_tilde;
  const double vol =
      -(2.0 / 3.0) * s.mu * tre + s.c +
      (p.p0 + s.c) * ((s.d - 1.0 / s.d) * tre / kap - std::exp(-tre / (dn * kap)));
  return Tensor2::identity() * vol + eps_e * (2.0 * s.mu);
}

Tensor2 khat(const Tensor2& x, const InternalState& s, const MaterialParams& p) {
  const Tensor2 logy = tensor_log((x * x.transposed()).sym());
  return kirchhoff_stress(logy * 0.5, s, p);
}

double Kt_scalar(double tr_logY, const InternalState& s,
                 const MaterialParams& p) {
  const double dn = std::pow(s.d, 1.0 / p.n);
  const double kap = p.kappa_tilde;
  return (p.p0 + s.c) / (2.0 * kap) *
         (s.d - 1.0 / s.d +
          std::pow(s.d, -1.0 / p.n) * std::exp(-tr_logY / (2.0 * dn * kap)));
}

Tensor4 khat_gradient(const Tensor2& x, const InternalState& s,
                      const MaterialParams& p) {
  const Tensor2 id = Tensor2::identity();
  const Tensor2 y = (x * x.transposed()).sym();
  const double kt = Kt_scalar(tensor_log(y).trace(), s, p);
  const Tensor4 front =
      outer_product(id, id) * (kt - s.mu / 3.0) + box(id, id) * s.mu;
  const Tensor4 dlog = tensor_log_gradient(y);
  const Tensor4 dy_dx = box_t(id, x) + box_s(x, id);
  return front.compose(dlog).compose(dy_dx);
}

namespace {

// M -> (A M + M A)/2 on symmetric arguments.
Tensor4 sym_wrap(const Tensor2& a) {
  const Tensor2 id = Tensor2::identity();
  return (box(a, id) + box(id, a)) * 0.5;
}

}  // namespace

Tensor2 biot_stress(const Tensor2& u, const Tensor2& up, const InternalState& s,
                    const MaterialParams& p) {
  const Tensor2 k = khat(u * up.inverse(), s, p);
  const Tensor2 ui = u.inverse();
  return ((ui * k) + (k * ui)) * 0.5;
}

Tensor4 elastic_tangent(const Tensor2& u, const Tensor2& up,
                        const InternalState& s, const MaterialParams& p) {
  const Tensor2 upi = up.inverse();
  const Tensor2 x = u * upi;
  const Tensor2 ui = u.inverse();
  const Tensor2 k = khat(x, s, p);
  const Tensor2 kui = k * ui;

  const Tensor4 geometric = (box(ui, kui) + box(kui, ui)) * (-0.5);
  const Tensor4 dkhat = khat_gradient(x, s, p);
  const Tensor4 material =
      sym_wrap(ui).compose(dkhat).compose(box(Tensor2::identity(), upi));
  return geometric + material;
}

}  // namespace biotcap
