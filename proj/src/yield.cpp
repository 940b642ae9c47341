#include "biotcap/yield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biotcap/errors.hpp"

namespace biotcap {

namespace {

constexpr double kGradientGuard = 1e-9;

double lode_tolerance(const Tensor2& t1) {
  const double tr = t1.trace();
  return std::max(1e-12 * tr * tr, 1e-300);
}

// (Phi - Phi^m), evaluated as Phi (1 - Phi^(m-1)) with log1p/expm1 so the
// cancellation near the cap vertex Phi = 1 stays at rounding level.
double phi_minus_phim(double phi, double one_minus_phi, double m) {
  if (phi <= 0) return 0.0;
  return phi * (-std::expm1((m - 1.0) * std::log1p(-one_minus_phi)));
}

struct MeridianTerms {
  double b;        // (Phi - Phi^m)(2(1-alpha)Phi + alpha) >= 0
  double bprime;   // db/dPhi
  double f;        // -M pc sqrt(b)
  double sqrt_b;
};

MeridianTerms meridian(double phi, double one_minus_phi, double pc,
                       const MaterialParams& p) {
  MeridianTerms t;
  const double pm = phi_minus_phim(phi, one_minus_phi, p.m);
  const double lin = 2.0 * (1.0 - p.alpha) * phi + p.alpha;
  t.b = std::max(pm * lin, 0.0);
  const double phim1 = phi > 0 ? std::exp((p.m - 1.0) * std::log(phi)) : 0.0;
  t.bprime = (1.0 - p.m * phim1) * lin + 2.0 * (1.0 - p.alpha) * pm;
  t.sqrt_b = std::sqrt(t.b);
  t.f = -p.M * pc * t.sqrt_b;
  return t;
}

}  // namespace

StressInvariants stress_invariants(const Tensor2& t1) {
  StressInvariants inv;
  inv.p = -t1.trace() / 3.0;
  const Tensor2 dev = t1.dev();
  inv.J2 = 0.5 * dev.ddot(dev);
  inv.J3 = (dev * dev * dev).trace() / 3.0;
  inv.q = std::sqrt(3.0 * inv.J2);
  inv.lode_undefined = inv.J2 <= lode_tolerance(t1);
  if (inv.lode_undefined) {
    inv.cos3theta = 1.0;
    inv.theta = 0.0;
  } else {
    const double w =
        1.5 * std::sqrt(3.0) * inv.J3 / (inv.J2 * std::sqrt(inv.J2));
    inv.cos3theta = std::clamp(w, -1.0, 1.0);
    inv.theta = std::acos(inv.cos3theta) / 3.0;
  }
  return inv;
}

double lode_factor(double cos3theta, const MaterialParams& p) {
  return std::cos(p.beta * std::numbers::pi / 6.0 -
                  std::acos(p.gamma * cos3theta) / 3.0);
}

YieldEval yield_eval(const Tensor2& t1, const InternalState& s,
                     const MaterialParams& p) {
  YieldEval out;
  out.inv = stress_invariants(t1);
  const double denom = s.pc + s.c;
  out.Phi = (out.inv.p + s.c) / denom;
  const double one_minus_phi = (s.pc - out.inv.p) / denom;
  out.in_domain = out.Phi >= 0.0 && out.Phi <= 1.0;
  if (!out.in_domain) {
    out.F = kYieldSentinelScale * p.M * s.pc;
    return out;
  }
  const MeridianTerms mt = meridian(out.Phi, one_minus_phi, s.pc, p);
  out.F = mt.f + out.inv.q * lode_factor(out.inv.cos3theta, p);
  return out;
}

double yield_value(const Tensor2& t1, const InternalState& s,
                   const MaterialParams& p) {
  return yield_eval(t1, s, p).F;
}

namespace {

Tensor2 gradient_at(const Tensor2& t1, const StressInvariants& inv, double phi,
                    const InternalState& s, const MaterialParams& p) {
  const double denom = s.pc + s.c;
  const MeridianTerms mt = meridian(phi, 1.0 - phi, s.pc, p);
  // df/dp through Phi.
  const double df_dp = -p.M * s.pc * mt.bprime / (2.0 * mt.sqrt_b) / denom;
  Tensor2 q = Tensor2::identity() * (-df_dp / 3.0);

  if (!inv.lode_undefined) {
    const Tensor2 dev = t1.dev();
    const double cg = lode_factor(inv.cos3theta, p);
    q += dev * (cg * 1.5 / inv.q);

    // Lode contribution differentiated through w = cos 3 theta; gamma < 1
    // keeps the acos derivative finite at the sector boundaries.
    const double w = inv.cos3theta;
    const double u = p.beta * std::numbers::pi / 6.0 - std::acos(p.gamma * w) / 3.0;
    const double dcg_dw =
        -std::sin(u) * p.gamma / (3.0 * std::sqrt(1.0 - p.gamma * p.gamma * w * w));
    const double j2 = inv.J2;
    const Tensor2 dJ3 = (dev * dev) - Tensor2::identity() * (2.0 * j2 / 3.0);
    const Tensor2 dw = (dJ3 * std::pow(j2, -1.5) -
                        dev * (1.5 * inv.J3 * std::pow(j2, -2.5))) *
                       (1.5 * std::sqrt(3.0));
    q += dw * (inv.q * dcg_dw);
  }
  return q;
}

}  // namespace

Tensor2 yield_gradient(const Tensor2& t1, const InternalState& s,
                       const MaterialParams& p) {
  const YieldEval ev = yield_eval(t1, s, p);
  if (!ev.in_domain || ev.Phi < kGradientGuard || ev.Phi > 1.0 - kGradientGuard) {
    raise(ErrorCode::GradientSingular,
          "yield gradient undefined within 1e-9 of the cap vertices");
  }
  return gradient_at(t1, ev.inv, ev.Phi, s, p);
}

Tensor2 yield_gradient_clamped(const Tensor2& t1, const InternalState& s,
                               const MaterialParams& p, double phi_guard) {
  const YieldEval ev = yield_eval(t1, s, p);
  const double phi = std::clamp(ev.Phi, phi_guard, 1.0 - phi_guard);
  return gradient_at(t1, ev.inv, phi, s, p);
}

Tensor2 flow_mode(const Tensor2& q, double phi, const MaterialParams& p) {
  const double trq = q.trace();
  return q - Tensor2::identity() * (trq / 3.0 * p.eps_na * (1.0 - phi));
}

namespace {

YieldPartials partials_at(double pinv, double phi, const InternalState& s,
                          const MaterialParams& p) {
  const double denom = s.pc + s.c;
  const MeridianTerms mt = meridian(phi, 1.0 - phi, s.pc, p);
  const double common = mt.bprime / (2.0 * mt.sqrt_b);
  YieldPartials out;
  out.dF_dpc = -p.M * mt.sqrt_b +
               p.M * s.pc * (pinv + s.c) / (denom * denom) * common;
  out.dF_dc = -p.M * s.pc * (s.pc - pinv) / (denom * denom) * common;
  return out;
}

}  // namespace

YieldPartials yield_partials(const Tensor2& t1, const InternalState& s,
                             const MaterialParams& p) {
  const YieldEval ev = yield_eval(t1, s, p);
  if (!ev.in_domain || ev.Phi < kGradientGuard || ev.Phi > 1.0 - kGradientGuard) {
    raise(ErrorCode::GradientSingular,
          "yield hardening partials undefined within 1e-9 of the cap vertices");
  }
  return partials_at(ev.inv.p, ev.Phi, s, p);
}

YieldPartials yield_partials_clamped(const Tensor2& t1, const InternalState& s,
                                     const MaterialParams& p, double phi_guard) {
  const YieldEval ev = yield_eval(t1, s, p);
  const double phi = std::clamp(ev.Phi, phi_guard, 1.0 - phi_guard);
  // Keep p consistent with the clamped Phi so the printed formulas stay exact.
  const double p_eff = phi * (s.pc + s.c) - s.c;
  return partials_at(p_eff, phi, s, p);
}

}  // namespace biotcap
