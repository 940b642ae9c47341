#include "biotcap/material.hpp"

#include <cmath>
#include <sstream>

#include "biotcap/errors.hpp"

namespace biotcap {

std::vector<std::string> validate(const MaterialParams& p) {
  std::vector<std::string> bad;
  const auto positive = [&bad](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
      bad.push_back(std::string(name) + " must be a positive finite number");
    }
  };
  positive(p.kappa_tilde, "kappa_tilde");
  positive(p.p0, "p0");
  if (!(p.n > 0) || !std::isfinite(p.n)) {
    bad.push_back("elastic exponent n is required and must be positive (no default)");
  }
  positive(p.mu0, "mu0");
  positive(p.mu1, "mu1");
  positive(p.B, "B");
  positive(p.pcb, "pcb");
  positive(p.c_inf, "c_inf");
  positive(p.Gamma, "Gamma");
  positive(p.a1_tilde, "a1_tilde");
  positive(p.a2_tilde, "a2_tilde");
  positive(p.Lambda1, "Lambda1");
  positive(p.Lambda2, "Lambda2");
  positive(p.M, "M");
  if (!(p.m > 1) || !std::isfinite(p.m)) bad.push_back("m must be > 1");
  if (!(p.alpha >= 0 && p.alpha <= 2)) bad.push_back("alpha must lie in [0, 2]");
  if (!(p.beta >= 0 && p.beta <= 2)) bad.push_back("beta must lie in [0, 2]");
  if (!(p.gamma >= 0 && p.gamma < 1)) bad.push_back("gamma must lie in [0, 1)");
  if (!(p.eps_na >= 0 && p.eps_na <= 1)) bad.push_back("eps_na must lie in [0, 1]");
  if (!(p.a1_tilde + p.a2_tilde < 1)) {
    bad.push_back(
        "a1_tilde + a2_tilde must be < 1 (keeps the compaction-law volume "
        "ratio positive)");
  }
  return bad;
}

void validate_or_throw(const MaterialParams& p) {
  const std::vector<std::string> bad = validate(p);
  if (bad.empty()) return;
  std::ostringstream msg;
  for (size_t i = 0; i < bad.size(); ++i) {
    if (i) msg << "; ";
    msg << bad[i];
  }
  raise(ErrorCode::ValidationError, msg.str());
}

CouplingParams coupling_parameters(double pc, const MaterialParams& p) {
  const double mac = pc > p.pcb ? pc - p.pcb : 0.0;
  CouplingParams out;
  out.d = 1.0 + p.B * mac;
  out.c = p.c_inf * (-std::expm1(-p.Gamma * mac));
  out.mu = p.mu0 + out.c * (out.d - 1.0 / out.d) * p.mu1;
  return out;
}

double trEp_from_pc(double pc, const MaterialParams& p) {
  if (!(pc > 0)) raise(ErrorCode::OutOfRange, "trEp_from_pc requires pc > 0");
  const double e1 = p.a1_tilde * std::exp(-p.Lambda1 / pc);
  const double e2 = p.a2_tilde * std::exp(-p.Lambda2 / pc);
  return std::log1p(-(e1 + e2));
}

namespace {

double dtrEp_dpc(double pc, const MaterialParams& p) {
  const double e1 = p.a1_tilde * std::exp(-p.Lambda1 / pc);
  const double e2 = p.a2_tilde * std::exp(-p.Lambda2 / pc);
  return -(e1 * p.Lambda1 + e2 * p.Lambda2) / (pc * pc * (1.0 - e1 - e2));
}

}  // namespace

double pc_from_trEp(double trEp, const MaterialParams& p) {
  const double lower = std::log1p(-(p.a1_tilde + p.a2_tilde));
  if (!(trEp < 0) || !(trEp > lower)) {
    raise(ErrorCode::OutOfRange,
          "trEp outside the open compaction-law range (log(1 - a1 - a2), 0)");
  }
  // Expanding bracket around the pressure scale, then safeguarded Newton.
  // trEp_from_pc decreases monotonically with pc.
  double lo = std::min(p.Lambda1, p.Lambda2);
  double hi = lo;
  for (int k = 0; k < 1000 && lo > 1e-290 && trEp_from_pc(lo, p) < trEp; ++k)
    lo *= 0.5;
  for (int k = 0; k < 1000 && hi < 1e290 && trEp_from_pc(hi, p) > trEp; ++k)
    hi *= 2.0;
  double x = std::sqrt(lo * hi);
  for (int it = 0; it < 100; ++it) {
    const double r = trEp_from_pc(x, p) - trEp;
    if (r > 0) {
      lo = x;
    } else {
      hi = x;
    }
    const double scale = std::max(std::abs(trEp), 1e-300);
    if (std::abs(r) <= 1e-13 * scale && it > 0) break;
    const double drdx = dtrEp_dpc(x, p);
    double next = drdx != 0.0 ? x - r / drdx : std::sqrt(lo * hi);
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (std::abs(next - x) <= 1e-15 * x) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

InternalState state_from_pc(double pc0, const MaterialParams& p) {
  if (!(pc0 > 0)) raise(ErrorCode::OutOfRange, "pc0 must be positive");
  InternalState s;
  s.pc = pc0;
  s.trEp = trEp_from_pc(pc0, p);
  s.Ep0 = Tensor2::identity() * (s.trEp / 3.0);
  s.Up = tensor_exp(s.Ep0);
  const CouplingParams cp = coupling_parameters(s.pc, p);
  s.c = cp.c;
  s.d = cp.d;
  s.mu = cp.mu;
  return s;
}

InternalState state_from_Ep(const Tensor2& ep0, const MaterialParams& p) {
  InternalState s;
  s.Ep0 = ep0;
  s.trEp = ep0.trace();
  s.pc = pc_from_trEp(s.trEp, p);
  s.Up = tensor_exp(ep0);
  const CouplingParams cp = coupling_parameters(s.pc, p);
  s.c = cp.c;
  s.d = cp.d;
  s.mu = cp.mu;
  return s;
}

}  // namespace biotcap
