#include "catgate/states.hpp"

#include <cmath>
#include <numbers>

namespace catgate {

namespace {

// Construction may lose at most this much norm to the cutoff.
constexpr double kTruncTol = 1e-6;

void check_deficit(double norm2, const char* what) {
  if (1.0 - norm2 > kTruncTol)
    throw ModelError(std::string(what) + ": cutoff too small (norm deficit " +
                     std::to_string(1.0 - norm2) + ")");
}

}  // namespace

double CatQubitSpec::norm_plus() const {
  return 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * alpha * alpha)));
}

double CatQubitSpec::norm_minus() const {
  return 1.0 / std::sqrt(2.0 * (1.0 - std::exp(-2.0 * alpha * alpha)));
}

void CatQubitSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("cat qubit: alpha must be positive");
  if (cutoff < 2) throw std::invalid_argument("cat qubit: cutoff too small");
}

void SqueezerModel::validate() const {
  if (!(s > 0.0 && s <= 1.0) || !std::isfinite(s))
    throw std::invalid_argument("squeezer model: s must be in (0, 1]");
  if (!(h >= 1.0) || !std::isfinite(h))
    throw std::invalid_argument("squeezer model: h must be >= 1");
}

Ket coherent(double alpha, int cutoff) {
  Ket k = make_ket(cutoff);
  double c = std::exp(-0.5 * alpha * alpha);
  k.amps[0] = c;
  for (int n = 1; n <= cutoff; ++n) {
    c *= alpha / std::sqrt(double(n));
    k.amps[n] = c;
  }
  check_deficit(k.amps.squaredNorm(), "coherent");
  return k.normalized();
}

Ket cat_even(double alpha, int cutoff) {
  Ket p = coherent(alpha, cutoff), m = coherent(-alpha, cutoff);
  Ket out = make_ket(cutoff);
  out.amps = p.amps + m.amps;  // odd amplitudes cancel exactly
  return out.normalized();
}

Ket cat_odd(double alpha, int cutoff) {
  Ket p = coherent(alpha, cutoff), m = coherent(-alpha, cutoff);
  Ket out = make_ket(cutoff);
  out.amps = p.amps - m.amps;
  return out.normalized();
}

Ket cat_state(const CatQubitSpec& spec, const BlochPoint& pt) {
  spec.validate();
  double c = std::cos(0.5 * pt.theta);
  double s = std::sin(0.5 * pt.theta);
  // snap pole roundoff so theta = 0, pi land on bare coherent states
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  Ket plus = coherent(spec.alpha, spec.cutoff);
  Ket minus = coherent(-spec.alpha, spec.cutoff);
  Ket out = make_ket(spec.cutoff);
  out.amps = c * plus.amps + s * std::polar(1.0, pt.phi) * minus.amps;
  if (out.norm() < 1e-9) throw ModelError("cat_state: zero-norm superposition");
  return out.normalized();
}

CMatrix squeeze_op(double r, int cutoff) {
  CMatrix a = annihilation_op(cutoff);
  CMatrix g = 0.5 * r * (a * a - (a * a).adjoint());
  return expm(g);
}

Ket squeezed_vacuum(double s, int cutoff) {
  if (!(s > 0.0 && s <= 1.0))
    throw std::invalid_argument("squeezed_vacuum: s must be in (0, 1]");
  double r = -0.5 * std::log(s);
  // Closed form, exact within the truncation; the operator column picks up
  // generator-truncation error near the top of the basis.
  //   c_{2k} = (-tanh r)^k sqrt((2k)!)/(2^k k!) / sqrt(cosh r)
  Ket k = make_ket(cutoff);
  double c = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n <= cutoff; ++n) {
    if (n > 0)
      c *= -std::tanh(r) * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
    k.amps[2 * n] = c;
  }
  check_deficit(k.amps.squaredNorm(), "squeezed_vacuum");
  return k.normalized();
}

DensityOp thermal_state(double nbar, int cutoff) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar))
    throw std::invalid_argument("thermal_state: nbar must be >= 0");
  int d = cutoff + 1;
  double ratio = nbar / (nbar + 1.0);
  RVector p(d);
  p[0] = 1.0 / (nbar + 1.0);
  for (int n = 1; n < d; ++n) p[n] = p[n - 1] * ratio;
  check_deficit(p.sum(), "thermal_state");
  CMatrix m = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = p[n] / p.sum();
  return density_from_matrix(m, cutoff);
}

DensityOp gaussian_model_state(const SqueezerModel& m, int cutoff) {
  m.validate();
  double vx = m.var_x(), vp = m.var_p();
  double nbar = 0.5 * (2.0 * std::sqrt(vx * vp) - 1.0);
  double rt = 0.25 * std::log(vp / vx);
  DensityOp th = thermal_state(std::max(nbar, 0.0), cutoff);
  CMatrix sq = squeeze_op(rt, cutoff);
  CMatrix raw = sq * th.mat * sq.adjoint();
  double tr = raw.trace().real();
  check_deficit(tr, "gaussian_model_state");
  return density_from_matrix(raw / tr, cutoff);
}

Ket bell_cat(const CatQubitSpec& spec, BellKind kind) {
  Ket plus = cat_even(spec.alpha, spec.cutoff);
  Ket minus = cat_odd(spec.alpha, spec.cutoff);
  Ket out = make_ket(spec.cutoff, 2);
  if (kind == BellKind::PhiPlus)
    out.amps = tensor(plus, plus).amps + tensor(minus, minus).amps;
  else
    out.amps = tensor(plus, minus).amps + tensor(minus, plus).amps;
  return out.normalized();
}

Ket bell_cat_general(const CatQubitSpec& spec, bool mu_is_plus, double phase) {
  Ket plus = cat_even(spec.alpha, spec.cutoff);
  Ket minus = cat_odd(spec.alpha, spec.cutoff);
  const Ket& mu = mu_is_plus ? plus : minus;
  const Ket& nu = mu_is_plus ? minus : plus;
  Ket out = make_ket(spec.cutoff, 2);
  out.amps = tensor(mu, mu).amps +
             std::polar(1.0, phase) * tensor(nu, nu).amps;
  return out.normalized();
}

Ket subtracted_target(const Ket& psi, Mode arm) {
  Ket lowered = apply_on_arm(annihilation_op(psi.cutoff), psi, arm);
  if (lowered.norm() < 1e-12)
    throw ModelError("subtracted_target: state annihilated");
  return lowered.normalized();
}

}  // namespace catgate
