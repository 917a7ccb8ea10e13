#include "catgate/channel.hpp"

#include <cmath>

namespace catgate {

namespace {

constexpr double kZeroWeight = 1e-30;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// sum_k (I (x) K_k) P (I (x) K_k)^dag for a two-mode operator P,
// exploiting the block structure of I (x) K.
CMatrix kraus_on_b(const CMatrix& p, const std::vector<CMatrix>& ks, int d) {
  CMatrix out = CMatrix::Zero(d * d, d * d);
  CMatrix left(d * d, d * d);
  for (const auto& k : ks) {
    for (int a = 0; a < d; ++a)
      left.middleRows(a * d, d).noalias() = k * p.middleRows(a * d, d);
    CMatrix kdag = k.adjoint();
    for (int ap = 0; ap < d; ++ap)
      out.middleCols(ap * d, d).noalias() +=
          left.middleCols(ap * d, d) * kdag;
  }
  return out;
}

CMatrix diag_pow(double base, int cutoff) {
  int d = cutoff + 1;
  CMatrix m = CMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = std::pow(base, 0.5 * n);
  return m;
}

CMatrix swap_modes_raw(const CMatrix& p, int d) {
  CMatrix out(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int ap = 0; ap < d; ++ap)
        for (int bp = 0; bp < d; ++bp)
          out(b * d + a, bp * d + ap) = p(a * d + b, ap * d + bp);
  return out;
}

}  // namespace

void GateParams::validate() const {
  if (!(transmissivity > 0.0 && transmissivity <= 1.0))
    throw std::invalid_argument("gate: transmissivity must be in (0, 1]");
  if (!(modal_purity >= 0.0 && modal_purity <= 1.0))
    throw std::invalid_argument("gate: modal purity must be in [0, 1]");
  if (!(apd_efficiency > 0.0 && apd_efficiency <= 1.0))
    throw std::invalid_argument("gate: apd efficiency must be in (0, 1]");
  if (!(homodyne_efficiency > 0.0 && homodyne_efficiency <= 1.0))
    throw std::invalid_argument("gate: homodyne efficiency must be in (0, 1]");
  if (cutoff < 2) throw std::invalid_argument("gate: cutoff too small");
}

std::vector<CMatrix> loss_kraus(double t, int cutoff) {
  require(t >= 0.0 && t <= 1.0, "loss: transmission must be in [0, 1]");
  int d = cutoff + 1;
  std::vector<CMatrix> ks;
  ks.reserve(d);
  for (int k = 0; k < d; ++k) {
    CMatrix a = CMatrix::Zero(d, d);
    for (int n = k; n < d; ++n) {
      double binom = 1.0;
      for (int j = 0; j < k; ++j) binom *= double(n - j) / double(j + 1);
      a(n - k, n) = std::sqrt(binom) * std::pow(t, 0.5 * (n - k)) *
                    std::pow(1.0 - t, 0.5 * k);
    }
    ks.push_back(std::move(a));
  }
  return ks;
}

std::vector<CMatrix> subtract_kraus(double transmissivity, int cutoff) {
  require(transmissivity > 0.0 && transmissivity < 1.0,
          "subtraction: transmissivity must be in (0, 1)");
  int d = cutoff + 1;
  CMatrix a = annihilation_op(cutoff);
  CMatrix tn = diag_pow(transmissivity, cutoff);
  std::vector<CMatrix> ks;
  ks.reserve(cutoff);
  CMatrix aj = a;  // a^j
  double fact = 1.0;
  for (int j = 1; j <= cutoff; ++j) {
    fact *= double(j);
    // sqrt(j) * (1-T)^{j/2} / sqrt(j!) * T^{n/2} a^j
    double c = std::sqrt(double(j) / fact) *
               std::pow(1.0 - transmissivity, 0.5 * j);
    ks.push_back(c * (tn * aj));
    if (j < cutoff) aj = a * aj;
  }
  return ks;
}

CMatrix apply_kraus_raw(const std::vector<CMatrix>& ks, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ks) out.noalias() += k * rho * k.adjoint();
  return out;
}

CMatrix apply_kraus_on_arm(const CMatrix& p, const std::vector<CMatrix>& ks,
                           int cutoff, Mode arm) {
  int d = cutoff + 1;
  require(p.rows() == d * d && p.cols() == d * d,
          "apply_kraus_on_arm: operator shape");
  if (arm == Mode::A)
    return swap_modes_raw(kraus_on_b(swap_modes_raw(p, d), ks, d), d);
  return kraus_on_b(p, ks, d);
}

DensityOp loss_channel(const DensityOp& rho, double t) {
  require(rho.modes == 1, "loss_channel: single-mode states only");
  CMatrix raw = apply_kraus_raw(loss_kraus(t, rho.cutoff), rho.mat);
  return density_from_matrix(raw / raw.trace().real(), rho.cutoff);
}

ChannelOutput subtract_good(const DensityOp& rho, double transmissivity) {
  require(rho.modes == 1, "subtract_good: single-mode states only");
  CMatrix raw =
      apply_kraus_raw(subtract_kraus(transmissivity, rho.cutoff), rho.mat);
  double w = raw.trace().real();
  if (w < kZeroWeight)
    throw ModelError("subtract_good: click branch has zero weight");
  return {density_from_matrix(raw / w, rho.cutoff), w};
}

ChannelOutput subtract_bad(const DensityOp& rho, double transmissivity) {
  return {loss_channel(rho, transmissivity), 1.0};
}

DensityOp apply_gate(const DensityOp& rho, const GateParams& p) {
  p.validate();
  require(rho.modes == 1, "apply_gate: single-mode states only");
  DensityOp in = p.homodyne_efficiency < 1.0
                     ? loss_channel(rho, p.homodyne_efficiency)
                     : rho;
  double xi = p.modal_purity;
  if (xi == 0.0) return loss_channel(in, p.transmissivity);
  ChannelOutput good = subtract_good(in, p.transmissivity);
  if (xi == 1.0) return good.state;
  DensityOp bad = loss_channel(in, p.transmissivity);
  return density_from_matrix(xi * good.state.mat + (1.0 - xi) * bad.mat,
                             rho.cutoff);
}

DensityOp gate_on_arm(const Ket& psi, const GateParams& p, Mode arm) {
  p.validate();
  require(psi.modes == 2, "gate_on_arm: input must be two-mode");
  require(psi.is_normalized(1e-10), "gate_on_arm: input must be normalized");
  if (arm == Mode::A) return mode_swap(gate_on_arm(mode_swap(psi), p, Mode::B));

  int d = psi.cutoff + 1;
  CMatrix pm = psi.amps * psi.amps.adjoint();
  if (p.homodyne_efficiency < 1.0)
    pm = kraus_on_b(pm, loss_kraus(p.homodyne_efficiency, psi.cutoff), d);

  double xi = p.modal_purity;
  CMatrix mix = CMatrix::Zero(d * d, d * d);
  if (xi > 0.0) {
    CMatrix good =
        kraus_on_b(pm, subtract_kraus(p.transmissivity, psi.cutoff), d);
    double w = good.trace().real();
    if (w < kZeroWeight)
      throw ModelError("gate_on_arm: click branch has zero weight");
    mix += (xi / w) * good;
  }
  if (xi < 1.0) {
    CMatrix bad = kraus_on_b(pm, loss_kraus(p.transmissivity, psi.cutoff), d);
    mix += ((1.0 - xi) / bad.trace().real()) * bad;
  }
  return density_from_matrix(mix, psi.cutoff, 2);
}

double success_probability(const DensityOp& rho, const GateParams& p) {
  p.validate();
  DensityOp in = p.homodyne_efficiency < 1.0
                     ? loss_channel(rho, p.homodyne_efficiency)
                     : rho;
  CMatrix raw =
      apply_kraus_raw(subtract_kraus(p.transmissivity, rho.cutoff), in.mat);
  return p.apd_efficiency / p.homodyne_efficiency * raw.trace().real();
}

DensityOp double_subtraction(const DensityOp& rho, const GateParams& first,
                             const GateParams& second) {
  return apply_gate(apply_gate(rho, first), second);
}

CMatrix beamsplitter_unitary(double transmissivity, int cutoff) {
  require(transmissivity > 0.0 && transmissivity <= 1.0,
          "beamsplitter: transmissivity must be in (0, 1]");
  int d = cutoff + 1;
  double theta = std::acos(std::sqrt(transmissivity));
  CMatrix a = annihilation_op(cutoff);
  CMatrix adag = a.adjoint();
  CMatrix g = CMatrix::Zero(d * d, d * d);
  // kron with mode A as the outer index
  auto kron_add = [&](const CMatrix& x, const CMatrix& y, Complex c) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (x(i, j) != 0.0) g.block(i * d, j * d, d, d) += c * x(i, j) * y;
  };
  kron_add(adag, a, theta);
  kron_add(a, adag, -theta);
  return expm(g);
}

ChannelOutput subtract_good_twomode(const DensityOp& rho,
                                    double transmissivity) {
  require(rho.modes == 1, "subtract_good_twomode: single-mode states only");
  int d = rho.cutoff + 1;
  CMatrix u = beamsplitter_unitary(transmissivity, rho.cutoff);
  CMatrix vac = CMatrix::Zero(d, d);
  vac(0, 0) = 1.0;
  DensityOp joint = tensor(rho, density_from_matrix(vac, rho.cutoff));
  CMatrix sigma = u * joint.mat * u.adjoint();
  CMatrix tapped =
      kraus_on_b(sigma, {annihilation_op(rho.cutoff)}, d);
  DensityOp wrapped;
  wrapped.cutoff = rho.cutoff;
  wrapped.modes = 2;
  wrapped.mat = std::move(tapped);
  double w = wrapped.mat.trace().real();
  if (w < kZeroWeight)
    throw ModelError("subtract_good_twomode: click branch has zero weight");
  wrapped.mat /= w;
  DensityOp reduced = partial_trace(wrapped, Mode::B);
  return {density_from_matrix(reduced.mat, rho.cutoff), w};
}

}  // namespace catgate
