#pragma once

#include "catgate/fock.hpp"

#include <vector>

namespace catgate {

/// Physical parameters of one conditional-subtraction gate.
struct GateParams {
  double transmissivity = 0.9;   // tap beamsplitter transmissivity T
  double modal_purity = 0.83;    // xi: odds that a click heralds the tapped mode
  double apd_efficiency = 1.0;   // kappa: detector efficiency (rate only)
  double homodyne_efficiency = 1.0;  // eta: loss seen by the signal before the tap
  int cutoff = 20;

  void validate() const;
};

/// Normalized state together with the raw (pre-normalization) weight of the
/// branch that produced it.
struct ChannelOutput {
  DensityOp state;
  double weight = 0.0;
};

/// Kraus set of the pure-loss channel with intensity transmission t.
std::vector<CMatrix> loss_kraus(double t, int cutoff);

/// Kraus set of the click-conditioned subtraction behind a tap of
/// transmissivity T, for a detector that cannot resolve photon number:
/// K_j corresponds to j+1 photons leaving through the tap.
std::vector<CMatrix> subtract_kraus(double transmissivity, int cutoff);

/// sum_k K_k rho K_k^dag, no normalization.
CMatrix apply_kraus_raw(const std::vector<CMatrix>& ks, const CMatrix& rho);

/// Single-mode Kraus set applied to one arm of a two-mode operator,
/// sum_k (I (x) K_k) P (I (x) K_k)^dag for arm B and the mirrored form for
/// arm A. No normalization.
CMatrix apply_kraus_on_arm(const CMatrix& p, const std::vector<CMatrix>& ks,
                           int cutoff, Mode arm);

DensityOp loss_channel(const DensityOp& rho, double t);

/// Click-heralded branch: normalized output and click weight.
ChannelOutput subtract_good(const DensityOp& rho, double transmissivity);
/// False-click branch: the signal only sees the tap loss.
ChannelOutput subtract_bad(const DensityOp& rho, double transmissivity);

/// Full heralded gate: homodyne-efficiency loss, then the xi-weighted mix of
/// the click and false-click branches.
DensityOp apply_gate(const DensityOp& rho, const GateParams& p);

/// Gate acting on one arm of a two-mode pure state.
DensityOp gate_on_arm(const Ket& psi, const GateParams& p, Mode arm);

/// Relative heralding rate: kappa-scaled click weight of the good branch.
double success_probability(const DensityOp& rho, const GateParams& p);

/// Two consecutive gates on the same mode.
DensityOp double_subtraction(const DensityOp& rho, const GateParams& first,
                             const GateParams& second);

/// Beamsplitter unitary exp[theta(a^dag b - a b^dag)] on two modes with
/// cos(theta) = sqrt(T); mode B is the tap port.
CMatrix beamsplitter_unitary(double transmissivity, int cutoff);

/// Reference implementation of subtract_good through the explicit two-mode
/// unitary: couple to a vacuum ancilla, interfere, project the tap on
/// "at least one photon" and subtract one of them. Slow but assumption-free.
ChannelOutput subtract_good_twomode(const DensityOp& rho, double transmissivity);

}  // namespace catgate
