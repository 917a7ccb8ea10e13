#pragma once

#include "catgate/channel.hpp"
#include "catgate/states.hpp"

#include <string>
#include <vector>

namespace catgate {

struct SweepGrid {
  int n_theta = 37;  // inclusive [0, pi]
  int n_phi = 72;    // [0, 2pi), endpoint excluded
};

struct FidelityMap {
  RVector thetas;
  RVector phis;
  RMatrix values;  // values(i, j) = F(thetas[i], phis[j])
};

struct MapSummary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double equator_mean = 0.0;  // theta = pi/2 row
  double pole_mean = 0.0;     // theta = 0 and theta = pi rows
};

/// Gate fidelity at one Bloch point. The ideal subtraction maps the qubit
/// (theta, phi) -> (-theta, phi), so that reflected state is the target.
double bloch_fidelity(const CatQubitSpec& spec, const GateParams& p,
                      const BlochPoint& pt);

FidelityMap bloch_sweep(const CatQubitSpec& spec, const GateParams& p,
                        const SweepGrid& grid = {});
MapSummary summarize(const FidelityMap& map);

struct CurvePoint {
  double x = 0.0;
  double value = 0.0;
};

/// Fidelity at a fixed Bloch point for each tap transmissivity in ts.
/// As T -> 1 the curve saturates at the modal-purity ceiling.
std::vector<CurvePoint> transmissivity_curve(const CatQubitSpec& spec,
                                             GateParams p,
                                             const BlochPoint& pt,
                                             const std::vector<double>& ts);

struct EntangledFidelity {
  double fidelity = 0.0;  // full gate output vs the ideal subtracted probe
  double good = 0.0;      // click branch alone
  double bad = 0.0;       // false-click branch alone
  double weight = 0.0;    // raw click weight of the good branch
};

/// Process fidelity probed with the two-mode cat Bell state: the gate acts
/// on one arm, the output is compared with the ideally subtracted probe.
EntangledFidelity entangled_fidelity(const CatQubitSpec& spec,
                                     const GateParams& p, Mode arm = Mode::B);

struct BellProbeCase {
  bool mu_is_plus = true;
  double phase = 0.0;
  EntangledFidelity result;
};

/// entangled_fidelity over the family of probes mu|mu,mu> + e^{i phase}
/// |nu,nu>. The channel treats every member identically; the spread across
/// cases is a consistency check on the whole two-mode path.
std::vector<BellProbeCase> bell_invariance_suite(
    const CatQubitSpec& spec, const GateParams& p,
    const std::vector<double>& phases = {0.0, 1.5707963267948966,
                                         3.141592653589793, 2.1});

/// Overlap of the ideally subtracted Bell probe with the qubit-space target
/// Bell state, as a function of alpha. Measures how well the two coherent
/// states support a qubit; approaches 1 for large alpha.
double cat_adequacy_at(double alpha, int cutoff = 40);
std::vector<CurvePoint> cat_adequacy_curve(double lo, double hi, int n,
                                           int cutoff = 40);

struct CharacterizationReport {
  double alpha = 0.0;
  GateParams gate;
  MapSummary map;
  EntangledFidelity entangled;
  double adequacy = 0.0;      // at alpha
  double success_rate = 0.0;  // kappa-scaled click weight, coherent input
  // max deviation of the adequacy curve from the two candidate closed forms
  // (1 + tanh 2a^2)/2 and (1 + tanh a^2)/2 over the scanned alpha range
  double adequacy_vs_tanh_2a2 = 0.0;
  double adequacy_vs_tanh_a2 = 0.0;
};

CharacterizationReport characterize(const CatQubitSpec& spec,
                                    const GateParams& p,
                                    const SweepGrid& grid = {},
                                    int entangled_cutoff = 30);

struct Preset {
  std::string name;
  CatQubitSpec qubit;
  GateParams gate;
};

/// Named parameter sets for the four fidelity-map panels.
Preset preset_by_name(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace catgate
