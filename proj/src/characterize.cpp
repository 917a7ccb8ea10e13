#include "catgate/characterize.hpp"

#include <cmath>
#include <numbers>

namespace catgate {

namespace {

struct ArmBranches {
  DensityOp good;
  DensityOp bad;
  DensityOp mixed;
  double weight = 0.0;
};

// One pass of the gate over a two-mode probe, keeping both branches.
ArmBranches gate_branches(const Ket& psi, const GateParams& p, Mode arm) {
  p.validate();
  if (psi.modes != 2)
    throw std::invalid_argument("gate_branches: input must be two-mode");
  int cutoff = psi.cutoff;
  CMatrix pm = psi.amps * psi.amps.adjoint();
  if (p.homodyne_efficiency < 1.0)
    pm = apply_kraus_on_arm(pm, loss_kraus(p.homodyne_efficiency, cutoff),
                            cutoff, arm);

  CMatrix good_raw =
      apply_kraus_on_arm(pm, subtract_kraus(p.transmissivity, cutoff),
                         cutoff, arm);
  double w = good_raw.trace().real();
  if (w < 1e-30) throw ModelError("gate_branches: click branch has zero weight");
  CMatrix bad_raw = apply_kraus_on_arm(
      pm, loss_kraus(p.transmissivity, cutoff), cutoff, arm);
  double wb = bad_raw.trace().real();

  ArmBranches out;
  out.weight = w;
  out.good = density_from_matrix(good_raw / w, cutoff, 2);
  out.bad = density_from_matrix(bad_raw / wb, cutoff, 2);
  double xi = p.modal_purity;
  out.mixed = density_from_matrix(
      xi * out.good.mat + (1.0 - xi) * out.bad.mat, cutoff, 2);
  return out;
}

EntangledFidelity probe_fidelity(const Ket& probe, const GateParams& p,
                                 Mode arm) {
  Ket target = subtracted_target(probe, arm);
  ArmBranches br = gate_branches(probe, p, arm);
  EntangledFidelity ef;
  ef.fidelity = fidelity_pure(br.mixed, target);
  ef.good = fidelity_pure(br.good, target);
  ef.bad = fidelity_pure(br.bad, target);
  ef.weight = br.weight;
  return ef;
}

}  // namespace

double bloch_fidelity(const CatQubitSpec& spec, const GateParams& p,
                      const BlochPoint& pt) {
  Ket in = cat_state(spec, pt);
  Ket target = cat_state(spec, {-pt.theta, pt.phi});
  DensityOp out = apply_gate(pure_density(in), p);
  return fidelity_pure(out, target);
}

FidelityMap bloch_sweep(const CatQubitSpec& spec, const GateParams& p,
                        const SweepGrid& grid) {
  if (grid.n_theta < 2 || grid.n_phi < 1)
    throw std::invalid_argument("bloch_sweep: bad grid");
  FidelityMap map;
  map.thetas = linspace(0.0, std::numbers::pi, grid.n_theta);
  map.phis = linspace(0.0, 2.0 * std::numbers::pi, grid.n_phi + 1)
                 .head(grid.n_phi);
  map.values.resize(grid.n_theta, grid.n_phi);
  for (int i = 0; i < grid.n_theta; ++i)
    for (int j = 0; j < grid.n_phi; ++j)
      map.values(i, j) =
          bloch_fidelity(spec, p, {map.thetas[i], map.phis[j]});
  return map;
}

MapSummary summarize(const FidelityMap& map) {
  MapSummary s;
  s.min = map.values.minCoeff();
  s.max = map.values.maxCoeff();
  s.mean = map.values.mean();
  int nt = int(map.thetas.size());
  double pole = 0.0;
  int pole_rows = 0;
  double equator = 0.0;
  int equator_rows = 0;
  for (int i = 0; i < nt; ++i) {
    if (std::abs(map.thetas[i]) < 1e-12 ||
        std::abs(map.thetas[i] - std::numbers::pi) < 1e-12) {
      pole += map.values.row(i).mean();
      ++pole_rows;
    }
    if (std::abs(map.thetas[i] - 0.5 * std::numbers::pi) < 1e-9) {
      equator += map.values.row(i).mean();
      ++equator_rows;
    }
  }
  s.pole_mean = pole_rows ? pole / pole_rows : 0.0;
  s.equator_mean = equator_rows ? equator / equator_rows : 0.0;
  return s;
}

std::vector<CurvePoint> transmissivity_curve(const CatQubitSpec& spec,
                                             GateParams p,
                                             const BlochPoint& pt,
                                             const std::vector<double>& ts) {
  std::vector<CurvePoint> curve;
  curve.reserve(ts.size());
  for (double t : ts) {
    p.transmissivity = t;
    curve.push_back({t, bloch_fidelity(spec, p, pt)});
  }
  return curve;
}

EntangledFidelity entangled_fidelity(const CatQubitSpec& spec,
                                     const GateParams& p, Mode arm) {
  return probe_fidelity(bell_cat(spec, BellKind::PhiPlus), p, arm);
}

std::vector<BellProbeCase> bell_invariance_suite(
    const CatQubitSpec& spec, const GateParams& p,
    const std::vector<double>& phases) {
  if (phases.empty())
    throw std::invalid_argument("bell_invariance_suite: empty phase list");
  std::vector<BellProbeCase> cases;
  for (bool mu_is_plus : {true, false})
    for (double phase : phases) {
      Ket probe = bell_cat_general(spec, mu_is_plus, phase);
      cases.push_back({mu_is_plus, phase, probe_fidelity(probe, p, Mode::B)});
    }
  return cases;
}

double cat_adequacy_at(double alpha, int cutoff) {
  CatQubitSpec spec{alpha, cutoff};
  Ket omega = subtracted_target(bell_cat(spec, BellKind::PhiPlus), Mode::B);
  Ket psi_plus = bell_cat(spec, BellKind::PsiPlus);
  double ov = std::abs(overlap(psi_plus, omega));
  return ov * ov;
}

std::vector<CurvePoint> cat_adequacy_curve(double lo, double hi, int n,
                                           int cutoff) {
  if (!(lo > 0.0 && hi > lo) || n < 2)
    throw std::invalid_argument("cat_adequacy_curve: bad range");
  std::vector<CurvePoint> curve;
  RVector alphas = linspace(lo, hi, n);
  curve.reserve(n);
  for (int i = 0; i < n; ++i)
    curve.push_back({alphas[i], cat_adequacy_at(alphas[i], cutoff)});
  return curve;
}

CharacterizationReport characterize(const CatQubitSpec& spec,
                                    const GateParams& p,
                                    const SweepGrid& grid,
                                    int entangled_cutoff) {
  CharacterizationReport rep;
  rep.alpha = spec.alpha;
  rep.gate = p;
  rep.map = summarize(bloch_sweep(spec, p, grid));

  CatQubitSpec wide{spec.alpha, std::max(entangled_cutoff, spec.cutoff)};
  rep.entangled = entangled_fidelity(wide, p, Mode::B);
  rep.adequacy = cat_adequacy_at(spec.alpha, std::max(40, wide.cutoff));
  rep.success_rate =
      success_probability(pure_density(coherent(spec.alpha, spec.cutoff)), p);

  auto curve = cat_adequacy_curve(0.2, 3.0, 29);
  for (const auto& pt : curve) {
    double a2 = pt.x * pt.x;
    rep.adequacy_vs_tanh_2a2 =
        std::max(rep.adequacy_vs_tanh_2a2,
                 std::abs(pt.value - 0.5 * (1.0 + std::tanh(2.0 * a2))));
    rep.adequacy_vs_tanh_a2 =
        std::max(rep.adequacy_vs_tanh_a2,
                 std::abs(pt.value - 0.5 * (1.0 + std::tanh(a2))));
  }
  return rep;
}

Preset preset_by_name(const std::string& name) {
  Preset p;
  p.name = name;
  p.qubit = {0.92, 20};
  p.gate = {};
  p.gate.transmissivity = 0.9;
  p.gate.modal_purity = 0.83;
  p.gate.cutoff = 20;
  if (name == "fig3a") {
  } else if (name == "fig3b") {
    p.gate.modal_purity = 1.0;
  } else if (name == "fig3c") {
    p.gate.transmissivity = 0.99;
  } else if (name == "fig3d") {
    p.qubit.alpha = 1.2;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return p;
}

std::vector<std::string> preset_names() {
  return {"fig3a", "fig3b", "fig3c", "fig3d"};
}

}  // namespace catgate
