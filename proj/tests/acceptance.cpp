// Acceptance gate: one line per criterion, [PASS]/[FAIL] plus the measured
// numbers. Exit code is the number of failed criteria.
#include "catgate/characterize.hpp"
#include "catgate/io.hpp"
#include "catgate/tomography.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

using namespace catgate;

namespace {

int failures = 0;

void line(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id,
              detail.c_str());
  if (!ok) ++failures;
}

void note(int id, const std::string& text) {
  std::printf("[NOTE] criterion %d: %s\n", id, text.c_str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

Ket random_ket(int cutoff, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Ket k = make_ket(cutoff);
  for (int i = 0; i < k.dim(); ++i) k.amps[i] = Complex(g(rng), g(rng));
  return k.normalized();
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  CatQubitSpec spec{0.92, 30};
  GateParams p;
  p.transmissivity = 0.9;
  p.modal_purity = 0.83;
  p.homodyne_efficiency = 1.0;
  p.cutoff = 30;
  EntangledFidelity ef = entangled_fidelity(spec, p);
  double dt = seconds_since(t0);
  bool ok = std::abs(ef.fidelity - 0.78) <= 0.05 && dt < 60.0;
  line(1, ok,
       fmt("entangled fidelity F=%.6f vs 0.78 +/- 0.05 (the band also covers "
           "the false-click branch definition ambiguity); good=%.6f "
           "bad=%.6f; %.1f s at cutoff 30 (< 60 s)",
           ef.fidelity, ef.good, ef.bad, dt));
}

void criterion_2() {
  double at = cat_adequacy_at(0.92);
  auto curve = cat_adequacy_curve(0.2, 3.0, 29);
  double dev2 = 0.0, dev1 = 0.0;
  for (const auto& pt : curve) {
    double a2 = pt.x * pt.x;
    dev2 = std::max(dev2,
                    std::abs(pt.value - 0.5 * (1.0 + std::tanh(2.0 * a2))));
    dev1 = std::max(dev1, std::abs(pt.value - 0.5 * (1.0 + std::tanh(a2))));
  }
  bool ok = std::abs(at - 0.967) <= 0.001 && dev2 <= 1e-10;
  line(2, ok,
       fmt("adequacy(0.92)=%.7f vs 0.967 +/- 0.001; max |curve - "
           "(1+tanh 2a^2)/2| = %.2e <= 1e-10 over alpha in [0.2, 3]",
           at, dev2));
  note(2, fmt("the (1+tanh a^2)/2 variant misses by up to %.4f on the same "
              "scan; both deviations are stored in the characterization "
              "report (adequacy_vs_tanh_2a2, adequacy_vs_tanh_a2)",
              dev1));
}

void criterion_3() {
  CatQubitSpec spec;  // alpha 0.92
  GateParams p;
  p.modal_purity = 1.0;
  BlochPoint pt{std::numbers::pi / 4, 0.0};
  auto lit = transmissivity_curve(spec, p, pt, {0.99, 0.9999});
  double gap_lit = std::abs(lit[0].value - lit[1].value);
  bool ok = std::abs(lit[1].value - 0.83) <= 0.03 && gap_lit <= 0.02;
  line(3, ok,
       fmt("T-limit plateau at xi=1, theta=pi/4: F(0.9999)=%.6f vs "
           "0.83 +/- 0.03; plateau gap |F(0.99)-F(0.9999)|=%.6f (<= 0.02)",
           lit[1].value, gap_lit));

  p.modal_purity = 0.83;
  BlochPoint eq{std::numbers::pi / 2, 0.0};
  auto cor = transmissivity_curve(spec, p, eq, {0.99, 0.9999});
  note(3, fmt("at xi=1 the T->1 ceiling is 1 by construction, and 0.83 is "
              "unreachable for any Bloch point; the ceiling equals the modal "
              "purity for the equal superposition, where the false-click "
              "branch maps onto the orthogonal target. With xi=0.83, "
              "theta=pi/2, phi=0: F(0.9999)=%.6f (in 0.83 +/- 0.03) and "
              "plateau gap %.6f < 0.02, both clauses pass. The pinned "
              "parameter set is kept above, and fails, because this runner "
              "does not reinterpret its targets.",
              cor[1].value, std::abs(cor[0].value - cor[1].value)));
}

void criterion_4() {
  FidelityMap maps[4];
  MapSummary sums[4];
  const char* names[] = {"fig3a", "fig3b", "fig3c", "fig3d"};
  for (int i = 0; i < 4; ++i) {
    Preset pre = preset_by_name(names[i]);
    maps[i] = bloch_sweep(pre.qubit, pre.gate);
    sums[i] = summarize(maps[i]);
  }

  bool poles = sums[0].pole_mean > sums[0].equator_mean;

  Preset a = preset_by_name("fig3a");
  double f_odd = bloch_fidelity(a.qubit, a.gate,
                                {std::numbers::pi / 2, std::numbers::pi});
  double f_even =
      bloch_fidelity(a.qubit, a.gate, {std::numbers::pi / 2, 0.0});
  bool odd_beats_even = f_odd > f_even;

  double min_diff = (maps[1].values - maps[0].values).minCoeff();
  bool b_dominates = min_diff >= -1e-12;

  auto equator_spread = [](const FidelityMap& m) {
    int row = int(m.thetas.size()) / 2;  // odd grid: exact pi/2 row
    return m.values.row(row).maxCoeff() - m.values.row(row).minCoeff();
  };
  double spread_a = equator_spread(maps[0]);
  double spread_c = equator_spread(maps[2]);
  bool c_flatter = spread_c < spread_a;

  bool d_lower = sums[3].min < sums[0].min;

  bool ok = poles && odd_beats_even && b_dominates && c_flatter && d_lower;
  line(4, ok,
       fmt("map orderings: pole %.4f > equator %.4f (%s); F(pi/2,pi)=%.4f > "
           "F(pi/2,0)=%.4f (%s); min(b-a)=%.1e >= -1e-12 (%s); equator "
           "phi-spread c=%.4f < a=%.4f (%s); min d=%.4f < min a=%.4f (%s)",
           sums[0].pole_mean, sums[0].equator_mean, poles ? "ok" : "VIOLATED",
           f_odd, f_even, odd_beats_even ? "ok" : "VIOLATED", min_diff,
           b_dominates ? "ok" : "VIOLATED", spread_c, spread_a,
           c_flatter ? "ok" : "VIOLATED", sums[3].min, sums[0].min,
           d_lower ? "ok" : "VIOLATED"));
}

void criterion_5() {
  CatQubitSpec spec;
  GateParams p;
  double f[3];
  double xis[] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    p.modal_purity = xis[i];
    f[i] = entangled_fidelity(spec, p).fidelity;
  }
  double dev = std::abs(f[1] - 0.5 * (f[0] + f[2]));
  line(5, dev <= 1e-10,
       fmt("linearity in xi: |F(0.5) - (F(0)+F(1))/2| = %.2e <= 1e-10 "
           "(F(0)=%.6f, F(1)=%.6f)",
           dev, f[0], f[2]));
}

void criterion_6() {
  CatQubitSpec spec;
  GateParams p;
  auto cases = bell_invariance_suite(spec, p);
  double lo[3] = {1, 1, 1}, hi[3] = {0, 0, 0};
  for (const auto& c : cases) {
    double v[3] = {c.result.good, c.result.bad, c.result.fidelity};
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  double spread =
      std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
  line(6, spread <= 1e-10,
       fmt("probe invariance over mu in {+,-}, phase in {0, pi/2, pi, 2.1}: "
           "max spread %.2e <= 1e-10 (good %.2e, bad %.2e, mixture %.2e)",
           spread, hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]));
}

void criterion_7() {
  int n = 12;
  double t = 0.9;
  std::mt19937 rng(2024);
  double worst = 0.0, worst_w = 0.0;
  for (int i = 0; i < 50; ++i) {
    DensityOp rho;
    if (i % 2 == 0) {
      rho = pure_density(random_ket(n, rng));
    } else {
      CMatrix m = 0.5 * pure_density(random_ket(n, rng)).mat +
                  0.5 * pure_density(random_ket(n, rng)).mat;
      rho = density_from_matrix(m, n);
    }
    ChannelOutput fast = subtract_good(rho, t);
    ChannelOutput slow = subtract_good_twomode(rho, t);
    worst = std::max(worst,
                     (fast.state.mat - slow.state.mat).cwiseAbs().maxCoeff());
    worst_w = std::max(worst_w, std::abs(fast.weight - slow.weight));
  }
  line(7, worst <= 1e-10,
       fmt("kraus vs two-mode reference on 50 random states (25 pure, 25 "
           "mixed): max elementwise deviation %.2e <= 1e-10, max click weight "
           "deviation %.2e",
           worst, worst_w));
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  SqueezerModel input{0.5, 1.05};
  int cutoff = 20;
  GateParams p;
  p.transmissivity = 0.9;
  p.modal_purity = 0.83;
  p.cutoff = cutoff;

  std::vector<double> phases;
  for (int k = 0; k < 12; ++k) phases.push_back(k * std::numbers::pi / 12);

  DensityOp truth = apply_gate(gaussian_model_state(input, cutoff), p);
  QuadratureRecord rec = sample_homodyne(truth, phases, 10000, 7);
  TomoResult tomo = mle_reconstruct(rec, cutoff);
  double f = fidelity(tomo.state, truth);

  double xis[] = {0.0, 0.5, 0.83, 1.0};
  double worst = 0.0;
  double fitted[4];
  for (int i = 0; i < 4; ++i) {
    GateParams q = p;
    q.modal_purity = xis[i];
    DensityOp state = apply_gate(gaussian_model_state(input, cutoff), q);
    QuadratureRecord r = sample_homodyne(state, phases, 10000, 11 + i);
    fitted[i] = fit_xi(r, input, q.transmissivity, q.homodyne_efficiency);
    worst = std::max(worst, std::abs(fitted[i] - xis[i]));
  }
  double dt = seconds_since(t0);
  bool ok = f > 0.99 && worst <= 0.03 && dt < 300.0;
  line(8, ok,
       fmt("tomography round trip (12 phases x 10^4): F(mle, truth)=%.4f > "
           "0.99 in %d iterations; fit_xi on {0, 0.5, 0.83, 1} -> {%.3f, "
           "%.3f, %.3f, %.3f}, max error %.3f <= 0.03; %.1f s (< 300 s)",
           f, tomo.iterations, fitted[0], fitted[1], fitted[2], fitted[3],
           worst, dt));
}

void criterion_9() {
  int cutoff = 20;
  GateParams p;
  p.transmissivity = 1.0 - 1e-7;
  p.modal_purity = 1.0;
  p.cutoff = cutoff;
  DensityOp sub =
      apply_gate(pure_density(squeezed_vacuum(0.5, cutoff)), p);
  double w0 = wigner_at(sub, 0.0, 0.0);
  double target = -1.0 / std::numbers::pi;
  bool neg_ok = std::abs(w0 - target) <= 1e-6;

  DensityOp probe = pure_density(coherent(0.92, cutoff));
  GateParams thin = p, thick = p;
  thin.transmissivity = 0.95;
  thick.transmissivity = 0.9;
  double ratio =
      success_probability(probe, thick) / success_probability(probe, thin);
  bool rate_ok = std::abs(ratio - 2.0) <= 0.04;  // 2 within 2%

  line(9, neg_ok && rate_ok,
       fmt("subtracted squeezed vacuum W(0,0)=%.8f vs -1/pi=%.8f (|diff| "
           "%.1e <= 1e-6 at T=1-1e-7, xi=1); rate(T=0.9)/rate(T=0.95)=%.4f "
           "vs 2 +/- 2%%",
           w0, target, std::abs(w0 - target), ratio));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures;
}
