// Command-line front end. Every command resolves a RunConfig (defaults,
// optional config file, --set overrides), writes its artifacts into the
// output directory and prints a short summary to stdout.
//
// Exit codes: 0 success, 2 usage/config problems, 3 model/numeric failures.
#include <CLI11.hpp>

#include "catgate/channel.hpp"
#include "catgate/characterize.hpp"
#include "catgate/fock.hpp"
#include "catgate/io.hpp"
#include "catgate/states.hpp"
#include "catgate/tomography.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

using namespace catgate;

namespace {

struct Common {
  std::string config_path;
  std::string outdir_flag;
  std::vector<std::string> overrides;

  RunConfig resolve(const RunConfig& base = {}) const {
    RunConfig cfg = base;
    if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
    for (const auto& kv : overrides) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw IoError("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }

  std::string out(const std::string& name) const {
    return (std::filesystem::path(resolve_outdir(outdir_flag)) / name)
        .string();
  }
};

void attach_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path,
                  "Flat key=value run configuration file");
  cmd->add_option("--outdir", c.outdir_flag,
                  "Output directory (default: $CATGATE_OUTDIR or .)");
  cmd->add_option("--set", c.overrides,
                  "Override a config key, e.g. --set alpha=1.1 (repeatable)");
}

// Stage-tagged rethrow so a pipeline abort names the failing stage.
template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    throw IoError(std::string(name) + ": " + e.what());
  } catch (const ModelError& e) {
    throw ModelError(std::string(name) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  }
}

DensityOp stage_state(const RunConfig& cfg, const std::string& which) {
  DensityOp source = gaussian_model_state(cfg.source(), cfg.cutoff);
  if (which == "source") return source;
  if (which == "subtracted") return apply_gate(source, cfg.gate());
  if (which == "doubled")
    return double_subtraction(source, cfg.gate(), cfg.gate());
  throw IoError("unknown stage '" + which +
                "' (expected source, subtracted or doubled)");
}

void write_record(const Common& common, const RunConfig& cfg,
                  const std::string& prefix, const QuadratureRecord& rec) {
  write_quadrature_csv(common.out(prefix + "_samples.csv"), rec);
  write_histogram_csv(common.out(prefix + "_histograms.csv"),
                      make_histograms(rec, cfg.bin_grid()));
}

// ---------------------------------------------------------------- state ---

struct StateArgs {
  Common common;
  std::string kind;
  double alpha = 0.92, theta = 0.0, phi = 0.0, s = 0.5, h = 1.0, nbar = 1.0;
  int n = 1, cutoff = 20;
  std::string out_name;
  bool wigner = false;
  int wigner_points = 121;
  double wigner_range = 5.0;
};

int run_state(const StateArgs& a) {
  Ket ket = make_ket(a.cutoff);
  DensityOp rho;
  bool is_ket = true;

  if (a.kind == "vacuum") {
    ket = fock_state(0, a.cutoff);
  } else if (a.kind == "fock") {
    ket = fock_state(a.n, a.cutoff);
  } else if (a.kind == "coherent") {
    ket = coherent(a.alpha, a.cutoff);
  } else if (a.kind == "cat") {
    ket = cat_state({a.alpha, a.cutoff}, {a.theta, a.phi});
  } else if (a.kind == "cat-even") {
    ket = cat_even(a.alpha, a.cutoff);
  } else if (a.kind == "cat-odd") {
    ket = cat_odd(a.alpha, a.cutoff);
  } else if (a.kind == "squeezed") {
    ket = squeezed_vacuum(a.s, a.cutoff);
  } else if (a.kind == "bell-phi" || a.kind == "bell-psi") {
    ket = bell_cat({a.alpha, a.cutoff}, a.kind == "bell-phi"
                                            ? BellKind::PhiPlus
                                            : BellKind::PsiPlus);
  } else if (a.kind == "thermal") {
    rho = thermal_state(a.nbar, a.cutoff);
    is_ket = false;
  } else if (a.kind == "gaussian-model") {
    rho = gaussian_model_state({a.s, a.h}, a.cutoff);
    is_ket = false;
  } else {
    throw IoError("unknown state kind '" + a.kind + "'");
  }

  std::string name =
      a.out_name.empty() ? a.kind + ".json" : a.out_name;
  std::string path = a.common.out(name);
  save_json(is_ket ? ket_to_json(ket) : density_to_json(rho), path);
  std::printf("wrote %s\n", path.c_str());

  if (a.wigner) {
    if (is_ket && ket.modes == 2)
      throw IoError("no Wigner grid for two-mode states");
    RVector axis = linspace(-a.wigner_range, a.wigner_range, a.wigner_points);
    WignerGrid grid =
        wigner(is_ket ? pure_density(ket) : rho, axis, axis);
    std::string wpath = a.common.out(a.kind + "_wigner.csv");
    write_wigner_csv(wpath, grid);
    std::printf("wrote %s (W(0,0) = %.6f)\n", wpath.c_str(),
                wigner_at(is_ket ? pure_density(ket) : rho, 0.0, 0.0));
  }
  return 0;
}

// ----------------------------------------------------- simulate-homodyne ---

int run_simulate(const Common& common, const std::string& which,
                 const std::string& state_json, const std::string& prefix) {
  RunConfig cfg = common.resolve();
  DensityOp rho;
  if (!state_json.empty()) {
    nlohmann::json j = load_json(state_json);
    if (!j.contains("re") || j["re"].empty())
      throw IoError(state_json + ": not a state file");
    rho = j["re"][0].is_array() ? density_from_json(j)
                                : pure_density(ket_from_json(j));
    if (rho.modes != 1)
      throw IoError("simulate-homodyne needs a single-mode state");
  } else {
    rho = stage_state(cfg, which);
  }
  QuadratureRecord rec = sample_homodyne(rho, cfg.phase_list(),
                                         cfg.samples_per_phase, cfg.seed);
  std::string p = prefix.empty() ? which : prefix;
  write_record(common, cfg, p, rec);
  std::printf("sampled %zu quadratures over %d phases (seed %llu) -> %s\n",
              rec.samples.size(), cfg.n_phases,
              static_cast<unsigned long long>(cfg.seed),
              common.out(p + "_samples.csv").c_str());
  return 0;
}

// ------------------------------------------------------------------ tomo ---

int run_tomo(const Common& common, const std::string& samples_path,
             const std::string& out_name, int max_iter, double tol) {
  RunConfig cfg = common.resolve();
  QuadratureRecord rec = read_quadrature_csv(samples_path);
  TomoOptions opts;
  opts.max_iterations = max_iter;
  opts.tol = tol;
  opts.grid = cfg.bin_grid();
  TomoResult res = mle_reconstruct(rec, cfg.cutoff, opts);
  std::string path = common.out(out_name);
  save_json(density_to_json(res.state), path);
  std::printf(
      "mle: %d iterations, %s, log-likelihood %.3f, purity %.4f -> %s\n",
      res.iterations, res.converged ? "converged" : "not converged",
      res.log_likelihood, res.state.purity(), path.c_str());
  return 0;
}

// ------------------------------------------------------------------- fit ---

int run_fit(const Common& common, const std::string& source_path,
            const std::string& subtracted_path) {
  RunConfig cfg = common.resolve();
  FitOptions opts;
  opts.cutoff = cfg.cutoff;
  opts.grid = cfg.bin_grid();

  QuadratureRecord source = read_quadrature_csv(source_path);
  SqueezerFit fit = fit_squeezer(source, opts);

  double xi = std::numeric_limits<double>::quiet_NaN();
  ComparisonReport cmp;
  if (!subtracted_path.empty()) {
    QuadratureRecord subtracted = read_quadrature_csv(subtracted_path);
    xi = fit_xi(subtracted, fit.model, cfg.transmissivity, cfg.eta, opts);
    GateParams gate = cfg.gate();
    gate.modal_purity = xi;
    DensityOp predicted =
        apply_gate(gaussian_model_state(fit.model, cfg.cutoff), gate);
    cmp = compare_histograms(predicted, subtracted, cfg.bin_grid());
  } else {
    cmp = compare_histograms(gaussian_model_state(fit.model, cfg.cutoff),
                             source, cfg.bin_grid());
  }

  std::string path = common.out("fit_report.json");
  save_json(fit_report_json(fit, xi, cmp), path);
  std::printf("fit: s=%.4f h=%.4f xi=%.4f chi2=%.3f -> %s\n", fit.model.s,
              fit.model.h, xi, cmp.chi2_overall, path.c_str());
  return 0;
}

// -------------------------------------------------------------- pipeline ---

int run_pipeline(const Common& common, const RunConfig& base = {}) {
  RunConfig cfg = common.resolve(base);
  FitOptions opts;
  opts.cutoff = cfg.cutoff;
  opts.grid = cfg.bin_grid();

  DensityOp source = stage("model-state", [&] {
    return gaussian_model_state(cfg.source(), cfg.cutoff);
  });
  QuadratureRecord rec0 = stage("sample-source", [&] {
    return sample_homodyne(source, cfg.phase_list(), cfg.samples_per_phase,
                           cfg.seed);
  });
  write_record(common, cfg, "source", rec0);

  TomoResult tomo = stage("reconstruct-source", [&] {
    TomoOptions topts;
    topts.grid = cfg.bin_grid();
    return mle_reconstruct(rec0, cfg.cutoff, topts);
  });
  save_json(density_to_json(tomo.state), common.out("source_mle.json"));
  double f_source = fidelity(tomo.state, source);
  std::printf("pipeline: source reconstruction F=%.4f (%d iterations)\n",
              f_source, tomo.iterations);

  SqueezerFit fit =
      stage("fit-squeezer", [&] { return fit_squeezer(rec0, opts); });
  std::printf("pipeline: squeezer fit s=%.4f h=%.4f (start s=%.4f h=%.4f)\n",
              fit.model.s, fit.model.h, fit.initial.s, fit.initial.h);

  DensityOp subtracted =
      stage("gate", [&] { return apply_gate(source, cfg.gate()); });
  QuadratureRecord rec1 = stage("sample-subtracted", [&] {
    return sample_homodyne(subtracted, cfg.phase_list(),
                           cfg.samples_per_phase, cfg.seed + 1);
  });
  write_record(common, cfg, "subtracted", rec1);

  double xi = stage("fit-xi", [&] {
    return fit_xi(rec1, fit.model, cfg.transmissivity, cfg.eta, opts);
  });
  std::printf("pipeline: fitted xi=%.4f (configured %.4f)\n", xi, cfg.xi);

  // forward prediction: second subtraction from the fitted parameters,
  // compared against data synthesized from the configured truth
  GateParams fitted_gate = cfg.gate();
  fitted_gate.modal_purity = xi;
  DensityOp doubled_true = stage("double-subtraction", [&] {
    return double_subtraction(source, cfg.gate(), cfg.gate());
  });
  DensityOp doubled_pred = stage("double-subtraction", [&] {
    return double_subtraction(gaussian_model_state(fit.model, cfg.cutoff),
                              fitted_gate, fitted_gate);
  });
  QuadratureRecord rec2 = stage("sample-doubled", [&] {
    return sample_homodyne(doubled_true, cfg.phase_list(),
                           cfg.samples_per_phase, cfg.seed + 2);
  });
  write_record(common, cfg, "doubled", rec2);

  ComparisonReport cmp = stage("compare", [&] {
    return compare_histograms(doubled_pred, rec2, cfg.bin_grid());
  });

  nlohmann::json report = fit_report_json(fit, xi, cmp);
  report["source_reconstruction_fidelity"] = f_source;
  report["configured_xi"] = cfg.xi;
  std::string path = common.out("pipeline_report.json");
  save_json(report, path);
  std::printf("pipeline: prediction chi2/dof=%.3f -> %s\n", cmp.chi2_overall,
              path.c_str());
  return 0;
}

// ------------------------------------------------------------ sweep-bloch ---

int run_sweep(const Common& common, const std::string& preset_name,
              const std::string& out_name) {
  RunConfig cfg = common.resolve();
  CatQubitSpec spec = cfg.qubit();
  GateParams gate = cfg.gate();
  if (!preset_name.empty()) {
    Preset pre = preset_by_name(preset_name);
    spec = pre.qubit;
    gate = pre.gate;
  }
  FidelityMap map = bloch_sweep(spec, gate, {cfg.n_theta, cfg.n_phi});
  MapSummary s = summarize(map);
  std::string path = common.out(out_name);
  write_map_csv(path, map);
  std::printf("map %dx%d: min=%.4f max=%.4f mean=%.4f pole=%.4f "
              "equator=%.4f -> %s\n",
              cfg.n_theta, cfg.n_phi, s.min, s.max, s.mean, s.pole_mean,
              s.equator_mean, path.c_str());
  return 0;
}

// ------------------------------------------------------ entangled-fidelity ---

std::vector<double> xi_grid() {
  std::vector<double> xs;
  for (int k = 0; k <= 20; ++k) xs.push_back(0.05 * k);
  xs.push_back(0.83);
  std::sort(xs.begin(), xs.end());
  return xs;
}

int run_entangled(const Common& common, bool curve) {
  RunConfig cfg = common.resolve();
  CatQubitSpec spec{cfg.alpha, cfg.two_mode_cutoff};
  GateParams gate = cfg.gate();
  gate.cutoff = cfg.two_mode_cutoff;
  EntangledFidelity ef = entangled_fidelity(spec, gate);
  std::printf("entangled probe: F=%.6f good=%.6f bad=%.6f weight=%.6f\n",
              ef.fidelity, ef.good, ef.bad, ef.weight);
  if (curve) {
    std::vector<CurvePoint> pts;
    for (double xi : xi_grid()) {
      gate.modal_purity = xi;
      pts.push_back({xi, entangled_fidelity(spec, gate).fidelity});
    }
    std::string path = common.out("xi_curve.csv");
    write_curve_csv(path, "xi", pts);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

// ----------------------------------------------------------- cat-adequacy ---

int run_adequacy(const Common& common, double lo, double hi, int points) {
  RunConfig cfg = common.resolve();
  auto curve = cat_adequacy_curve(lo, hi, points);
  std::string path = common.out("adequacy_curve.csv");
  write_curve_csv(path, "alpha", curve);
  std::printf("adequacy(alpha=%.3f) = %.6f -> %s\n", cfg.alpha,
              cat_adequacy_at(cfg.alpha), path.c_str());
  return 0;
}

// ---------------------------------------------------------------- figures ---

int run_figures(const Common& common, const std::string& preset) {
  if (preset == "fig3a" || preset == "fig3b" || preset == "fig3c" ||
      preset == "fig3d")
    return run_sweep(common, preset, "map_" + preset + ".csv");

  if (preset == "fig4") {
    RunConfig cfg = common.resolve();
    CatQubitSpec spec{cfg.alpha, cfg.two_mode_cutoff};
    GateParams gate = cfg.gate();
    gate.cutoff = cfg.two_mode_cutoff;
    std::vector<CurvePoint> pts;
    for (double xi : xi_grid()) {
      gate.modal_purity = xi;
      pts.push_back({xi, entangled_fidelity(spec, gate).fidelity});
    }
    std::string path = common.out("fig4_fidelity_vs_xi.csv");
    write_curve_csv(path, "xi", pts);
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }

  if (preset == "fig5") {
    auto curve = cat_adequacy_curve(0.2, 3.0, 141);
    std::string path = common.out("fig5_adequacy_vs_alpha.csv");
    write_curve_csv(path, "alpha", curve);
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }

  if (preset == "fig2-pipeline") {
    // baseline source parameters for the synthetic run, mirrored in
    // presets/fig2-pipeline.cfg; --config/--set still override
    RunConfig base;
    base.s = 0.5;
    base.h = 1.05;
    return run_pipeline(common, base);
  }

  throw IoError("unknown figures preset '" + preset +
                "' (fig2-pipeline, fig3a..fig3d, fig4, fig5)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional photon-subtraction gate toolkit"};
  app.require_subcommand(1);

  StateArgs st;
  CLI::App* c_state =
      app.add_subcommand("state", "Build a reference state, write JSON");
  // --h mirrors the config key for the parasite gain, so this subcommand
  // keeps only the long help flag.
  c_state->set_help_flag("--help", "Print this help message and exit");
  attach_common(c_state, st.common);
  c_state->add_option("kind", st.kind,
                      "vacuum|fock|coherent|cat|cat-even|cat-odd|squeezed|"
                      "thermal|gaussian-model|bell-phi|bell-psi")
      ->required();
  auto* o_alpha = c_state->add_option("--alpha", st.alpha,
                                      "Coherent amplitude");
  auto* o_theta = c_state->add_option("--theta", st.theta,
                                      "Bloch polar angle");
  auto* o_phi = c_state->add_option("--phi", st.phi, "Bloch azimuth");
  auto* o_s = c_state->add_option("--s", st.s, "Squeezing factor in (0,1]");
  auto* o_h = c_state->add_option("--h", st.h, "Parasite gain >= 1");
  c_state->add_option("--nbar", st.nbar, "Thermal occupation");
  c_state->add_option("--n", st.n, "Photon number for fock");
  auto* o_cutoff = c_state->add_option("--cutoff", st.cutoff, "Fock cutoff");
  c_state->add_option("--out", st.out_name, "Output file name");
  c_state->add_flag("--wigner", st.wigner, "Also write a Wigner grid CSV");
  c_state->add_option("--wigner-points", st.wigner_points,
                      "Grid points per axis");
  c_state->add_option("--wigner-range", st.wigner_range,
                      "Half-width of the grid");

  Common sim_common;
  std::string sim_stage = "source", sim_state_json, sim_prefix;
  CLI::App* c_sim = app.add_subcommand(
      "simulate-homodyne", "Draw seeded quadrature samples, write CSV");
  attach_common(c_sim, sim_common);
  c_sim->add_option("--stage", sim_stage, "source|subtracted|doubled");
  c_sim->add_option("--state-json", sim_state_json,
                    "Sample a saved state instead of a config stage");
  c_sim->add_option("--prefix", sim_prefix, "Output file prefix");

  Common tomo_common;
  std::string tomo_samples, tomo_out = "mle_state.json";
  int tomo_iter = 300;
  double tomo_tol = 1e-9;
  CLI::App* c_tomo = app.add_subcommand(
      "tomo", "Maximum-likelihood state reconstruction from samples");
  attach_common(c_tomo, tomo_common);
  c_tomo->add_option("--samples", tomo_samples, "Quadrature CSV")->required();
  c_tomo->add_option("--out", tomo_out, "Output density JSON name");
  c_tomo->add_option("--max-iter", tomo_iter, "Iteration cap");
  c_tomo->add_option("--tol", tomo_tol, "Relative log-likelihood tolerance");

  Common fit_common;
  std::string fit_source, fit_subtracted;
  CLI::App* c_fit = app.add_subcommand(
      "fit", "Fit the source model, optionally the modal purity");
  attach_common(c_fit, fit_common);
  c_fit->add_option("--source", fit_source, "Bare-source quadrature CSV")
      ->required();
  c_fit->add_option("--subtracted", fit_subtracted,
                    "Post-gate quadrature CSV (enables the xi fit)");

  Common pipe_common;
  CLI::App* c_pipe = app.add_subcommand(
      "pipeline", "Synthetic end-to-end run: sample, fit, predict, compare");
  attach_common(c_pipe, pipe_common);

  Common sweep_common;
  std::string sweep_preset, sweep_out = "bloch_map.csv";
  CLI::App* c_sweep = app.add_subcommand(
      "sweep-bloch", "Fidelity map over the qubit Bloch sphere");
  attach_common(c_sweep, sweep_common);
  c_sweep->add_option("--preset", sweep_preset,
                      "fig3a|fig3b|fig3c|fig3d (overrides config)");
  c_sweep->add_option("--out", sweep_out, "Output CSV name");

  Common ent_common;
  bool ent_curve = false;
  CLI::App* c_ent = app.add_subcommand(
      "entangled-fidelity", "Process fidelity via the entangled probe");
  attach_common(c_ent, ent_common);
  c_ent->add_flag("--curve", ent_curve, "Also write F(xi) curve CSV");

  Common adq_common;
  double adq_lo = 0.2, adq_hi = 3.0;
  int adq_points = 141;
  CLI::App* c_adq = app.add_subcommand(
      "cat-adequacy", "Qubit adequacy of the coherent pair vs alpha");
  attach_common(c_adq, adq_common);
  c_adq->add_option("--lo", adq_lo, "Smallest alpha");
  c_adq->add_option("--hi", adq_hi, "Largest alpha");
  c_adq->add_option("--points", adq_points, "Curve points");

  Common fig_common;
  std::string fig_preset;
  CLI::App* c_fig = app.add_subcommand(
      "figures", "Emit the CSV data behind a named figure preset");
  attach_common(c_fig, fig_common);
  c_fig->add_option("preset,--preset", fig_preset,
                    "fig2-pipeline|fig3a..fig3d|fig4|fig5")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_state) {
      if (!st.common.config_path.empty()) {
        RunConfig cfg = st.common.resolve();
        if (!o_alpha->count()) st.alpha = cfg.alpha;
        if (!o_theta->count()) st.theta = cfg.theta;
        if (!o_phi->count()) st.phi = cfg.phi;
        if (!o_s->count()) st.s = cfg.s;
        if (!o_h->count()) st.h = cfg.h;
        if (!o_cutoff->count()) st.cutoff = cfg.cutoff;
      }
      return run_state(st);
    }
    if (*c_sim)
      return run_simulate(sim_common, sim_stage, sim_state_json, sim_prefix);
    if (*c_tomo)
      return run_tomo(tomo_common, tomo_samples, tomo_out, tomo_iter,
                      tomo_tol);
    if (*c_fit) return run_fit(fit_common, fit_source, fit_subtracted);
    if (*c_pipe) return run_pipeline(pipe_common);
    if (*c_sweep) return run_sweep(sweep_common, sweep_preset, sweep_out);
    if (*c_ent) return run_entangled(ent_common, ent_curve);
    if (*c_adq) return run_adequacy(adq_common, adq_lo, adq_hi, adq_points);
    if (*c_fig) return run_figures(fig_common, fig_preset);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ModelError& e) {
    std::fprintf(stderr, "model error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
