// Python bindings for the Fock-space core. Thin: every function returns the
// same structs the C++ API uses; Eigen types cross as numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catgate/channel.hpp"
#include "catgate/characterize.hpp"
#include "catgate/fock.hpp"
#include "catgate/states.hpp"
#include "catgate/tomography.hpp"

namespace py = pybind11;
using namespace catgate;

PYBIND11_MODULE(_catgate, m) {
  m.doc() = "Fock-space model of the conditional photon-subtraction gate";

  py::register_exception<ModelError>(m, "ModelError", PyExc_RuntimeError);

  py::enum_<Mode>(m, "Mode").value("A", Mode::A).value("B", Mode::B);
  py::enum_<BellKind>(m, "BellKind")
      .value("PhiPlus", BellKind::PhiPlus)
      .value("PsiPlus", BellKind::PsiPlus);

  py::class_<Ket>(m, "Ket")
      .def(py::init([](int cutoff, int modes) { return make_ket(cutoff, modes); }),
           py::arg("cutoff"), py::arg("modes") = 1)
      .def_readwrite("cutoff", &Ket::cutoff)
      .def_readwrite("modes", &Ket::modes)
      .def_readwrite("amps", &Ket::amps)
      .def("dim", &Ket::dim)
      .def("norm", &Ket::norm)
      .def("is_normalized", &Ket::is_normalized, py::arg("tol") = 1e-12)
      .def("normalized", &Ket::normalized)
      .def("tail_weight", &Ket::tail_weight)
      .def("__repr__", [](const Ket& k) {
        return "Ket(cutoff=" + std::to_string(k.cutoff) +
               ", modes=" + std::to_string(k.modes) + ")";
      });

  py::class_<DensityOp>(m, "DensityOp")
      .def_readwrite("cutoff", &DensityOp::cutoff)
      .def_readwrite("modes", &DensityOp::modes)
      .def_readwrite("mat", &DensityOp::mat)
      .def("dim", &DensityOp::dim)
      .def("trace_real", &DensityOp::trace_real)
      .def("purity", &DensityOp::purity)
      .def("mean_photons", &DensityOp::mean_photons)
      .def("tail_weight", &DensityOp::tail_weight)
      .def("__repr__", [](const DensityOp& r) {
        return "DensityOp(cutoff=" + std::to_string(r.cutoff) +
               ", modes=" + std::to_string(r.modes) + ")";
      });

  m.def("fock_state", &fock_state, py::arg("n"), py::arg("cutoff"));
  m.def("pure_density", &pure_density, py::arg("psi"));
  m.def("density_from_matrix", &density_from_matrix, py::arg("mat"),
        py::arg("cutoff"), py::arg("modes") = 1);
  m.def("annihilation_op", &annihilation_op, py::arg("cutoff"));
  m.def("creation_op", &creation_op, py::arg("cutoff"));
  m.def("number_op", &number_op, py::arg("cutoff"));
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
  m.def("tensor", py::overload_cast<const Ket&, const Ket&>(&tensor),
        py::arg("a"), py::arg("b"));
  m.def("tensor",
        py::overload_cast<const DensityOp&, const DensityOp&>(&tensor),
        py::arg("a"), py::arg("b"));
  m.def("partial_trace", &partial_trace, py::arg("rho"),
        py::arg("traced_out"));
  m.def("fidelity_pure", &fidelity_pure, py::arg("rho"), py::arg("psi"));
  m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));
  m.def("apply_on_arm", &apply_on_arm, py::arg("op"), py::arg("psi"),
        py::arg("arm"));
  m.def("mode_swap", py::overload_cast<const Ket&>(&mode_swap),
        py::arg("psi"));
  m.def("mode_swap", py::overload_cast<const DensityOp&>(&mode_swap),
        py::arg("rho"));
  m.def("expm", &expm, py::arg("generator"));
  m.def("wigner_at", &wigner_at, py::arg("rho"), py::arg("x"), py::arg("p"));

  py::class_<WignerGrid>(m, "WignerGrid")
      .def_readwrite("xs", &WignerGrid::xs)
      .def_readwrite("ps", &WignerGrid::ps)
      .def_readwrite("values", &WignerGrid::values)
      .def("integral", &WignerGrid::integral);
  m.def("wigner", &wigner, py::arg("rho"), py::arg("xs"), py::arg("ps"));

  py::class_<BlochPoint>(m, "BlochPoint")
      .def(py::init<>())
      .def(py::init([](double theta, double phi) {
             return BlochPoint{theta, phi};
           }),
           py::arg("theta"), py::arg("phi"))
      .def_readwrite("theta", &BlochPoint::theta)
      .def_readwrite("phi", &BlochPoint::phi);

  py::class_<CatQubitSpec>(m, "CatQubitSpec")
      .def(py::init([](double alpha, int cutoff) {
             return CatQubitSpec{alpha, cutoff};
           }),
           py::arg("alpha") = 0.92, py::arg("cutoff") = 20)
      .def_readwrite("alpha", &CatQubitSpec::alpha)
      .def_readwrite("cutoff", &CatQubitSpec::cutoff)
      .def("norm_plus", &CatQubitSpec::norm_plus)
      .def("norm_minus", &CatQubitSpec::norm_minus)
      .def("validate", &CatQubitSpec::validate);

  py::class_<SqueezerModel>(m, "SqueezerModel")
      .def(py::init([](double s, double h) { return SqueezerModel{s, h}; }),
           py::arg("s") = 1.0, py::arg("h") = 1.0)
      .def_readwrite("s", &SqueezerModel::s)
      .def_readwrite("h", &SqueezerModel::h)
      .def("var_x", &SqueezerModel::var_x)
      .def("var_p", &SqueezerModel::var_p)
      .def("validate", &SqueezerModel::validate);

  m.def("coherent", &coherent, py::arg("alpha"), py::arg("cutoff"));
  m.def("cat_even", &cat_even, py::arg("alpha"), py::arg("cutoff"));
  m.def("cat_odd", &cat_odd, py::arg("alpha"), py::arg("cutoff"));
  m.def("cat_state", &cat_state, py::arg("spec"), py::arg("point"));
  m.def("squeeze_op", &squeeze_op, py::arg("r"), py::arg("cutoff"));
  m.def("squeezed_vacuum", &squeezed_vacuum, py::arg("s"), py::arg("cutoff"));
  m.def("thermal_state", &thermal_state, py::arg("nbar"), py::arg("cutoff"));
  m.def("gaussian_model_state", &gaussian_model_state, py::arg("model"),
        py::arg("cutoff"));
  m.def("bell_cat", &bell_cat, py::arg("spec"), py::arg("kind"));
  m.def("bell_cat_general", &bell_cat_general, py::arg("spec"),
        py::arg("mu_is_plus"), py::arg("phase"));
  m.def("subtracted_target", &subtracted_target, py::arg("psi"),
        py::arg("arm") = Mode::B);

  py::class_<GateParams>(m, "GateParams")
      .def(py::init([](double transmissivity, double modal_purity,
                       double apd_efficiency, double homodyne_efficiency,
                       int cutoff) {
             return GateParams{transmissivity, modal_purity, apd_efficiency,
                               homodyne_efficiency, cutoff};
           }),
           py::arg("transmissivity") = 0.9, py::arg("modal_purity") = 0.83,
           py::arg("apd_efficiency") = 1.0,
           py::arg("homodyne_efficiency") = 1.0, py::arg("cutoff") = 20)
      .def_readwrite("transmissivity", &GateParams::transmissivity)
      .def_readwrite("modal_purity", &GateParams::modal_purity)
      .def_readwrite("apd_efficiency", &GateParams::apd_efficiency)
      .def_readwrite("homodyne_efficiency", &GateParams::homodyne_efficiency)
      .def_readwrite("cutoff", &GateParams::cutoff)
      .def("validate", &GateParams::validate);

  py::class_<ChannelOutput>(m, "ChannelOutput")
      .def_readwrite("state", &ChannelOutput::state)
      .def_readwrite("weight", &ChannelOutput::weight);

  m.def("loss_kraus", &loss_kraus, py::arg("t"), py::arg("cutoff"));
  m.def("subtract_kraus", &subtract_kraus, py::arg("transmissivity"),
        py::arg("cutoff"));
  m.def("loss_channel", &loss_channel, py::arg("rho"), py::arg("t"));
  m.def("subtract_good", &subtract_good, py::arg("rho"),
        py::arg("transmissivity"));
  m.def("subtract_bad", &subtract_bad, py::arg("rho"),
        py::arg("transmissivity"));
  m.def("apply_gate", &apply_gate, py::arg("rho"), py::arg("params"));
  m.def("gate_on_arm", &gate_on_arm, py::arg("psi"), py::arg("params"),
        py::arg("arm"));
  m.def("success_probability", &success_probability, py::arg("rho"),
        py::arg("params"));
  m.def("double_subtraction", &double_subtraction, py::arg("rho"),
        py::arg("first"), py::arg("second"));
  m.def("beamsplitter_unitary", &beamsplitter_unitary,
        py::arg("transmissivity"), py::arg("cutoff"));
  m.def("subtract_good_twomode", &subtract_good_twomode, py::arg("rho"),
        py::arg("transmissivity"));

  py::class_<QuadratureSample>(m, "QuadratureSample")
      .def_readwrite("phase", &QuadratureSample::phase)
      .def_readwrite("value", &QuadratureSample::value);

  py::class_<QuadratureRecord>(m, "QuadratureRecord")
      .def(py::init<>())
      .def_readwrite("samples", &QuadratureRecord::samples)
      .def_readwrite("seed", &QuadratureRecord::seed)
      .def("distinct_phases", &QuadratureRecord::distinct_phases);

  py::class_<BinGrid>(m, "BinGrid")
      .def(py::init([](int bins, double x_max) {
             return BinGrid{bins, x_max};
           }),
           py::arg("bins") = 64, py::arg("x_max") = 5.0)
      .def_readwrite("bins", &BinGrid::bins)
      .def_readwrite("x_max", &BinGrid::x_max);

  py::class_<Histogram>(m, "Histogram")
      .def_readwrite("phase", &Histogram::phase)
      .def_readwrite("edges", &Histogram::edges)
      .def_readwrite("counts", &Histogram::counts)
      .def("total", &Histogram::total);

  m.def("hermite_psi", &hermite_psi, py::arg("cutoff"), py::arg("x"));
  m.def("quad_density", &quad_density, py::arg("rho"), py::arg("phase"),
        py::arg("xs"));
  m.def("quad_mean", &quad_mean, py::arg("rho"), py::arg("phase"));
  m.def("quad_variance", &quad_variance, py::arg("rho"), py::arg("phase"));
  m.def("sample_homodyne", &sample_homodyne, py::arg("rho"),
        py::arg("phases"), py::arg("n"), py::arg("seed"));
  m.def("make_histograms", &make_histograms, py::arg("record"),
        py::arg("grid") = BinGrid{});

  py::class_<TomoOptions>(m, "TomoOptions")
      .def(py::init<>())
      .def_readwrite("max_iterations", &TomoOptions::max_iterations)
      .def_readwrite("tol", &TomoOptions::tol)
      .def_readwrite("grid", &TomoOptions::grid);

  py::class_<TomoResult>(m, "TomoResult")
      .def_readwrite("state", &TomoResult::state)
      .def_readwrite("log_likelihood", &TomoResult::log_likelihood)
      .def_readwrite("iterations", &TomoResult::iterations)
      .def_readwrite("converged", &TomoResult::converged);

  m.def("mle_reconstruct", &mle_reconstruct, py::arg("record"),
        py::arg("cutoff"), py::arg("opts") = TomoOptions{});

  py::class_<FitOptions>(m, "FitOptions")
      .def(py::init<>())
      .def_readwrite("cutoff", &FitOptions::cutoff)
      .def_readwrite("grid", &FitOptions::grid)
      .def_readwrite("max_evals", &FitOptions::max_evals);

  py::class_<SqueezerFit>(m, "SqueezerFit")
      .def_readwrite("model", &SqueezerFit::model)
      .def_readwrite("nll", &SqueezerFit::nll)
      .def_readwrite("initial", &SqueezerFit::initial);

  m.def("fit_squeezer", &fit_squeezer, py::arg("record"),
        py::arg("opts") = FitOptions{});
  m.def("fit_xi", &fit_xi, py::arg("record"), py::arg("input"),
        py::arg("transmissivity"), py::arg("eta"),
        py::arg("opts") = FitOptions{});

  py::class_<PhaseComparison>(m, "PhaseComparison")
      .def_readwrite("phase", &PhaseComparison::phase)
      .def_readwrite("chi2_reduced", &PhaseComparison::chi2_reduced)
      .def_readwrite("bins_used", &PhaseComparison::bins_used)
      .def_readwrite("samples", &PhaseComparison::samples);

  py::class_<ComparisonReport>(m, "ComparisonReport")
      .def_readwrite("per_phase", &ComparisonReport::per_phase)
      .def_readwrite("chi2_overall", &ComparisonReport::chi2_overall);

  m.def("compare_histograms", &compare_histograms, py::arg("predicted"),
        py::arg("record"), py::arg("grid") = BinGrid{});

  py::class_<SweepGrid>(m, "SweepGrid")
      .def(py::init([](int n_theta, int n_phi) {
             return SweepGrid{n_theta, n_phi};
           }),
           py::arg("n_theta") = 37, py::arg("n_phi") = 72)
      .def_readwrite("n_theta", &SweepGrid::n_theta)
      .def_readwrite("n_phi", &SweepGrid::n_phi);

  py::class_<FidelityMap>(m, "FidelityMap")
      .def_readwrite("thetas", &FidelityMap::thetas)
      .def_readwrite("phis", &FidelityMap::phis)
      .def_readwrite("values", &FidelityMap::values);

  py::class_<MapSummary>(m, "MapSummary")
      .def_readwrite("min", &MapSummary::min)
      .def_readwrite("max", &MapSummary::max)
      .def_readwrite("mean", &MapSummary::mean)
      .def_readwrite("equator_mean", &MapSummary::equator_mean)
      .def_readwrite("pole_mean", &MapSummary::pole_mean);

  py::class_<CurvePoint>(m, "CurvePoint")
      .def_readwrite("x", &CurvePoint::x)
      .def_readwrite("value", &CurvePoint::value);

  py::class_<EntangledFidelity>(m, "EntangledFidelity")
      .def_readwrite("fidelity", &EntangledFidelity::fidelity)
      .def_readwrite("good", &EntangledFidelity::good)
      .def_readwrite("bad", &EntangledFidelity::bad)
      .def_readwrite("weight", &EntangledFidelity::weight);

  py::class_<BellProbeCase>(m, "BellProbeCase")
      .def_readwrite("mu_is_plus", &BellProbeCase::mu_is_plus)
      .def_readwrite("phase", &BellProbeCase::phase)
      .def_readwrite("result", &BellProbeCase::result);

  m.def("bloch_fidelity", &bloch_fidelity, py::arg("spec"), py::arg("params"),
        py::arg("point"));
  m.def("bloch_sweep", &bloch_sweep, py::arg("spec"), py::arg("params"),
        py::arg("grid") = SweepGrid{});
  m.def("summarize", &summarize, py::arg("map"));
  m.def("transmissivity_curve", &transmissivity_curve, py::arg("spec"),
        py::arg("params"), py::arg("point"), py::arg("ts"));
  m.def("entangled_fidelity", &entangled_fidelity, py::arg("spec"),
        py::arg("params"), py::arg("arm") = Mode::B);
  m.def("bell_invariance_suite", &bell_invariance_suite, py::arg("spec"),
        py::arg("params"),
        py::arg("phases") = std::vector<double>{0.0, 1.5707963267948966,
                                                3.141592653589793, 2.1});
  m.def("cat_adequacy_at", &cat_adequacy_at, py::arg("alpha"),
        py::arg("cutoff") = 40);
  m.def("cat_adequacy_curve", &cat_adequacy_curve, py::arg("lo"),
        py::arg("hi"), py::arg("n"), py::arg("cutoff") = 40);

  py::class_<CharacterizationReport>(m, "CharacterizationReport")
      .def_readwrite("alpha", &CharacterizationReport::alpha)
      .def_readwrite("gate", &CharacterizationReport::gate)
      .def_readwrite("map", &CharacterizationReport::map)
      .def_readwrite("entangled", &CharacterizationReport::entangled)
      .def_readwrite("adequacy", &CharacterizationReport::adequacy)
      .def_readwrite("success_rate", &CharacterizationReport::success_rate)
      .def_readwrite("adequacy_vs_tanh_2a2",
                     &CharacterizationReport::adequacy_vs_tanh_2a2)
      .def_readwrite("adequacy_vs_tanh_a2",
                     &CharacterizationReport::adequacy_vs_tanh_a2);

  m.def("characterize", &characterize, py::arg("spec"), py::arg("params"),
        py::arg("grid") = SweepGrid{}, py::arg("entangled_cutoff") = 30);

  py::class_<Preset>(m, "Preset")
      .def_readwrite("name", &Preset::name)
      .def_readwrite("qubit", &Preset::qubit)
      .def_readwrite("gate", &Preset::gate)
      .def("__repr__",
           [](const Preset& p) { return "Preset('" + p.name + "')"; });

  m.def("preset_by_name", &preset_by_name, py::arg("name"));
  m.def("preset_names", &preset_names);
}
