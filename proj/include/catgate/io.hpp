#pragma once

#include "catgate/characterize.hpp"
#include "catgate/tomography.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace catgate {

/// File / format problem (missing file, malformed header, bad key).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON state formats:
//   ket     {"cutoff": N, "re": [...], "im": [...]}
//   density {"cutoff": N, "re": [[...]], "im": [[...]]}
// Two-mode objects are recognized by their (N+1)^2 length.
nlohmann::json ket_to_json(const Ket& psi);
Ket ket_from_json(const nlohmann::json& j);
nlohmann::json density_to_json(const DensityOp& rho);
DensityOp density_from_json(const nlohmann::json& j);

nlohmann::json load_json(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);

// CSV writers; headers are part of the format.
void write_wigner_csv(const std::string& path, const WignerGrid& grid);
void write_quadrature_csv(const std::string& path,
                          const QuadratureRecord& rec);
QuadratureRecord read_quadrature_csv(const std::string& path);
void write_histogram_csv(const std::string& path,
                         const std::vector<Histogram>& hists);
void write_map_csv(const std::string& path, const FidelityMap& map);
void write_curve_csv(const std::string& path, const std::string& varname,
                     const std::vector<CurvePoint>& curve);

nlohmann::json fit_report_json(const SqueezerFit& fit, double xi,
                               const ComparisonReport& cmp);
nlohmann::json characterization_report_json(
    const CharacterizationReport& rep);

/// Everything a pipeline run needs, loadable from a flat key=value file.
/// Equal configs produce identical outputs.
struct RunConfig {
  // source and qubit
  double alpha = 0.92;
  double s = 1.0;
  double h = 1.0;
  // gate
  double transmissivity = 0.9;
  double xi = 0.83;
  double kappa = 1.0;
  double eta = 1.0;
  int cutoff = 20;
  int two_mode_cutoff = 30;
  // homodyne simulation
  int n_phases = 12;
  int samples_per_phase = 10000;
  std::uint64_t seed = 1;
  int bins = 64;
  double x_max = 5.0;
  // sweeps
  int n_theta = 37;
  int n_phi = 72;
  double theta = 1.5707963267948966;
  double phi = 0.0;

  static RunConfig from_file(const std::string& path);
  void set(const std::string& key, const std::string& value);
  std::string serialize() const;

  GateParams gate() const;
  SqueezerModel source() const;
  CatQubitSpec qubit() const;
  BinGrid bin_grid() const;
  /// Homodyne phases k pi / n_phases, k = 0 .. n_phases-1.
  std::vector<double> phase_list() const;
};

/// Output directory resolution: explicit flag, else CATGATE_OUTDIR, else ".".
/// Creates the directory if needed.
std::string resolve_outdir(const std::string& flag_value);

}  // namespace catgate
