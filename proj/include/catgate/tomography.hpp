#pragma once

#include "catgate/channel.hpp"
#include "catgate/states.hpp"

#include <cstdint>
#include <vector>

namespace catgate {

/// One homodyne outcome: LO phase in radians and quadrature value in the
/// convention where the vacuum has variance 1/2.
struct QuadratureSample {
  double phase = 0.0;
  double value = 0.0;
};

/// Homodyne data set. Samples keep their acquisition order; the seed records
/// how synthetic data was generated (0 for imported data).
struct QuadratureRecord {
  std::vector<QuadratureSample> samples;
  std::uint64_t seed = 0;

  /// Sorted list of distinct phases (clustered at 1e-9).
  std::vector<double> distinct_phases() const;
};

/// Harmonic-oscillator eigenfunctions psi_0..psi_cutoff at x.
RVector hermite_psi(int cutoff, double x);

/// pr(x | phase) = <x_phi| rho |x_phi> at each requested point.
RVector quad_density(const DensityOp& rho, double phase, const RVector& xs);
double quad_mean(const DensityOp& rho, double phase);
double quad_variance(const DensityOp& rho, double phase);

/// Draw n quadrature samples per phase by inverse-CDF sampling of the exact
/// marginal. Deterministic: stream i depends only on (seed, i).
QuadratureRecord sample_homodyne(const DensityOp& rho,
                                 const std::vector<double>& phases, int n,
                                 std::uint64_t seed);

/// Uniform binning over [-x_max, x_max]; the two edge bins absorb anything
/// beyond the range, so bin probabilities always sum to one.
struct BinGrid {
  int bins = 64;
  double x_max = 5.0;
};

struct Histogram {
  double phase = 0.0;
  RVector edges;            // bins + 1 entries
  Eigen::VectorXi counts;   // bins entries
  long total() const { return counts.sum(); }
};

std::vector<Histogram> make_histograms(const QuadratureRecord& rec,
                                       const BinGrid& grid);

/// Bin-integrated quadrature projectors for a fixed phase list. For each
/// phase and bin, at(p, b) is int_bin |x_phi><x_phi| dx in the Fock basis;
/// per phase the bins sum to the identity.
class BinnedProjectors {
 public:
  BinnedProjectors(int cutoff, const std::vector<double>& phases,
                   const BinGrid& grid);

  const CMatrix& at(int phase_idx, int bin) const {
    return ops_[phase_idx][bin];
  }
  int n_phases() const { return static_cast<int>(ops_.size()); }
  int n_bins() const { return grid_.bins; }
  const BinGrid& grid() const { return grid_; }

  /// tr(rho Pi) for every bin of one phase.
  RVector probabilities(const CMatrix& rho, int phase_idx) const;

 private:
  BinGrid grid_;
  std::vector<std::vector<CMatrix>> ops_;
};

struct TomoOptions {
  int max_iterations = 300;
  double tol = 1e-9;  // relative log-likelihood change
  BinGrid grid;
};

struct TomoResult {
  DensityOp state;
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Maximum-likelihood reconstruction from binned homodyne data by the
/// iterative R rho R scheme, with step dilution when a full step would
/// lower the likelihood.
TomoResult mle_reconstruct(const QuadratureRecord& rec, int cutoff,
                           const TomoOptions& opts = {});

struct FitOptions {
  int cutoff = 20;
  BinGrid grid;
  int max_evals = 400;
};

struct SqueezerFit {
  SqueezerModel model;
  double nll = 0.0;       // binned negative log-likelihood at the optimum
  SqueezerModel initial;  // moment-based starting point
};

/// Fit the two-parameter squeezer model to homodyne data of the bare source:
/// moment-based initialization, then Nelder-Mead on the binned likelihood.
SqueezerFit fit_squeezer(const QuadratureRecord& rec,
                         const FitOptions& opts = {});

/// Fit the modal purity xi from homodyne data taken after the gate, with the
/// input model and the gate optics held fixed. The bin probabilities are
/// affine in xi, so the likelihood is maximized by golden-section search.
double fit_xi(const QuadratureRecord& rec, const SqueezerModel& input,
              double transmissivity, double eta, const FitOptions& opts = {});

struct PhaseComparison {
  double phase = 0.0;
  double chi2_reduced = 0.0;
  int bins_used = 0;
  long samples = 0;
};

struct ComparisonReport {
  std::vector<PhaseComparison> per_phase;
  double chi2_overall = 0.0;
};

/// Pearson chi-squared between recorded histograms and the marginals of a
/// predicted state. Bins with expected count < 5 are folded out.
ComparisonReport compare_histograms(const DensityOp& predicted,
                                    const QuadratureRecord& rec,
                                    const BinGrid& grid = {});

}  // namespace catgate
