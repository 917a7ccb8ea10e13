#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catgate/tomography.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace catgate;

namespace {

DensityOp random_density(int cutoff, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  CMatrix m = CMatrix::Zero(cutoff + 1, cutoff + 1);
  for (double w : {0.5, 0.3, 0.2}) {
    Ket k = make_ket(cutoff);
    for (int i = 0; i < k.dim(); ++i) k.amps[i] = Complex(g(rng), g(rng));
    k = k.normalized();
    m += w * (k.amps * k.amps.adjoint());
  }
  return density_from_matrix(m, cutoff);
}

}  // namespace

TEST_CASE("oscillator eigenfunctions") {
  double pi4 = std::pow(std::numbers::pi, -0.25);
  RVector at0 = hermite_psi(6, 0.0);
  CHECK(at0[0] == doctest::Approx(pi4).epsilon(1e-14));
  CHECK(at0[1] == 0.0);
  CHECK(at0[2] == doctest::Approx(-pi4 / std::sqrt(2.0)).epsilon(1e-13));

  double x = 0.8;
  RVector atx = hermite_psi(6, x);
  CHECK(atx[1] ==
        doctest::Approx(std::sqrt(2.0) * x * atx[0]).epsilon(1e-13));

  // orthonormal under a fine trapezoid rule
  int pts = 1601, nmax = 10;
  double lo = -8.0, hi = 8.0, h = (hi - lo) / (pts - 1);
  RMatrix gram = RMatrix::Zero(nmax + 1, nmax + 1);
  for (int i = 0; i < pts; ++i) {
    RVector psi = hermite_psi(nmax, lo + i * h);
    double w = (i == 0 || i == pts - 1) ? 0.5 : 1.0;
    gram += w * h * (psi * psi.transpose());
  }
  CHECK((gram - RMatrix::Identity(nmax + 1, nmax + 1)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("quadrature marginals of reference states") {
  int n = 20;
  DensityOp vac = pure_density(fock_state(0, n));
  RVector xs(3);
  xs << -0.3, 0.0, 0.5;
  RVector pr = quad_density(vac, 0.9, xs);
  double c = 1.0 / std::sqrt(std::numbers::pi);
  for (int i = 0; i < 3; ++i)
    CHECK(pr[i] ==
          doctest::Approx(c * std::exp(-xs[i] * xs[i])).epsilon(1e-12));

  double alpha = 0.9, phase = std::numbers::pi / 3;
  DensityOp coh = pure_density(coherent(alpha, n));
  CHECK(quad_mean(coh, phase) ==
        doctest::Approx(std::sqrt(2.0) * alpha * std::cos(phase))
            .epsilon(1e-10));
  CHECK(quad_variance(coh, phase) == doctest::Approx(0.5).epsilon(1e-9));

  // gaussian marginal centred on sqrt(2) alpha
  RVector prc = quad_density(coh, 0.0, xs);
  for (int i = 0; i < 3; ++i) {
    double d = xs[i] - std::sqrt(2.0) * alpha;
    CHECK(prc[i] == doctest::Approx(c * std::exp(-d * d)).epsilon(1e-10));
  }
}

TEST_CASE("advancing the phase by pi mirrors the marginal") {
  DensityOp rho = random_density(15, 9);
  RVector xs = linspace(-4.0, 4.0, 41);
  RVector fwd = quad_density(rho, 0.7 + std::numbers::pi, xs);
  RVector mirrored(41);
  for (int i = 0; i < 41; ++i) mirrored[i] = xs[40 - i];
  RVector bwd = quad_density(rho, 0.7, mirrored);
  for (int i = 0; i < 41; ++i)
    CHECK(fwd[i] == doctest::Approx(bwd[i]).epsilon(1e-11));
}

TEST_CASE("homodyne sampling is deterministic and unbiased") {
  DensityOp coh = pure_density(coherent(0.9, 20));
  std::vector<double> phases = {0.0, 0.7, 2.1};
  QuadratureRecord a = sample_homodyne(coh, phases, 20000, 42);
  QuadratureRecord b = sample_homodyne(coh, phases, 20000, 42);
  QuadratureRecord c = sample_homodyne(coh, phases, 20000, 43);
  REQUIRE(a.samples.size() == 60000);
  CHECK(a.seed == 42);

  bool identical = true, distinct = false;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    identical &= a.samples[i].value == b.samples[i].value &&
                 a.samples[i].phase == b.samples[i].phase;
    distinct |= a.samples[i].value != c.samples[i].value;
  }
  CHECK(identical);
  CHECK(distinct);

  auto got = a.distinct_phases();
  REQUIRE(got.size() == 3);
  CHECK(got[0] == 0.0);
  CHECK(got[2] == 2.1);

  // sample moments against the exact marginal, 5 sigma bands
  for (double phase : phases) {
    double mean = 0.0, sq = 0.0;
    long cnt = 0;
    for (const auto& s : a.samples) {
      if (s.phase != phase) continue;
      mean += s.value;
      sq += s.value * s.value;
      ++cnt;
    }
    REQUIRE(cnt == 20000);
    mean /= cnt;
    double var = sq / cnt - mean * mean;
    CHECK(std::abs(mean - quad_mean(coh, phase)) < 0.025);
    CHECK(std::abs(var - quad_variance(coh, phase)) < 0.025);
  }
}

TEST_CASE("histogram binning clamps outliers into the edge bins") {
  QuadratureRecord rec;
  rec.samples = {{0.0, -10.0}, {0.0, 0.1}, {0.0, 4.99}, {0.0, 99.0}};
  BinGrid grid;
  grid.bins = 4;
  grid.x_max = 5.0;
  auto hists = make_histograms(rec, grid);
  REQUIRE(hists.size() == 1);
  CHECK(hists[0].total() == 4);
  CHECK(hists[0].counts[0] == 1);
  CHECK(hists[0].counts[1] == 0);
  CHECK(hists[0].counts[2] == 1);
  CHECK(hists[0].counts[3] == 2);
  CHECK(hists[0].edges[0] == -5.0);
  CHECK(hists[0].edges[4] == 5.0);
}

TEST_CASE("binned projectors resolve the identity per phase") {
  int n = 18;
  std::vector<double> phases = {0.0, 0.7, 2.2};
  BinGrid grid;
  grid.bins = 48;
  grid.x_max = 4.5;
  BinnedProjectors proj(n, phases, grid);
  REQUIRE(proj.n_phases() == 3);

  for (int p = 0; p < 3; ++p) {
    CMatrix sum = CMatrix::Zero(n + 1, n + 1);
    for (int b = 0; b < grid.bins; ++b) sum += proj.at(p, b);
    CHECK((sum - CMatrix::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() <
          1e-7);
  }

  DensityOp rho = random_density(n, 4);
  RVector pr = proj.probabilities(rho.mat, 1);
  CHECK(pr.minCoeff() >= 0.0);
  CHECK(pr.sum() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("likelihood reconstruction recovers a coherent state") {
  DensityOp truth = pure_density(coherent(0.8, 12));
  std::vector<double> phases;
  for (int k = 0; k < 6; ++k) phases.push_back(k * std::numbers::pi / 6);
  QuadratureRecord rec = sample_homodyne(truth, phases, 3000, 11);

  TomoResult res = mle_reconstruct(rec, 12);
  CHECK(res.iterations > 0);
  CHECK(fidelity_pure(res.state, coherent(0.8, 12)) > 0.98);
  CHECK(res.state.trace_real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("squeezer fit finds the generating parameters") {
  SqueezerModel truth{0.6, 1.1};
  DensityOp rho = gaussian_model_state(truth, 20);
  std::vector<double> phases;
  for (int k = 0; k < 8; ++k) phases.push_back(k * std::numbers::pi / 8);
  QuadratureRecord rec = sample_homodyne(rho, phases, 4000, 5);

  SqueezerFit fit = fit_squeezer(rec);
  CHECK(std::abs(fit.model.s - truth.s) < 0.06);
  CHECK(std::abs(fit.model.h - truth.h) < 0.08);
  // the moment-based start must already be in the neighbourhood
  CHECK(std::abs(fit.initial.s - truth.s) < 0.15);
  CHECK(std::abs(fit.initial.h - truth.h) < 0.15);
}

TEST_CASE("modal purity fit recovers xi with the optics held fixed") {
  SqueezerModel input{0.5, 1.05};
  GateParams p;
  p.transmissivity = 0.9;
  p.modal_purity = 0.5;
  p.cutoff = 20;
  DensityOp after = apply_gate(gaussian_model_state(input, 20), p);

  std::vector<double> phases;
  for (int k = 0; k < 10; ++k) phases.push_back(k * std::numbers::pi / 10);
  QuadratureRecord rec = sample_homodyne(after, phases, 4000, 17);

  double xi = fit_xi(rec, input, p.transmissivity, p.homodyne_efficiency);
  CHECK(std::abs(xi - 0.5) < 0.05);
}

TEST_CASE("histogram comparison separates right from wrong models") {
  DensityOp truth = gaussian_model_state({0.6, 1.1}, 16);
  std::vector<double> phases = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  QuadratureRecord rec = sample_homodyne(truth, phases, 5000, 23);

  ComparisonReport same = compare_histograms(truth, rec);
  CHECK(same.chi2_overall > 0.4);
  CHECK(same.chi2_overall < 1.7);
  REQUIRE(same.per_phase.size() == 6);
  for (const auto& pc : same.per_phase) CHECK(pc.samples == 5000);

  DensityOp wrong = pure_density(fock_state(0, 16));
  ComparisonReport off = compare_histograms(wrong, rec);
  CHECK(off.chi2_overall > 5.0);
}
