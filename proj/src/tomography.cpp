#include "catgate/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace catgate {

namespace {

constexpr double kPhaseTol = 1e-9;
constexpr double kTinyProb = 1e-300;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double uniform53(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// beyond the classical turning point plus margin every psi_n is negligible
double integration_bound(int cutoff) {
  return std::sqrt(2.0 * cutoff + 1.0) + 4.0;
}

// acc += int_lo^hi psi(x) psi(x)^T dx, composite Simpson
void accumulate_simpson(RMatrix& acc, int cutoff, double lo, double hi) {
  if (hi <= lo) return;
  int panels = std::max(8, int(std::ceil((hi - lo) / 0.02)));
  int npts = 2 * panels + 1;
  double h = (hi - lo) / (npts - 1);
  for (int i = 0; i < npts; ++i) {
    double w = (i == 0 || i == npts - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    RVector psi = hermite_psi(cutoff, lo + i * h);
    acc.noalias() += (w * h / 3.0) * psi * psi.transpose();
  }
}

RVector bin_edges(const BinGrid& grid) {
  return linspace(-grid.x_max, grid.x_max, grid.bins + 1);
}

int bin_index(double x, const BinGrid& grid) {
  double w = 2.0 * grid.x_max / grid.bins;
  int b = int(std::floor((x + grid.x_max) / w));
  return std::clamp(b, 0, grid.bins - 1);
}

int phase_index(const std::vector<double>& phases, double phase) {
  auto it = std::lower_bound(phases.begin(), phases.end(), phase - kPhaseTol);
  if (it == phases.end() || std::abs(*it - phase) > kPhaseTol)
    throw std::invalid_argument("phase not in the record's phase list");
  return int(it - phases.begin());
}

struct BinnedCounts {
  std::vector<double> phases;
  std::vector<Eigen::VectorXi> counts;
  long total = 0;
};

BinnedCounts bin_record(const QuadratureRecord& rec, const BinGrid& grid) {
  BinnedCounts bc;
  bc.phases = rec.distinct_phases();
  require(!bc.phases.empty(), "record has no samples");
  bc.counts.assign(bc.phases.size(), Eigen::VectorXi::Zero(grid.bins));
  for (const auto& s : rec.samples) {
    int pi = phase_index(bc.phases, s.phase);
    bc.counts[pi][bin_index(s.value, grid)] += 1;
  }
  bc.total = long(rec.samples.size());
  return bc;
}

double binned_nll(const BinnedCounts& bc,
                  const std::vector<RVector>& probs) {
  double nll = 0.0;
  for (size_t p = 0; p < bc.phases.size(); ++p)
    for (int b = 0; b < bc.counts[p].size(); ++b) {
      int c = bc.counts[p][b];
      if (c > 0) nll -= c * std::log(std::max(probs[p][b], kTinyProb));
    }
  return nll;
}

// 2-parameter Nelder-Mead, returns best vertex
std::pair<Eigen::Vector2d, double> nelder_mead_2d(
    const std::function<double(const Eigen::Vector2d&)>& f,
    Eigen::Vector2d x0, Eigen::Vector2d step, int max_evals) {
  struct Vertex {
    Eigen::Vector2d x;
    double v;
  };
  std::vector<Vertex> s(3);
  int evals = 0;
  auto eval = [&](const Eigen::Vector2d& x) {
    ++evals;
    return f(x);
  };
  s[0] = {x0, eval(x0)};
  s[1] = {x0 + Eigen::Vector2d(step[0], 0.0), 0.0};
  s[2] = {x0 + Eigen::Vector2d(0.0, step[1]), 0.0};
  s[1].v = eval(s[1].x);
  s[2].v = eval(s[2].x);
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.v < b.v; };
  while (evals < max_evals) {
    std::sort(s.begin(), s.end(), by_value);
    if (std::abs(s[2].v - s[0].v) < 1e-10 &&
        (s[2].x - s[0].x).norm() < 1e-8)
      break;
    Eigen::Vector2d centroid = 0.5 * (s[0].x + s[1].x);
    Eigen::Vector2d xr = centroid + (centroid - s[2].x);
    double vr = eval(xr);
    if (vr < s[0].v) {
      Eigen::Vector2d xe = centroid + 2.0 * (centroid - s[2].x);
      double ve = eval(xe);
      if (ve < vr)
        s[2] = {xe, ve};
      else
        s[2] = {xr, vr};
    } else if (vr < s[1].v) {
      s[2] = {xr, vr};
    } else {
      Eigen::Vector2d xc = centroid + 0.5 * (s[2].x - centroid);
      double vc = eval(xc);
      if (vc < s[2].v) {
        s[2] = {xc, vc};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
          s[i].v = eval(s[i].x);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  return {s[0].x, s[0].v};
}

}  // namespace

std::vector<double> QuadratureRecord::distinct_phases() const {
  std::vector<double> ps;
  ps.reserve(samples.size());
  for (const auto& s : samples) ps.push_back(s.phase);
  std::sort(ps.begin(), ps.end());
  std::vector<double> out;
  for (double p : ps)
    if (out.empty() || p - out.back() > kPhaseTol) out.push_back(p);
  return out;
}

RVector hermite_psi(int cutoff, double x) {
  RVector v(cutoff + 1);
  v[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (cutoff >= 1) v[1] = std::numbers::sqrt2 * x * v[0];
  for (int n = 2; n <= cutoff; ++n)
    v[n] = std::sqrt(2.0 / n) * x * v[n - 1] -
           std::sqrt(double(n - 1) / n) * v[n - 2];
  return v;
}

RVector quad_density(const DensityOp& rho, double phase, const RVector& xs) {
  require(rho.modes == 1, "quad_density: single-mode states only");
  int d = rho.dim();
  CVector dphase(d);
  for (int n = 0; n < d; ++n) dphase[n] = std::polar(1.0, -phase * n);
  // <x_phi|rho|x_phi> = psi^T Re(D^dag rho D) psi with D = diag(e^{-i n phi})
  RMatrix core =
      (dphase.conjugate().asDiagonal() * rho.mat * dphase.asDiagonal())
          .real();
  RVector out(xs.size());
  for (int i = 0; i < xs.size(); ++i) {
    RVector psi = hermite_psi(rho.cutoff, xs[i]);
    out[i] = psi.dot(core * psi);
  }
  return out;
}

namespace {

CMatrix quad_op(int cutoff, double phase) {
  CMatrix a = annihilation_op(cutoff);
  return (std::polar(1.0, -phase) * a + std::polar(1.0, phase) * a.adjoint()) /
         std::numbers::sqrt2;
}

}  // namespace

double quad_mean(const DensityOp& rho, double phase) {
  require(rho.modes == 1, "quad_mean: single-mode states only");
  return (rho.mat * quad_op(rho.cutoff, phase)).trace().real();
}

double quad_variance(const DensityOp& rho, double phase) {
  require(rho.modes == 1, "quad_variance: single-mode states only");
  CMatrix x = quad_op(rho.cutoff, phase);
  double m = (rho.mat * x).trace().real();
  return (rho.mat * x * x).trace().real() - m * m;
}

QuadratureRecord sample_homodyne(const DensityOp& rho,
                                 const std::vector<double>& phases, int n,
                                 std::uint64_t seed) {
  require(rho.modes == 1, "sample_homodyne: single-mode states only");
  require(n > 0, "sample_homodyne: n must be positive");
  require(!phases.empty(), "sample_homodyne: empty phase list");

  double xr = std::sqrt(2.0 * rho.cutoff + 1.0) + 3.0;
  const int npts = 6001;
  RVector xs = linspace(-xr, xr, npts);
  double dx = xs[1] - xs[0];

  QuadratureRecord rec;
  rec.seed = seed;
  rec.samples.reserve(phases.size() * size_t(n));
  for (size_t pi = 0; pi < phases.size(); ++pi) {
    RVector pdf = quad_density(rho, phases[pi], xs).cwiseMax(0.0);
    RVector cdf(npts);
    cdf[0] = 0.0;
    for (int i = 1; i < npts; ++i)
      cdf[i] = cdf[i - 1] + 0.5 * (pdf[i - 1] + pdf[i]) * dx;
    double z = cdf[npts - 1];
    if (z <= 0.0) throw ModelError("sample_homodyne: degenerate marginal");
    cdf /= z;

    std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32),
                     std::uint32_t(pi)};
    std::mt19937_64 rng(sq);
    for (int i = 0; i < n; ++i) {
      double u = uniform53(rng);
      // piecewise-linear inverse CDF
      const double* beg = cdf.data();
      const double* it = std::upper_bound(beg, beg + npts, u);
      int j = std::clamp(int(it - beg), 1, npts - 1);
      double seg = cdf[j] - cdf[j - 1];
      double frac = seg > 0.0 ? (u - cdf[j - 1]) / seg : 0.0;
      rec.samples.push_back({phases[pi], xs[j - 1] + frac * dx});
    }
  }
  return rec;
}

std::vector<Histogram> make_histograms(const QuadratureRecord& rec,
                                       const BinGrid& grid) {
  require(grid.bins >= 2 && grid.x_max > 0.0, "make_histograms: bad grid");
  BinnedCounts bc = bin_record(rec, grid);
  std::vector<Histogram> out;
  RVector edges = bin_edges(grid);
  for (size_t p = 0; p < bc.phases.size(); ++p)
    out.push_back({bc.phases[p], edges, bc.counts[p]});
  return out;
}

BinnedProjectors::BinnedProjectors(int cutoff,
                                   const std::vector<double>& phases,
                                   const BinGrid& grid)
    : grid_(grid) {
  require(cutoff >= 1, "projectors: cutoff must be >= 1");
  require(grid.bins >= 2 && grid.x_max > 0.0, "projectors: bad grid");
  require(!phases.empty(), "projectors: empty phase list");
  int d = cutoff + 1;
  RVector edges = bin_edges(grid);
  double xinf = std::max(integration_bound(cutoff), grid.x_max + 1.0);

  std::vector<RMatrix> base(grid.bins, RMatrix::Zero(d, d));
  for (int b = 0; b < grid.bins; ++b) {
    double lo = (b == 0) ? -xinf : edges[b];
    double hi = (b == grid.bins - 1) ? xinf : edges[b + 1];
    accumulate_simpson(base[b], cutoff, lo, hi);
  }

  ops_.resize(phases.size());
  for (size_t p = 0; p < phases.size(); ++p) {
    CVector dphase(d);
    for (int n = 0; n < d; ++n) dphase[n] = std::polar(1.0, -phases[p] * n);
    ops_[p].reserve(grid.bins);
    for (int b = 0; b < grid.bins; ++b)
      ops_[p].push_back(dphase.asDiagonal() * base[b].cast<Complex>() *
                        dphase.conjugate().asDiagonal());
  }
}

RVector BinnedProjectors::probabilities(const CMatrix& rho,
                                        int phase_idx) const {
  const auto& row = ops_[phase_idx];
  RVector p(int(row.size()));
  for (size_t b = 0; b < row.size(); ++b)
    p[int(b)] = rho.cwiseProduct(row[b].transpose()).sum().real();
  return p;
}

TomoResult mle_reconstruct(const QuadratureRecord& rec, int cutoff,
                           const TomoOptions& opts) {
  BinnedCounts bc = bin_record(rec, opts.grid);
  BinnedProjectors proj(cutoff, bc.phases, opts.grid);
  int d = cutoff + 1;
  int np = int(bc.phases.size());
  double ntot = double(bc.total);

  CMatrix rho = CMatrix::Identity(d, d) / double(d);
  auto all_probs = [&](const CMatrix& r) {
    std::vector<RVector> ps(np);
    for (int p = 0; p < np; ++p) ps[p] = proj.probabilities(r, p);
    return ps;
  };
  auto log_like = [&](const std::vector<RVector>& ps) {
    return -binned_nll(bc, ps);
  };

  std::vector<RVector> probs = all_probs(rho);
  double ll = log_like(probs);
  TomoResult res;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    CMatrix r_op = CMatrix::Zero(d, d);
    for (int p = 0; p < np; ++p)
      for (int b = 0; b < opts.grid.bins; ++b) {
        int c = bc.counts[p][b];
        if (c > 0)
          r_op += (c / (ntot * std::max(probs[p][b], kTinyProb))) *
                  proj.at(p, b);
      }

    bool accepted = false;
    for (double eps : {1.0, 0.5, 0.2, 0.05, 0.01}) {
      CMatrix step = eps == 1.0
                         ? r_op
                         : CMatrix((1.0 - eps) * CMatrix::Identity(d, d) +
                                   eps * r_op);
      CMatrix cand = step * rho * step;
      cand = 0.5 * (cand + cand.adjoint().eval());
      cand /= cand.trace().real();
      std::vector<RVector> cand_probs = all_probs(cand);
      double cand_ll = log_like(cand_probs);
      if (cand_ll >= ll - 1e-12) {
        double delta = cand_ll - ll;
        rho = std::move(cand);
        probs = std::move(cand_probs);
        ll = cand_ll;
        accepted = true;
        if (std::abs(delta) <= opts.tol * (1.0 + std::abs(ll)))
          res.converged = true;
        break;
      }
    }
    if (!accepted || res.converged) break;
  }

  res.state = density_from_matrix(rho, cutoff);
  res.log_likelihood = ll;
  res.iterations = iter;
  return res;
}

SqueezerFit fit_squeezer(const QuadratureRecord& rec, const FitOptions& opts) {
  BinnedCounts bc = bin_record(rec, opts.grid);
  require(bc.phases.size() >= 2, "fit_squeezer: need at least two phases");

  // sample variance per phase, then V(phi) = a + b cos(2 phi)
  int np = int(bc.phases.size());
  RVector var(np);
  Eigen::VectorXi nper = Eigen::VectorXi::Zero(np);
  RVector mean = RVector::Zero(np), sq = RVector::Zero(np);
  for (const auto& s : rec.samples) {
    int pi = phase_index(bc.phases, s.phase);
    mean[pi] += s.value;
    sq[pi] += s.value * s.value;
    nper[pi] += 1;
  }
  for (int p = 0; p < np; ++p) {
    require(nper[p] >= 2, "fit_squeezer: too few samples at a phase");
    double m = mean[p] / nper[p];
    var[p] = sq[p] / nper[p] - m * m;
  }
  double s11 = np, s1c = 0, scc = 0, sv = 0, svc = 0;
  for (int p = 0; p < np; ++p) {
    double c = std::cos(2.0 * bc.phases[p]);
    s1c += c;
    scc += c * c;
    sv += var[p];
    svc += var[p] * c;
  }
  double det = s11 * scc - s1c * s1c;
  double a, b;
  if (std::abs(det) > 1e-9) {
    a = (sv * scc - svc * s1c) / det;
    b = (s11 * svc - s1c * sv) / det;
  } else {
    a = sv / np;
    b = 0.0;
  }
  double vx = std::max(a + b, 0.005), vp = std::max(a - b, 0.005);
  double A = 2.0 * vx + 1.0, B = 2.0 * vp + 1.0;
  SqueezerModel init;
  init.s = std::clamp(A / B, 0.02, 1.0);
  init.h = std::clamp(A * B / (A + B), 1.0, 50.0);

  BinnedProjectors proj(opts.cutoff, bc.phases, opts.grid);
  auto objective = [&](const Eigen::Vector2d& x) {
    double s = x[0], h = x[1];
    double penalty = 0.0;
    if (s < 0.02) penalty += 1e6 * (0.02 - s) * (0.02 - s);
    if (s > 1.0) penalty += 1e6 * (s - 1.0) * (s - 1.0);
    if (h < 1.0) penalty += 1e6 * (1.0 - h) * (1.0 - h);
    if (h > 50.0) penalty += 1e6 * (h - 50.0) * (h - 50.0);
    SqueezerModel m{std::clamp(s, 0.02, 1.0), std::clamp(h, 1.0, 50.0)};
    DensityOp rho;
    try {
      rho = gaussian_model_state(m, opts.cutoff);
    } catch (const ModelError&) {
      return 1e12 + penalty;
    }
    std::vector<RVector> ps(np);
    for (int p = 0; p < np; ++p) ps[p] = proj.probabilities(rho.mat, p);
    return binned_nll(bc, ps) + penalty * bc.total;
  };

  auto [best, val] = nelder_mead_2d(
      objective, Eigen::Vector2d(init.s, init.h),
      Eigen::Vector2d(std::max(0.05 * init.s, 0.01), 0.05), opts.max_evals);

  SqueezerFit fit;
  fit.model.s = std::clamp(best[0], 0.02, 1.0);
  fit.model.h = std::clamp(best[1], 1.0, 50.0);
  fit.nll = val;
  fit.initial = init;
  return fit;
}

double fit_xi(const QuadratureRecord& rec, const SqueezerModel& input,
              double transmissivity, double eta, const FitOptions& opts) {
  require(transmissivity > 0.0 && transmissivity < 1.0,
          "fit_xi: transmissivity must be in (0, 1)");
  require(eta > 0.0 && eta <= 1.0, "fit_xi: eta must be in (0, 1]");
  BinnedCounts bc = bin_record(rec, opts.grid);
  BinnedProjectors proj(opts.cutoff, bc.phases, opts.grid);

  DensityOp rho0 = gaussian_model_state(input, opts.cutoff);
  DensityOp in = eta < 1.0 ? loss_channel(rho0, eta) : rho0;
  DensityOp good = subtract_good(in, transmissivity).state;
  DensityOp bad = loss_channel(in, transmissivity);

  int np = int(bc.phases.size());
  std::vector<RVector> pg(np), pb(np);
  for (int p = 0; p < np; ++p) {
    pg[p] = proj.probabilities(good.mat, p);
    pb[p] = proj.probabilities(bad.mat, p);
  }
  auto nll = [&](double xi) {
    double v = 0.0;
    for (int p = 0; p < np; ++p)
      for (int b = 0; b < opts.grid.bins; ++b) {
        int c = bc.counts[p][b];
        if (c > 0)
          v -= c * std::log(std::max(
                   xi * pg[p][b] + (1.0 - xi) * pb[p][b], kTinyProb));
      }
    return v;
  };

  // golden-section on [0, 1]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = nll(x1), f2 = nll(x2);
  while (hi - lo > 1e-5) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = nll(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = nll(x2);
    }
  }
  return 0.5 * (lo + hi);
}

ComparisonReport compare_histograms(const DensityOp& predicted,
                                    const QuadratureRecord& rec,
                                    const BinGrid& grid) {
  require(predicted.modes == 1, "compare_histograms: single-mode states only");
  BinnedCounts bc = bin_record(rec, grid);
  BinnedProjectors proj(predicted.cutoff, bc.phases, grid);

  ComparisonReport rep;
  double chi2_sum = 0.0;
  long dof_sum = 0;
  for (size_t p = 0; p < bc.phases.size(); ++p) {
    RVector prob = proj.probabilities(predicted.mat, int(p));
    long nphi = bc.counts[p].sum();
    double chi2 = 0.0;
    int used = 0;
    for (int b = 0; b < grid.bins; ++b) {
      double e = nphi * prob[b];
      if (e >= 5.0) {
        double diff = bc.counts[p][b] - e;
        chi2 += diff * diff / e;
        ++used;
      }
    }
    PhaseComparison pc;
    pc.phase = bc.phases[p];
    pc.bins_used = used;
    pc.samples = nphi;
    pc.chi2_reduced = used > 1 ? chi2 / (used - 1) : 0.0;
    rep.per_phase.push_back(pc);
    if (used > 1) {
      chi2_sum += chi2;
      dof_sum += used - 1;
    }
  }
  rep.chi2_overall = dof_sum > 0 ? chi2_sum / double(dof_sum) : 0.0;
  return rep;
}

}  // namespace catgate
