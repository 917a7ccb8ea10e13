#include "catgate/fock.hpp"

#include <cmath>
#include <numbers>

namespace catgate {

namespace {

using RowMajorC =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-9;

int dim_for(int cutoff, int modes) {
  int d = cutoff + 1;
  return modes == 2 ? d * d : d;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

bool Ket::is_normalized(double tol) const {
  return std::abs(amps.squaredNorm() - 1.0) <= tol;
}

Ket Ket::normalized() const {
  double n = amps.norm();
  if (n <= 0.0) throw ModelError("cannot normalize a zero ket");
  Ket out = *this;
  out.amps /= n;
  return out;
}

double Ket::tail_weight() const {
  int d = cutoff + 1;
  double w = 0.0;
  if (modes == 1) {
    for (int n = std::max(0, d - 2); n < d; ++n) w += std::norm(amps[n]);
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (a >= d - 2 || b >= d - 2) w += std::norm(amps[a * d + b]);
  }
  return w;
}

Ket make_ket(int cutoff, int modes) {
  require(cutoff >= 1, "cutoff must be >= 1");
  require(modes == 1 || modes == 2, "modes must be 1 or 2");
  Ket k;
  k.cutoff = cutoff;
  k.modes = modes;
  k.amps = CVector::Zero(dim_for(cutoff, modes));
  return k;
}

Ket fock_state(int n, int cutoff) {
  require(n >= 0 && n <= cutoff, "fock index out of range");
  Ket k = make_ket(cutoff);
  k.amps[n] = 1.0;
  return k;
}

double DensityOp::purity() const { return mat.squaredNorm(); }

double DensityOp::mean_photons() const {
  int d = cutoff + 1;
  double s = 0.0;
  if (modes == 1) {
    for (int n = 0; n < d; ++n) s += n * mat(n, n).real();
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) s += (a + b) * mat(a * d + b, a * d + b).real();
  }
  return s;
}

double DensityOp::tail_weight() const {
  int d = cutoff + 1;
  double w = 0.0;
  if (modes == 1) {
    for (int n = std::max(0, d - 2); n < d; ++n) w += mat(n, n).real();
  } else {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (a >= d - 2 || b >= d - 2) w += mat(a * d + b, a * d + b).real();
  }
  return w;
}

DensityOp density_from_matrix(const CMatrix& m, int cutoff, int modes) {
  require(m.rows() == m.cols(), "density matrix must be square");
  require(modes == 1 || modes == 2, "modes must be 1 or 2");
  require(m.rows() == dim_for(cutoff, modes), "dimension does not match cutoff");

  double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermTol)
    throw ModelError("density matrix not hermitian (deviation " +
                     std::to_string(herm_dev) + ")");
  CMatrix h = 0.5 * (m + m.adjoint());

  double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ModelError("density matrix trace " + std::to_string(tr) +
                     " is not 1");

  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -kPsdTol)
    throw ModelError("density matrix has eigenvalue " +
                     std::to_string(min_eig));
  if (min_eig < 0.0) {
    RVector vals = es.eigenvalues().cwiseMax(0.0);
    h = es.eigenvectors() * vals.asDiagonal() *
        es.eigenvectors().adjoint();
    h /= h.trace().real();
  }

  DensityOp rho;
  rho.cutoff = cutoff;
  rho.modes = modes;
  rho.mat = std::move(h);
  return rho;
}

DensityOp pure_density(const Ket& psi) {
  Ket n = psi.normalized();
  DensityOp rho;
  rho.cutoff = psi.cutoff;
  rho.modes = psi.modes;
  rho.mat = n.amps * n.amps.adjoint();
  return rho;
}

CMatrix annihilation_op(int cutoff) {
  int d = cutoff + 1;
  CMatrix a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

CMatrix creation_op(int cutoff) {
  return annihilation_op(cutoff).adjoint();
}

CMatrix number_op(int cutoff) {
  int d = cutoff + 1;
  CMatrix n = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = double(k);
  return n;
}

Complex overlap(const Ket& a, const Ket& b) {
  require(a.dim() == b.dim() && a.modes == b.modes, "overlap: shape mismatch");
  require(a.is_normalized(1e-10) && b.is_normalized(1e-10),
          "overlap: inputs must be normalized");
  return a.amps.dot(b.amps);  // Eigen dot conjugates the left argument
}

Ket tensor(const Ket& a, const Ket& b) {
  require(a.cutoff == b.cutoff, "tensor: cutoff mismatch");
  require(a.modes == 1 && b.modes == 1, "tensor: inputs must be single-mode");
  int d = a.cutoff + 1;
  Ket out = make_ket(a.cutoff, 2);
  for (int i = 0; i < d; ++i)
    out.amps.segment(i * d, d) = a.amps[i] * b.amps;
  return out;
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
  require(a.cutoff == b.cutoff, "tensor: cutoff mismatch");
  require(a.modes == 1 && b.modes == 1, "tensor: inputs must be single-mode");
  int d = a.cutoff + 1;
  CMatrix out(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.block(i * d, j * d, d, d) = a.mat(i, j) * b.mat;
  DensityOp rho;
  rho.cutoff = a.cutoff;
  rho.modes = 2;
  rho.mat = std::move(out);
  return rho;
}

DensityOp partial_trace(const DensityOp& rho, Mode traced_out) {
  require(rho.modes == 2, "partial_trace: input must be two-mode");
  int d = rho.cutoff + 1;
  CMatrix out = CMatrix::Zero(d, d);
  if (traced_out == Mode::B) {
    for (int a = 0; a < d; ++a)
      for (int ap = 0; ap < d; ++ap)
        for (int b = 0; b < d; ++b) out(a, ap) += rho.mat(a * d + b, ap * d + b);
  } else {
    for (int b = 0; b < d; ++b)
      for (int bp = 0; bp < d; ++bp)
        for (int a = 0; a < d; ++a) out(b, bp) += rho.mat(a * d + b, a * d + bp);
  }
  DensityOp red;
  red.cutoff = rho.cutoff;
  red.modes = 1;
  red.mat = std::move(out);
  return red;
}

double fidelity_pure(const DensityOp& rho, const Ket& psi) {
  require(rho.dim() == psi.dim() && rho.modes == psi.modes,
          "fidelity: shape mismatch");
  require(psi.is_normalized(1e-10), "fidelity: ket must be normalized");
  if (std::abs(rho.trace_real() - 1.0) > kTraceTol)
    throw std::invalid_argument("fidelity: density matrix trace is not 1");
  double f = (psi.amps.adjoint() * rho.mat * psi.amps)(0).real();
  if (f < -1e-9 || f > 1.0 + 1e-9)
    throw ModelError("fidelity " + std::to_string(f) + " outside [0,1]");
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityOp& rho, const DensityOp& sigma) {
  require(rho.dim() == sigma.dim() && rho.modes == sigma.modes,
          "fidelity: shape mismatch");
  if (std::abs(rho.trace_real() - 1.0) > kTraceTol ||
      std::abs(sigma.trace_real() - 1.0) > kTraceTol)
    throw std::invalid_argument("fidelity: density matrix trace is not 1");
  // Eigenvalues within solver noise of zero must not reach sqrt: each one
  // would contribute ~sqrt(eps) to the trace. The relative floor removes
  // them; anything genuinely below it carries negligible fidelity mass.
  auto floored_sqrt = [](const RVector& vals) {
    double floor = 1e-13 * std::max(vals.maxCoeff(), 0.0);
    return RVector(vals.unaryExpr(
        [floor](double v) { return v > floor ? std::sqrt(v) : 0.0; }));
  };
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat);
  RVector sqrt_vals = floored_sqrt(es.eigenvalues());
  CMatrix root = es.eigenvectors() * sqrt_vals.asDiagonal() *
                 es.eigenvectors().adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> inner(root * sigma.mat * root);
  double tr = floored_sqrt(inner.eigenvalues()).sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

Ket apply_on_arm(const CMatrix& op, const Ket& psi, Mode arm) {
  require(psi.modes == 2, "apply_on_arm: input must be two-mode");
  int d = psi.cutoff + 1;
  require(op.rows() == d && op.cols() == d, "apply_on_arm: operator shape");
  Eigen::Map<const RowMajorC> m(psi.amps.data(), d, d);
  Ket out = make_ket(psi.cutoff, 2);
  Eigen::Map<RowMajorC> o(out.amps.data(), d, d);
  if (arm == Mode::A)
    o = op * m;
  else
    o = m * op.transpose();
  return out;
}

Ket mode_swap(const Ket& psi) {
  require(psi.modes == 2, "mode_swap: input must be two-mode");
  int d = psi.cutoff + 1;
  Ket out = make_ket(psi.cutoff, 2);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out.amps[b * d + a] = psi.amps[a * d + b];
  return out;
}

DensityOp mode_swap(const DensityOp& rho) {
  require(rho.modes == 2, "mode_swap: input must be two-mode");
  int d = rho.cutoff + 1;
  DensityOp out;
  out.cutoff = rho.cutoff;
  out.modes = 2;
  out.mat = CMatrix(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int ap = 0; ap < d; ++ap)
        for (int bp = 0; bp < d; ++bp)
          out.mat(b * d + a, bp * d + ap) = rho.mat(a * d + b, ap * d + bp);
  return out;
}

CMatrix expm(const CMatrix& g) {
  require(g.rows() == g.cols(), "expm: matrix must be square");
  const int d = static_cast<int>(g.rows());
  double nrm = g.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (nrm > 0.5) {
    nrm *= 0.5;
    ++squarings;
  }
  CMatrix a = g / std::pow(2.0, squarings);
  CMatrix term = CMatrix::Identity(d, d);
  CMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (term * a) / double(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

RVector linspace(double lo, double hi, int n) {
  require(n >= 1, "linspace: n must be >= 1");
  if (n == 1) {
    RVector v(1);
    v[0] = lo;
    return v;
  }
  return RVector::LinSpaced(n, lo, hi);
}

double WignerGrid::integral() const {
  // trapezoid weights in both directions
  auto weights = [](const RVector& v) {
    int n = static_cast<int>(v.size());
    RVector w = RVector::Zero(n);
    for (int i = 0; i + 1 < n; ++i) {
      double h = v[i + 1] - v[i];
      w[i] += 0.5 * h;
      w[i + 1] += 0.5 * h;
    }
    return w;
  };
  RVector wx = weights(xs), wp = weights(ps);
  return wx.transpose() * values * wp;
}

WignerGrid wigner(const DensityOp& rho, const RVector& xs, const RVector& ps) {
  require(rho.modes == 1, "wigner: single-mode states only");
  const int d = rho.dim();
  const int nx = static_cast<int>(xs.size());
  const int np = static_cast<int>(ps.size());
  using CArr = Eigen::ArrayXXcd;
  using RArr = Eigen::ArrayXXd;

  CArr a2(nx, np);  // 2A = sqrt(2) (x + i p)
  RArr u(nx, np);   // x^2 + p^2
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < np; ++j) {
      a2(i, j) = std::numbers::sqrt2 * Complex(xs[i], ps[j]);
      u(i, j) = xs[i] * xs[i] + ps[j] * ps[j];
    }

  // Laguerre-style recurrence over |m><n|; wl[n] holds the current row.
  std::vector<CArr> wl(d);
  wl[0] = ((-u).exp() / std::numbers::pi).cast<Complex>();
  RArr w = rho.mat(0, 0).real() * wl[0].real();
  for (int n = 1; n < d; ++n) {
    wl[n] = wl[n - 1] * a2 / std::sqrt(double(n));
    w += 2.0 * (rho.mat(0, n) * wl[n]).real();
  }
  for (int m = 1; m < d; ++m) {
    CArr prev = wl[m];
    wl[m] = (prev * a2.conjugate() - std::sqrt(double(m)) * wl[m - 1]) /
            std::sqrt(double(m));
    w += (rho.mat(m, m) * wl[m]).real();
    for (int n = m + 1; n < d; ++n) {
      CArr next = (wl[n - 1] * a2 - std::sqrt(double(m)) * prev) /
                  std::sqrt(double(n));
      prev = wl[n];
      wl[n] = next;
      w += 2.0 * (rho.mat(m, n) * wl[n]).real();
    }
  }

  WignerGrid grid;
  grid.xs = xs;
  grid.ps = ps;
  grid.values = w.matrix();
  return grid;
}

double wigner_at(const DensityOp& rho, double x, double p) {
  RVector xs(1), ps(1);
  xs[0] = x;
  ps[0] = p;
  return wigner(rho, xs, ps).values(0, 0);
}

}  // namespace catgate
