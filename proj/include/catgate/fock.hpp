#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Truncated Fock-space linear algebra for one and two bosonic modes.
//
// Conventions, fixed across the whole library:
//   x = (a + a^dag)/sqrt(2),  p = (a - a^dag)/(i sqrt(2)),  [x,p] = i
//   vacuum quadrature variance 1/2
//   Wigner normalization: integral W dx dp = 1, W_vac(0,0) = 1/pi
//
// A cutoff N means photon numbers 0..N are kept (N+1 amplitudes per mode).

namespace catgate {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Thrown when a numerical invariant fails: non-physical density matrix,
/// annihilated state, truncation too tight for the requested amplitude.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { A, B };

/// Pure state over one or two modes. For two modes the amplitude of
/// |n_A, n_B> sits at index n_A*(N+1) + n_B (mode A is the outer index).
struct Ket {
  int cutoff = 0;
  int modes = 1;
  CVector amps;

  int dim() const { return static_cast<int>(amps.size()); }
  double norm() const { return amps.norm(); }
  bool is_normalized(double tol = 1e-12) const;
  Ket normalized() const;
  /// Probability weight in the top two photon-number levels; a proxy for
  /// truncation error of whatever produced this ket.
  double tail_weight() const;
};

Ket make_ket(int cutoff, int modes = 1);
Ket fock_state(int n, int cutoff);

/// Trace-one Hermitian PSD operator. Same index layout as Ket.
struct DensityOp {
  int cutoff = 0;
  int modes = 1;
  CMatrix mat;

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace_real() const { return mat.trace().real(); }
  double purity() const;
  double mean_photons() const;
  double tail_weight() const;
};

/// Validates hermiticity (elementwise 1e-12) and unit trace (1e-10), then
/// hermitizes exactly and clips eigenvalues in [-1e-9, 0) to zero.
/// Throws ModelError on anything worse.
DensityOp density_from_matrix(const CMatrix& m, int cutoff, int modes = 1);
DensityOp pure_density(const Ket& psi);

CMatrix annihilation_op(int cutoff);
CMatrix creation_op(int cutoff);
CMatrix number_op(int cutoff);

Complex overlap(const Ket& a, const Ket& b);
Ket tensor(const Ket& a, const Ket& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);
DensityOp partial_trace(const DensityOp& rho, Mode traced_out);

/// <psi| rho |psi>, clamped to [0,1]. Both inputs must be normalized.
double fidelity_pure(const DensityOp& rho, const Ket& psi);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of two mixed
/// states; agrees with fidelity_pure when either state is pure.
double fidelity(const DensityOp& rho, const DensityOp& sigma);

/// Apply a single-mode operator to one arm of a two-mode ket.
Ket apply_on_arm(const CMatrix& op, const Ket& psi, Mode arm);
/// Exchange the two modes.
Ket mode_swap(const Ket& psi);
DensityOp mode_swap(const DensityOp& rho);

/// exp(G) by scaling-and-squaring with a Taylor kernel. Exact zero blocks of
/// parity-structured generators stay exactly zero, which matrix functions
/// based on eigendecomposition do not guarantee.
CMatrix expm(const CMatrix& g);

RVector linspace(double lo, double hi, int n);

struct WignerGrid {
  RVector xs;
  RVector ps;
  RMatrix values;  // values(i, j) = W(xs[i], ps[j])

  double integral() const;
};

/// Wigner function of a single-mode state, evaluated over a cartesian grid
/// by the Laguerre-recurrence scheme (one pass over the density matrix).
WignerGrid wigner(const DensityOp& rho, const RVector& xs, const RVector& ps);
double wigner_at(const DensityOp& rho, double x, double p);

}  // namespace catgate
