#pragma once

#include "catgate/fock.hpp"

namespace catgate {

/// Point on the logical Bloch sphere of the coherent-state qubit:
/// |psi> ~ cos(theta/2)|alpha> + e^{i phi} sin(theta/2)|-alpha>.
struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// Coherent-state qubit with real amplitude alpha > 0.
struct CatQubitSpec {
  double alpha = 0.92;
  int cutoff = 20;

  /// Normalization constants of the even/odd cats,
  /// N_pm = [2(1 pm e^{-2 alpha^2})]^{-1/2}.
  double norm_plus() const;
  double norm_minus() const;
  void validate() const;
};

/// Phenomenological source model: squeezed vacuum whose antisqueezed
/// quadrature carries excess (parasitic) noise.
///   Var(x) = (h s + h - 1)/2,  Var(p) = (h/s + h - 1)/2
/// s in (0,1] is the squeezing factor, h >= 1 the parasite gain;
/// s = h = 1 is the vacuum.
struct SqueezerModel {
  double s = 1.0;
  double h = 1.0;

  double var_x() const { return 0.5 * (h * s + h - 1.0); }
  double var_p() const { return 0.5 * (h / s + h - 1.0); }
  void validate() const;
};

Ket coherent(double alpha, int cutoff);
Ket cat_even(double alpha, int cutoff);
Ket cat_odd(double alpha, int cutoff);

/// cos(theta/2)|alpha> + e^{i phi} sin(theta/2)|-alpha>, normalized.
/// The poles map exactly onto |alpha> (theta=0) and |-alpha> (theta=pi).
Ket cat_state(const CatQubitSpec& spec, const BlochPoint& pt);

/// Squeeze operator exp[(r/2)(a^2 - a^dag^2)]; r > 0 squeezes x.
CMatrix squeeze_op(double r, int cutoff);
Ket squeezed_vacuum(double s, int cutoff);
DensityOp thermal_state(double nbar, int cutoff);

/// Gaussian state with Var(x) = var_x(m), Var(p) = var_p(m), zero mean:
/// a squeezed thermal state. Throws ModelError if the model violates the
/// uncertainty bound or the cutoff truncates it too hard.
DensityOp gaussian_model_state(const SqueezerModel& m, int cutoff);

enum class BellKind { PhiPlus, PsiPlus };

/// Two-mode cat Bell states built from the even/odd basis:
/// PhiPlus ~ |+>|+> + |->|->,  PsiPlus ~ |+>|-> + |->|+>.
Ket bell_cat(const CatQubitSpec& spec, BellKind kind);
/// mu |mu,mu> + e^{i phase} |nu,nu> with {mu,nu} = {+,-} (mu_is_plus picks
/// which basis state comes first), normalized.
Ket bell_cat_general(const CatQubitSpec& spec, bool mu_is_plus, double phase);

/// Normalized (I (x) a)|psi> for a two-mode input; the ideal target of a
/// photon subtraction on arm B. Throws ModelError when the input is
/// annihilated.
Ket subtracted_target(const Ket& psi, Mode arm = Mode::B);

}  // namespace catgate
