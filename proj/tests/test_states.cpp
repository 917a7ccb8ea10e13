#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catgate/states.hpp"
#include "catgate/tomography.hpp"

#include <cmath>

using namespace catgate;

TEST_CASE("coherent state amplitudes and moments") {
  int n = 25;
  double alpha = 1.2;
  Ket c = coherent(alpha, n);
  CHECK(c.is_normalized());
  CHECK(c.amps[0].real() == doctest::Approx(std::exp(-0.5 * alpha * alpha))
                                .epsilon(1e-10));
  CHECK(pure_density(c).mean_photons() ==
        doctest::Approx(alpha * alpha).epsilon(1e-9));

  // eigenstate of the annihilation operator away from the truncation edge
  CVector lowered = annihilation_op(n) * c.amps;
  for (int k = 0; k <= n - 4; ++k)
    CHECK(std::abs(lowered[k] - alpha * c.amps[k]) < 1e-10);
}

TEST_CASE("opposite-amplitude coherent states overlap exponentially") {
  double alpha = 1.5;
  Complex ov = overlap(coherent(alpha, 30), coherent(-alpha, 30));
  CHECK(std::abs(ov.imag()) < 1e-15);
  CHECK(ov.real() ==
        doctest::Approx(std::exp(-2.0 * alpha * alpha)).epsilon(1e-10));
}

TEST_CASE("even and odd cats live in disjoint parity sectors") {
  double alpha = 0.92;
  Ket even = cat_even(alpha, 20), odd = cat_odd(alpha, 20);
  for (int k = 0; k <= 20; ++k) {
    if (k % 2 == 1) CHECK(even.amps[k] == Complex(0.0, 0.0));
    if (k % 2 == 0) CHECK(odd.amps[k] == Complex(0.0, 0.0));
  }
  CHECK(overlap(even, odd) == Complex(0.0, 0.0));

  // <cat_+|alpha> = N_+ (1 + e^{-2 alpha^2}) = sqrt((1 + e^{-2 alpha^2})/2)
  double expect = std::sqrt(0.5 * (1.0 + std::exp(-2.0 * alpha * alpha)));
  CHECK(overlap(even, coherent(alpha, 20)).real() ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("bloch parametrization hits the poles exactly") {
  CatQubitSpec spec;  // alpha = 0.92, cutoff = 20
  Ket north = cat_state(spec, {0.0, 0.3});
  Ket south = cat_state(spec, {std::numbers::pi, 1.1});
  CHECK((north.amps - coherent(spec.alpha, spec.cutoff).amps).norm() < 1e-14);
  CHECK(std::norm(overlap(south, coherent(-spec.alpha, spec.cutoff))) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("annihilation reflects the bloch latitude") {
  // a|psi_{theta,phi}> is proportional to |psi_{-theta,phi}>; this is the
  // identity that makes the subtraction gate act as a phase gate.
  CatQubitSpec spec{1.1, 24};
  for (double theta : {0.4, 1.0, 2.2}) {
    for (double phi : {0.0, 0.9, 4.0}) {
      Ket in = cat_state(spec, {theta, phi});
      Ket out = make_ket(spec.cutoff);
      out.amps = annihilation_op(spec.cutoff) * in.amps;
      out = out.normalized();
      Ket target = cat_state(spec, {-theta, phi});
      CHECK(std::norm(overlap(out, target)) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("squeezed vacuum matches the closed-form amplitudes") {
  // s = 1/2 means tanh r = 1/3, cosh r = 3/(2 sqrt 2)
  int n = 24;
  double s = 0.5;
  double r = -0.5 * std::log(s);
  Ket sq = squeezed_vacuum(s, n);
  double tanh_r = std::tanh(r), cosh_r = std::cosh(r);
  CHECK(tanh_r == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  double fact_ratio = 1.0;  // sqrt((2k)!) / (2^k k!)
  double sign = 1.0;
  for (int k = 0; 2 * k <= n; ++k) {
    if (k > 0) {
      fact_ratio *= std::sqrt(double(2 * k) * double(2 * k - 1)) / (2.0 * k);
      sign = -sign;
    }
    double expect =
        sign * std::pow(tanh_r, k) * fact_ratio / std::sqrt(cosh_r);
    // 1e-11 absorbs the final renormalization (tail deficit ~6e-12)
    CHECK(std::abs(sq.amps[2 * k].real() - expect) < 1e-11);
    CHECK(sq.amps[2 * k].imag() == 0.0);
    if (2 * k + 1 <= n) CHECK(sq.amps[2 * k + 1] == Complex(0.0, 0.0));
  }

  CHECK(quad_variance(pure_density(sq), 0.0) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(quad_variance(pure_density(sq), std::numbers::pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("thermal state occupations") {
  DensityOp th = thermal_state(1.0, 20);
  CHECK(th.mat(0, 0).real() == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(th.purity() == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
  CHECK(th.mean_photons() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(th.mat.cwiseAbs().maxCoeff() ==
        doctest::Approx(0.5).epsilon(1e-5));  // diagonal state
}

TEST_CASE("gaussian source model reproduces its advertised moments") {
  SqueezerModel m{0.5, 1.05};
  DensityOp rho = gaussian_model_state(m, 20);
  // the advertised moments hold up to the Fock-tail truncation (~5e-9 here)
  CHECK(quad_variance(rho, 0.0) == doctest::Approx(0.2875).epsilon(1e-7));
  CHECK(quad_variance(rho, std::numbers::pi / 2) ==
        doctest::Approx(1.075).epsilon(1e-7));
  CHECK(quad_mean(rho, 0.7) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rho.mean_photons() == doctest::Approx(0.18125).epsilon(1e-8));
  double expect_purity = 1.0 / (2.0 * std::sqrt(m.var_x() * m.var_p()));
  CHECK(rho.purity() == doctest::Approx(expect_purity).epsilon(1e-7));

  // h = 1 collapses to the pure squeezed vacuum
  DensityOp pure_model = gaussian_model_state({0.5, 1.0}, 20);
  CHECK(fidelity_pure(pure_model, squeezed_vacuum(0.5, 20)) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("model validation rejects unphysical parameters") {
  CHECK_THROWS_AS(gaussian_model_state({0.0, 1.0}, 20), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_model_state({1.2, 1.0}, 20), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_model_state({0.5, 0.9}, 20), std::invalid_argument);
  // representable in principle but far beyond this cutoff
  CHECK_THROWS_AS(gaussian_model_state({0.02, 50.0}, 5), ModelError);
  CHECK_THROWS_AS(coherent(3.0, 8), ModelError);
  CHECK_THROWS_AS((CatQubitSpec{-1.0, 20}.validate()), std::invalid_argument);
}

TEST_CASE("bell cats are orthonormal and trace to balanced mixtures") {
  CatQubitSpec spec;
  Ket phi_plus = bell_cat(spec, BellKind::PhiPlus);
  Ket psi_plus = bell_cat(spec, BellKind::PsiPlus);
  CHECK(phi_plus.is_normalized());
  CHECK(psi_plus.is_normalized());
  CHECK(std::abs(overlap(phi_plus, psi_plus)) < 1e-15);

  Ket even = cat_even(spec.alpha, spec.cutoff);
  Ket odd = cat_odd(spec.alpha, spec.cutoff);
  CMatrix expect = 0.5 * (even.amps * even.amps.adjoint() +
                          odd.amps * odd.amps.adjoint());
  DensityOp red = partial_trace(pure_density(phi_plus), Mode::B);
  CHECK((red.mat - expect).cwiseAbs().maxCoeff() < 1e-12);

  // general form reduces to the named states
  Ket again = bell_cat_general(spec, true, 0.0);
  CHECK(std::norm(overlap(again, phi_plus)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("subtraction target of the even bell state") {
  // (I (x) a)|Phi+> renormalizes to sqrt(c)|+,-> + sqrt(1/c)|-,+> with
  // c = N_+^2 / N_-^2, up to overall normalization.
  CatQubitSpec spec;
  Ket omega = subtracted_target(bell_cat(spec, BellKind::PhiPlus));
  CHECK(omega.is_normalized());

  double np = spec.norm_plus(), nm = spec.norm_minus();
  double wp = np / nm, wm = nm / np;
  double norm = std::sqrt(wp * wp + wm * wm);
  Ket even = cat_even(spec.alpha, spec.cutoff);
  Ket odd = cat_odd(spec.alpha, spec.cutoff);
  Ket expect = make_ket(spec.cutoff, 2);
  expect.amps = (wp / norm) * tensor(even, odd).amps +
                (wm / norm) * tensor(odd, even).amps;
  CHECK(std::norm(overlap(omega, expect)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      subtracted_target(tensor(fock_state(0, 10), fock_state(0, 10))),
      ModelError);
}
