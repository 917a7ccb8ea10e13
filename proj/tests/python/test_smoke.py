"""End-to-end smoke checks of the python bindings."""

import math

import numpy as np
import pytest

import catgate as cg


def test_coherent_amplitudes_match_closed_form():
    alpha = 0.92
    ket = cg.coherent(alpha, 18)
    amps = np.asarray(ket.amps)
    assert amps.dtype == np.complex128
    n = np.arange(8)
    want = np.exp(-alpha**2 / 2) * alpha**n / np.sqrt(
        [math.factorial(k) for k in n]
    )
    assert np.allclose(amps[:8], want, atol=1e-12)


def test_cat_parity_and_wigner_sign():
    even = cg.cat_even(0.92, 20)
    odd = cg.cat_odd(0.92, 20)
    assert abs(cg.overlap(even, odd)) == 0.0
    assert cg.wigner_at(cg.pure_density(odd), 0.0, 0.0) == pytest.approx(
        -1.0 / math.pi, abs=1e-12
    )


def test_gate_mixes_click_and_miss_branches():
    rho = cg.pure_density(cg.cat_even(0.92, 20))
    params = cg.GateParams(transmissivity=0.9, modal_purity=0.83, cutoff=20)
    out = cg.apply_gate(rho, params)
    good = cg.subtract_good(rho, 0.9).state
    bad = cg.subtract_bad(rho, 0.9).state
    mix = 0.83 * np.asarray(good.mat) + 0.17 * np.asarray(bad.mat)
    assert np.max(np.abs(np.asarray(out.mat) - mix)) < 1e-12


def test_bloch_fidelity_reference_point():
    spec = cg.CatQubitSpec(alpha=0.92, cutoff=20)
    params = cg.GateParams()
    pt = cg.BlochPoint(math.pi / 2, 0.0)
    assert cg.bloch_fidelity(spec, params, pt) == pytest.approx(
        0.7414661249, abs=1e-8
    )


def test_entangled_probe_fidelity_reference_point():
    spec = cg.CatQubitSpec(alpha=0.92, cutoff=14)
    res = cg.entangled_fidelity(spec, cg.GateParams())
    assert res.fidelity == pytest.approx(0.782432273711, abs=1e-8)
    assert res.good > res.fidelity > res.bad


def test_adequacy_reference_point():
    assert cg.cat_adequacy_at(0.92) == pytest.approx(0.9672514561, abs=1e-8)


def test_sample_and_reconstruct_round_trip():
    rho = cg.pure_density(cg.coherent(0.7, 8))
    phases = [k * math.pi / 4 for k in range(4)]
    rec = cg.sample_homodyne(rho, phases, 800, 11)
    assert len(rec.samples) == 3200
    res = cg.mle_reconstruct(rec, 8)
    assert cg.fidelity(res.state, rho) > 0.95


def test_model_error_crosses_the_boundary():
    vac = cg.pure_density(cg.fock_state(0, 10))
    params = cg.GateParams(modal_purity=1.0, cutoff=10)
    with pytest.raises(cg.ModelError):
        cg.apply_gate(vac, params)


def test_presets_enumerate():
    names = cg.preset_names()
    assert len(names) == 4
    p = cg.preset_by_name(names[0])
    assert p.qubit.alpha > 0 and 0 < p.gate.transmissivity <= 1
