import json
import math

import numpy as np
import pytest

import eqsim


def test_embedding_round_trip():
    rng = np.random.default_rng(7)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi = v / np.linalg.norm(v)
    big = eqsim.embed(psi)
    assert big.shape == (8,)
    assert np.max(np.abs(big.imag)) == 0.0
    assert np.allclose(eqsim.decode(big), psi, atol=1e-12)
    assert np.allclose(eqsim.conjugate_via_gate(big), psi.conj(), atol=1e-12)
    assert eqsim.concurrence_embedded(big) == pytest.approx(eqsim.concurrence_pure(psi), abs=1e-12)


def test_full_circuit_matches_closed_form():
    phi = 0.37
    yzz = eqsim.pauli_matrix("YZZ")
    want = math.cos(phi) * np.eye(8) - 1j * math.sin(phi) * yzz
    assert np.max(np.abs(eqsim.full_circuit_unitary(phi) - want)) < 1e-12


def test_protocol_concurrence():
    for gt in np.linspace(0, math.pi, 9):
        big = eqsim.embedded_protocol_state(gt)
        assert eqsim.concurrence_embedded(big) == pytest.approx(abs(math.sin(2 * gt)), abs=1e-10)


def test_optics_sign_table():
    t = eqsim.optics_transfer_matrix(0.0)
    amp = 1 / (3 * math.sqrt(3))
    assert np.allclose(np.diag(t).real / amp, eqsim.cz_pair_signs(), atol=1e-12)
    out = eqsim.run_optics(0.0, eqsim.product_state("000"))
    assert out["success_probability"] == pytest.approx(1 / 27, abs=1e-12)


def test_white_noise_and_shots():
    big = eqsim.embedded_protocol_state(math.pi / 4)
    rho = eqsim.apply_white_noise(np.outer(big, big.conj()), 0.57)
    assert eqsim.embedded_concurrence(rho) == pytest.approx(0.57, abs=1e-12)
    rows = eqsim.concurrence_sweep([math.pi / 4], mode="shots", epsilon=0.57, shots=100000, seed=3)
    assert abs(rows[0]["c_estimate"] - 0.57) < 5 * rows[0]["c_sigma"]


def test_sweep_is_deterministic():
    a = eqsim.concurrence_sweep([0.1, 0.2], mode="shots", epsilon=0.7, shots=1000, seed=11)
    b = eqsim.concurrence_sweep([0.1, 0.2], mode="shots", epsilon=0.7, shots=1000, seed=11, jobs=2)
    assert a == b


def test_tomography_pipeline():
    psi = eqsim.protocol_state(math.pi / 4)
    rho = eqsim.apply_white_noise(np.outer(psi, psi.conj()), 0.8)
    records = eqsim.simulate_tomography_counts(rho, 100000, 5)
    assert len(records) == 36
    est = eqsim.concurrence_from_tomography(records, 50, 5)
    assert est["value"] == pytest.approx(0.7, abs=0.02)
    assert eqsim.concurrence_mixed(rho) == pytest.approx(0.7, abs=1e-12)


def test_rates_and_fits():
    r = eqsim.rates()
    assert r["two_photon"] == pytest.approx(150e3 * 0.8 / 9)
    assert r["three_photon"] == pytest.approx(500 * 0.8 / 27 * 0.25)
    fits = eqsim.pump_fits()
    assert fits["tomography"][1] < 0 and fits["simulator"][1] < 0


def test_errors_are_python_exceptions():
    with pytest.raises(eqsim.DimensionError):
        eqsim.embed(np.ones(3) / math.sqrt(3))
    with pytest.raises(eqsim.ConfigError):
        eqsim.concurrence_sweep([0.1], epsilon=2.0)
    with pytest.raises(ValueError):
        eqsim.decode(np.array([0, 0, 0, 1j]))


def test_verify_and_cli():
    assert all(passed for _, passed, _ in eqsim.verify())
    code, out, _ = eqsim.run_cli(["rates", "--json"])
    assert code == 0
    pipelines = {p["pipeline"]: p["rate_hz"] for p in json.loads(out)["pipelines"]}
    assert pipelines["two-photon"] == pytest.approx(eqsim.rates()["two_photon"])
    code, _, err = eqsim.run_cli(["concurrence-sweep", "--epsilon", "7"])
    assert code == 1 and "epsilon" in err
