import math

import numpy as np
import pytest

import pptdistill as pd


def test_isotropic_fidelity_matches_closed_form():
    rho = pd.isotropic_state(2, 0.85)
    r = pd.fidelity_ppt(rho, 2, 2, 2.0)
    assert r["value"] == pytest.approx(0.85, abs=1e-6)
    assert r["gap"] <= 1e-6
    assert r["dual_bound"] >= r["value"] - 1e-6
    assert pd.fidelity_isotropic_closed(2, 0.85, 2.0) == pytest.approx(0.85)


def test_partial_transpose_of_phi_is_swap_over_d():
    phi = pd.max_entangled(3)
    swap = np.zeros((9, 9))
    for i in range(3):
        for j in range(3):
            swap[i * 3 + j, j * 3 + i] = 1.0
    assert np.allclose(pd.partial_transpose(phi, 3, 3), swap / 3)


def test_werner_lp_threshold():
    r = pd.werner_power_lp(3, 1.0, 1, 5.0 / 3.0)
    assert r["value"] == pytest.approx(1.0, abs=1e-9)
    assert len(r["B"]) == 2


def test_lp_and_sdp_agree_for_one_copy():
    lp = pd.isotropic_power_lp(3, 0.7, 1, 2.0)["value"]
    sdp = pd.fidelity_ppt(pd.isotropic_state(3, 0.7), 3, 3, 2.0)["value"]
    assert lp == pytest.approx(sdp, abs=1e-6)


def test_bound_tables_are_ordered():
    rows = pd.werner_bounds(3, 0.8)
    lower = max(r["value"] for r in rows if r["kind"] == "lower")
    upper = min(r["value"] for r in rows if r["kind"] == "upper")
    assert lower <= upper + 1e-9
    assert pd.werner_rains_bound(3, 1.0) == pytest.approx(math.log2(5 / 3))


def test_max_correlated_spectrum():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    beta = g @ g.conj().T
    dense = np.zeros((9, 9), dtype=complex)
    for i in range(3):
        for j in range(3):
            dense[i * 3 + i, j * 3 + j] = beta[i, j]
    ref = np.linalg.eigvalsh(pd.partial_transpose(dense, 3, 3))
    assert np.allclose(np.sort(pd.max_correlated_pt_eigs(beta)), ref, atol=1e-9)


def test_code_lp():
    five = pd.code_lp(5, 2.0, 3)
    assert five["verdict"] == "feasible"
    assert five["verified"]
    bad = pd.code_lp(5, 2.0, 4)
    assert bad["verdict"] == "infeasible"
    assert bad["verified"]
    assert all(row["verdict"] == "feasible" for row in pd.code_lp_table(4) if row["d"] == 1)


def test_state_round_trip():
    rho = pd.werner_state(2, 0.3)
    back, dims = pd.read_state(pd.write_state(rho, 2, 2))
    assert dims == [2, 2]
    assert np.array_equal(back, rho)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        pd.isotropic_state(2, 1.5)
    with pytest.raises(ValueError):
        pd.code_lp(3, 2.0, 5)
