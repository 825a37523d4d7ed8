"""Teleportation probe and the leakage verdicts built on it."""

import json

import numpy as np
import pytest

from entshare import (
    DensityMatrix,
    PureState,
    SystemLayout,
    bell,
    qrss_leakage_report,
    teleport,
)

BELL0 = np.outer(bell(0), bell(0).conj())
CLASSICAL = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)


def rand_qubit(seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    return v


@pytest.mark.parametrize("seed", range(12))
def test_mes_resource_with_corrections_is_identity(seed):
    v = rand_qubit(seed)
    rho = np.outer(v, v.conj())
    out = teleport(rho, BELL0)
    assert np.max(np.abs(out.output.matrix - rho)) < 1e-12
    assert out.choi_psd and out.trace_preserving and out.used_corrections


@pytest.mark.parametrize("seed", range(6))
def test_mes_resource_without_corrections_depolarizes(seed):
    v = rand_qubit(seed)
    out = teleport(np.outer(v, v.conj()), BELL0, use_corrections=False)
    assert np.max(np.abs(out.output.matrix - np.eye(2) / 2)) < 1e-12
    assert not out.used_corrections


@pytest.mark.parametrize("seed", range(6))
def test_classical_resource_transfers_populations_only(seed):
    v = rand_qubit(seed)
    rho = np.outer(v, v.conj())
    out = teleport(rho, CLASSICAL)
    assert np.allclose(np.diag(out.output.matrix), np.diag(rho), atol=1e-12)
    assert abs(out.output.matrix[0, 1]) < 1e-12


def test_product_resource_erases_everything():
    out = teleport(np.outer(rand_qubit(0), rand_qubit(0).conj()), np.eye(4) / 4)
    assert np.max(np.abs(out.output.matrix - np.eye(2) / 2)) < 1e-12


def test_other_bell_resources_are_cptp_unitaries():
    rho = np.outer(rand_qubit(3), rand_qubit(3).conj())
    for j in range(1, 4):
        res = np.outer(bell(j), bell(j).conj())
        out = teleport(rho, res)
        assert out.choi_psd and out.trace_preserving
        # corrections are tuned to bell(0); with another Bell resource they
        # implement a different unitary, so purity must survive
        assert np.trace(out.output.matrix @ out.output.matrix).real == pytest.approx(1.0)


def test_teleport_accepts_state_objects():
    lay = SystemLayout((("A", 1),))
    pure = PureState(lay, [1, 0])
    out = teleport(pure, DensityMatrix(SystemLayout((("B", 1), ("C", 1))), BELL0))
    assert np.allclose(out.output.matrix, np.diag([1.0, 0.0]), atol=1e-12)


def test_choi_matrix_of_identity_channel():
    out = teleport(np.eye(2) / 2, BELL0)
    phi = np.zeros((4, 4), dtype=complex)
    phi[0, 0] = phi[0, 3] = phi[3, 0] = phi[3, 3] = 0.5
    assert np.max(np.abs(out.choi - phi)) < 1e-12
    payload = json.dumps(out.to_dict())
    assert json.loads(payload)["trace_preserving"] is True


# -- verdicts --------------------------------------------------------------


def test_verdict_422(scheme_422, report_422):
    rep = qrss_leakage_report(scheme_422, report_422)
    assert rep.verdict == "classical only"
    assert rep.threshold_profile == (3, 2, 4)
    assert rep.intermediate_count == 6
    assert rep.certified_count == 6
    assert rep.uncertified == ()
    assert rep.leak_subsets == ()
    assert rep.demo is None  # demo needs a one-qubit dealer


def test_verdict_shor(scheme_shor, report_shor):
    rep = qrss_leakage_report(scheme_shor, report_shor)
    assert rep.verdict == "classical only"
    assert rep.threshold_profile is None  # status is not a function of size
    assert rep.intermediate_count == 258
    assert rep.demo is not None
    assert rep.demo["illustrative"] is True
    assert rep.demo["subset"] == [1, 2, 3]
    # the classical resource can carry populations but no coherence
    assert rep.demo["output_offdiag_max"] < 1e-12
    json.dumps(rep.to_dict())


def test_verdict_642(scheme_642, report_642):
    rep = qrss_leakage_report(scheme_642, report_642)
    assert rep.verdict == "quantum leakage"
    assert rep.threshold_profile == (5, 4, 6)
    assert len(rep.leak_subsets) == 35
