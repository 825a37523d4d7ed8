"""Bipartite witnesses and separability certificates."""

import numpy as np
import pytest

from entshare import (
    Bipartition,
    DensityMatrix,
    DimensionMismatch,
    PureState,
    SeparableEnsemble,
    SystemLayout,
    basis_dephasing_decomposition,
    bell,
    dealer_split,
    holevo_gap,
    is_ppt,
    is_product,
    mes,
    negativity,
    pauli_twirl,
    product_residual,
    verify_separable_decomposition,
)

LAY2 = SystemLayout((("L", 1), ("R", 1)))


def bell_dm(j=0):
    return DensityMatrix(LAY2, np.outer(bell(j), bell(j).conj()))


def classical_dm():
    return DensityMatrix(LAY2, np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex))


SPLIT = Bipartition(("L",), ("R",))


def test_negativity_of_bell_states():
    for j in range(4):
        assert negativity(bell_dm(j), SPLIT) == pytest.approx(0.5)
        assert not is_ppt(bell_dm(j), SPLIT)


def test_negativity_vanishes_for_separable():
    assert negativity(classical_dm(), SPLIT) == pytest.approx(0.0, abs=1e-12)
    assert is_ppt(classical_dm(), SPLIT)


def test_werner_state_negativity_threshold():
    # (1-p) I/4 + p |Phi+><Phi+| crosses PPT at p = 1/3
    phi = np.outer(bell(0), bell(0).conj())
    for p, ent in ((0.2, False), (1 / 3, False), (0.5, True)):
        dm = DensityMatrix(LAY2, (1 - p) * np.eye(4) / 4 + p * phi)
        assert (negativity(dm, SPLIT) > 1e-9) == ent, p


def test_product_residual_separates_product_from_bell():
    prod = DensityMatrix(LAY2, np.kron(np.diag([0.3, 0.7]), np.eye(2) / 2))
    assert product_residual(prod, SPLIT) < 1e-12
    assert is_product(prod, SPLIT)
    assert product_residual(bell_dm(), SPLIT) >= 0.25
    assert not is_product(bell_dm(), SPLIT)
    # correlated but unentangled is still not product
    assert product_residual(classical_dm(), SPLIT) >= 0.2


def test_dealer_split():
    st = mes(2, labels=("D", "D'"))
    part = dealer_split(st.layout)
    assert part.left == ("D",)
    assert part.right == ("D'",)


def test_separable_ensemble_validation():
    good = SeparableEnsemble(
        weights=(0.5, 0.5),
        left_factors=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])),
        right_factors=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])),
        left_labels=("L",),
        right_labels=("R",),
    )
    assert len(good) == 2
    assert np.allclose(good.reconstruct(), classical_dm().matrix)
    assert verify_separable_decomposition(classical_dm(), good) < 1e-12
    with pytest.raises(DimensionMismatch):
        SeparableEnsemble(
            weights=(1.0,),
            left_factors=(np.diag([1.0, 0.0]),),
            right_factors=(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])),
            left_labels=("L",),
            right_labels=("R",),
        )
    with pytest.raises(Exception):
        SeparableEnsemble(
            weights=(1.0,),
            left_factors=(np.array([[0.5, 0.6], [0.6, 0.5]]),),  # not PSD
            right_factors=(np.diag([1.0, 0.0]),),
            left_labels=("L",),
            right_labels=("R",),
        )


def test_dephasing_decomposition_certifies_classical_state():
    ens = basis_dephasing_decomposition(classical_dm(), SPLIT, np.eye(2), side="left")
    assert ens is not None
    assert verify_separable_decomposition(classical_dm(), ens) < 1e-12


def test_dephasing_decomposition_rejects_bell():
    for side in ("left", "right"):
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        for basis in (np.eye(2), h):
            assert basis_dephasing_decomposition(bell_dm(), SPLIT, basis, side=side) is None


def test_pauli_twirl_depolarizes_one_side():
    rng = np.random.default_rng(11)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    st = PureState(LAY2, v)
    out = pauli_twirl(st, "R")
    kept = np.einsum("abcb->ac", out.matrix.reshape(2, 2, 2, 2))
    orig = np.einsum("abcb->ac", st.density().matrix.reshape(2, 2, 2, 2))
    assert np.allclose(out.matrix, np.kron(orig, np.eye(2) / 2), atol=1e-12)
    assert np.allclose(kept, orig, atol=1e-12)


def test_holevo_gap_orthogonal_ensemble():
    lay = SystemLayout((("A", 1),))
    zero = DensityMatrix(lay, np.diag([1.0, 0.0]))
    one = DensityMatrix(lay, np.diag([0.0, 1.0]))
    assert holevo_gap([(0.5, zero), (0.5, one)]) == pytest.approx(1.0)
    assert holevo_gap([(1.0, zero)]) == pytest.approx(0.0, abs=1e-12)
    # identical members carry no information
    assert holevo_gap([(0.5, zero), (0.5, zero)]) == pytest.approx(0.0, abs=1e-12)
