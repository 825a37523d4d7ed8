"""Bipartite entanglement tests and explicit separability certificates.

Separability is only ever asserted through an explicit ensemble that
reconstructs the state within tolerance; the PPT criterion alone is used
as a negative test (NPT implies entangled) and, in the 2x2 and 2x3 cases,
as a complete one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NumericalError, UnknownLabelError
from .pauli import iter_paulis
from .states import DensityMatrix, PureState, SystemLayout, partial_trace, reorder


@dataclass(frozen=True)
class Bipartition:
    """Split of a layout's labels into a left and a right group."""

    left: tuple[str, ...]
    right: tuple[str, ...]

    def check(self, layout: SystemLayout) -> None:
        seen = set(self.left) | set(self.right)
        if set(self.left) & set(self.right):
            raise DimensionMismatch("bipartition sides overlap")
        if seen != set(layout.labels):
            raise UnknownLabelError(
                f"bipartition {self.left}|{self.right} does not cover layout {layout.labels}"
            )


def dealer_split(layout: SystemLayout) -> Bipartition:
    others = tuple(lab for lab in layout.labels if lab != "D")
    return Bipartition(("D",), others)


def _right_positions(layout: SystemLayout, part: Bipartition) -> list[int]:
    part.check(layout)
    pos: list[int] = []
    for lab in part.right:
        pos.extend(layout.positions(lab))
    return pos


def partial_transpose(dm: DensityMatrix, part: Bipartition) -> np.ndarray:
    """Transpose on the right group of the bipartition (plain matrix out)."""
    nq = dm.layout.total_qubits
    rpos = _right_positions(dm.layout, part)
    arr = dm.matrix.reshape([2] * (2 * nq))
    axes = list(range(2 * nq))
    for p in rpos:
        axes[p], axes[nq + p] = axes[nq + p], axes[p]
    return arr.transpose(axes).reshape(dm.layout.dim, dm.layout.dim)


def negativity(dm: DensityMatrix, part: Bipartition) -> float:
    """(||rho^T_B||_1 - 1) / 2, clamped at zero."""
    vals = np.linalg.eigvalsh(partial_transpose(dm, part))
    return max(0.0, float((np.sum(np.abs(vals)) - 1.0) / 2.0))


def is_ppt(dm: DensityMatrix, part: Bipartition, tol: float = 1e-9) -> bool:
    vals = np.linalg.eigvalsh(partial_transpose(dm, part))
    return bool(vals.min() >= -tol)


def product_residual(dm: DensityMatrix, part: Bipartition) -> float:
    """Trace-norm distance from the product of the two marginals."""
    part.check(dm.layout)
    ordered = reorder(dm, part.left + part.right)
    left = partial_trace(ordered, part.left).matrix
    right = (
        partial_trace(ordered, part.right).matrix if part.right else np.ones((1, 1))
    )
    diff = ordered.matrix - np.kron(left, right)
    vals = np.linalg.eigvalsh(diff)
    return float(np.sum(np.abs(vals)))


def is_product(dm: DensityMatrix, part: Bipartition, tol: float = 1e-9) -> bool:
    return product_residual(dm, part) < tol


# -- explicit separable ensembles ------------------------------------------


def _check_factor(mat: np.ndarray, what: str) -> np.ndarray:
    m = np.asarray(mat, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{what} factor is not square")
    if np.max(np.abs(m - m.conj().T)) > 1e-12:
        raise NumericalError(f"{what} factor is not Hermitian")
    if abs(np.trace(m).real - 1.0) > 1e-11:
        raise NumericalError(f"{what} factor trace deviates from 1")
    if np.linalg.eigvalsh(m).min() < -1e-10:
        raise NumericalError(f"{what} factor has a negative eigenvalue")
    return m


@dataclass(frozen=True)
class SeparableEnsemble:
    """Convex mixture of product states  sum_i w_i L_i (x) R_i."""

    weights: tuple[float, ...]
    left_factors: tuple[np.ndarray, ...]
    right_factors: tuple[np.ndarray, ...]
    left_labels: tuple[str, ...]
    right_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if not (len(self.weights) == len(self.left_factors) == len(self.right_factors)):
            raise DimensionMismatch("ensemble term lists have mismatched lengths")
        if not self.weights:
            raise DimensionMismatch("ensemble needs at least one term")
        if min(self.weights) <= 0:
            raise NumericalError("ensemble weights must be positive")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise NumericalError(f"ensemble weights sum to {sum(self.weights)}")
        object.__setattr__(
            self,
            "left_factors",
            tuple(_check_factor(m, "left") for m in self.left_factors),
        )
        object.__setattr__(
            self,
            "right_factors",
            tuple(_check_factor(m, "right") for m in self.right_factors),
        )

    def reconstruct(self) -> np.ndarray:
        return sum(
            w * np.kron(l, r)
            for w, l, r in zip(self.weights, self.left_factors, self.right_factors)
        )

    def __len__(self) -> int:
        return len(self.weights)


def verify_separable_decomposition(dm: DensityMatrix, ensemble: SeparableEnsemble) -> float:
    """Largest entrywise deviation between the state and the rebuilt mixture."""
    labels = ensemble.left_labels + ensemble.right_labels
    if set(labels) != set(dm.layout.labels) or len(labels) != len(dm.layout.labels):
        raise UnknownLabelError(
            f"ensemble labels {labels} do not partition layout {dm.layout.labels}"
        )
    ordered = reorder(dm, labels)
    rebuilt = ensemble.reconstruct()
    if rebuilt.shape != ordered.matrix.shape:
        raise DimensionMismatch("ensemble factor dimensions do not match the state")
    return float(np.max(np.abs(ordered.matrix - rebuilt)))


def basis_dephasing_decomposition(
    dm: DensityMatrix,
    part: Bipartition,
    basis: Sequence[np.ndarray],
    side: str = "left",
    tol: float = 1e-9,
) -> SeparableEnsemble | None:
    """Try to write the state as a mixture over an orthonormal basis of one side.

    Projecting one side onto each basis vector yields candidate terms
    (weight, basis projector, conditional block). If the blocks rebuild the
    state within ``tol``, the state is a certified classical-quantum mixture
    and the ensemble is returned; otherwise None.
    """
    part.check(dm.layout)
    ordered = reorder(dm, part.left + part.right)
    dl = 2 ** sum(ordered.layout.qubits(lab) for lab in part.left)
    dr = ordered.layout.dim // dl
    blocks = ordered.matrix.reshape(dl, dr, dl, dr)
    ddeph = dl if side == "left" else dr
    if side not in ("left", "right"):
        raise DimensionMismatch("side must be 'left' or 'right'")
    if any(v.shape != (ddeph,) for v in basis) or len(basis) != ddeph:
        raise DimensionMismatch("need a full orthonormal basis for the dephased side")
    weights, lefts, rights = [], [], []
    rebuilt = np.zeros_like(ordered.matrix)
    for vec in basis:
        v = np.asarray(vec, dtype=complex)
        if side == "left":
            block = np.einsum("a,abcd,c->bd", v.conj(), blocks, v)
        else:
            block = np.einsum("b,abcd,d->ac", v.conj(), blocks, v)
        p = float(np.trace(block).real)
        proj = np.outer(v, v.conj())
        if side == "left":
            rebuilt += np.kron(proj, block)
        else:
            rebuilt += np.kron(block, proj)
        if p < 1e-12:
            continue
        weights.append(p)
        if side == "left":
            lefts.append(proj)
            rights.append(block / p)
        else:
            lefts.append(block / p)
            rights.append(proj)
    if float(np.max(np.abs(ordered.matrix - rebuilt))) > tol:
        return None
    total = sum(weights)
    weights = [w / total for w in weights]
    return SeparableEnsemble(
        tuple(weights), tuple(lefts), tuple(rights), part.left, part.right
    )


# -- twirling and the Holevo bound -----------------------------------------


def twirl_ensemble(dm: DensityMatrix, label: str) -> list[tuple[float, DensityMatrix]]:
    """Uniform ensemble of the 4**q Pauli conjugations of one subsystem."""
    nq = dm.layout.total_qubits
    targets = [p + 1 for p in dm.layout.positions(label)]
    terms = []
    weight = 1.0 / 4 ** len(targets)
    for g in iter_paulis(nq, targets):
        op = g.to_dense()
        terms.append((weight, DensityMatrix(dm.layout, op @ dm.matrix @ op)))
    return terms


def pauli_twirl(state: DensityMatrix | PureState, label: str) -> DensityMatrix:
    """Average over all Pauli rotations of one subsystem.

    The result always factorizes as (reduced state elsewhere) (x) I/2**q on
    the twirled block, which is what makes the entanglement bound work.
    """
    dm = state.density() if isinstance(state, PureState) else state
    acc = np.zeros_like(dm.matrix)
    for w, term in twirl_ensemble(dm, label):
        acc += w * term.matrix
    return DensityMatrix(dm.layout, acc)


def _entropy_bits(mat: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(mat)
    vals = vals[vals > 1e-12]
    return float(-np.sum(vals * np.log2(vals)))


def holevo_gap(ensemble: Iterable[tuple[float, DensityMatrix | np.ndarray]]) -> float:
    """S(average) - average S, in bits; at most log2 of the ensemble size."""
    terms = [
        (float(p), m.matrix if isinstance(m, DensityMatrix) else np.asarray(m, complex))
        for p, m in ensemble
    ]
    if not terms:
        raise DimensionMismatch("empty ensemble")
    total = sum(p for p, _ in terms)
    if abs(total - 1.0) > 1e-9:
        raise NumericalError(f"ensemble weights sum to {total}")
    avg = sum(p * m for p, m in terms)
    return _entropy_bits(avg) - sum(p * _entropy_bits(m) for p, m in terms)
