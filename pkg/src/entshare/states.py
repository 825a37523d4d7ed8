"""Dense state engine over labeled qubit subsystems.

States carry a layout naming their subsystems ("D" for the dealer block,
"1".."n" for shares). Amplitude indexing is big-endian in layout order:
the first layout entry owns the most significant qubits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence, Union

import numpy as np

from .errors import (
    CapacityError,
    DimensionMismatch,
    NumericalError,
    UnknownLabelError,
)

if TYPE_CHECKING:
    from .codes import StabilizerCode

DENSE_LIMIT = 12


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package."""

    hermiticity: float = 1e-12
    trace: float = 1e-12
    psd_floor: float = -1e-10
    comparison: float = 1e-9


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class SystemLayout:
    """Ordered labeled subsystems, each a block of qubits."""

    subsystems: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        labels = [lab for lab, _ in self.subsystems]
        if len(set(labels)) != len(labels):
            raise DimensionMismatch(f"duplicate labels in layout: {labels}")
        if any(nq < 1 for _, nq in self.subsystems):
            raise DimensionMismatch("every subsystem needs at least one qubit")
        if self.total_qubits > DENSE_LIMIT:
            raise CapacityError(
                f"{self.total_qubits} qubits exceeds the dense limit of {DENSE_LIMIT}"
            )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.subsystems)

    @property
    def total_qubits(self) -> int:
        return sum(nq for _, nq in self.subsystems)

    @property
    def dim(self) -> int:
        return 2 ** self.total_qubits

    def qubits(self, label: str) -> int:
        for lab, nq in self.subsystems:
            if lab == label:
                return nq
        raise UnknownLabelError(label)

    def positions(self, label: str) -> list[int]:
        """0-based qubit positions of ``label`` in the global register."""
        off = 0
        for lab, nq in self.subsystems:
            if lab == label:
                return list(range(off, off + nq))
            off += nq
        raise UnknownLabelError(label)

    def restricted(self, keep: Iterable[str]) -> "SystemLayout":
        """Sub-layout with only ``keep``, preserving layout order."""
        keep_set = set(keep)
        unknown = keep_set - set(self.labels)
        if unknown:
            raise UnknownLabelError(sorted(unknown))
        subs = tuple((lab, nq) for lab, nq in self.subsystems if lab in keep_set)
        if not subs:
            raise DimensionMismatch("cannot restrict a layout to nothing")
        return SystemLayout(subs)

    @staticmethod
    def dealer_shares(k: int, n: int) -> "SystemLayout":
        """Dealer block of k qubits followed by n single-qubit shares."""
        return SystemLayout((("D", k),) + tuple((str(i), 1) for i in range(1, n + 1)))


def _check_vector(layout: SystemLayout, amps: np.ndarray) -> np.ndarray:
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    if amps.shape[0] != layout.dim:
        raise DimensionMismatch(
            f"amplitude vector has length {amps.shape[0]}, layout needs {layout.dim}"
        )
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > 1e-12:
        raise NumericalError(f"state vector norm {norm} deviates from 1")
    return amps


@dataclass(frozen=True)
class PureState:
    layout: SystemLayout
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", _check_vector(self.layout, self.amplitudes))

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.layout, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    layout: SystemLayout
    matrix: np.ndarray
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        d = self.layout.dim
        if m.shape != (d, d):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match layout dim {d}")
        if np.max(np.abs(m - m.conj().T)) > self.tol.hermiticity:
            raise NumericalError("matrix is not Hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > self.tol.trace:
            raise NumericalError(f"trace {np.trace(m)} deviates from 1")
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        vals = np.linalg.eigvalsh(self.matrix)
        if vals.min() < self.tol.psd_floor:
            raise NumericalError(f"eigenvalue {vals.min()} below the PSD floor")
        return vals


State = Union[PureState, DensityMatrix]


def bell(j: int) -> np.ndarray:
    """Two-qubit Bell state j: 0,1 share parity 00/11, 2,3 parity 01/10;
    odd j carries the minus sign."""
    if j not in (0, 1, 2, 3):
        raise DimensionMismatch(f"Bell index must be 0..3, got {j}")
    v = np.zeros(4, dtype=complex)
    sign = -1.0 if j % 2 else 1.0
    if j < 2:
        v[0], v[3] = 1.0, sign
    else:
        v[1], v[2] = 1.0, sign
    return v / np.sqrt(2.0)


def mes(k: int, labels: tuple[str, str] = ("D", "D'")) -> PureState:
    """Maximally entangled state of 2k qubits across two k-qubit blocks."""
    if k < 1:
        raise DimensionMismatch("k must be positive")
    d = 2 ** k
    amps = np.zeros(d * d, dtype=complex)
    for j in range(d):
        amps[j * d + j] = 1.0
    amps /= np.sqrt(d)
    layout = SystemLayout(((labels[0], k), (labels[1], k)))
    return PureState(layout, amps)


def encode_dealer_mes(code: "StabilizerCode") -> PureState:
    """Joint dealer-shares state: dealer half of a MES, other half encoded.

    Branch j of the dealer is paired with codeword j, so the reduced dealer
    state is maximally mixed and the share side carries the code structure.
    """
    basis = code.codeword_matrix()
    dk = 2 ** code.k
    dn = 2 ** code.n
    amps = np.zeros(dk * dn, dtype=complex)
    for j in range(dk):
        amps[j * dn:(j + 1) * dn] = basis[:, j]
    amps /= np.sqrt(dk)
    return PureState(SystemLayout.dealer_shares(code.k, code.n), amps)


def _kept_positions(layout: SystemLayout, keep: Sequence[str]) -> tuple[list[int], list[int]]:
    keep_set = set(keep)
    unknown = keep_set - set(layout.labels)
    if unknown:
        raise UnknownLabelError(sorted(unknown))
    kept, traced = [], []
    for lab, _ in layout.subsystems:
        (kept if lab in keep_set else traced).extend(layout.positions(lab))
    return kept, traced


def partial_trace(state: State, keep: Iterable[str]) -> DensityMatrix:
    """Reduced state on ``keep`` (layout order preserved).

    Keeping every label returns the full state as a density matrix.
    """
    keep = list(keep)
    layout = state.layout
    kept, traced = _kept_positions(layout, keep)
    if not kept:
        raise DimensionMismatch("cannot trace out every subsystem")
    nq = layout.total_qubits
    dk = 2 ** len(kept)
    dt = 2 ** len(traced)
    if isinstance(state, PureState):
        psi = state.amplitudes.reshape([2] * nq)
        psi = np.transpose(psi, kept + traced).reshape(dk, dt)
        red = psi @ psi.conj().T
    else:
        m = state.matrix.reshape([2] * (2 * nq))
        order = kept + traced + [nq + p for p in kept] + [nq + p for p in traced]
        m = np.transpose(m, order).reshape(dk, dt, dk, dt)
        red = np.einsum("atbt->ab", m)
    return DensityMatrix(layout.restricted(keep), red)


def permute_qubit_axes(matrix: np.ndarray, new_from_old: Sequence[int]) -> np.ndarray:
    """Reorder the qubit tensor factors of an operator.

    ``new_from_old[p]`` is the old position that ends up at new position p.
    """
    nq = len(new_from_old)
    if matrix.shape != (2 ** nq, 2 ** nq):
        raise DimensionMismatch("operator shape does not match the permutation length")
    axes = list(new_from_old) + [nq + p for p in new_from_old]
    return matrix.reshape([2] * (2 * nq)).transpose(axes).reshape(2 ** nq, 2 ** nq)


def reorder(dm: DensityMatrix, label_order: Sequence[str]) -> DensityMatrix:
    """Density matrix with its subsystems permuted into ``label_order``."""
    if set(label_order) != set(dm.layout.labels) or len(label_order) != len(dm.layout.labels):
        raise UnknownLabelError(f"label order {label_order} must be a permutation of the layout")
    new_from_old = []
    for lab in label_order:
        new_from_old.extend(dm.layout.positions(lab))
    mat = permute_qubit_axes(dm.matrix, new_from_old)
    layout = SystemLayout(tuple((lab, dm.layout.qubits(lab)) for lab in label_order))
    return DensityMatrix(layout, mat)


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def fidelity(a: State, b: State) -> float:
    """Uhlmann fidelity; reduces to |<a|b>|^2 when both are pure."""
    if a.layout.subsystems != b.layout.subsystems:
        raise DimensionMismatch("states live on different layouts")
    if isinstance(a, PureState) and isinstance(b, PureState):
        return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
    if isinstance(a, PureState):
        val = np.vdot(a.amplitudes, b.matrix @ a.amplitudes).real
        return float(min(max(val, 0.0), 1.0))
    if isinstance(b, PureState):
        return fidelity(b, a)
    root = _psd_sqrt(a.matrix)
    sing = np.linalg.svd(root @ _psd_sqrt(b.matrix), compute_uv=False)
    return float(min(max(float(np.sum(sing)) ** 2, 0.0), 1.0))


def entropy(dm: DensityMatrix) -> float:
    """Von Neumann entropy in bits; eigenvalues below 1e-12 count as zero."""
    vals = dm.eigenvalues()
    vals = vals[vals > 1e-12]
    return float(-np.sum(vals * np.log2(vals)))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    if a.layout.subsystems != b.layout.subsystems:
        raise DimensionMismatch("states live on different layouts")
    diff = np.linalg.eigvalsh(a.matrix - b.matrix)
    return float(0.5 * np.sum(np.abs(diff)))


def mutual_information(dm: DensityMatrix, left: Iterable[str], right: Iterable[str]) -> float:
    """I(left:right) = S(left) + S(right) - S(joint), in bits."""
    left, right = list(left), list(right)
    if set(left) & set(right):
        raise DimensionMismatch("left and right overlap")
    if set(left) | set(right) != set(dm.layout.labels):
        raise DimensionMismatch("bipartition must cover the full layout")
    s_l = entropy(partial_trace(dm, left))
    s_r = entropy(partial_trace(dm, right))
    return s_l + s_r - entropy(dm)
