"""Teleportation probes and the quantum-vs-classical leakage verdict.

An unauthorized-but-correlated subset shares only classical correlation
with the dealer exactly when its joint state is separable. Feeding such a
state into a teleportation circuit transmits at most the diagonal of the
input, so a ramp-style scheme whose intermediate sets are all separable
leaks classical information only. The teleport channel here is computed
as the exact average over the four Bell outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .schemes import (
    EntanglementSharingScheme,
    SchemeReport,
    Status,
    certificate_for,
    classify_all,
)
from .states import (
    DEFAULT_TOL,
    DensityMatrix,
    PureState,
    SystemLayout,
    bell,
    partial_trace,
)

_PAULI_I = np.eye(2, dtype=complex)
_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# correction for Bell outcome m, in the same order as bell(m)
_CORRECTIONS = (_PAULI_I, _PAULI_Z, _PAULI_X, _PAULI_X @ _PAULI_Z)


@dataclass(frozen=True)
class TeleportOutcome:
    output: DensityMatrix
    choi: np.ndarray
    choi_psd: bool
    trace_preserving: bool
    used_corrections: bool

    def to_dict(self) -> dict:
        return {
            "output": _complex_rows(self.output.matrix),
            "choi": _complex_rows(self.choi),
            "choi_psd": self.choi_psd,
            "trace_preserving": self.trace_preserving,
            "used_corrections": self.used_corrections,
        }


def _complex_rows(mat: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in mat]


def _one_qubit_matrix(state: DensityMatrix | PureState | np.ndarray) -> np.ndarray:
    if isinstance(state, PureState):
        if state.layout.total_qubits != 1:
            raise DimensionMismatch("teleport input must be a single qubit")
        return np.outer(state.amplitudes, state.amplitudes.conj())
    if isinstance(state, DensityMatrix):
        if state.layout.total_qubits != 1:
            raise DimensionMismatch("teleport input must be a single qubit")
        return state.matrix
    arr = np.asarray(state, dtype=complex)
    if arr.shape == (2,):
        return np.outer(arr, arr.conj())
    if arr.shape != (2, 2):
        raise DimensionMismatch(f"expected a qubit state, got shape {arr.shape}")
    return arr


def _resource_matrix(state: DensityMatrix | PureState | np.ndarray) -> np.ndarray:
    if isinstance(state, PureState):
        if state.layout.total_qubits != 2:
            raise DimensionMismatch("teleport resource must be two qubits")
        return np.outer(state.amplitudes, state.amplitudes.conj())
    if isinstance(state, DensityMatrix):
        if state.layout.total_qubits != 2:
            raise DimensionMismatch("teleport resource must be two qubits")
        return state.matrix
    arr = np.asarray(state, dtype=complex)
    if arr.shape == (4,):
        return np.outer(arr, arr.conj())
    if arr.shape != (4, 4):
        raise DimensionMismatch(f"expected a two-qubit state, got shape {arr.shape}")
    return arr


def _run_channel(rho_in: np.ndarray, resource: np.ndarray, corrections: bool) -> np.ndarray:
    """Average over Bell outcomes on (input, resource-A); output on resource-B."""
    joint = np.kron(rho_in, resource).reshape(2, 2, 2, 2, 2, 2)
    out = np.zeros((2, 2), dtype=complex)
    for m in range(4):
        proj = bell(m).reshape(2, 2)
        # project qubits (S, A) onto the Bell vector on both sides
        branch = np.einsum("sa,sabtcd,tc->bd", proj.conj(), joint, proj)
        if corrections:
            c = _CORRECTIONS[m]
            branch = c @ branch @ c.conj().T
        out += branch
    return out


def teleport(
    input_state: DensityMatrix | PureState | np.ndarray,
    resource: DensityMatrix | PureState | np.ndarray,
    use_corrections: bool = True,
) -> TeleportOutcome:
    """Deterministic teleport channel for a given two-qubit resource.

    Bell-measures the input against the resource's first qubit, averages
    the four outcomes, and applies the standard Pauli corrections to the
    second qubit when enabled. Also reports the channel's Choi matrix with
    positivity and trace-preservation checks.
    """
    rho_in = _one_qubit_matrix(input_state)
    res = _resource_matrix(resource)
    out = _run_channel(rho_in, res, use_corrections)
    output = DensityMatrix(SystemLayout((("R", 1),)), out)
    basis = np.eye(2, dtype=complex)
    choi = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            block = _run_channel(np.outer(basis[:, i], basis[:, j].conj()), res, use_corrections)
            choi += np.kron(np.outer(basis[:, i], basis[:, j].conj()), block)
    choi /= 2.0
    psd = bool(np.linalg.eigvalsh((choi + choi.conj().T) / 2).min() >= DEFAULT_TOL.psd_floor)
    marg = np.einsum("ibjb->ij", choi.reshape(2, 2, 2, 2))
    tp = bool(np.max(np.abs(marg - np.eye(2) / 2)) < 1e-9)
    return TeleportOutcome(
        output=output,
        choi=choi,
        choi_psd=psd,
        trace_preserving=tp,
        used_corrections=use_corrections,
    )


@dataclass(frozen=True)
class QRSSReport:
    code: str
    verdict: str
    threshold_profile: tuple[int, int, int] | None
    intermediate_count: int
    certified_count: int
    uncertified: tuple[tuple[int, ...], ...]
    leak_subsets: tuple[tuple[int, ...], ...]
    demo: dict | None

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "verdict": self.verdict,
            "threshold_profile": list(self.threshold_profile)
            if self.threshold_profile
            else None,
            "intermediate_count": self.intermediate_count,
            "certified_count": self.certified_count,
            "uncertified": [list(s) for s in self.uncertified],
            "leak_subsets": [list(s) for s in self.leak_subsets],
            "demo": self.demo,
        }


def _threshold_profile(report: SchemeReport) -> tuple[int, int, int] | None:
    """(a, b, n) when status depends only on subset size: a = smallest
    authorized size, a - b = largest forbidden size."""
    by_size: dict[int, set[Status]] = {}
    for c in report.classifications:
        by_size.setdefault(len(c.subset), set()).add(c.status)
    if any(len(statuses) != 1 for statuses in by_size.values()):
        return None
    auth_sizes = [s for s, v in by_size.items() if Status.AUTHORIZED in v]
    forb_sizes = [s for s, v in by_size.items() if Status.FORBIDDEN in v]
    if not auth_sizes:
        return None
    a = min(auth_sizes)
    f = max(forb_sizes) if forb_sizes else 0
    return (a, a - f, report.n)


def _demo_resource(
    scheme: EntanglementSharingScheme, subset: tuple[int, ...]
) -> np.ndarray | None:
    """Two-qubit resource distilled from a subset's certificate ensemble:
    dealer factor paired with a branch-index qubit. Illustrative only."""
    if scheme.k != 1:
        return None
    labels = ["D"] + [str(i) for i in sorted(subset)]
    reduced = partial_trace(scheme.state, labels)
    ens = certificate_for(scheme, frozenset(subset), reduced, DEFAULT_TOL.comparison)
    if ens is None or len(ens) > 2:
        return None
    res = np.zeros((4, 4), dtype=complex)
    for idx, (w, left) in enumerate(zip(ens.weights, ens.left_factors)):
        point = np.zeros((2, 2), dtype=complex)
        point[idx, idx] = 1.0
        res += w * np.kron(left, point)
    return res


def qrss_leakage_report(
    scheme: EntanglementSharingScheme, report: SchemeReport | None = None
) -> QRSSReport:
    """Leakage verdict over the intermediate structure.

    "classical only" when every correlated unauthorized subset is
    certified separable with the dealer; "quantum leakage" when any
    unauthorized subset is NPT; "undetermined" when some subset's
    separability could not be certified either way. A teleportation
    demonstration through a certificate-derived resource is attached for
    single-ebit schemes; the verdict never depends on it.
    """
    if report is None:
        report = classify_all(scheme)
    inter = [c for c in report.classifications if c.status is Status.INTERMEDIATE]
    leaks = [c for c in report.classifications if c.status is Status.ENTANGLED_LEAK]
    unknown = [c for c in report.classifications if c.status is Status.PPT_UNDETERMINED]
    if leaks:
        verdict = "quantum leakage"
    elif unknown:
        verdict = "undetermined"
    else:
        verdict = "classical only"
    demo = None
    if inter and scheme.k == 1:
        smallest = min(inter, key=lambda c: (len(c.subset), tuple(sorted(c.subset))))
        res = _demo_resource(scheme, tuple(sorted(smallest.subset)))
        if res is not None:
            alpha2 = 0.3
            amp = np.array([np.sqrt(alpha2), np.sqrt(1 - alpha2)], dtype=complex)
            out = teleport(np.outer(amp, amp.conj()), res, use_corrections=True)
            mat = out.output.matrix
            demo = {
                "illustrative": True,
                "subset": sorted(smallest.subset),
                "input_diag": [alpha2, 1 - alpha2],
                "output_diag": [float(mat[0, 0].real), float(mat[1, 1].real)],
                "output_offdiag_max": float(np.abs(mat[0, 1])),
                "resource": _complex_rows(res),
            }
    return QRSSReport(
        code=scheme.code.name,
        verdict=verdict,
        threshold_profile=_threshold_profile(report),
        intermediate_count=len(inter),
        certified_count=sum(
            1
            for c in inter
            if c.witnesses.decomposition_residual is not None
            and c.witnesses.decomposition_residual < DEFAULT_TOL.comparison
        ),
        uncertified=tuple(tuple(sorted(c.subset)) for c in unknown),
        leak_subsets=tuple(tuple(sorted(c.subset)) for c in leaks),
        demo=demo,
    )
