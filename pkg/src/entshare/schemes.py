"""Entanglement sharing schemes built from stabilizer codes.

The dealer keeps half of a maximally entangled state and hands out the
encoded other half, one share per code qubit. Every subset of shares is
then classified against the dealer: subsets whose complement is a
correctable erasure recover the full entanglement, and all remaining
subsets are checked for (certified) absence of entanglement.

Recovery is the transpose channel of the erasure map with respect to the
code projector. Its composition collapses to exact small linear algebra,
which is what classification uses; the corresponding explicit Kraus
operators are available separately and agree with the collapsed form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .codes import StabilizerCode, erasure_correctable, validate
from .entanglement import (
    Bipartition,
    SeparableEnsemble,
    basis_dephasing_decomposition,
    dealer_split,
    negativity,
    product_residual,
    verify_separable_decomposition,
)
from .errors import (
    AuthorizationError,
    CapacityError,
    CodeValidationError,
    DimensionMismatch,
    UnknownLabelError,
)
from .states import (
    DEFAULT_TOL,
    DensityMatrix,
    PureState,
    SystemLayout,
    bell,
    encode_dealer_mes,
    mes,
    mutual_information,
    partial_trace,
    permute_qubit_axes,
)


class Status(str, Enum):
    AUTHORIZED = "Authorized"
    INTERMEDIATE = "Intermediate"
    FORBIDDEN = "Forbidden"
    PPT_UNDETERMINED = "PPTUndetermined"
    ENTANGLED_LEAK = "EntangledLeak"


@dataclass(frozen=True)
class Witnesses:
    negativity: float | None = None
    mutual_information_bits: float | None = None
    recovery_fidelity: float | None = None
    decomposition_residual: float | None = None

    def to_dict(self) -> dict:
        return {
            "negativity": self.negativity,
            "mutual_information_bits": self.mutual_information_bits,
            "recovery_fidelity": self.recovery_fidelity,
            "decomposition_residual": self.decomposition_residual,
        }


@dataclass(frozen=True)
class SubsetClassification:
    subset: frozenset[int]
    status: Status
    witnesses: Witnesses

    def to_dict(self) -> dict:
        return {
            "subset": sorted(self.subset),
            "size": len(self.subset),
            "status": self.status.value,
            "witnesses": self.witnesses.to_dict(),
        }


@dataclass(frozen=True)
class Theorem1Verdict:
    """Consistency of the share count with the entanglement bound 2q."""

    ebits: int
    q: int | None
    bound: int | None
    saturated: bool
    leak_predicted: bool
    leak_confirmed: bool
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "ebits": self.ebits,
            "q": self.q,
            "bound": self.bound,
            "saturated": self.saturated,
            "leak_predicted": self.leak_predicted,
            "leak_confirmed": self.leak_confirmed,
            "consistent": self.consistent,
        }


@dataclass(frozen=True)
class SchemeReport:
    code: str
    n: int
    k: int
    classifications: tuple[SubsetClassification, ...]
    authorized: tuple[tuple[int, ...], ...]
    important_shares: tuple[int, ...]
    q: int | None
    theorem1: Theorem1Verdict
    invariants: dict
    status_counts: dict

    def statuses(self) -> dict[frozenset[int], Status]:
        return {c.subset: c.status for c in self.classifications}

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "n": self.n,
            "k": self.k,
            "subsets": [c.to_dict() for c in self.classifications],
            "authorized": [list(a) for a in self.authorized],
            "important_shares": list(self.important_shares),
            "q": self.q,
            "theorem1": self.theorem1.to_dict(),
            "invariants": dict(self.invariants),
            "status_counts": dict(self.status_counts),
        }


@dataclass(frozen=True)
class EntanglementSharingScheme:
    code: StabilizerCode
    state: PureState

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def ebits(self) -> int:
        return self.code.k


def build_scheme(code: StabilizerCode) -> EntanglementSharingScheme:
    """Validate the code and prepare the joint dealer-shares state."""
    report = validate(code)
    if not report.passed:
        raise CodeValidationError(
            f"code {code.name!r} failed validation: " + "; ".join(report.failures)
        )
    return EntanglementSharingScheme(code=code, state=encode_dealer_mes(code))


def _share_set(scheme: EntanglementSharingScheme, subset: Iterable[int]) -> frozenset[int]:
    sub = frozenset(int(i) for i in subset)
    bad = [i for i in sub if not 1 <= i <= scheme.n]
    if bad:
        raise UnknownLabelError(f"share indices {sorted(bad)} out of range for n={scheme.n}")
    return sub


def is_authorized(scheme: EntanglementSharingScheme, subset: Iterable[int]) -> bool:
    """A subset recovers the dealer entanglement iff losing its complement
    is a correctable erasure."""
    sub = _share_set(scheme, subset)
    complement = frozenset(range(1, scheme.n + 1)) - sub
    return erasure_correctable(scheme.code, complement)


# -- recovery --------------------------------------------------------------


def _pinv_sqrt(mat: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(mat)
    cutoff = float(vals.max()) * 1e-10
    inv = np.where(vals > cutoff, 1.0 / np.sqrt(np.clip(vals, cutoff, None)), 0.0)
    return (vecs * inv) @ vecs.conj().T


def _trace_qubits(mat: np.ndarray, nq: int, drop: Sequence[int]) -> np.ndarray:
    keep = [p for p in range(nq) if p not in set(drop)]
    dk, dt = 2 ** len(keep), 2 ** len(drop)
    arr = mat.reshape([2] * (2 * nq))
    order = keep + list(drop) + [nq + p for p in keep] + [nq + p for p in drop]
    arr = arr.transpose(order).reshape(dk, dt, dk, dt)
    return np.einsum("atbt->ab", arr)


def _recovery_pieces(
    scheme: EntanglementSharingScheme,
    kept: frozenset[int],
    state: PureState | None = None,
):
    """Reduced state on dealer+kept shares and the inverse-root marginal."""
    state = scheme.state if state is None else state
    labels = ["D"] + [str(i) for i in sorted(kept)]
    tau = partial_trace(state, labels).matrix
    sigma_kept = _trace_qubits(tau, scheme.k + len(kept), list(range(scheme.k)))
    m_inv = _pinv_sqrt(sigma_kept)
    return tau, np.kron(np.eye(2 ** scheme.k), m_inv)


def _recovery_fidelity(scheme: EntanglementSharingScheme, kept: frozenset[int]) -> float:
    """Fidelity of the transpose-channel recovery with the dealer MES.

    Exact collapse of the channel composition: the code projector absorbs
    into the target state, leaving F = tr(N tau N tau) / 2**k with N the
    inverse-root of the kept-share marginal.
    """
    tau, big_n = _recovery_pieces(scheme, kept)
    g = big_n @ tau @ big_n
    val = np.einsum("ij,ji->", g, tau).real / 2 ** scheme.k
    return float(min(max(val, 0.0), 1.0))


def recover(
    scheme: EntanglementSharingScheme,
    subset: Iterable[int],
    state: PureState | None = None,
) -> tuple[DensityMatrix, float]:
    """Run erasure recovery from an authorized subset and decode.

    Lost shares are replaced by maximally mixed qubits, the transpose
    channel is applied, and the code block is decoded back to k logical
    qubits (label "R"). Returns the decoded joint state with the dealer
    and its fidelity with the k-qubit MES. `state` substitutes for the
    scheme's own encoded state when analyzing encrypted variants.
    """
    sub = _share_set(scheme, subset)
    if not is_authorized(scheme, sub):
        raise AuthorizationError(
            f"subset {sorted(sub)} cannot recover the dealer entanglement"
        )
    k, n = scheme.k, scheme.n
    lost = sorted(frozenset(range(1, n + 1)) - sub)
    tau, big_n = _recovery_pieces(scheme, sub, state)
    g = big_n @ tau @ big_n
    h = np.kron(g, np.eye(2 ** len(lost)))
    # h currently orders qubits as dealer, kept shares, lost shares; put the
    # shares back into ascending order before decoding.
    share_to_old = {s: k + i for i, s in enumerate(sorted(sub) + lost)}
    new_from_old = list(range(k)) + [share_to_old[s] for s in range(1, n + 1)]
    h = permute_qubit_axes(h, new_from_old)
    decode = np.kron(np.eye(2 ** k), scheme.code.codeword_matrix())
    out = decode.conj().T @ h @ decode / 2 ** k
    out = (out + out.conj().T) / 2.0
    dm = DensityMatrix(SystemLayout((("D", k), ("R", k))), out)
    target = mes(k, ("D", "R"))
    fid = float(np.vdot(target.amplitudes, out @ target.amplitudes).real)
    return dm, min(max(fid, 0.0), 1.0)


def petz_kraus_operators(
    code: StabilizerCode, erased: Iterable[int]
) -> list[np.ndarray]:
    """Explicit Kraus operators of the recovery channel on the share block.

    They act on the full share register with the erased slots filled by the
    unnormalized identity: summing R (rho kron I_erased) R^dag over all
    operators reproduces the channel that `recover` evaluates in collapsed
    form, and sum(R^dag R) restricted to that input family is trace
    preserving on the support of the kept marginal.
    """
    erased = sorted(frozenset(int(i) for i in erased))
    if any(not 1 <= i <= code.n for i in erased):
        raise DimensionMismatch(f"erased indices {erased} out of range for n={code.n}")
    if len(erased) > 4:
        raise CapacityError("explicit Kraus construction is limited to 4 erased qubits")
    kept = [s for s in range(1, code.n + 1) if s not in erased]
    sigma = code.code_projector() / 2 ** code.k
    sigma_kept = _trace_qubits(sigma, code.n, [s - 1 for s in erased])
    m_inv = _pinv_sqrt(sigma_kept)
    sqrt_sigma = code.code_projector() / 2 ** (code.k / 2.0)
    # operators are built in (erased block, kept block) order then permuted
    # into ascending share order.
    share_order = erased + kept
    old_of_share = {s: i for i, s in enumerate(share_order)}
    new_from_old = [old_of_share[s] for s in range(1, code.n + 1)]
    de = 2 ** len(erased)
    ops = []
    for i in range(de):
        for j in range(de):
            replace = np.zeros((de, de))
            replace[j, i] = 1.0
            op = permute_qubit_axes(np.kron(replace, m_inv), new_from_old)
            ops.append(sqrt_sigma @ op / np.sqrt(de))
    return ops


# -- classification --------------------------------------------------------


def certificate_for(
    scheme: EntanglementSharingScheme,
    subset: frozenset[int],
    reduced: DensityMatrix,
    tol: float,
) -> SeparableEnsemble | None:
    """Search the known certificate families for a separable decomposition.

    Candidates, in order: the state may decohere the dealer in its
    computational product basis, in its conjugate (Hadamard) product basis,
    or, for two-share subsets, decohere the share pair in the Bell basis.
    """
    part = dealer_split(reduced.layout)
    k = scheme.k
    dim_d = 2 ** k
    comp = [np.eye(dim_d, dtype=complex)[:, j] for j in range(dim_d)]
    hada = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    had_full = hada
    for _ in range(k - 1):
        had_full = np.kron(had_full, hada)
    conj_basis = [had_full[:, j].astype(complex) for j in range(dim_d)]
    candidates: list[tuple[str, list[np.ndarray]]] = [
        ("left", comp),
        ("left", conj_basis),
    ]
    if len(subset) == 2:
        candidates.append(("right", [bell(j) for j in range(4)]))
    for side, basis in candidates:
        ens = basis_dephasing_decomposition(reduced, part, basis, side=side, tol=tol)
        if ens is not None:
            return ens
    return None


def classify_subset(
    scheme: EntanglementSharingScheme,
    subset: Iterable[int],
    tol: float | None = None,
) -> SubsetClassification:
    """Classify one subset of shares against the dealer.

    Authorized subsets report their recovery fidelity. Unauthorized ones
    are checked in order: exact product (Forbidden), PPT with a verified
    separable decomposition (Intermediate; PPT alone suffices only in the
    2x2 and 2x3 cases), PPT without a certificate (PPTUndetermined), and
    NPT (EntangledLeak, possible only for non-perfect schemes).
    """
    tol = DEFAULT_TOL.comparison if tol is None else tol
    sub = _share_set(scheme, subset)
    labels = ["D"] + [str(i) for i in sorted(sub)]
    if is_authorized(scheme, sub):
        fid = _recovery_fidelity(scheme, sub)
        neg = mi = None
        if 2 ** (scheme.k + len(sub)) <= 256:
            # informational only for authorized subsets, so skip the
            # eigendecompositions once they stop being cheap
            reduced = partial_trace(scheme.state, labels)
            neg = negativity(reduced, dealer_split(reduced.layout))
            mi = mutual_information(reduced, ["D"], labels[1:])
        return SubsetClassification(
            sub,
            Status.AUTHORIZED,
            Witnesses(
                negativity=neg,
                mutual_information_bits=mi,
                recovery_fidelity=fid,
            ),
        )
    reduced = partial_trace(scheme.state, labels)
    part = dealer_split(reduced.layout)
    neg = negativity(reduced, part)
    mi = mutual_information(reduced, ["D"], labels[1:]) if sub else 0.0
    prod = product_residual(reduced, part)
    if prod < tol:
        return SubsetClassification(
            sub,
            Status.FORBIDDEN,
            Witnesses(
                negativity=neg,
                mutual_information_bits=mi,
                decomposition_residual=prod,
            ),
        )
    if neg < tol:
        ens = certificate_for(scheme, sub, reduced, tol)
        if ens is not None:
            residual = verify_separable_decomposition(reduced, ens)
            if residual < tol:
                return SubsetClassification(
                    sub,
                    Status.INTERMEDIATE,
                    Witnesses(
                        negativity=neg,
                        mutual_information_bits=mi,
                        decomposition_residual=residual,
                    ),
                )
        if scheme.k == 1 and len(sub) == 1:
            # 2x2 system: PPT is a complete separability test.
            return SubsetClassification(
                sub,
                Status.INTERMEDIATE,
                Witnesses(negativity=neg, mutual_information_bits=mi),
            )
        return SubsetClassification(
            sub,
            Status.PPT_UNDETERMINED,
            Witnesses(negativity=neg, mutual_information_bits=mi),
        )
    return SubsetClassification(
        sub,
        Status.ENTANGLED_LEAK,
        Witnesses(negativity=neg, mutual_information_bits=mi),
    )


def _important_from_statuses(
    statuses: Mapping[frozenset[int], Status], n: int
) -> tuple[int, ...]:
    result = []
    for r in range(1, n + 1):
        for sub, status in statuses.items():
            if status is Status.AUTHORIZED and r in sub:
                if statuses[sub - {r}] is not Status.AUTHORIZED:
                    result.append(r)
                    break
    return tuple(result)


def important_shares(
    scheme: EntanglementSharingScheme, report: SchemeReport | None = None
) -> tuple[tuple[int, ...], int | None]:
    """Shares r for which some unauthorized set becomes authorized with r,
    plus the size q of the smallest one (None when no share is important).
    Every share is a single qubit here, so q is 1 whenever the set is
    nonempty."""
    if report is None:
        report = classify_all(scheme)
    return report.important_shares, report.q


def _access_invariants(statuses: Mapping[frozenset[int], Status], n: int) -> dict:
    auth = [s for s, st in statuses.items() if st is Status.AUTHORIZED]
    full = frozenset(range(1, n + 1))
    monotone = all(
        statuses[a | {r}] is Status.AUTHORIZED for a in auth for r in full - a
    )
    no_disjoint = all(
        a & b for a, b in combinations(auth, 2)
    ) if len(auth) > 1 else True
    complement_excluded = all(statuses[full - a] is not Status.AUTHORIZED for a in auth)
    return {
        "monotone": bool(monotone),
        "no_disjoint_authorized": bool(no_disjoint),
        "complement_unauthorized": bool(complement_excluded),
    }


def classify_all(
    scheme: EntanglementSharingScheme, tol: float | None = None
) -> SchemeReport:
    """Classify every subset of shares, smallest first, and assemble the report."""
    n = scheme.n
    classifications = []
    for size in range(n + 1):
        for combo in combinations(range(1, n + 1), size):
            classifications.append(classify_subset(scheme, combo, tol=tol))
    statuses = {c.subset: c.status for c in classifications}
    authorized = tuple(
        tuple(sorted(c.subset))
        for c in classifications
        if c.status is Status.AUTHORIZED
    )
    important = _important_from_statuses(statuses, n)
    q = 1 if important else None  # every share is a single qubit
    leak = any(c.status is Status.ENTANGLED_LEAK for c in classifications)
    theorem1 = _theorem1(scheme.ebits, q, leak)
    counts: dict[str, int] = {}
    for c in classifications:
        counts[c.status.value] = counts.get(c.status.value, 0) + 1
    return SchemeReport(
        code=scheme.code.name,
        n=n,
        k=scheme.k,
        classifications=tuple(classifications),
        authorized=authorized,
        important_shares=important,
        q=q,
        theorem1=theorem1,
        invariants=_access_invariants(statuses, n),
        status_counts=counts,
    )


def _theorem1(ebits: int, q: int | None, leak_confirmed: bool) -> Theorem1Verdict:
    bound = None if q is None else 2 * q
    within = bound is not None and ebits <= bound
    return Theorem1Verdict(
        ebits=ebits,
        q=q,
        bound=bound,
        saturated=bool(bound is not None and ebits == bound and not leak_confirmed),
        leak_predicted=bool(bound is not None and ebits > bound),
        leak_confirmed=leak_confirmed,
        consistent=bool(within or leak_confirmed),
    )


def theorem1_check(
    scheme: EntanglementSharingScheme, report: SchemeReport | None = None
) -> Theorem1Verdict:
    """Entanglement bound verdict; reuses a full report when supplied."""
    if report is None:
        report = classify_all(scheme)
    return report.theorem1


# -- explicit ensembles for the nine-share code ----------------------------


_TRIPLETS = (frozenset({1, 2, 3}), frozenset({4, 5, 6}), frozenset({7, 8, 9}))


def _triplet_counts(subset: frozenset[int]) -> tuple[int, int, int]:
    return tuple(len(subset & t) for t in _TRIPLETS)


def _ghz(sign: int) -> np.ndarray:
    v = np.zeros(8, dtype=complex)
    v[0] = 1.0
    v[7] = float(sign)
    return v / np.sqrt(2.0)


_PAIR_EVEN = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
_PAIR_ODD = np.diag([0.5, 0.0, 0.0, -0.5]).astype(complex)


def shor_class_ensemble(subset: Iterable[int]) -> SeparableEnsemble:
    """Separable decomposition of dealer+subset for the nine-share scheme.

    Two families: if a whole triplet is absent the dealer decoheres in its
    computational basis and the kept factors are GHZ projectors and
    classical pair mixtures; otherwise the dealer decoheres in the
    conjugate basis and the two branches are parity-constrained classical
    string mixtures.
    """
    sub = frozenset(int(i) for i in subset)
    if not sub <= frozenset(range(1, 10)):
        raise DimensionMismatch(f"subset {sorted(sub)} is not a set of nine-share indices")
    counts = _triplet_counts(sub)
    right_labels = tuple(str(i) for i in sorted(sub))
    if 0 in counts:
        factors_by_sign = []
        for sign in (1, -1):
            factor = np.array([[1.0]], dtype=complex)
            for c in counts:
                if c == 3:
                    g = _ghz(sign)
                    factor = np.kron(factor, np.outer(g, g.conj()))
                elif c == 2:
                    factor = np.kron(factor, _PAIR_EVEN)
                elif c == 1:
                    factor = np.kron(factor, np.eye(2, dtype=complex) / 2.0)
            factors_by_sign.append(factor)
        lefts = (np.diag([1.0, 0.0]).astype(complex), np.diag([0.0, 1.0]).astype(complex))
        return SeparableEnsemble(
            (0.5, 0.5), lefts, tuple(factors_by_sign), ("D",), right_labels
        )
    sym = np.array([[1.0]], dtype=complex)
    alt = np.array([[1.0]], dtype=complex)
    for c in counts:
        if c == 1:
            sym = np.kron(sym, np.eye(2, dtype=complex) / 2.0)
            alt = np.kron(alt, np.diag([0.5, -0.5]).astype(complex))
        elif c == 2:
            sym = np.kron(sym, _PAIR_EVEN)
            alt = np.kron(alt, _PAIR_ODD)
        else:
            raise DimensionMismatch(
                f"subset {sorted(sub)} keeps a whole triplet and part of every other;"
                " no classical-string form applies"
            )
    plus = np.full((2, 2), 0.5, dtype=complex)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    return SeparableEnsemble(
        (0.5, 0.5), (plus, minus), (sym + alt, sym - alt), ("D",), right_labels
    )


@dataclass(frozen=True)
class AppendixClassCheck:
    name: str
    count_patterns: tuple[tuple[int, int, int], ...]
    members: int
    status: str
    uniform: bool
    ensembles: tuple[tuple[tuple[int, ...], float], ...]


@dataclass(frozen=True)
class ShorAppendixReport:
    passed: bool
    classes: tuple[AppendixClassCheck, ...]
    # residual of rho(D,5..9) against rho(D,7,8,9) x rho(5,6): the pair
    # {5,6} decouples from the dealer-correlated triplet
    pair_independence_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "pair_independence_residual": self.pair_independence_residual,
            "classes": [
                {
                    "name": c.name,
                    "count_patterns": [list(p) for p in c.count_patterns],
                    "members": c.members,
                    "status": c.status,
                    "uniform": c.uniform,
                    "ensembles": [
                        {"subset": list(s), "residual": r} for s, r in c.ensembles
                    ],
                }
                for c in self.classes
            ],
        }


_SHOR_CLASSES: tuple[tuple[str, tuple[tuple[int, int, int], ...], tuple[tuple[int, ...], ...]], ...] = (
    (
        "whole_triplet",
        ((3, 0, 0), (3, 3, 0)),
        ((1, 2, 3), (7, 8, 9), (1, 2, 3, 4, 5, 6), (4, 5, 6, 7, 8, 9)),
    ),
    (
        "one_per_triplet",
        ((1, 1, 1), (2, 2, 2)),
        ((1, 4, 7), (2, 3, 5, 6, 8, 9), (3, 6, 9)),
    ),
    (
        "triplet_plus_one",
        ((3, 1, 0), (3, 2, 0)),
        ((1, 2, 3, 4), (5, 6, 7, 8, 9), (6, 7, 8, 9)),
    ),
    (
        "spread_two_one_one",
        ((2, 1, 1), (2, 2, 1)),
        ((1, 4, 7, 8), (2, 3, 5, 6, 9), (2, 3, 6, 9)),
    ),
)


def verify_shor_appendix(
    scheme: EntanglementSharingScheme, report: SchemeReport | None = None
) -> ShorAppendixReport:
    """Check the four unauthorized-but-correlated subset classes of the
    nine-share scheme: explicit separable ensembles for the listed
    representatives, and a uniform classification over each permutation
    orbit."""
    if scheme.n != 9 or scheme.k != 1:
        raise DimensionMismatch("appendix verification applies to the nine-share scheme")
    if report is None:
        report = classify_all(scheme)
    statuses = report.statuses()
    by_pattern: dict[tuple[int, int, int], list[frozenset[int]]] = {}
    for sub in statuses:
        by_pattern.setdefault(tuple(sorted(_triplet_counts(sub), reverse=True)), []).append(sub)
    checks = []
    all_ok = True
    for name, patterns, representatives in _SHOR_CLASSES:
        members: list[frozenset[int]] = []
        for pat in patterns:
            members.extend(by_pattern.get(tuple(sorted(pat, reverse=True)), []))
        observed = {statuses[m] for m in members}
        uniform = len(observed) == 1
        status = observed.pop().value if uniform else "mixed"
        ensembles = []
        for rep in representatives:
            reduced = partial_trace(scheme.state, ["D"] + [str(i) for i in sorted(rep)])
            ens = shor_class_ensemble(rep)
            residual = verify_separable_decomposition(reduced, ens)
            ensembles.append((tuple(sorted(rep)), float(residual)))
        ok = uniform and status == Status.INTERMEDIATE.value and all(
            r < DEFAULT_TOL.comparison for _, r in ensembles
        )
        all_ok = all_ok and ok
        checks.append(
            AppendixClassCheck(
                name=name,
                count_patterns=patterns,
                members=len(members),
                status=status,
                uniform=uniform,
                ensembles=tuple(ensembles),
            )
        )
    five = partial_trace(scheme.state, ["D", "5", "6", "7", "8", "9"])
    pair_free = product_residual(five, Bipartition(("D", "7", "8", "9"), ("5", "6")))
    all_ok = all_ok and pair_free < DEFAULT_TOL.comparison
    return ShorAppendixReport(
        passed=all_ok, classes=tuple(checks), pair_independence_residual=float(pair_free)
    )
