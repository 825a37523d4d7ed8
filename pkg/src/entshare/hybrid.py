"""Classical-key hybridization of an entanglement sharing scheme.

The dealer draws a key l, rotates branch j of the encoded state by the
phase exp(2 pi i jl / q), and hands the key to a threshold classical
secret sharing scheme. Without the key the players hold the key-averaged
(twirled) state, which carries no entanglement with the dealer for any
subset; with the key an authorized subset undoes the phases after
recovery. The classical layer is Shamir sharing over a prime field, with
perfect secrecy checked by enumeration at small sizes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .entanglement import SeparableEnsemble, verify_separable_decomposition
from .errors import (
    CapacityError,
    DimensionMismatch,
    ShareCountError,
    ShareIntegrityError,
)
from .schemes import (
    EntanglementSharingScheme,
    SchemeReport,
    Status,
    _recovery_pieces,
    classify_all,
    recover,
)
from .states import DensityMatrix, PureState, mes, partial_trace


@dataclass(frozen=True)
class PhaseKey:
    l: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 2:
            raise DimensionMismatch(f"key modulus must be at least 2, got {self.q}")
        if not 0 <= self.l < self.q:
            raise DimensionMismatch(f"key {self.l} outside Z_{self.q}")

    def phase(self, j: int) -> complex:
        return np.exp(2j * np.pi * j * self.l / self.q)

    def inverse(self) -> "PhaseKey":
        return PhaseKey((-self.l) % self.q, self.q)


def _dealer_dim(state: PureState) -> int:
    if "D" not in state.layout.labels:
        raise DimensionMismatch("state has no dealer subsystem")
    return 2 ** state.layout.qubits("D")


def phase_encrypt(state: PureState, key: PhaseKey) -> PureState:
    """Multiply the |j>_D branch by exp(2 pi i jl / q). Unitary; inverted
    by the negated key."""
    dim_d = _dealer_dim(state)
    if dim_d != key.q:
        raise DimensionMismatch(f"dealer dimension {dim_d} does not match key modulus {key.q}")
    phases = np.array([key.phase(j) for j in range(key.q)])
    amps = state.amplitudes.reshape(key.q, -1) * phases[:, None]
    return PureState(state.layout, amps.reshape(-1))


def key_twirl(state: PureState | DensityMatrix, q: int) -> DensityMatrix:
    """Uniform mixture over all q keys of the phase-encrypted state.

    All dealer off-diagonals between branches die, leaving the diagonal
    classically correlated mixture. The mixture is normalized to unit
    trace. Dealer-diagonal states are fixed points.
    """
    if isinstance(state, PureState):
        dim_d = _dealer_dim(state)
        if dim_d != q:
            raise DimensionMismatch(f"dealer dimension {dim_d} does not match modulus {q}")
        total = np.zeros((state.layout.dim, state.layout.dim), dtype=complex)
        for l in range(q):
            enc = phase_encrypt(state, PhaseKey(l, q)).amplitudes
            total += np.outer(enc, enc.conj())
        return DensityMatrix(state.layout, total / q)
    dim_d = 2 ** state.layout.qubits("D") if "D" in state.layout.labels else 0
    if dim_d != q:
        raise DimensionMismatch(f"dealer dimension {dim_d} does not match modulus {q}")
    rest = state.layout.dim // q
    total = np.zeros_like(state.matrix)
    for l in range(q):
        phases = np.array([np.exp(2j * np.pi * j * l / q) for j in range(q)])
        u = np.kron(np.diag(phases), np.eye(rest))
        total += u @ state.matrix @ u.conj().T
    return DensityMatrix(state.layout, total / q)


def twirl_certificate(
    scheme: EntanglementSharingScheme, subset: Iterable[int]
) -> tuple[SeparableEnsemble, float]:
    """Diagonal-ensemble certificate for the key-unknown state of D+subset.

    The ensemble (1/q) sum_j |j><j| x tr(|C_j><C_j|) is built straight from
    the codewords and checked against an independently computed reduction
    of the twirled state; returns it with the entrywise residual.
    """
    sub = sorted(frozenset(int(i) for i in subset))
    if any(not 1 <= i <= scheme.n for i in sub):
        raise DimensionMismatch(f"share indices {sub} out of range for n={scheme.n}")
    q = 2 ** scheme.k
    labels = ["D"] + [str(i) for i in sub]
    keep = [str(i) for i in sub]
    lefts = []
    rights = []
    for j, word in enumerate(scheme.code.codeword_basis()):
        point = np.zeros((q, q), dtype=complex)
        point[j, j] = 1.0
        lefts.append(point)
        if keep:
            rights.append(partial_trace(word, keep).matrix)
        else:
            rights.append(np.ones((1, 1), dtype=complex))
    ensemble = SeparableEnsemble(
        tuple(1.0 / q for _ in range(q)),
        tuple(lefts),
        tuple(rights),
        ("D",),
        tuple(keep),
    )
    # independent route: average the reductions of each encrypted state
    dim = 2 ** (scheme.k + len(sub))
    avg = np.zeros((dim, dim), dtype=complex)
    for l in range(q):
        enc = phase_encrypt(scheme.state, PhaseKey(l, q))
        avg += partial_trace(enc, labels).matrix
    reduced = DensityMatrix(partial_trace(scheme.state, labels).layout, avg / q)
    residual = verify_separable_decomposition(reduced, ensemble)
    return ensemble, float(residual)


def key_known_fidelity(
    scheme: EntanglementSharingScheme, subset: Iterable[int], key: PhaseKey
) -> float:
    """Recovery fidelity for an authorized subset holding the key.

    The phase correction commutes through the recovery channel, so the
    corrected fidelity equals the uncorrected fidelity measured against
    the encrypted target; both collapse to tr(N tau N tau) / 2**k on the
    encrypted reduced state.
    """
    sub = frozenset(int(i) for i in subset)
    enc = phase_encrypt(scheme.state, key)
    tau, big_n = _recovery_pieces(scheme, sub, enc)
    g = big_n @ tau @ big_n
    val = np.einsum("ij,ji->", g, tau).real / 2 ** scheme.k
    return float(min(max(val, 0.0), 1.0))


def recover_with_key(
    scheme: EntanglementSharingScheme, subset: Iterable[int], key: PhaseKey
) -> tuple[DensityMatrix, float]:
    """Full key-known recovery: decode the encrypted state, then undo the
    key phases on the decoded register. Returns the corrected state and
    its fidelity with the dealer MES."""
    enc = phase_encrypt(scheme.state, key)
    decoded, _ = recover(scheme, subset, state=enc)
    q = 2 ** scheme.k
    phases = np.array([key.inverse().phase(j) for j in range(q)])
    correction = np.kron(np.eye(q), np.diag(phases))
    fixed = correction @ decoded.matrix @ correction.conj().T
    dm = DensityMatrix(decoded.layout, fixed)
    target = mes(scheme.k, ("D", "R"))
    fid = float(np.vdot(target.amplitudes, fixed @ target.amplitudes).real)
    return dm, min(max(fid, 0.0), 1.0)


# -- classical layer -------------------------------------------------------


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def next_prime(m: int) -> int:
    """Smallest prime strictly greater than m."""
    c = m + 1
    while not is_prime(c):
        c += 1
    return c


def default_prime(n: int, q: int) -> int:
    """Smallest field size fitting both the player count and the key space."""
    return next_prime(max(n, q))


@dataclass(frozen=True)
class ClassicalShareSet:
    p: int
    t: int
    shares: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        xs = [x for x, _ in self.shares]
        if len(set(xs)) != len(xs):
            raise ShareIntegrityError("duplicate share indices")
        if any(not 0 < x < self.p for x, _ in self.shares):
            raise ShareIntegrityError("share indices must be nonzero field elements")
        if any(not 0 <= y < self.p for _, y in self.shares):
            raise ShareIntegrityError("share values outside the field")

    def subset(self, players: Iterable[int]) -> "ClassicalShareSet":
        chosen = frozenset(players)
        kept = tuple((x, y) for x, y in self.shares if x in chosen)
        return ClassicalShareSet(self.p, self.t, kept)

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t, "shares": [[x, y] for x, y in self.shares]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ClassicalShareSet":
        return cls(
            int(data["p"]),
            int(data["t"]),
            tuple((int(x), int(y)) for x, y in data["shares"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ClassicalShareSet":
        return cls.from_dict(json.loads(text))


def shamir_share(
    secret: int, t: int, n: int, p: int, seed: int | None = None
) -> ClassicalShareSet:
    """Split a secret into n shares with threshold t over GF(p).

    A degree-(t-1) polynomial with constant term `secret` and seeded
    random higher coefficients is evaluated at the points 1..n.
    """
    if not is_prime(p):
        raise DimensionMismatch(f"modulus {p} is not prime")
    if not 1 <= t <= n:
        raise DimensionMismatch(f"threshold {t} outside 1..{n}")
    if n >= p:
        raise DimensionMismatch(f"need n < p for distinct points, got n={n}, p={p}")
    if not 0 <= secret < p:
        raise DimensionMismatch(f"secret {secret} outside the field of size {p}")
    rng = np.random.default_rng(seed)
    coeffs = [secret] + [int(c) for c in rng.integers(0, p, size=t - 1)]
    shares = []
    for x in range(1, n + 1):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        shares.append((x, acc))
    return ClassicalShareSet(p, t, tuple(shares))


def _lagrange_eval(points: Sequence[tuple[int, int]], x: int, p: int) -> int:
    total = 0
    for i, (xi, yi) in enumerate(points):
        num, den = 1, 1
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * ((x - xj) % p) % p
            den = den * ((xi - xj) % p) % p
        total = (total + yi * num * pow(den, p - 2, p)) % p
    return total


def shamir_reconstruct(shares: ClassicalShareSet) -> int:
    """Interpolate the secret at 0; extra shares beyond the threshold must
    agree with the interpolated polynomial."""
    if len(shares.shares) < shares.t:
        raise ShareCountError(
            f"{len(shares.shares)} shares given, {shares.t} required"
        )
    base = shares.shares[: shares.t]
    for x, y in shares.shares[shares.t :]:
        if _lagrange_eval(base, x, shares.p) != y:
            raise ShareIntegrityError(f"share at point {x} is inconsistent")
    return _lagrange_eval(base, 0, shares.p)


def verify_shamir_secrecy(t: int, n: int, p: int) -> dict:
    """Exhaustively confirm that any t-1 shares reveal nothing.

    For every (t-1)-subset of points and every secret, the view over all
    coefficient choices hits every possible value tuple exactly once, so
    the view distribution is secret independent. Enumeration only; sized
    for small primes.
    """
    if not is_prime(p):
        raise DimensionMismatch(f"modulus {p} is not prime")
    if not 1 <= t <= n < p:
        raise DimensionMismatch(f"invalid t={t}, n={n}, p={p}")
    space = p ** (t - 1)
    work = comb(n, t - 1) * space * p
    if work > 50_000_000:
        raise CapacityError(f"secrecy enumeration of {work} cases is out of desk scale")
    if t == 1:
        return {"perfect": True, "p": p, "t": t, "n": n, "subsets_checked": 0, "coefficient_space": 1}
    coeff_grid = np.array(list(product(range(p), repeat=t - 1)), dtype=np.int64)
    perfect = True
    checked = 0
    for points in combinations(range(1, n + 1), t - 1):
        powers = np.array(
            [[pow(x, e, p) for e in range(1, t)] for x in points], dtype=np.int64
        )
        base_views = coeff_grid @ powers.T % p
        for secret in range(p):
            views = (base_views + secret) % p
            codes = np.zeros(len(views), dtype=np.int64)
            for col in range(views.shape[1]):
                codes = codes * p + views[:, col]
            if len(np.unique(codes)) != space:
                perfect = False
        checked += 1
    return {
        "perfect": perfect,
        "p": p,
        "t": t,
        "n": n,
        "subsets_checked": checked,
        "coefficient_space": space,
    }


# -- combined analysis -----------------------------------------------------


@dataclass(frozen=True)
class HybridSubsetView:
    subset: tuple[int, ...]
    quantum_authorized: bool
    key_shares: int
    unlocked: bool
    key_unknown_residual: float
    key_known_fidelity: float | None

    def to_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "quantum_authorized": self.quantum_authorized,
            "key_shares": self.key_shares,
            "unlocked": self.unlocked,
            "key_unknown_residual": self.key_unknown_residual,
            "key_known_fidelity": self.key_known_fidelity,
        }


@dataclass(frozen=True)
class HybridReport:
    code: str
    t: int
    p: int
    q: int
    key: int
    seed: int | None
    classical_shares: ClassicalShareSet
    views: tuple[HybridSubsetView, ...]
    unlocked_subsets: tuple[tuple[int, ...], ...]
    all_key_unknown_certified: bool
    min_unlocked_fidelity: float | None
    key_roundtrip_ok: bool
    secrecy: dict

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "t": self.t,
            "p": self.p,
            "q": self.q,
            "key": self.key,
            "seed": self.seed,
            "classical_shares": self.classical_shares.to_dict(),
            "views": [v.to_dict() for v in self.views],
            "unlocked_subsets": [list(s) for s in self.unlocked_subsets],
            "all_key_unknown_certified": self.all_key_unknown_certified,
            "min_unlocked_fidelity": self.min_unlocked_fidelity,
            "key_roundtrip_ok": self.key_roundtrip_ok,
            "secrecy": self.secrecy,
        }


def hybrid_analyze(
    scheme: EntanglementSharingScheme,
    t: int,
    seed: int | None = 0,
    report: SchemeReport | None = None,
) -> HybridReport:
    """Two views of every subset under a threshold-t classical key layer.

    Key-unknown: the subset sees the twirled state; its separability
    certificate residual is recorded. Key-known: subsets that are both
    quantum authorized and hold at least t key shares get their corrected
    recovery fidelity. The effective access structure is the intersection
    of the quantum one with the t-of-n threshold.
    """
    n, q = scheme.n, 2 ** scheme.k
    if not 1 <= t <= n:
        raise DimensionMismatch(f"threshold {t} outside 1..{n}")
    if report is None:
        report = classify_all(scheme)
    statuses = report.statuses()
    p = default_prime(n, q)
    rng = np.random.default_rng(seed)
    key = PhaseKey(int(rng.integers(q)), q)
    shares = shamir_share(key.l, t, n, p, seed=int(rng.integers(2 ** 32)))
    roundtrip = shamir_reconstruct(shares) == key.l
    views = []
    for size in range(n + 1):
        for combo in combinations(range(1, n + 1), size):
            sub = frozenset(combo)
            auth = statuses[sub] is Status.AUTHORIZED
            unlocked = auth and size >= t
            _, residual = twirl_certificate(scheme, combo)
            fid = key_known_fidelity(scheme, combo, key) if unlocked else None
            views.append(
                HybridSubsetView(
                    subset=combo,
                    quantum_authorized=auth,
                    key_shares=size,
                    unlocked=unlocked,
                    key_unknown_residual=residual,
                    key_known_fidelity=fid,
                )
            )
    unlocked_sets = tuple(v.subset for v in views if v.unlocked)
    fids = [v.key_known_fidelity for v in views if v.key_known_fidelity is not None]
    try:
        secrecy = verify_shamir_secrecy(t, n, p)
    except CapacityError as exc:
        secrecy = {"perfect": None, "skipped": str(exc)}
    return HybridReport(
        code=scheme.code.name,
        t=t,
        p=p,
        q=q,
        key=key.l,
        seed=seed,
        classical_shares=shares,
        views=tuple(views),
        unlocked_subsets=unlocked_sets,
        all_key_unknown_certified=all(
            v.key_unknown_residual < 1e-9 for v in views
        ),
        min_unlocked_fidelity=min(fids) if fids else None,
        key_roundtrip_ok=bool(roundtrip),
        secrecy=secrecy,
    )
