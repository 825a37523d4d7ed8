"""Stabilizer codes: validation, codeword bases, erasure correctability.

The codeword basis is pinned by a fixed convention so every downstream
object (encoded states, recovery targets, report entries) is reproducible:
|C_j> is the joint eigenvector of the logical Z operators whose eigenvalue
under logical_z[i] is (-1)**b_i, where j = b_0 b_1 ... b_{k-1} in binary
with b_0 most significant, and the first nonzero amplitude in
computational-basis order is made real and positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapacityError,
    CodeValidationError,
    DimensionMismatch,
    UnknownCodeError,
)
from .pauli import DENSE_LIMIT, PauliString, iter_paulis


@dataclass
class StabilizerCode:
    """An [[n, k, d]] stabilizer code with a chosen logical frame.

    Treated as immutable after construction; the codeword basis is computed
    lazily and cached on the instance.
    """

    name: str
    n: int
    k: int
    d: int
    generators: tuple[PauliString, ...]
    logical_z: tuple[PauliString, ...]
    logical_x: tuple[PauliString, ...]
    _basis: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.generators = tuple(self.generators)
        self.logical_z = tuple(self.logical_z)
        self.logical_x = tuple(self.logical_x)
        for p in self.generators + self.logical_z + self.logical_x:
            if p.n != self.n:
                raise DimensionMismatch(
                    f"operator {p} acts on {p.n} qubits, code has n={self.n}"
                )

    def codeword_matrix(self) -> np.ndarray:
        """2**n x 2**k matrix whose columns are the codewords |C_j>."""
        if self._basis is None:
            self._basis = _codeword_matrix(self)
        return self._basis

    def codeword_basis(self) -> list["PureState"]:
        from .states import PureState, SystemLayout

        layout = SystemLayout(tuple((str(i), 1) for i in range(1, self.n + 1)))
        basis = self.codeword_matrix()
        return [PureState(layout, basis[:, j]) for j in range(2 ** self.k)]

    def code_projector(self) -> np.ndarray:
        basis = self.codeword_matrix()
        return basis @ basis.conj().T


def _codeword_matrix(code: StabilizerCode) -> np.ndarray:
    if code.n > DENSE_LIMIT:
        raise CapacityError(f"n={code.n} exceeds the dense limit of {DENSE_LIMIT}")
    dim = 2 ** code.n
    proj = np.eye(dim, dtype=complex)
    for g in code.generators:
        proj = proj @ (np.eye(dim) + g.to_dense()) / 2.0
    zbars = [z.to_dense() for z in code.logical_z]
    cols = []
    for j in range(2 ** code.k):
        pj = proj
        for i, zbar in enumerate(zbars):
            bit = (j >> (code.k - 1 - i)) & 1
            sign = -1.0 if bit else 1.0
            pj = pj @ (np.eye(dim) + sign * zbar) / 2.0
        # pj is now a rank-1 projector; its strongest column is the codeword.
        pivot = int(np.argmax(np.real(np.diagonal(pj))))
        v = pj[:, pivot]
        norm = float(np.linalg.norm(v))
        if norm < 1e-8:
            raise CodeValidationError(
                f"code {code.name!r}: eigenvalue pattern {j} selects no codeword"
            )
        v = v / norm
        first = int(np.argmax(np.abs(v) > 1e-10))
        v = v * (v[first].conj() / abs(v[first]))
        cols.append(v)
    basis = np.column_stack(cols)
    gram = basis.conj().T @ basis
    if np.max(np.abs(gram - np.eye(2 ** code.k))) > 1e-9:
        raise CodeValidationError(f"code {code.name!r}: codeword basis is not orthonormal")
    return basis


@dataclass
class ValidationReport:
    passed: bool
    failures: list[str]


def validate(code: StabilizerCode) -> ValidationReport:
    """Check the stabilizer group structure and the logical frame."""
    failures: list[str] = []
    gens = code.generators
    if len(gens) != code.n - code.k:
        failures.append(
            f"expected {code.n - code.k} generators, got {len(gens)}"
        )
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if not gens[a].commutes(gens[b]):
                failures.append(f"generators {gens[a]} and {gens[b]} anticommute")
    if gens and _gf2_rank([_symplectic_mask(g) for g in gens]) != len(gens):
        failures.append("generators are not independent over GF(2)")
    if len(code.logical_z) != code.k or len(code.logical_x) != code.k:
        failures.append(
            f"expected {code.k} logical Z and X operators, "
            f"got {len(code.logical_z)} and {len(code.logical_x)}"
        )
    else:
        for kind, ops in (("Z", code.logical_z), ("X", code.logical_x)):
            for op in ops:
                for g in gens:
                    if not op.commutes(g):
                        failures.append(f"logical {kind} {op} anticommutes with generator {g}")
        for i, zi in enumerate(code.logical_z):
            for j, xj in enumerate(code.logical_x):
                want = i != j
                if zi.commutes(xj) != want:
                    rel = "commute" if want else "anticommute"
                    failures.append(f"logical pair Z[{i}], X[{j}] must {rel}")
        for ops in (code.logical_z, code.logical_x):
            for i in range(len(ops)):
                for j in range(i + 1, len(ops)):
                    if not ops[i].commutes(ops[j]):
                        failures.append(f"logicals {ops[i]} and {ops[j]} anticommute")
    if not failures and code.n <= DENSE_LIMIT:
        try:
            basis = code.codeword_matrix()
        except CodeValidationError as exc:
            failures.append(str(exc))
        else:
            for g in code.generators:
                if np.max(np.abs(g.to_dense() @ basis - basis)) > 1e-9:
                    failures.append(f"generator {g} does not stabilize the codeword basis")
    return ValidationReport(passed=not failures, failures=failures)


# -- erasure correctability -----------------------------------------------


def _symplectic_mask(p: PauliString) -> int:
    mask = 0
    for q in range(p.n):
        if p.x_bits[q]:
            mask |= 1 << q
        if p.z_bits[q]:
            mask |= 1 << (p.n + q)
    return mask


def _gf2_rank(rows: Iterable[int]) -> int:
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for piv in pivots:
            row = min(row, row ^ piv)
        if row:
            pivots.append(row)
            pivots.sort(reverse=True)
            rank += 1
    return rank


def _check_share_subset(code: StabilizerCode, subset: Iterable[int]) -> frozenset[int]:
    kset = frozenset(int(i) for i in subset)
    bad = [i for i in kset if not 1 <= i <= code.n]
    if bad:
        raise DimensionMismatch(f"share indices {sorted(bad)} out of range for n={code.n}")
    return kset


def erasure_correctable(code: StabilizerCode, erased: Iterable[int]) -> bool:
    """Whether losing the (1-based) qubits in ``erased`` is correctable.

    True exactly when every Pauli supported inside the erased set either
    anticommutes with some generator or acts trivially on the code space;
    decided by two GF(2) rank computations.
    """
    kset = _check_share_subset(code, erased)
    if not kset:
        return True
    positions = sorted(q - 1 for q in kset)
    m = len(positions)
    # Commutation of an unknown Pauli v supported on K with each generator,
    # as linear forms in v's x/z bits.
    comm_rows = []
    for g in code.generators:
        row = 0
        for c, q in enumerate(positions):
            if g.z_bits[q]:
                row |= 1 << c
            if g.x_bits[q]:
                row |= 1 << (m + c)
        comm_rows.append(row)
    dim_kernel = 2 * m - _gf2_rank(comm_rows)
    # Stabilizer elements supported inside K: combinations of generators
    # that vanish on the complement.
    outside = [q for q in range(code.n) if q + 1 not in kset]
    out_rows = []
    for g in code.generators:
        row = 0
        for c, q in enumerate(outside):
            if g.x_bits[q]:
                row |= 1 << c
            if g.z_bits[q]:
                row |= 1 << (len(outside) + c)
        out_rows.append(row)
    dim_stab = len(code.generators) - _gf2_rank(out_rows)
    return dim_kernel == dim_stab


def erasure_correctable_bruteforce(code: StabilizerCode, erased: Iterable[int]) -> bool:
    """Exhaustive 4**|K| check of the same property via codeword action.

    Independent of the symplectic route: every Pauli supported on the
    erased set is applied to the codeword basis, and the code is deemed
    correctable when each one either maps the code space to an orthogonal
    sector or acts as a multiple of identity on it.
    """
    kset = _check_share_subset(code, erased)
    if len(kset) > 6:
        raise CapacityError("brute-force oracle is limited to 6 erased qubits")
    basis = code.codeword_matrix()
    dk = 2 ** code.k
    eye = np.eye(dk)
    rows = np.arange(2 ** code.n)
    for p in iter_paulis(code.n, kset):
        if p.weight() == 0:
            continue
        # P|b> = i^phase * (-1)^(z.b) |b xor x>, applied rowwise to the basis
        xmask = zmask = 0
        for q in range(code.n):
            bit = 1 << (code.n - 1 - q)
            if p.x_bits[q]:
                xmask |= bit
            if p.z_bits[q]:
                zmask |= bit
        signs = 1.0 - 2.0 * (np.bitwise_count(rows & zmask) & 1)
        moved = (signs[:, None] * basis)[rows ^ xmask]
        action = basis.conj().T @ moved
        if np.max(np.abs(action)) < 1e-9:
            continue  # detectable: anticommutes with a stabilizer
        scale = np.trace(action) / dk
        if np.max(np.abs(action - scale * eye)) > 1e-9:
            return False
    return True


# -- built-in codes and serialization --------------------------------------


def _make(name: str, n: int, k: int, d: int,
          gens: Sequence[str], lz: Sequence[str], lx: Sequence[str]) -> StabilizerCode:
    return StabilizerCode(
        name=name, n=n, k=k, d=d,
        generators=tuple(PauliString.from_string(s) for s in gens),
        logical_z=tuple(PauliString.from_string(s) for s in lz),
        logical_x=tuple(PauliString.from_string(s) for s in lx),
    )


_BUILTIN_SPECS = {
    "trivial_1_1": dict(
        n=1, k=1, d=1, gens=(), lz=("Z",), lx=("X",),
    ),
    "code_4_2_2": dict(
        n=4, k=2, d=2,
        gens=("XXXX", "ZZZZ"),
        lz=("ZZII", "XXII"),
        lx=("XIXI", "ZIZI"),
    ),
    "code_6_4_2": dict(
        n=6, k=4, d=2,
        gens=("XXXXXX", "ZZZZZZ"),
        lz=("ZZIIII", "XXIIII", "IIZZII", "IIXXII"),
        lx=("XIIIXI", "ZIIIZI", "IIXIIX", "IIZIIZ"),
    ),
    "shor_9_1_3": dict(
        n=9, k=1, d=3,
        gens=(
            "ZZIIIIIII", "IZZIIIIII",
            "IIIZZIIII", "IIIIZZIII",
            "IIIIIIZZI", "IIIIIIIZZ",
            "XXXXXXIII", "IIIXXXXXX",
        ),
        lz=("XXXIIIIII",),
        lx=("ZIIZIIZII",),
    ),
}

BUILTIN_NAMES = tuple(sorted(_BUILTIN_SPECS))


@lru_cache(maxsize=None)
def builtin(name: str) -> StabilizerCode:
    """Shared instance of a built-in code (codeword basis cached with it)."""
    try:
        spec = _BUILTIN_SPECS[name]
    except KeyError:
        raise UnknownCodeError(
            f"unknown code {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        ) from None
    return _make(name, **spec)


def code_to_dict(code: StabilizerCode) -> dict:
    return {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "d": code.d,
        "generators": [str(g) for g in code.generators],
        "logical_z": [str(p) for p in code.logical_z],
        "logical_x": [str(p) for p in code.logical_x],
    }


def code_from_dict(data: dict) -> StabilizerCode:
    try:
        code = _make(
            str(data["name"]), int(data["n"]), int(data["k"]), int(data["d"]),
            data["generators"], data["logical_z"], data["logical_x"],
        )
    except KeyError as exc:
        raise CodeValidationError(f"code definition missing field {exc}") from None
    report = validate(code)
    if not report.passed:
        raise CodeValidationError(
            "invalid code definition: " + "; ".join(report.failures)
        )
    return code


def load_code(path: str | Path) -> StabilizerCode:
    """Read a code definition from a JSON file and validate it."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CodeValidationError(f"cannot read code file {path}: {exc}") from None
    if not isinstance(data, dict):
        raise CodeValidationError("code file must contain a JSON object")
    return code_from_dict(data)
