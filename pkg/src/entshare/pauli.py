"""Exact n-qubit Pauli algebra in symplectic (bit-vector) form.

A phased Pauli operator is stored as x/z bit vectors together with a power
of i, so products, inverses and commutation relations are computed without
any floating point. Dense matrices are produced only at the boundary to the
state engine.

Internal normal form:  i**phase_exp * prod_q X**x[q] Z**z[q].
The phase shown to users is relative to the named single-qubit operators
(Y = i X Z), so ``X * Z`` prints as ``-iY``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product as _iproduct
from typing import Iterable, Iterator

import numpy as np

from .errors import CapacityError, DimensionMismatch, PauliFormatError

DENSE_LIMIT = 12

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}
_LETTER_FOR_BITS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS_FOR_LETTER = {v: k for k, v in _LETTER_FOR_BITS.items()}
_PREFIX_FOR_PHASE = {0: "", 1: "i", 2: "-", 3: "-i"}
_PHASE_VALUES = {0: 1 + 0j, 1: 1j, 2: -1 + 0j, 3: -1j}


@dataclass(frozen=True)
class PauliString:
    """Phased Pauli operator on ``n`` qubits.

    ``x_bits``/``z_bits`` hold one bit per qubit; ``phase_exp`` is the power
    of i in the internal normal form (see module docstring), not the phase
    relative to the lettered string.
    """

    n: int
    x_bits: tuple[int, ...]
    z_bits: tuple[int, ...]
    phase_exp: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DimensionMismatch("need at least one qubit")
        if len(self.x_bits) != self.n or len(self.z_bits) != self.n:
            raise DimensionMismatch(
                f"bit vectors must have length {self.n}, "
                f"got {len(self.x_bits)} and {len(self.z_bits)}"
            )
        if any(b not in (0, 1) for b in self.x_bits + self.z_bits):
            raise PauliFormatError("bit vectors must contain only 0 and 1")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- construction ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, (0,) * n, (0,) * n, 0)

    @classmethod
    def from_string(cls, text: str) -> "PauliString":
        """Parse e.g. ``"XZIY"``, ``"-iXYZ"``, ``"+ZZ"``.

        Accepted prefixes: ``+``, ``-``, ``i``, ``+i``, ``-i`` (a Unicode
        minus is treated as ``-``). Any character outside the prefix and
        the alphabet IXYZ is rejected.
        """
        s = text.strip().replace("−", "-")
        sign = 1
        if s.startswith("+"):
            s = s[1:]
        elif s.startswith("-"):
            sign = -1
            s = s[1:]
        imag = False
        if s.startswith("i"):
            imag = True
            s = s[1:]
        if not s:
            raise PauliFormatError(f"no Pauli letters in {text!r}")
        xs, zs, ys = [], [], 0
        for ch in s:
            try:
                x, z = _BITS_FOR_LETTER[ch]
            except KeyError:
                raise PauliFormatError(f"invalid character {ch!r} in {text!r}") from None
            xs.append(x)
            zs.append(z)
            ys += x & z
        exp = (ys + (1 if imag else 0) + (2 if sign < 0 else 0)) % 4
        return cls(len(xs), tuple(xs), tuple(zs), exp)

    # -- presentation ------------------------------------------------------

    @property
    def y_count(self) -> int:
        return sum(x & z for x, z in zip(self.x_bits, self.z_bits))

    @property
    def phase(self) -> complex:
        """Phase relative to the lettered string (one of +1, -1, +i, -i)."""
        return _PHASE_VALUES[(self.phase_exp - self.y_count) % 4]

    def letters(self) -> str:
        return "".join(
            _LETTER_FOR_BITS[(x, z)] for x, z in zip(self.x_bits, self.z_bits)
        )

    def __str__(self) -> str:
        return _PREFIX_FOR_PHASE[(self.phase_exp - self.y_count) % 4] + self.letters()

    # -- group operations --------------------------------------------------

    def _require_same_n(self, other: "PauliString") -> None:
        if self.n != other.n:
            raise DimensionMismatch(
                f"operands act on {self.n} and {other.n} qubits"
            )

    def __mul__(self, other: "PauliString") -> "PauliString":
        self._require_same_n(other)
        # Moving every Z of the left factor past every X of the right factor
        # contributes (-1) per crossing; exponents then reduce mod 2 freely.
        crossings = sum(za & xb for za, xb in zip(self.z_bits, other.x_bits))
        exp = (self.phase_exp + other.phase_exp + 2 * crossings) % 4
        xs = tuple(a ^ b for a, b in zip(self.x_bits, other.x_bits))
        zs = tuple(a ^ b for a, b in zip(self.z_bits, other.z_bits))
        return PauliString(self.n, xs, zs, exp)

    def multiply(self, other: "PauliString") -> "PauliString":
        return self * other

    def inverse(self) -> "PauliString":
        flips = sum(x & z for x, z in zip(self.x_bits, self.z_bits))
        return PauliString(
            self.n, self.x_bits, self.z_bits, (-self.phase_exp + 2 * flips) % 4
        )

    def commutes(self, other: "PauliString") -> bool:
        self._require_same_n(other)
        overlap = sum(
            (xa & zb) ^ (za & xb)
            for xa, za, xb, zb in zip(
                self.x_bits, self.z_bits, other.x_bits, other.z_bits
            )
        )
        return overlap % 2 == 0

    def is_hermitian(self) -> bool:
        return (self.phase_exp - self.y_count) % 2 == 0

    # -- structure ---------------------------------------------------------

    def support(self) -> frozenset[int]:
        """1-based indices of qubits acted on non-trivially."""
        return frozenset(
            q + 1
            for q in range(self.n)
            if self.x_bits[q] | self.z_bits[q]
        )

    def weight(self) -> int:
        return len(self.support())

    def symplectic(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.x_bits, self.z_bits

    def to_dense(self, max_qubits: int = DENSE_LIMIT) -> np.ndarray:
        if self.n > max_qubits:
            raise CapacityError(
                f"{self.n} qubits exceeds the dense limit of {max_qubits}"
            )
        mat = reduce(np.kron, (_SINGLE[ch] for ch in self.letters()))
        return self.phase * mat


def single(n: int, qubit: int, kind: str) -> PauliString:
    """One-qubit operator ``kind`` at 1-based position ``qubit``, identity elsewhere."""
    if not 1 <= qubit <= n:
        raise DimensionMismatch(f"qubit {qubit} out of range for n={n}")
    if kind not in ("X", "Y", "Z"):
        raise PauliFormatError(f"kind must be X, Y or Z, got {kind!r}")
    letters = ["I"] * n
    letters[qubit - 1] = kind
    return PauliString.from_string("".join(letters))


def iter_paulis(n: int, qubits: Iterable[int] | None = None) -> Iterator[PauliString]:
    """All Hermitian sign-free Pauli strings supported inside ``qubits``.

    ``qubits`` uses 1-based positions; ``None`` means all positions. Yields
    4**m strings (identity first) where m is the support size.
    """
    positions = sorted(qubits) if qubits is not None else list(range(1, n + 1))
    for pos in positions:
        if not 1 <= pos <= n:
            raise DimensionMismatch(f"qubit {pos} out of range for n={n}")
    for combo in _iproduct("IXYZ", repeat=len(positions)):
        letters = ["I"] * n
        for pos, ch in zip(positions, combo):
            letters[pos - 1] = ch
        yield PauliString.from_string("".join(letters))
