"""Stabilizer code definitions, validation, and erasure tests.

Codeword bases are pinned two ways: against hand-built product-form
vectors where the structure is known, and against the defining algebraic
relations (stabilized by every generator, logical Z eigenbasis, logical
X permutation action) which hold for any correct construction.
"""

import itertools
import json

import numpy as np
import pytest

from entshare import (
    BUILTIN_NAMES,
    CodeValidationError,
    PauliString,
    StabilizerCode,
    UnknownCodeError,
    build_scheme,
    builtin,
    code_from_dict,
    code_to_dict,
    erasure_correctable,
    erasure_correctable_bruteforce,
    load_code,
)
from entshare.codes import validate

s2 = 1 / np.sqrt(2)


def test_builtin_names_and_unknown():
    assert set(BUILTIN_NAMES) == {"code_4_2_2", "code_6_4_2", "shor_9_1_3", "trivial_1_1"}
    with pytest.raises(UnknownCodeError):
        builtin("steane")


@pytest.mark.parametrize("name", sorted(BUILTIN_NAMES))
def test_builtin_codes_validate(name):
    rep = validate(builtin(name))
    assert rep.passed, rep.failures


@pytest.mark.parametrize("name", sorted(BUILTIN_NAMES))
def test_codeword_algebraic_relations(name):
    code = builtin(name)
    basis = code.codeword_matrix()
    d = 2**code.n
    assert basis.shape == (d, 2**code.k)
    # orthonormal columns
    assert np.allclose(basis.conj().T @ basis, np.eye(2**code.k))
    for g in code.generators:
        assert np.allclose(g.to_dense() @ basis, basis)
    for i, lz in enumerate(code.logical_z):
        signs = np.array([(-1.0) ** ((j >> (code.k - 1 - i)) & 1) for j in range(2**code.k)])
        assert np.allclose(lz.to_dense() @ basis, basis * signs)
    for i, lx in enumerate(code.logical_x):
        # the image can carry a j-dependent sign when the logical X
        # representative overlaps other encoded pairs, so compare moduli
        flip = 1 << (code.k - 1 - i)
        out = lx.to_dense() @ basis
        for j in range(2**code.k):
            assert abs(abs(np.vdot(basis[:, j ^ flip], out[:, j])) - 1) < 1e-9, (i, j)


def test_422_codewords_hand_derived():
    # solving the eigenvalue conditions by hand: C_00 is the +1 eigenvector
    # of ZZII and XXII inside span{0000+1111, 0011+1100, ...}
    basis = builtin("code_4_2_2").codeword_matrix()
    c00 = np.zeros(16)
    c00[[0b0000, 0b0011, 0b1100, 0b1111]] = 0.5
    assert np.allclose(basis[:, 0], c00)
    c01 = np.zeros(16)
    c01[[0b0000, 0b1111]] = 0.5
    c01[[0b0011, 0b1100]] = -0.5
    assert abs(abs(np.vdot(c01, basis[:, 0b01])) - 1) < 1e-12
    c10 = np.zeros(16)
    c10[[0b0101, 0b0110, 0b1001, 0b1010]] = 0.5
    assert abs(abs(np.vdot(c10, basis[:, 0b10])) - 1) < 1e-12


def test_shor_codewords_are_ghz_triples():
    basis = builtin("shor_9_1_3").codeword_matrix()
    ghz = {}
    for sign in (1, -1):
        v = np.zeros(8)
        v[0b000] = s2
        v[0b111] = sign * s2
        ghz[sign] = v
    for j, sign in ((0, 1), (1, -1)):
        want = np.kron(np.kron(ghz[sign], ghz[sign]), ghz[sign])
        assert abs(abs(np.vdot(want, basis[:, j])) - 1) < 1e-12


def test_642_codewords_pair_up_bell_states():
    code = builtin("code_6_4_2")
    basis = code.codeword_matrix()

    def bell_pair(parity, sign):
        v = np.zeros(4)
        if parity == 0:
            v[0b00], v[0b11] = s2, s2 * (1 if sign == 0 else -1)
        else:
            v[0b01], v[0b10] = s2, s2 * (1 if sign == 0 else -1)
        return v

    # label bits per encoded pair: (ZZ eigenvalue = parity, XX eigenvalue
    # = sign); third pair carries the bitwise XOR of the first two labels
    for j in range(16):
        f = (j >> 3) & 1, (j >> 2) & 1
        g = (j >> 1) & 1, j & 1
        h = f[0] ^ g[0], f[1] ^ g[1]
        want = np.kron(np.kron(bell_pair(*f), bell_pair(*g)), bell_pair(*h))
        assert abs(abs(np.vdot(want, basis[:, j])) - 1) < 1e-12, j


def test_validation_rejects_broken_codes():
    x4 = PauliString.from_string("XXXX")
    z4 = PauliString.from_string("ZZZZ")
    good = builtin("code_4_2_2")
    bad_anticommute = StabilizerCode(
        name="bad",
        n=4,
        k=2,
        d=2,
        generators=(x4, PauliString.from_string("ZIII")),
        logical_z=good.logical_z,
        logical_x=good.logical_x,
    )
    assert not validate(bad_anticommute).passed
    with pytest.raises(CodeValidationError):
        build_scheme(bad_anticommute)
    bad_pairing = StabilizerCode(
        name="bad",
        n=4,
        k=2,
        d=2,
        generators=(x4, z4),
        logical_z=good.logical_z,
        logical_x=(good.logical_x[1], good.logical_x[0]),
    )
    assert not validate(bad_pairing).passed
    bad_count = StabilizerCode(
        name="bad",
        n=4,
        k=2,
        d=2,
        generators=(x4,),
        logical_z=good.logical_z,
        logical_x=good.logical_x,
    )
    assert not validate(bad_count).passed


@pytest.mark.parametrize("name", sorted(BUILTIN_NAMES))
def test_erasure_symplectic_matches_bruteforce_small(name):
    code = builtin(name)
    for size in range(0, min(3, code.n) + 1):
        for erased in itertools.combinations(range(1, code.n + 1), size):
            assert erasure_correctable(code, erased) == erasure_correctable_bruteforce(
                code, erased
            ), (name, erased)


def test_distance_two_codes_fix_one_erasure_only():
    code = builtin("code_4_2_2")
    assert erasure_correctable(code, [2])
    assert not erasure_correctable(code, [1, 2])
    shor = builtin("shor_9_1_3")
    assert erasure_correctable(shor, [1, 2])
    assert erasure_correctable(shor, [1, 4])
    assert not erasure_correctable(shor, [1, 2, 3])
    assert erasure_correctable(shor, [1, 2, 4])


def test_json_round_trip(tmp_path):
    code = builtin("code_6_4_2")
    data = code_to_dict(code)
    again = code_from_dict(json.loads(json.dumps(data)))
    assert again == code
    path = tmp_path / "c.json"
    path.write_text(json.dumps(data))
    assert load_code(path) == code


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(CodeValidationError):
        load_code(path)
    path.write_text(json.dumps({"name": "x", "n": 2}))
    with pytest.raises(CodeValidationError):
        load_code(path)
