"""Subset classification, recovery, and the nine-share taxonomy."""

import itertools
from collections import Counter, defaultdict

import numpy as np
import pytest

from entshare import (
    AuthorizationError,
    Status,
    SystemLayout,
    UnknownLabelError,
    build_scheme,
    builtin,
    certificate_for,
    classify_all,
    classify_subset,
    erasure_correctable,
    fidelity,
    important_shares,
    mes,
    partial_trace,
    petz_kraus_operators,
    recover,
    shor_class_ensemble,
    theorem1_check,
    verify_separable_decomposition,
    verify_shor_appendix,
)
from entshare.states import permute_qubit_axes


def statuses_by_subset(report):
    return {c.subset: c.status for c in report.classifications}


# -- [[4,2,2]] -------------------------------------------------------------


def test_422_counts_and_membership(report_422):
    assert report_422.status_counts == {"Authorized": 5, "Intermediate": 6, "Forbidden": 5}
    by = statuses_by_subset(report_422)
    assert by[frozenset()] is Status.FORBIDDEN
    for i in range(1, 5):
        assert by[frozenset({i})] is Status.FORBIDDEN
    for pair in itertools.combinations(range(1, 5), 2):
        assert by[frozenset(pair)] is Status.INTERMEDIATE
    for triple in itertools.combinations(range(1, 5), 3):
        assert by[frozenset(triple)] is Status.AUTHORIZED
    assert by[frozenset({1, 2, 3, 4})] is Status.AUTHORIZED


def test_authorized_iff_complement_correctable(report_422, scheme_422):
    by = statuses_by_subset(report_422)
    code = scheme_422.code
    for sub, status in by.items():
        comp = frozenset(range(1, 5)) - sub
        assert (status is Status.AUTHORIZED) == erasure_correctable(code, comp)


def test_422_witness_quality(report_422):
    for c in report_422.classifications:
        if c.status is Status.AUTHORIZED:
            assert c.witnesses.recovery_fidelity >= 1 - 1e-9
        elif c.status is Status.INTERMEDIATE:
            assert c.witnesses.decomposition_residual < 1e-9
            assert c.witnesses.negativity < 1e-9
        else:
            assert c.witnesses.decomposition_residual < 1e-9  # product residual
    mi = {c.subset: c.witnesses.mutual_information_bits for c in report_422.classifications}
    assert mi[frozenset({1, 2})] == pytest.approx(2.0)
    assert mi[frozenset({1})] == pytest.approx(0.0, abs=1e-10)


def test_classify_rejects_unknown_shares(scheme_422):
    with pytest.raises(UnknownLabelError):
        classify_subset(scheme_422, [5])
    with pytest.raises(UnknownLabelError):
        classify_subset(scheme_422, [0, 1])


def test_recovery_produces_dealer_mes(scheme_422):
    for sub in ([1, 2, 3], [2, 3, 4], [1, 2, 3, 4]):
        dm, fid = recover(scheme_422, sub)
        assert fid >= 1 - 1e-9
        assert dm.layout.subsystems == (("D", 2), ("R", 2))
        assert fidelity(mes(2, ("D", "R")), dm) >= 1 - 1e-9
    with pytest.raises(AuthorizationError):
        recover(scheme_422, [1, 2])


def test_kraus_channel_matches_collapsed_recovery(scheme_422):
    # apply the explicit operators to the kept marginal (erased slot held
    # as unnormalized identity) and compare with the encoded pure state
    code = scheme_422.code
    for erased_share in (4, 2):
        erased = [erased_share]
        kept_labels = ["D"] + [str(s) for s in range(1, 5) if s != erased_share]
        tau = partial_trace(scheme_422.state, kept_labels)
        inp = np.kron(tau.matrix, np.eye(2))
        # qubit order is dealer(2), kept shares, erased; permute to 1..4
        share_seq = [s for s in range(1, 5) if s != erased_share] + erased
        old_of = {s: 2 + i for i, s in enumerate(share_seq)}
        inp = permute_qubit_axes(inp, [0, 1] + [old_of[s] for s in range(1, 5)])
        out = np.zeros_like(inp)
        for r in petz_kraus_operators(code, erased):
            big = np.kron(np.eye(4), r)
            out += big @ inp @ big.conj().T
        want = np.outer(scheme_422.state.amplitudes, scheme_422.state.amplitudes.conj())
        assert abs(np.trace(out) - 1) < 1e-9
        assert np.max(np.abs(out - want)) < 1e-9


def test_certificate_for_pair_subset(scheme_422):
    reduced = partial_trace(scheme_422.state, ["D", "1", "3"])
    ens = certificate_for(scheme_422, frozenset({1, 3}), reduced, 1e-9)
    assert ens is not None
    assert verify_separable_decomposition(reduced, ens) < 1e-9


def test_theorem1_saturation(scheme_422, report_422, scheme_642, report_642, scheme_shor, report_shor):
    v = theorem1_check(scheme_422, report_422)
    assert (v.ebits, v.bound, v.saturated, v.consistent) == (2, 2, True, True)
    v = theorem1_check(scheme_shor, report_shor)
    assert (v.ebits, v.bound, v.saturated, v.consistent) == (1, 2, False, True)
    v = theorem1_check(scheme_642, report_642)
    assert v.ebits == 4 and v.bound == 2
    assert v.leak_predicted and v.leak_confirmed and v.consistent
    assert not v.saturated


def test_important_shares_all_builtin(scheme_422, scheme_642, scheme_shor):
    for scheme, n in ((scheme_422, 4), (scheme_642, 6), (scheme_shor, 9)):
        shares, q = important_shares(scheme)
        assert tuple(shares) == tuple(range(1, n + 1))
        assert q == 1


def test_access_invariants_hold(report_422, report_shor, report_642):
    for rep in (report_422, report_shor, report_642):
        assert rep.invariants == {
            "monotone": True,
            "no_disjoint_authorized": True,
            "complement_unauthorized": True,
        }


def test_trivial_code_scheme(scheme_trivial):
    rep = classify_all(scheme_trivial)
    by = statuses_by_subset(rep)
    assert by == {frozenset(): Status.FORBIDDEN, frozenset({1}): Status.AUTHORIZED}
    assert rep.theorem1.consistent and not rep.theorem1.saturated


# -- [[6,4,2]] -------------------------------------------------------------


def test_642_leak_structure(report_642):
    by = statuses_by_subset(report_642)
    for sub, status in by.items():
        want = {
            0: Status.FORBIDDEN,
            1: Status.FORBIDDEN,
            2: Status.INTERMEDIATE,
            3: Status.ENTANGLED_LEAK,
            4: Status.ENTANGLED_LEAK,
            5: Status.AUTHORIZED,
            6: Status.AUTHORIZED,
        }[len(sub)]
        assert status is want, sorted(sub)


def test_642_four_player_negativity(report_642):
    for c in report_642.classifications:
        if len(c.subset) == 4:
            assert c.witnesses.negativity > 1e-3


# -- Shor code taxonomy ----------------------------------------------------

TRIPLETS = (frozenset({1, 2, 3}), frozenset({4, 5, 6}), frozenset({7, 8, 9}))


def pattern(sub):
    return tuple(sorted((len(sub & t) for t in TRIPLETS), reverse=True))


def test_shor_counts(report_shor):
    assert len(report_shor.classifications) == 512
    assert report_shor.status_counts == {
        "Authorized": 127,
        "Intermediate": 258,
        "Forbidden": 127,
    }


def test_shor_status_depends_only_on_triplet_pattern(report_shor):
    seen = {}
    for c in report_shor.classifications:
        p = pattern(c.subset)
        if p in seen:
            assert seen[p] == c.status, (sorted(c.subset), p)
        seen[p] = c.status


def test_shor_authorized_patterns_match_correctable_erasures(report_shor):
    by = statuses_by_subset(report_shor)
    auth_patterns = {pattern(s) for s, st in by.items() if st is Status.AUTHORIZED}
    # complements of: <=2 erasures anywhere, 2 in one triplet + 1 elsewhere,
    # 2 + 2 in different triplets
    assert auth_patterns == {
        (3, 3, 3),
        (3, 3, 2),
        (3, 3, 1),
        (3, 2, 2),
        (3, 2, 1),
        (3, 1, 1),
    }
    forb_patterns = {pattern(s) for s, st in by.items() if st is Status.FORBIDDEN}
    assert forb_patterns == {
        (0, 0, 0),
        (1, 0, 0),
        (2, 0, 0),
        (1, 1, 0),
        (2, 1, 0),
        (2, 2, 0),
    }


def test_shor_intermediate_class_sizes(report_shor):
    groups = defaultdict(int)
    for c in report_shor.classifications:
        if c.status is Status.INTERMEDIATE:
            groups[pattern(c.subset)] += 1
    # whole triplets / one-or-two per triplet / triplet plus partial /
    # two plus singles
    assert groups[(3, 0, 0)] + groups[(3, 3, 0)] == 6
    assert groups[(1, 1, 1)] + groups[(2, 2, 2)] == 54
    assert groups[(3, 1, 0)] + groups[(3, 2, 0)] == 36
    assert groups[(2, 1, 1)] + groups[(2, 2, 1)] == 162
    assert sum(groups.values()) == 258


@pytest.mark.parametrize(
    "subset",
    [(7, 8, 9), (1, 4, 7), (2, 3, 5, 6, 8, 9), (1, 2, 3, 4), (5, 6, 7, 8, 9), (1, 4, 7, 8)],
)
def test_shor_class_ensembles_reproduce_reductions(scheme_shor, subset):
    labels = ["D"] + [str(i) for i in sorted(subset)]
    reduced = partial_trace(scheme_shor.state, labels)
    ens = shor_class_ensemble(subset)
    assert verify_separable_decomposition(reduced, ens) < 1e-9


def test_shor_appendix_report(scheme_shor, report_shor):
    rep = verify_shor_appendix(scheme_shor, report_shor)
    assert rep.passed
    assert len(rep.classes) == 4
    assert Counter(c.members for c in rep.classes) == Counter({6: 1, 54: 1, 36: 1, 162: 1})
    for c in rep.classes:
        assert c.uniform and c.status == "Intermediate"
        for subset, residual in c.ensembles:
            assert residual < 1e-9, (c.name, subset)
    assert rep.pair_independence_residual < 1e-9


def test_shor_recovery_from_minimal_authorized(scheme_shor):
    dm, fid = recover(scheme_shor, [1, 2, 3, 4, 7])
    assert fid >= 1 - 1e-9
    assert fidelity(mes(1, ("D", "R")), dm) >= 1 - 1e-9
