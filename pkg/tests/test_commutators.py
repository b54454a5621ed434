import itertools

import numpy as np
import pytest

from grouper.commutators import (
    LemmaConfig,
    check_commutator_lemmas,
    commutator,
    is_j_central,
    j_central_by_commutators,
    left_normed_commutator,
    lower_central_series,
    nilpotency_class,
    upper_central_series,
)
from grouper.groups import standard_group


def naive_commutator(G, x, y):
    return G.mul(G.mul(G.mul(x, y), G.inv(x)), G.inv(y))


class TestCommutatorBasics:
    def test_matches_naive(self, groups):
        G = groups["symmetric:4"]
        rng = np.random.default_rng(3)
        for _ in range(50):
            x, y = rng.integers(0, G.order, size=2)
            assert int(commutator(G, int(x), int(y))) == naive_commutator(G, int(x), int(y))

    def test_commutator_with_self_trivial(self, groups):
        G = groups["dihedral:8"]
        for x in range(G.order):
            assert int(commutator(G, x, x)) == G.identity

    def test_left_normed_is_iterated(self, groups):
        G = groups["symmetric:4"]
        rng = np.random.default_rng(4)
        xs = [int(v) for v in rng.integers(0, G.order, size=4)]
        expect = xs[0]
        for y in xs[1:]:
            expect = naive_commutator(G, expect, y)
        assert left_normed_commutator(G, xs) == expect

    def test_empty_rejected(self, groups):
        with pytest.raises(ValueError):
            left_normed_commutator(groups["cyclic:4"], [])


class TestCentralSeries:
    def test_q8_class_two(self, groups):
        G = groups["quaternion8"]
        assert nilpotency_class(G) == 2
        lcs = lower_central_series(G)
        assert [t.order for t in lcs.terms] == [8, 2, 1]

    def test_d16_class_three(self, groups):
        G = groups["dihedral:16"]
        assert nilpotency_class(G) == 3
        ucs = upper_central_series(G)
        assert [t.order for t in ucs.terms] == [1, 2, 4, 16]

    def test_heisenberg_class_two(self, groups):
        assert nilpotency_class(groups["heisenberg:3"]) == 2

    def test_s3_not_nilpotent(self, groups):
        assert nilpotency_class(groups["symmetric:3"]) is None
        lcs = lower_central_series(groups["symmetric:3"])
        assert lcs.terms[-1].order == 3  # stabilizes at A3

    def test_abelian_class_one(self, groups):
        assert nilpotency_class(groups["cyclic:6"]) == 1

    def test_upper_series_terms_are_normal(self, groups):
        for t in upper_central_series(groups["dihedral:16"]).terms:
            assert t.is_normal


class TestJCentral:
    def test_characterization_by_commutators(self, groups):
        """x is j-central iff every length-(j+1) left-normed commutator
        starting at x vanishes."""
        G = groups["dihedral:16"]
        ucs = upper_central_series(G)
        for x in range(G.order):
            for j in (1, 2, 3):
                assert is_j_central(ucs, x, j) == j_central_by_commutators(G, x, j)


class TestLemmaChecks:
    def test_identities_hold_everywhere(self, groups):
        cfg = LemmaConfig(js=[1])
        for name in ("symmetric:3", "symmetric:4", "quaternion8", "dihedral:16"):
            reports = check_commutator_lemmas(standard_group(name), cfg)
            ident = [r for r in reports if r.lemma == "identities"]
            assert ident and all(r.ok for r in ident)

    def test_heisenberg_all_lemmas(self, groups):
        reports = check_commutator_lemmas(groups["heisenberg:3"], LemmaConfig(js=[1]))
        assert {r.lemma for r in reports} == {"identities", "centrals-1", "centrals-2", "homo"}
        assert all(r.ok for r in reports)

    def test_d16_j_two(self, groups):
        reports = check_commutator_lemmas(groups["dihedral:16"], LemmaConfig(js=[1, 2]))
        assert all(r.ok for r in reports)
        assert any(r.lemma == "centrals-2" and r.j == 2 for r in reports)

    def test_sampling_kicks_in_above_budget(self, groups):
        cfg = LemmaConfig(max_tuples=10, samples=500, js=[1])
        reports = check_commutator_lemmas(groups["dihedral:8"], cfg)
        assert any(not r.exhaustive for r in reports)
        assert all(r.ok for r in reports)

    def test_sampled_runs_deterministic(self, groups):
        cfg = LemmaConfig(max_tuples=10, samples=300, js=[1])
        a = check_commutator_lemmas(groups["dihedral:8"], cfg)
        b = check_commutator_lemmas(groups["dihedral:8"], cfg)
        assert [(r.lemma, r.tuples_checked, r.counterexamples) for r in a] == [
            (r.lemma, r.tuples_checked, r.counterexamples) for r in b
        ]

    def test_report_dict_shape(self, groups):
        rep = check_commutator_lemmas(groups["cyclic:4"], LemmaConfig(js=[1]))[0]
        d = rep.to_dict()
        assert {"group", "lemma", "tuplesChecked", "counterexamples", "exhaustive"} <= set(d)


class TestSeededViolationDetection:
    """A deliberately wrong 'central' element must surface counterexamples.

    This guards against vacuous checks: feed the machinery a series whose
    j-term is too large and verify it complains.
    """

    def test_wrong_series_detected(self, groups):
        from grouper.commutators import CentralSeries
        from grouper.groups import Subgroup

        G = groups["dihedral:8"]
        whole = Subgroup(G, list(range(G.order)))
        fake = CentralSeries(G, "upper", [Subgroup(G, [G.identity]), whole, whole], 2)
        from grouper.commutators import _check_centrals
        import random

        rep = _check_centrals(G, 1, 1, fake, LemmaConfig(js=[1]), random.Random(0))
        assert not rep.ok
