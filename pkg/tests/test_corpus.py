import json

import pytest

from grouper.corpus import (
    SUITE_IDS,
    classify_pair,
    clear_pair_cache,
    generate_corpus,
    run_theorem_suite,
    search_approximations,
)
from grouper.groups import are_isomorphic, standard_group
from grouper.homs import clear_caches


class TestCorpusGeneration:
    def test_max_order_five(self):
        corpus = generate_corpus(5)
        assert [(g.name, g.order) for g in corpus] == [
            ("C1", 1), ("C2", 2), ("C3", 3), ("C2xC2", 4), ("C4", 4), ("C5", 5),
        ]

    def test_s3_appears_once(self):
        corpus = generate_corpus(6)
        order6_nonabelian = [g for g in corpus if g.order == 6 and not g.is_abelian]
        assert len(order6_nonabelian) == 1

    def test_includes_a5_at_sixty(self):
        corpus = generate_corpus(60)
        assert any(g.name == "A5" and g.order == 60 for g in corpus)

    def test_no_isomorphic_duplicates(self):
        corpus = generate_corpus(16)
        for i, a in enumerate(corpus):
            for b in corpus[i + 1:]:
                if a.order == b.order:
                    assert not are_isomorphic(a, b)

    def test_sorted_by_order_then_name(self):
        corpus = generate_corpus(16)
        keys = [(g.order, g.name) for g in corpus]
        assert keys == sorted(keys)

    def test_cap_rejected(self):
        with pytest.raises(ValueError):
            generate_corpus(1000)


class TestClassifyPair:
    def test_counts_match_homset(self, groups):
        H, G = groups["cyclic:3"], groups["symmetric:3"]
        v = classify_pair(H, G)
        assert len(v) == 3
        assert v.is_envelope.sum() == 2  # both embeddings
        assert v.galois_orders.tolist() == [6, 3, 3]

    def test_flag_implications(self, groups):
        for src in ("cyclic:4", "dihedral:8", "symmetric:3"):
            for tgt in ("cyclic:4", "dihedral:8", "symmetric:3"):
                v = classify_pair(groups[src], groups[tgt])
                # approximations are in particular preapproximations
                assert (~v.is_envelope | v.is_preenvelope).all()
                assert (~v.is_localization | v.is_preenvelope).all()
                assert (~v.is_cover | v.is_precover).all()
                assert (~v.is_cellular | v.is_precover).all()


class TestSuites:
    @pytest.mark.parametrize("suite", [s for s in SUITE_IDS if s != "lemmas"])
    def test_zero_violations_small(self, suite):
        corpus = generate_corpus(8)
        report = run_theorem_suite(corpus, suite)
        assert report.violations == []
        assert report.pairs_examined + len(report.skipped) == len(corpus) ** 2

    def test_lemmas_small(self):
        report = run_theorem_suite(generate_corpus(8), "lemmas")
        assert report.violations == []

    def test_unknown_suite_rejected(self):
        with pytest.raises(ValueError):
            run_theorem_suite(generate_corpus(4), "nope")

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            run_theorem_suite([], "galois")

    def test_jobs_deterministic(self):
        corpus = generate_corpus(8)
        r1 = run_theorem_suite(corpus, "cogalois", jobs=1)
        clear_pair_cache()
        r8 = run_theorem_suite(corpus, "cogalois", jobs=8)
        assert json.dumps(r1.to_dict(), sort_keys=True) == json.dumps(
            r8.to_dict(), sort_keys=True
        )

    def test_timings_separate_from_payload(self):
        report = run_theorem_suite(generate_corpus(4), "galois")
        assert "timings" not in report.to_dict()
        assert "timings" in report.to_dict(include_timings=True)


class TestSearch:
    def test_z2_z4_envelope_is_doubling(self, groups):
        found = search_approximations(
            groups["cyclic:2"], groups["cyclic:4"], "envelope", injective_only=True
        )
        assert len(found) == 1
        assert found[0].images.tolist() == [0, 2]

    def test_c3_s3_two_envelope_embeddings(self, groups):
        found = search_approximations(groups["cyclic:3"], groups["symmetric:3"], "envelope")
        assert len(found) == 2
        assert all(h.is_injective for h in found)

    def test_coprime_pair_empty(self, groups):
        found = search_approximations(
            groups["cyclic:2"], groups["cyclic:3"], "envelope", injective_only=True
        )
        assert found == []

    def test_unknown_kind(self, groups):
        with pytest.raises(ValueError):
            search_approximations(groups["cyclic:2"], groups["cyclic:3"], "meow")

    def test_stable_across_worker_counts(self):
        corpus = generate_corpus(6)
        a = run_theorem_suite(corpus, "galois", jobs=1).to_dict()
        clear_pair_cache()
        clear_caches()
        b = run_theorem_suite(corpus, "galois", jobs=4).to_dict()
        assert a == b
