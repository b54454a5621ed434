"""Desk-scale corpus generation and theorem suites.

The corpus is built from standard families only (cyclic, products of up to
three cyclic factors, dihedral, quaternion, symmetric, alternating,
Heisenberg), deduplicated up to isomorphism.  Suites quantify over every
ordered pair in the corpus within a per-pair cost budget; every pair is
either examined or listed as skipped with a reason.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .approx import GroupClass, f_socle, local_kernel
from .commutators import LemmaConfig, check_commutator_lemmas, nilpotency_class
from .groups import FiniteGroup, GroupHom, standard_group
from .homs import automorphism_group, enumerate_homs, generating_set

PAIR_BUDGET = 100_000_000
SUITE_IDS = ("cogalois", "galois", "socle-cover", "radical-envelope", "reduction", "lemmas")

_pair_cache: dict = {}
_nilpotent_cache: dict = {}


def generate_corpus(max_order: int):
    """Deterministic family corpus, deduplicated up to isomorphism."""
    if max_order > 512:
        raise ValueError("corpus capped at order 512")
    descriptors = []
    for n in range(1, max_order + 1):
        descriptors.append(f"cyclic:{n}")
    for a in range(2, max_order + 1):
        for b in range(a, max_order // a + 1):
            descriptors.append(f"product:cyclic:{a},cyclic:{b}")
            for c in range(b, max_order // (a * b) + 1):
                descriptors.append(f"product:cyclic:{a},cyclic:{b},cyclic:{c}")
    for n in range(4, max_order + 1, 2):
        descriptors.append(f"dihedral:{n}")
    if max_order >= 8:
        descriptors.append("quaternion8")
    import math

    for n in range(2, 8):
        if math.factorial(n) <= max_order:
            descriptors.append(f"symmetric:{n}")
        if n >= 3 and math.factorial(n) // 2 <= max_order:
            descriptors.append(f"alternating:{n}")
    for p in (2, 3, 5):
        if p ** 3 <= max_order:
            descriptors.append(f"heisenberg:{p}")
    groups = []
    for d in descriptors:
        G = standard_group(d)
        if not any(H.order == G.order and _iso(H, G) for H in groups):
            groups.append(G)
    groups.sort(key=lambda g: (g.order, g.name))
    return groups


def _iso(H, G):
    from .groups import are_isomorphic

    return are_isomorphic(H, G)


def _is_nilpotent(G: FiniteGroup) -> bool:
    key = id(G)
    if key not in _nilpotent_cache:
        _nilpotent_cache[key] = nilpotency_class(G) is not None
    return _nilpotent_cache[key]


@dataclass
class SuiteReport:
    suite: str
    max_order: int
    pairs_examined: int = 0
    homs_classified: int = 0
    violations: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    pair_seconds: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "maxOrder": self.max_order,
            "pairsExamined": self.pairs_examined,
            "homsClassified": self.homs_classified,
            "violations": self.violations,
            "skipped": self.skipped,
            "notes": self.notes,
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.pair_seconds.items()}
        return out


def _budget_ok(H: FiniteGroup, G: FiniteGroup) -> bool:
    return G.order ** len(generating_set(H)) <= PAIR_BUDGET


@dataclass
class HomVerdicts:
    """Per-hom absolute flags for one (source, target) pair, all rows."""

    source: FiniteGroup
    target: FiniteGroup
    matrix: np.ndarray
    is_envelope: np.ndarray
    is_localization: np.ndarray
    is_cover: np.ndarray
    is_cellular: np.ndarray
    is_preenvelope: np.ndarray
    is_precover: np.ndarray
    galois_orders: np.ndarray
    co_galois_orders: np.ndarray

    def __len__(self):
        return int(self.matrix.shape[0])


def classify_pair(H: FiniteGroup, G: FiniteGroup) -> HomVerdicts:
    """Classify every hom H -> G at once; memoized per pair."""
    key = (id(H), id(G))
    hit = _pair_cache.get(key)
    if hit is not None:
        return hit
    hom_set = enumerate_homs(H, G)
    end_g = enumerate_homs(G, G)
    end_h = enumerate_homs(H, H)
    aut_g = automorphism_group(G)
    aut_h = automorphism_group(H)
    n = len(hom_set)
    env = np.zeros(n, dtype=bool)
    loc = np.zeros(n, dtype=bool)
    cov = np.zeros(n, dtype=bool)
    cel = np.zeros(n, dtype=bool)
    pre_e = np.zeros(n, dtype=bool)
    pre_c = np.zeros(n, dtype=bool)
    gal = np.zeros(n, dtype=np.int64)
    cogal = np.zeros(n, dtype=np.int64)
    all_rows = hom_set.row_index()
    end_g_bij = (np.sort(end_g.matrix, axis=1) == np.arange(G.order)).all(axis=1)
    end_h_bij = (np.sort(end_h.matrix, axis=1) == np.arange(H.order)).all(axis=1)
    for i in range(n):
        phi = hom_set.matrix[i]
        comp_t = end_g.matrix[:, phi]
        hit_t: dict = {}
        for j, row in enumerate(comp_t):
            hit_t.setdefault(row.tobytes(), []).append(j)
        surj_t = len(hit_t) == len(all_rows)
        fixers_t = hit_t.get(phi.tobytes(), [])
        pre_e[i] = surj_t
        env[i] = surj_t and all(end_g_bij[j] for j in fixers_t)
        loc[i] = surj_t and all(len(v) == 1 for v in hit_t.values())
        gal[i] = int((aut_g.perms[:, phi] == phi[None, :]).all(axis=1).sum())

        comp_s = phi[end_h.matrix]
        hit_s: dict = {}
        for j, row in enumerate(comp_s):
            hit_s.setdefault(row.tobytes(), []).append(j)
        surj_s = len(hit_s) == len(all_rows)
        fixers_s = hit_s.get(phi.tobytes(), [])
        pre_c[i] = surj_s
        cov[i] = surj_s and all(end_h_bij[j] for j in fixers_s)
        cel[i] = surj_s and all(len(v) == 1 for v in hit_s.values())
        cogal[i] = int((phi[aut_h.perms] == phi[None, :]).all(axis=1).sum())
    verdicts = HomVerdicts(H, G, hom_set.matrix, env, loc, cov, cel, pre_e, pre_c, gal, cogal)
    _pair_cache[key] = verdicts
    return verdicts


def search_approximations(H: FiniteGroup, G: FiniteGroup, kind: str, injective_only: bool = False):
    """All homs H -> G carrying the requested flag, in canonical order."""
    v = classify_pair(H, G)
    flag = {
        "envelope": v.is_envelope,
        "cover": v.is_cover,
        "localization": v.is_localization,
        "cellular": v.is_cellular,
    }.get(kind)
    if flag is None:
        raise ValueError(f"unknown kind {kind!r}")
    out = []
    for i in np.nonzero(flag)[0]:
        row = v.matrix[i]
        if injective_only and len(np.unique(row)) != H.order:
            continue
        out.append(GroupHom(H, G, row, check=False))
    return out


def _pair_name(H, G):
    return f"{H.name}->{G.name}"


def _run_pairs(corpus, worker, report: SuiteReport, jobs: int):
    """Apply worker to every ordered pair under the budget; ordered merge."""
    pairs = [(H, G) for H in corpus for G in corpus]
    tasks = []
    for H, G in pairs:
        if not _budget_ok(H, G):
            report.skipped.append(
                {"pair": _pair_name(H, G), "reason": "candidate-budget"}
            )
        else:
            tasks.append((H, G))

    def run_one(pair):
        H, G = pair
        t0 = time.perf_counter()
        out = worker(H, G)
        return _pair_name(H, G), time.perf_counter() - t0, out

    if jobs <= 1:
        results = [run_one(p) for p in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, tasks))
    for name, secs, (n_homs, violations, notes) in results:
        report.pairs_examined += 1
        report.homs_classified += n_homs
        report.violations.extend(violations)
        report.notes.extend(notes)
        report.pair_seconds[name] = secs
    report.violations.sort(key=lambda v: sorted(v.items()))
    report.notes.sort(key=lambda v: sorted(v.items()))


def _cogalois_worker(H, G):
    """Cover with trivial co-Galois must be a cellular cover."""
    v = classify_pair(H, G)
    violations = []
    for i in range(len(v)):
        if v.is_cover[i] and v.co_galois_orders[i] == 1 and not v.is_cellular[i]:
            violations.append(
                {"pair": _pair_name(H, G), "hom": v.matrix[i].tolist(),
                 "law": "cover-trivial-cogalois-implies-cellular"}
            )
    return len(v), violations, []


def _galois_worker(H, G):
    """Envelope with trivial Galois and abelian source or nilpotent target
    must be a localization; abelian-source case forces abelian target."""
    v = classify_pair(H, G)
    violations = []
    ab_h = H.is_abelian
    nil_g = _is_nilpotent(G)
    for i in range(len(v)):
        if not (v.is_envelope[i] and v.galois_orders[i] == 1):
            continue
        if (ab_h or nil_g) and not v.is_localization[i]:
            violations.append(
                {"pair": _pair_name(H, G), "hom": v.matrix[i].tolist(),
                 "law": "envelope-trivial-galois-implies-localization"}
            )
        if ab_h and not G.is_abelian:
            violations.append(
                {"pair": _pair_name(H, G), "hom": v.matrix[i].tolist(),
                 "law": "abelian-source-envelope-implies-abelian-target"}
            )
    return len(v), violations, []


def _injective_reps_by_image(H, G):
    """One injective hom per image subgroup, first in canonical order."""
    hs = enumerate_homs(H, G)
    reps = {}
    for row in hs.matrix:
        if len(np.unique(row)) != H.order:
            continue
        key = np.sort(row).astype(np.int32).tobytes()
        if key not in reps:
            reps[key] = row
    return [reps[k] for k in sorted(reps)]


def _surjective_reps_by_kernel(H, G):
    """One surjective hom per kernel, first in canonical order."""
    hs = enumerate_homs(H, G)
    reps = {}
    for row in hs.matrix:
        if len(np.unique(row)) != G.order:
            continue
        key = (row == G.identity).tobytes()
        if key not in reps:
            reps[key] = row
    return [reps[k] for k in sorted(reps)]


def _postcomp_surjective(phi_images, F0, H, G):
    """Does every hom F0 -> G factor through phi under postcomposition?"""
    to_h = enumerate_homs(F0, H)
    to_g = enumerate_homs(F0, G)
    if len(to_h):
        comp = {row.tobytes() for row in phi_images[to_h.matrix]}
    else:
        comp = set()
    return all(row.tobytes() in comp for row in to_g.matrix)


def _make_socle_worker(corpus):
    def worker(H, G):
        violations = []
        notes = []
        reps = _injective_reps_by_image(H, G)
        count = 0
        for F0 in corpus:
            if not _budget_ok(F0, G) or not _budget_ok(F0, H):
                continue
            cls = GroupClass(F0.name, [F0])
            socle = f_socle(G, cls)
            source_in_class = cls.contains(H)
            for row in reps:
                count += 1
                image = np.sort(row)
                is_socle = socle.order == len(image) and bool(
                    (socle.members == image).all()
                )
                precover = source_in_class and _postcomp_surjective(row, F0, H, G)
                if source_in_class and precover != is_socle:
                    violations.append(
                        {"pair": _pair_name(H, G), "class": F0.name,
                         "hom": row.tolist(),
                         "law": "injective-precover-iff-image-is-socle"}
                    )
                elif not source_in_class and is_socle:
                    notes.append(
                        {"pair": _pair_name(H, G), "class": F0.name,
                         "note": "image-equals-socle-but-source-not-in-class"}
                    )
        return count, violations, notes

    return worker


def _precomp_status(phi_images, H, G, F0):
    """(surjective, injective) of precomposition Hom(G,F0) -> Hom(H,F0)."""
    from_g = enumerate_homs(G, F0)
    from_h = enumerate_homs(H, F0)
    if len(from_g):
        comp = [row.tobytes() for row in from_g.matrix[:, phi_images]]
    else:
        comp = []
    hit = set(comp)
    surj = all(row.tobytes() in hit for row in from_h.matrix)
    inj = len(hit) == len(comp)
    return surj, inj


def _make_radical_worker(corpus):
    def worker(H, G):
        violations = []
        notes = []
        reps = _surjective_reps_by_kernel(H, G)
        count = 0
        for F0 in corpus:
            if not _budget_ok(G, F0) or not _budget_ok(H, F0):
                continue
            cls = GroupClass(F0.name, [F0])
            target_in_class = cls.contains(G)
            kf = local_kernel(H, cls)
            for row in reps:
                count += 1
                surj, inj = _precomp_status(row, H, G, F0)
                pre = target_in_class and surj
                kernel = np.nonzero(row == G.identity)[0]
                epireflection = target_in_class and kf.order == len(kernel) and bool(
                    (kf.members == kernel).all()
                )
                if pre != epireflection:
                    violations.append(
                        {"pair": _pair_name(H, G), "class": F0.name,
                         "hom": row.tolist(),
                         "law": "surjective-preenvelope-iff-epireflection-kernel"}
                    )
                # unique liftings clause: reported, not asserted
                if pre and not inj:
                    notes.append(
                        {"pair": _pair_name(H, G), "class": F0.name,
                         "note": "preenvelope-without-unique-liftings"}
                    )
        return count, violations, notes

    return worker


def _reduction_worker(H, G):
    """Envelope factorization keeps the Galois group; dually for covers."""
    from .approx import image_factorize

    v = classify_pair(H, G)
    violations = []
    aut_g = automorphism_group(G)
    aut_h = automorphism_group(H)
    for i in range(len(v)):
        row = v.matrix[i]
        if v.is_envelope[i]:
            image = np.sort(np.unique(row))
            fix_phi = (aut_g.perms[:, row] == row[None, :]).all(axis=1)
            fix_img = (aut_g.perms[:, image] == image[None, :]).all(axis=1)
            if not (fix_phi == fix_img).all():
                violations.append(
                    {"pair": _pair_name(H, G), "hom": row.tolist(),
                     "law": "envelope-image-inclusion-same-galois"}
                )
        if v.is_cover[i]:
            phi = GroupHom(H, G, row, check=False)
            epi, _mono = image_factorize(phi)
            fix_phi = (row[aut_h.perms] == row[None, :]).all(axis=1)
            fix_epi = (epi.images[aut_h.perms] == epi.images[None, :]).all(axis=1)
            if not (fix_phi == fix_epi).all():
                violations.append(
                    {"pair": _pair_name(H, G), "hom": row.tolist(),
                     "law": "cover-image-projection-same-cogalois"}
                )
    return len(v), violations, []


def _lemmas_suite(corpus, report: SuiteReport, jobs: int, lemma_config):
    """Commutator identity checks; central-series lemmas on nilpotent members."""
    cfg_ids = LemmaConfig(
        max_tuples=lemma_config.max_tuples,
        samples=lemma_config.samples,
        seed=lemma_config.seed,
        js=[1],
    )

    def run_one(G):
        t0 = time.perf_counter()
        reports = []
        ids_only = not _is_nilpotent(G)
        if ids_only:
            reports.extend(
                r for r in check_commutator_lemmas(G, cfg_ids) if r.lemma == "identities"
            )
        else:
            reports.extend(check_commutator_lemmas(G, lemma_config))
        return G.name, time.perf_counter() - t0, reports

    if jobs <= 1:
        results = [run_one(G) for G in corpus]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, corpus))
    for name, secs, reports in results:
        report.pairs_examined += 1
        report.pair_seconds[name] = secs
        for r in reports:
            report.homs_classified += r.tuples_checked
            for bad in r.counterexamples:
                report.violations.append(
                    {"group": name, "lemma": r.lemma, "j": r.j, "tuple": list(bad)}
                )
    report.violations.sort(key=lambda v: sorted((k, str(x)) for k, x in v.items()))


def run_theorem_suite(
    corpus,
    suite: str,
    max_order: int = 0,
    jobs: int = 1,
    lemma_config: LemmaConfig = None,
) -> SuiteReport:
    """Run one theorem suite over every ordered corpus pair within budget."""
    if suite not in SUITE_IDS:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_IDS}")
    if not corpus:
        raise ValueError("corpus is empty")
    if max_order == 0:
        max_order = max(g.order for g in corpus)
    report = SuiteReport(suite=suite, max_order=max_order)
    if suite == "lemmas":
        _lemmas_suite(corpus, report, jobs, lemma_config or LemmaConfig())
        return report
    worker = {
        "cogalois": _cogalois_worker,
        "galois": _galois_worker,
        "socle-cover": _make_socle_worker(corpus),
        "radical-envelope": _make_radical_worker(corpus),
        "reduction": _reduction_worker,
    }[suite]
    _run_pairs(corpus, worker, report, jobs)
    return report


def clear_pair_cache():
    _pair_cache.clear()
    _nilpotent_cache.clear()
