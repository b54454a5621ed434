"""Commutator calculus, central series, and brute-force lemma checking.

Convention: [x, y] = x y x^-1 y^-1, and the left-normed iterated commutator
[y1, ..., yr] = [[...[y1, y2], ...], yr].
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .groups import FiniteGroup, Subgroup, center, preimage_subgroup, quotient_group, subgroup_generated

DEFAULT_MAX_TUPLES = 10 ** 6
DEFAULT_SAMPLES = 10 ** 5
DEFAULT_SEED = 0xC0FFEE

LEMMA_IDS = ("identities", "centrals-1", "centrals-2", "homo")


def commutator(G: FiniteGroup, x, y):
    """[x, y] = x y x^-1 y^-1.  Accepts scalars or broadcastable index arrays."""
    t, inv = G.table, G.inverses
    out = t[t[t[x, y], inv[x]], inv[y]]
    if np.isscalar(x) and np.isscalar(y):
        return int(out)
    return out


def left_normed_commutator(G: FiniteGroup, ys: Sequence):
    """[y1, y2, ..., yr], folding commutators left to right; [y1] = y1."""
    if len(ys) == 0:
        raise ValueError("left-normed commutator of an empty list")
    acc = ys[0]
    for y in ys[1:]:
        acc = commutator(G, acc, y)
    return acc


@dataclass
class CentralSeries:
    group: FiniteGroup
    kind: str  # "lower" | "upper"
    terms: list  # list[Subgroup]
    nilpotency_class: Optional[int]

    def term(self, j: int) -> Subgroup:
        """Stabilized lookup: indices past the computed chain return the last term."""
        return self.terms[min(j, len(self.terms) - 1)]


def lower_central_series(G: FiniteGroup) -> CentralSeries:
    """G = Gamma^1 >= Gamma^2 = [G, G] >= ... until stabilization."""
    whole = Subgroup(G, range(G.order))
    terms = [whole]
    everyone = np.arange(G.order, dtype=np.int32)
    while True:
        cur = terms[-1]
        comms = set()
        for a in cur.members.tolist():
            comms.update(commutator(G, a, everyone).tolist())
        nxt = subgroup_generated(G, comms)
        if not nxt.is_normal:
            raise AssertionError("lower central term failed normality")
        if nxt.same_members(cur):
            break
        terms.append(nxt)
        if nxt.is_trivial:
            break
    ncl = None
    if terms[-1].is_trivial:
        ncl = len(terms) - 1  # terms[r] = Gamma^{r+1}; trivial at index r means class r
    return CentralSeries(G, "lower", terms, ncl)


def upper_central_series(G: FiniteGroup) -> CentralSeries:
    """1 = Z_0 <= Z_1 = Z(G) <= ... with Z_{j+1} the preimage of Z(G/Z_j)."""
    terms = [Subgroup(G, [G.identity])]
    while True:
        cur = terms[-1]
        Q, pi = quotient_group(G, cur)
        nxt = preimage_subgroup(pi, center(Q))
        if nxt.same_members(cur):
            break
        terms.append(nxt)
        if nxt.is_whole:
            break
    ncl = len(terms) - 1 if terms[-1].is_whole else None
    return CentralSeries(G, "upper", terms, ncl)


def nilpotency_class(G: FiniteGroup) -> Optional[int]:
    return lower_central_series(G).nilpotency_class


def is_j_central(series: CentralSeries, x: int, j: int) -> bool:
    """x in Z_j, via a computed upper central series."""
    if series.kind != "upper":
        raise ValueError("j-central test needs the upper series")
    return series.term(j).contains(x)


def j_central_by_commutators(G: FiniteGroup, x: int, j: int) -> bool:
    """x in Z_j iff every left-normed [x, g1, ..., gj] is trivial."""
    for gs in itertools.product(range(G.order), repeat=j):
        if left_normed_commutator(G, (x,) + gs) != G.identity:
            return False
    return True


@dataclass
class LemmaConfig:
    max_tuples: int = DEFAULT_MAX_TUPLES
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    js: Optional[Sequence[int]] = None  # default: 1 .. nilpotency-relevant bound


@dataclass
class LemmaReport:
    group_name: str
    lemma: str
    j: Optional[int]
    tuples_checked: int
    counterexamples: list = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "group": self.group_name,
            "lemma": self.lemma,
            "j": self.j,
            "tuplesChecked": self.tuples_checked,
            "exhaustive": self.exhaustive,
            "counterexamples": [list(c) for c in sorted(self.counterexamples)],
        }


def _space_size(sizes) -> int:
    total = 1
    for s in sizes:
        total *= s
    return total


def _z_grid(n: int, j: int):
    """Columns z1..zj of the full z-tuple grid, each a flat length-n^j array."""
    return [g.reshape(-1) for g in np.indices((n,) * j)]


def _fold_z(G: FiniteGroup, start, z_cols):
    acc = start
    for z in z_cols:
        acc = commutator(G, acc, z)
    return acc


def _record_bad(bad, prefix, z_cols, mask, cap=20):
    for flat in np.nonzero(~mask)[0][: cap + 1 - len(bad)]:
        bad.append(tuple(prefix) + tuple(int(z[flat]) for z in z_cols))


def _check_identities(G: FiniteGroup, cfg: LemmaConfig, rng) -> LemmaReport:
    t = G.table
    n = G.order
    bad = []
    exhaustive = _space_size((n, n, n)) <= cfg.max_tuples
    count = 0
    y = np.arange(n, dtype=np.int32)
    if exhaustive:
        pairs = itertools.product(range(n), range(n))
    else:
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(max(cfg.samples // n, 1)))
    for a, x in pairs:
        count += n
        # [a, xy] = [a,x] [x,[a,y]] [a,y], quantified over y at once
        lhs = commutator(G, a, t[x, y])
        aybit = commutator(G, a, y)
        rhs = t[t[commutator(G, a, x), commutator(G, x, aybit)], aybit]
        m1 = lhs == rhs
        if not m1.all():
            _record_bad(bad, (a, x, "first"), [y], m1)
        # [xy, z] = [x,[y,z]] [y,z] [x,z], with (x,y,z) := (a,x,y)
        lhs2 = commutator(G, t[a, x], y)
        yz = commutator(G, x, y)
        rhs2 = t[t[commutator(G, a, yz), yz], commutator(G, a, y)]
        m2 = lhs2 == rhs2
        if not m2.all():
            _record_bad(bad, (a, x, "second"), [y], m2)
        if len(bad) > 20:
            break
    return LemmaReport(G.name, "identities", None, count, bad, exhaustive)


def _check_centrals(G: FiniteGroup, variant: int, j: int, upper: CentralSeries,
                    cfg: LemmaConfig, rng) -> LemmaReport:
    t = G.table
    n = G.order
    zmem = upper.term(j).members.tolist() if variant == 1 else upper.term(j + 1).members.tolist()
    sizes = (n, len(zmem), n) + (n,) * j
    exhaustive = _space_size(sizes) <= cfg.max_tuples
    bad = []
    count = 0
    if exhaustive:
        z_cols = _z_grid(n, j)
        for a, b, c in itertools.product(range(n), zmem, range(n)):
            count += n ** j
            abc = int(t[t[a, b], c])
            ac = int(t[a, c])
            lhs = _fold_z(G, np.full(n ** j, abc, dtype=np.int32), z_cols)
            if variant == 1:
                mask = lhs == _fold_z(G, np.full(n ** j, ac, dtype=np.int32), z_cols)
            else:
                acb = int(t[ac, b])
                mid = _fold_z(G, np.full(n ** j, acb, dtype=np.int32), z_cols)
                merged = _fold_z(
                    G,
                    t[commutator(G, ac, z_cols[0]), commutator(G, b, z_cols[0])],
                    z_cols[1:],
                )
                rhs = t[
                    _fold_z(G, np.full(n ** j, ac, dtype=np.int32), z_cols),
                    _fold_z(G, np.full(n ** j, b, dtype=np.int32), z_cols),
                ]
                mask = (lhs == mid) & (mid == merged) & (merged == rhs)
            if not mask.all():
                _record_bad(bad, (a, b, c), z_cols, mask)
            if len(bad) > 20:
                break
    else:
        tl = G.table.tolist()
        il = G.inverses.tolist()

        def comm(x, y):
            return tl[tl[tl[x][y]][il[x]]][il[y]]

        def fold(start, zs):
            acc = start
            for z in zs:
                acc = comm(acc, z)
            return acc

        for _ in range(cfg.samples):
            count += 1
            a, c = rng.randrange(n), rng.randrange(n)
            b = zmem[rng.randrange(len(zmem))]
            zs = [rng.randrange(n) for _ in range(j)]
            abc = tl[tl[a][b]][c]
            ac = tl[a][c]
            lhs = fold(abc, zs)
            if variant == 1:
                ok = lhs == fold(ac, zs)
            else:
                acb = tl[ac][b]
                mid = fold(acb, zs)
                merged = fold(tl[comm(ac, zs[0])][comm(b, zs[0])], zs[1:])
                rhs = tl[fold(ac, zs)][fold(b, zs)]
                ok = lhs == mid == merged == rhs
            if not ok:
                bad.append((a, b, c) + tuple(zs))
                if len(bad) > 20:
                    break
    return LemmaReport(G.name, f"centrals-{variant}", j, count, bad, exhaustive)


def _check_homo(G: FiniteGroup, j: int, upper: CentralSeries, cfg: LemmaConfig, rng) -> LemmaReport:
    t = G.table
    n = G.order
    zj = upper.term(j)
    zj1 = upper.term(j + 1)
    sizes = (n, n, n, n) + (n,) * j
    exhaustive = _space_size(sizes) <= cfg.max_tuples
    bad = []
    count = 0
    tl = G.table.tolist()
    il = G.inverses.tolist()

    def comm(x, y):
        return tl[tl[tl[x][y]][il[x]]][il[y]]

    if exhaustive:
        z_cols = _z_grid(n, j)
        quads = itertools.product(range(n), repeat=4)
    else:
        z_cols = None
        quads = ((rng.randrange(n), rng.randrange(n), rng.randrange(n), rng.randrange(n))
                 for _ in range(cfg.samples))
    for a, X, Y, Xp in quads:
        # hypotheses do not involve the z's; tested, never assumed
        if not zj.contains(comm(Y, comm(a, Xp))):
            continue
        if not zj1.contains(comm(a, Y)):
            continue
        head = comm(a, tl[tl[X][Y]][Xp])
        aXXp = comm(a, tl[X][Xp])
        aY = comm(a, Y)
        if exhaustive:
            count += n ** j
            lhs = _fold_z(G, np.full(n ** j, head, dtype=np.int32), z_cols)
            mid = _fold_z(G, np.full(n ** j, tl[aXXp][aY], dtype=np.int32), z_cols)
            rhs = t[
                _fold_z(G, np.full(n ** j, aXXp, dtype=np.int32), z_cols),
                _fold_z(G, np.full(n ** j, aY, dtype=np.int32), z_cols),
            ]
            mask = (lhs == mid) & (mid == rhs)
            if not mask.all():
                _record_bad(bad, (a, X, Y, Xp), z_cols, mask)
        else:
            count += 1
            zs = [rng.randrange(n) for _ in range(j)]

            def fold(start):
                acc = start
                for z in zs:
                    acc = comm(acc, z)
                return acc

            lhs = fold(head)
            mid = fold(tl[aXXp][aY])
            rhs = tl[fold(aXXp)][fold(aY)]
            if not (lhs == mid == rhs):
                bad.append((a, X, Y, Xp) + tuple(zs))
        if len(bad) > 20:
            break
    return LemmaReport(G.name, "homo", j, count, bad, exhaustive)


def check_commutator_lemmas(G: FiniteGroup, cfg: Optional[LemmaConfig] = None) -> list:
    """Verify the base commutator identities and both central-element lemmas on G.

    Returns one LemmaReport per (lemma, j) combination; counterexample lists
    are expected empty on every group.
    """
    cfg = cfg or LemmaConfig()
    upper = upper_central_series(G)
    if cfg.js is not None:
        js = list(cfg.js)
    else:
        # beyond class + 1 every side of the lemmas is the identity
        bound = (upper.nilpotency_class or (len(upper.terms) - 1)) + 1
        js = list(range(1, max(bound, 1) + 1))
    reports = []
    for lemma_pos, lemma in enumerate(LEMMA_IDS):
        if lemma == "identities":
            rng = random.Random(cfg.seed + lemma_pos)
            reports.append(_check_identities(G, cfg, rng))
            continue
        for j in js:
            rng = random.Random(cfg.seed + 1000 * lemma_pos + j)
            if lemma == "centrals-1":
                reports.append(_check_centrals(G, 1, j, upper, cfg, rng))
            elif lemma == "centrals-2":
                reports.append(_check_centrals(G, 2, j, upper, cfg, rng))
            else:
                reports.append(_check_homo(G, j, upper, cfg, rng))
    return reports
