"""Exhaustive, pruned enumeration of Hom(H, G), End(G) and Aut(G).

Candidates are tuples of generator images, iterated in lexicographic order
over per-generator candidate lists (sorted ascending), so the resulting hom
sets have a canonical, reproducible order.  Pruning: image orders must
divide generator orders, then pairwise product-order checks, then sampled
multiplicativity, then a full table check on the survivors.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
import random
from typing import Optional

import numpy as np

from .errors import EnumerationCapError
from .groups import FiniteGroup, GroupHom, Subgroup, center, generating_set_of_table

EXHAUSTIVE_CAP = 512
CANDIDATE_CAP = 200_000_000
_BATCH = 8192
_SAMPLE_PAIRS = 64

_hom_cache: dict = {}
_aut_cache: dict = {}
_cache_dir: Optional[str] = None


def set_cache_dir(path: Optional[str]):
    """Configure the on-disk hom-set cache (None disables it)."""
    global _cache_dir
    _cache_dir = path
    if path is not None:
        os.makedirs(path, exist_ok=True)


def generating_set(G: FiniteGroup) -> list:
    """Greedy generating set: repeatedly add the max-order element outside the closure."""
    cached = getattr(G, "_greedy_gens", None)
    if cached is None:
        cached = generating_set_of_table(G.table, G.identity)
        G._greedy_gens = cached
    return list(cached)


def _word_entries(H: FiniteGroup, gens: list) -> list:
    """Breadth-first word table: (element, parent, generator position) triples."""
    seen = [False] * H.order
    seen[H.identity] = True
    queue = [H.identity]
    entries = []
    i = 0
    while i < len(queue):
        cur = queue[i]
        for gp, g in enumerate(gens):
            nxt = int(H.table[cur, g])
            if not seen[nxt]:
                seen[nxt] = True
                entries.append((nxt, cur, gp))
                queue.append(nxt)
        i += 1
    if len(queue) != H.order:
        raise ValueError("generators do not generate the group")
    return entries


def _extend_batch(H: FiniteGroup, G: FiniteGroup, entries, gen_cols: np.ndarray) -> np.ndarray:
    B = gen_cols.shape[0]
    images = np.empty((B, H.order), dtype=np.int32)
    images[:, H.identity] = G.identity
    tG = G.table
    for elem, parent, gp in entries:
        images[:, elem] = tG[images[:, parent], gen_cols[:, gp]]
    return images


def _full_check(H: FiniteGroup, G: FiniteGroup, images: np.ndarray) -> np.ndarray:
    """Boolean mask of rows that are genuine homomorphisms."""
    ok = np.ones(images.shape[0], dtype=bool)
    tH, tG = H.table, G.table
    for i in range(H.order):
        if not ok.any():
            break
        lhs = images[:, tH[i]]
        rhs = tG[images[:, i][:, None], images]
        ok &= (lhs == rhs).all(axis=1)
    return ok


class HomSet:
    """Complete list of homomorphisms source -> target in canonical order."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, matrix: np.ndarray):
        self.source = source
        self.target = target
        self.matrix = np.ascontiguousarray(matrix, dtype=np.int32)
        self.complete = True
        self._index: Optional[dict] = None

    def __len__(self):
        return int(self.matrix.shape[0])

    @property
    def homs(self) -> list:
        return [GroupHom(self.source, self.target, row, check=False) for row in self.matrix]

    def row_index(self) -> dict:
        if self._index is None:
            self._index = {row.tobytes(): i for i, row in enumerate(self.matrix)}
        return self._index

    def contains_images(self, images: np.ndarray) -> bool:
        return np.ascontiguousarray(images, dtype=np.int32).tobytes() in self.row_index()

    def index_of(self, images: np.ndarray) -> int:
        return self.row_index()[np.ascontiguousarray(images, dtype=np.int32).tobytes()]


def _candidate_lists(H: FiniteGroup, G: FiniteGroup, gens, bijective: bool):
    ordH = H.element_orders
    ordG = G.element_orders
    out = []
    for g in gens:
        o = int(ordH[g])
        if bijective:
            cand = np.nonzero(ordG == o)[0]
        else:
            cand = np.nonzero(o % ordG == 0)[0]
        out.append(cand.astype(np.int32))
    return out


def _search_homs(
    H: FiniteGroup,
    G: FiniteGroup,
    *,
    bijective: bool = False,
    first_only: bool = False,
):
    gens = generating_set(H)
    entries = _word_entries(H, gens)
    cands = _candidate_lists(H, G, gens, bijective)
    total = 1
    for c in cands:
        total *= len(c)
    if total > CANDIDATE_CAP:
        raise EnumerationCapError(
            f"candidate space {total} for Hom({H.name},{G.name}) exceeds {CANDIDATE_CAP}"
        )
    k = len(gens)
    tH, tG = H.table, G.table
    ordH, ordG = H.element_orders, G.element_orders
    # pairwise word constraints on generator images
    pair_words = []
    for a in range(k):
        for b in range(k):
            w = int(tH[gens[a], gens[b]])
            pair_words.append((a, b, int(ordH[w])))
    rng = random.Random(0x5EED)
    sample_pairs = [
        (rng.randrange(H.order), rng.randrange(H.order)) for _ in range(_SAMPLE_PAIRS)
    ]
    found = []
    if total == 0:
        return np.empty((0, H.order), dtype=np.int32), gens
    it = itertools.product(*[c.tolist() for c in cands])
    while True:
        chunk = list(itertools.islice(it, _BATCH))
        if not chunk:
            break
        cols = np.array(chunk, dtype=np.int32).reshape(len(chunk), k)
        mask = np.ones(len(chunk), dtype=bool)
        for a, b, needed in pair_words:
            prod = tG[cols[:, a], cols[:, b]]
            if bijective:
                mask &= ordG[prod] == needed
            else:
                mask &= needed % ordG[prod] == 0
        cols = cols[mask]
        if cols.size == 0:
            continue
        images = _extend_batch(H, G, entries, cols)
        ok = np.ones(images.shape[0], dtype=bool)
        for i, j in sample_pairs:
            ok &= images[:, tH[i, j]] == tG[images[:, i], images[:, j]]
        images = images[ok]
        if images.size == 0:
            continue
        if bijective:
            sorted_rows = np.sort(images, axis=1)
            images = images[(sorted_rows == np.arange(G.order)).all(axis=1)]
            if images.size == 0:
                continue
        good = _full_check(H, G, images)
        images = images[good]
        if images.size and first_only:
            return images[:1], gens
        if images.size:
            found.append(images)
    if not found:
        return np.empty((0, H.order), dtype=np.int32), gens
    return np.concatenate(found, axis=0), gens


def _cache_path(H: FiniteGroup, G: FiniteGroup) -> str:
    return os.path.join(
        _cache_dir, f"homs_{H.structure_hash()[:20]}_{G.structure_hash()[:20]}.json"
    )


def _load_cached(H: FiniteGroup, G: FiniteGroup):
    if _cache_dir is None:
        return None
    path = _cache_path(H, G)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        matrix = np.array(data["matrix"], dtype=np.int32).reshape(-1, H.order)
    except (ValueError, KeyError, json.JSONDecodeError):
        return None
    if matrix.shape[0] != data.get("count"):
        return None
    # cache is advisory: revalidate a few members before trusting it
    if matrix.shape[0]:
        rng = random.Random(0)
        picks = [rng.randrange(matrix.shape[0]) for _ in range(3)]
        if not _full_check(H, G, matrix[sorted(set(picks))]).all():
            return None
    return matrix


def _store_cached(H: FiniteGroup, G: FiniteGroup, matrix: np.ndarray):
    if _cache_dir is None:
        return
    data = {
        "source_hash": H.structure_hash(),
        "target_hash": G.structure_hash(),
        "count": int(matrix.shape[0]),
        "matrix": matrix.reshape(-1).tolist(),
    }
    tmp = _cache_path(H, G) + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
    os.replace(tmp, _cache_path(H, G))


def enumerate_homs(H: FiniteGroup, G: FiniteGroup) -> HomSet:
    """All homomorphisms H -> G, canonically ordered, duplicate-free."""
    if H.order > EXHAUSTIVE_CAP or G.order > EXHAUSTIVE_CAP:
        raise EnumerationCapError(
            f"exhaustive enumeration capped at order {EXHAUSTIVE_CAP} "
            f"(got |{H.name}|={H.order}, |{G.name}|={G.order})"
        )
    key = (id(H), id(G))
    hit = _hom_cache.get(key)
    if hit is not None:
        return hit
    matrix = _load_cached(H, G)
    if matrix is None:
        matrix, _ = _search_homs(H, G)
        _store_cached(H, G, matrix)
    hs = HomSet(H, G, matrix)
    _hom_cache[key] = hs
    return hs


def end_set(G: FiniteGroup) -> HomSet:
    return enumerate_homs(G, G)


def find_isomorphism(G1: FiniteGroup, G2: FiniteGroup):
    """First bijective homomorphism in canonical order, or None."""
    if G1.order != G2.order:
        return None
    if G1.order > EXHAUSTIVE_CAP:
        raise EnumerationCapError(f"isomorphism search capped at order {EXHAUSTIVE_CAP}")
    matrix, _ = _search_homs(G1, G2, bijective=True, first_only=True)
    if matrix.shape[0] == 0:
        return None
    return GroupHom(G1, G2, matrix[0], check=False)


class AutGroup:
    """Aut(G) assembled as an abstract group acting on G.

    ``group`` is the abstract group on automorphism indices; ``perms`` row a
    is the image array of automorphism a; ``inner`` is the subgroup of
    conjugations.
    """

    def __init__(self, base: FiniteGroup, perms: np.ndarray):
        self.base = base
        self.perms = np.ascontiguousarray(perms, dtype=np.int32)
        nA = self.perms.shape[0]
        key = {row.tobytes(): i for i, row in enumerate(self.perms)}
        table = np.empty((nA, nA), dtype=np.int32)
        for a in range(nA):
            comp = self.perms[a][self.perms]  # row b: perms[a] after perms[b]
            table[a] = [key[row.tobytes()] for row in comp]
        ident = key[np.arange(base.order, dtype=np.int32).tobytes()]
        gens = generating_set_of_table(table, ident)
        self.group = FiniteGroup(
            f"Aut({base.name})",
            table,
            generators=gens,
            identity=ident,
            assume_associative=True,
        )
        inner = set()
        ar = np.arange(base.order, dtype=np.int32)
        for g in range(base.order):
            row = base.table[g, base.table[ar, base.inverses[g]]]
            inner.add(key[np.ascontiguousarray(row, dtype=np.int32).tobytes()])
        self.inner = Subgroup(self.group, inner)
        z = center(base).order
        if self.inner.order * z != base.order:
            raise ValueError("inner automorphism count inconsistent with center")
        self._key = key

    @property
    def order(self) -> int:
        return int(self.perms.shape[0])

    def eval(self, a: int, x: int) -> int:
        return int(self.perms[a, x])

    def index_of(self, images: np.ndarray) -> int:
        return self._key[np.ascontiguousarray(images, dtype=np.int32).tobytes()]

    def hom(self, a: int) -> GroupHom:
        return GroupHom(self.base, self.base, self.perms[a], check=False)


def automorphism_group(G: FiniteGroup) -> AutGroup:
    key = id(G)
    hit = _aut_cache.get(key)
    if hit is not None:
        return hit
    ends = end_set(G).matrix
    if ends.shape[0]:
        bij = (np.sort(ends, axis=1) == np.arange(G.order)).all(axis=1)
        perms = ends[bij]
    else:
        perms = np.arange(G.order, dtype=np.int32)[None, :]
    ag = AutGroup(G, perms)
    _aut_cache[key] = ag
    return ag


def clear_caches():
    """Drop all in-memory hom/aut caches (used by determinism tests)."""
    _hom_cache.clear()
    _aut_cache.clear()
