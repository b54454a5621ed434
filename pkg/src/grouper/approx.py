"""Classification of homomorphisms as localizations, cellular covers,
envelopes, and covers, absolutely and relative to a finite class of groups.

Absolute envelope/cover verdicts use the singleton-class characterization:
a map is an envelope iff precomposition End(G) -> Hom(H, G) is surjective
and every endomorphism fixing the map is an automorphism (dually for
covers).  Every false flag carries the first witness in canonical hom
order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import EmptyClassError
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    are_isomorphic,
    describe_structure,
    subgroup_generated,
    quotient_group,
)
from .homs import automorphism_group, enumerate_homs

FLAG_NAMES = (
    "isLocalization",
    "isCellularCover",
    "isEnvelope",
    "isCover",
    "isPreenvelopeOfTargetClass",
    "isPrecoverOfSourceClass",
)


class GroupClass:
    """A finite list of representatives; membership is up to isomorphism."""

    def __init__(self, name: str, members):
        self.name = name
        self.members = list(members)
        if not self.members:
            raise EmptyClassError(f"class {name!r} has no representatives")

    def contains(self, G: FiniteGroup) -> bool:
        return any(are_isomorphic(G, rep) for rep in self.members)

    def __repr__(self):
        return f"GroupClass({self.name!r}, {[g.name for g in self.members]})"


@dataclass
class Witness:
    flag: str
    kind: str  # unlifted-hom | non-automorphism-preimage | non-injective-pair
    data: dict

    def to_dict(self) -> dict:
        return {"flag": self.flag, "kind": self.kind, "data": self.data}


@dataclass
class ClassificationReport:
    hom: GroupHom
    flags: dict
    galois: Subgroup          # of Aut(target)
    co_galois: Subgroup       # of Aut(source)
    witnesses: list = field(default_factory=list)

    @property
    def galois_order(self) -> int:
        return self.galois.order

    @property
    def co_galois_order(self) -> int:
        return self.co_galois.order

    def to_dict(self) -> dict:
        return {
            "source": {"name": self.hom.source.name, "order": self.hom.source.order},
            "target": {"name": self.hom.target.name, "order": self.hom.target.order},
            "hom": self.hom.images.tolist(),
            "flags": {k: bool(v) for k, v in sorted(self.flags.items())},
            "galois": {
                "order": self.galois.order,
                "structure": describe_structure(self.galois.as_group()),
            },
            "coGalois": {
                "order": self.co_galois.order,
                "structure": describe_structure(self.co_galois.as_group()),
            },
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _first_duplicate_pair(rows: np.ndarray):
    """Smallest (i, j), i < j, with equal rows, or None."""
    seen = {}
    for i, row in enumerate(rows):
        key = row.tobytes()
        if key in seen:
            return seen[key], i
        seen[key] = i
    return None


def _surjectivity(comp: np.ndarray, homset) -> Optional[np.ndarray]:
    """None when every hom row is hit, else the first unhit row."""
    hit = {row.tobytes() for row in comp}
    for row in homset.matrix:
        if row.tobytes() not in hit:
            return row
    return None


def galois_group(phi: GroupHom, side: str = "target") -> Subgroup:
    """Automorphisms fixing phi: f.phi = phi (target side) or phi.f = phi (source side)."""
    if side == "target":
        ag = automorphism_group(phi.target)
        comp = ag.perms[:, phi.images]
        members = np.nonzero((comp == phi.images[None, :]).all(axis=1))[0]
    elif side == "source":
        ag = automorphism_group(phi.source)
        comp = phi.images[ag.perms]
        members = np.nonzero((comp == phi.images[None, :]).all(axis=1))[0]
    else:
        raise ValueError("side must be 'target' or 'source'")
    return Subgroup(ag.group, members)


def classify_hom(phi: GroupHom) -> ClassificationReport:
    """Full absolute classification of one homomorphism."""
    H, G = phi.source, phi.target
    hom_set = enumerate_homs(H, G)
    end_g = enumerate_homs(G, G)
    end_h = enumerate_homs(H, H)
    n_g, n_h = G.order, H.order
    witnesses: list = []

    # target side: f |-> f.phi on End(G)
    comp_t = end_g.matrix[:, phi.images]
    unhit_t = _surjectivity(comp_t, hom_set)
    dup_t = _first_duplicate_pair(comp_t) if unhit_t is None else None
    fixers_t = np.nonzero((comp_t == phi.images[None, :]).all(axis=1))[0]
    bij_rows_t = (np.sort(end_g.matrix[fixers_t], axis=1) == np.arange(n_g)).all(axis=1)
    surj_t = unhit_t is None
    env = surj_t and bool(bij_rows_t.all())
    loc = surj_t and dup_t is None

    # source side: f |-> phi.f on End(H)
    comp_s = phi.images[end_h.matrix]
    unhit_s = _surjectivity(comp_s, hom_set)
    dup_s = _first_duplicate_pair(comp_s) if unhit_s is None else None
    fixers_s = np.nonzero((comp_s == phi.images[None, :]).all(axis=1))[0]
    bij_rows_s = (np.sort(end_h.matrix[fixers_s], axis=1) == np.arange(n_h)).all(axis=1)
    surj_s = unhit_s is None
    cov = surj_s and bool(bij_rows_s.all())
    cell = surj_s and dup_s is None

    flags = {
        "isLocalization": loc,
        "isCellularCover": cell,
        "isEnvelope": env,
        "isCover": cov,
        "isPreenvelopeOfTargetClass": surj_t,
        "isPrecoverOfSourceClass": surj_s,
    }

    def add_side_witnesses(flag_pre, flag_approx, flag_bij, unhit, dup, fixers, bij_rows, end_set, who):
        if unhit is not None:
            data = {"unliftedHom": unhit.tolist()}
            for f in (flag_pre, flag_approx, flag_bij):
                witnesses.append(Witness(f, "unlifted-hom", data))
            return
        if not bij_rows.all():
            bad = int(fixers[np.nonzero(~bij_rows)[0][0]])
            witnesses.append(
                Witness(flag_approx, "non-automorphism-preimage",
                        {"endomorphism": end_set.matrix[bad].tolist(), "of": who})
            )
        if dup is not None:
            i, j = dup
            witnesses.append(
                Witness(flag_bij, "non-injective-pair",
                        {"first": end_set.matrix[i].tolist(),
                         "second": end_set.matrix[j].tolist(), "of": who})
            )

    add_side_witnesses("isPreenvelopeOfTargetClass", "isEnvelope", "isLocalization",
                       unhit_t, dup_t, fixers_t, bij_rows_t, end_g, "target")
    add_side_witnesses("isPrecoverOfSourceClass", "isCover", "isCellularCover",
                       unhit_s, dup_s, fixers_s, bij_rows_s, end_h, "source")

    gal = galois_group(phi, "target")
    cogal = galois_group(phi, "source")
    return ClassificationReport(phi, flags, gal, cogal, witnesses)


@dataclass
class RelativeReport:
    """Verdict for one homomorphism against an explicit finite class."""

    hom: GroupHom
    side: str                      # "envelope" | "cover"
    group_class: GroupClass
    in_class: bool                 # target (envelope) or source (cover) lies in the class
    is_preapproximation: bool      # F-preenvelope / F-precover
    is_approximation: bool         # F-envelope / F-cover
    has_unique_liftings: bool
    galois: Subgroup               # Gal for envelope side, coGal for cover side
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        key = "galois" if self.side == "envelope" else "coGalois"
        return {
            "source": {"name": self.hom.source.name, "order": self.hom.source.order},
            "target": {"name": self.hom.target.name, "order": self.hom.target.order},
            "hom": self.hom.images.tolist(),
            "class": self.group_class.name,
            "side": self.side,
            "flags": {
                "inClass": self.in_class,
                "isPreapproximation": self.is_preapproximation,
                "isApproximation": self.is_approximation,
                "hasUniqueLiftings": self.has_unique_liftings,
            },
            key: {
                "order": self.galois.order,
                "structure": describe_structure(self.galois.as_group()),
            },
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def classify_against_class(phi: GroupHom, cls: GroupClass, side: str) -> RelativeReport:
    """F-(pre)envelope / F-(pre)cover verdict with witnesses."""
    H, G = phi.source, phi.target
    witnesses: list = []
    if side == "envelope":
        in_class = cls.contains(G)
        surj_all = True
        inj_all = True
        for rep in cls.members:
            from_g = enumerate_homs(G, rep)
            from_h = enumerate_homs(H, rep)
            comp = from_g.matrix[:, phi.images] if len(from_g) else np.empty((0, H.order), dtype=np.int32)
            unhit = _surjectivity(comp, from_h)
            if unhit is not None:
                surj_all = False
                witnesses.append(Witness("isPreapproximation", "unlifted-hom",
                                         {"class_member": rep.name, "unliftedHom": unhit.tolist()}))
                break
            if _first_duplicate_pair(comp) is not None:
                inj_all = False
        pre = in_class and surj_all
        end_g = enumerate_homs(G, G)
        comp_t = end_g.matrix[:, phi.images]
        fixers = np.nonzero((comp_t == phi.images[None, :]).all(axis=1))[0]
        bij = (np.sort(end_g.matrix[fixers], axis=1) == np.arange(G.order)).all(axis=1)
        approx = pre and bool(bij.all())
        if pre and not bij.all():
            bad = int(fixers[np.nonzero(~bij)[0][0]])
            witnesses.append(Witness("isApproximation", "non-automorphism-preimage",
                                     {"endomorphism": end_g.matrix[bad].tolist()}))
        unique = approx and surj_all and inj_all
        gal = galois_group(phi, "target")
        return RelativeReport(phi, side, cls, in_class, pre, approx, unique, gal, witnesses)
    if side == "cover":
        in_class = cls.contains(H)
        surj_all = True
        inj_all = True
        for rep in cls.members:
            to_h = enumerate_homs(rep, H)
            to_g = enumerate_homs(rep, G)
            comp = phi.images[to_h.matrix] if len(to_h) else np.empty((0, G.order), dtype=np.int32)
            unhit = _surjectivity(comp, to_g)
            if unhit is not None:
                surj_all = False
                witnesses.append(Witness("isPreapproximation", "unlifted-hom",
                                         {"class_member": rep.name, "unliftedHom": unhit.tolist()}))
                break
            if _first_duplicate_pair(comp) is not None:
                inj_all = False
        pre = in_class and surj_all
        end_h = enumerate_homs(H, H)
        comp_s = phi.images[end_h.matrix]
        fixers = np.nonzero((comp_s == phi.images[None, :]).all(axis=1))[0]
        bij = (np.sort(end_h.matrix[fixers], axis=1) == np.arange(H.order)).all(axis=1)
        approx = pre and bool(bij.all())
        if pre and not bij.all():
            bad = int(fixers[np.nonzero(~bij)[0][0]])
            witnesses.append(Witness("isApproximation", "non-automorphism-preimage",
                                     {"endomorphism": end_h.matrix[bad].tolist()}))
        unique = approx and surj_all and inj_all
        cogal = galois_group(phi, "source")
        return RelativeReport(phi, side, cls, in_class, pre, approx, unique, cogal, witnesses)
    raise ValueError("side must be 'envelope' or 'cover'")


def f_socle(G: FiniteGroup, cls: GroupClass) -> Subgroup:
    """Normal subgroup generated by all images of homs from class members."""
    seed: set = set()
    for rep in cls.members:
        hs = enumerate_homs(rep, G)
        if len(hs):
            seed.update(int(x) for x in np.unique(hs.matrix))
    return subgroup_generated(G, seed, normal=True)


def f_radical(G: FiniteGroup, cls: GroupClass):
    """Iterated socle-of-quotient chain; returns (radical, epireflection projection)."""
    members = set(f_socle(G, cls).members.tolist())
    while True:
        T = Subgroup(G, members)
        Q, pi = quotient_group(G, T)
        S = f_socle(Q, cls)
        if S.is_trivial:
            return T, pi
        mask = S._member_mask[pi.images]
        new_members = set(int(x) for x in np.nonzero(mask)[0])
        if new_members == members:
            return T, pi
        members = set(Subgroup(G, new_members).members.tolist())


def is_orthogonal(g: GroupHom, cls: GroupClass) -> bool:
    """g in the left-orthogonal class of F: precomposition bijects hom-sets."""
    A, B = g.source, g.target
    for rep in cls.members:
        from_b = enumerate_homs(B, rep)
        from_a = enumerate_homs(A, rep)
        if len(from_b) != len(from_a):
            return False
        comp = from_b.matrix[:, g.images] if len(from_b) else np.empty((0, A.order), dtype=np.int32)
        if _surjectivity(comp, from_a) is not None:
            return False
        if _first_duplicate_pair(comp) is not None:
            return False
    return True


def local_kernel(H: FiniteGroup, cls: GroupClass) -> Subgroup:
    """Intersection of all kernels of homs from H into class members.

    This is the kernel of the epireflection onto the largest quotient of H
    all of whose maps into the class factor uniquely; a surjection is an
    F-preenvelope exactly when its kernel contains... see radical-envelope
    suite in corpus.
    """
    mask = np.ones(H.order, dtype=bool)
    for rep in cls.members:
        hs = enumerate_homs(H, rep)
        if len(hs):
            mask &= (hs.matrix == rep.identity).all(axis=0)
    return Subgroup(H, np.nonzero(mask)[0])


def image_factorize(phi: GroupHom):
    """Split phi into an epi onto its image and the inclusion of the image."""
    H, G = phi.source, phi.target
    img = phi.image_subgroup()
    img_group = img.as_group(name=f"Im({H.name}->{G.name})")
    pos = np.full(G.order, -1, dtype=np.int32)
    pos[img.members] = np.arange(img.order, dtype=np.int32)
    epi = GroupHom(H, img_group, pos[phi.images], check=False)
    mono = GroupHom(img_group, G, img.members.copy(), check=False)
    return epi, mono


def homs_equal_up_to_target_iso(phi1: GroupHom, phi2: GroupHom) -> bool:
    """Exists an automorphism a of the common target with a.phi1 = phi2."""
    if phi1.source is not phi2.source or phi1.target is not phi2.target:
        return False
    ag = automorphism_group(phi1.target)
    comp = ag.perms[:, phi1.images]
    return bool((comp == phi2.images[None, :]).all(axis=1).any())
