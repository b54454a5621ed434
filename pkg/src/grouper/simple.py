"""Structural predicates and the embedding criterion for simple sources.

For an embedding H -> G with H simple, two checkable conditions predict
that the embedding is an envelope and determine its Galois group as the
centralizer of the image:

  1. every automorphism of H extends along the embedding to an
     automorphism of G, and
  2. all subgroups of G isomorphic to H form a single orbit under Aut(G).

The criterion report carries both the prediction and, when feasible, a
direct cross-check against the exhaustive classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NonInjectiveInput
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    center,
    centralizer,
    describe_structure,
    subgroup_generated,
)
from .homs import automorphism_group, enumerate_homs


def is_simple(G: FiniteGroup) -> bool:
    """No proper nontrivial normal subgroup.

    The normal closure of any non-identity element of a simple group is
    the whole group, and conversely.
    """
    if G.order == 1:
        return False
    checked: set = set()
    t, inv = G.table, G.inverses
    for x in range(G.order):
        if x == G.identity or x in checked:
            continue
        cl = subgroup_generated(G, {x}, normal=True)
        if not cl.is_whole:
            return False
        # conjugates of x share x's normal closure, so skip them
        conj = t[t[np.arange(G.order), x], inv]
        checked.update(int(c) for c in conj)
    return True


def is_perfect(G: FiniteGroup) -> bool:
    """Equal to its own commutator subgroup."""
    t, inv = G.table, G.inverses
    comms = set()
    for x in range(G.order):
        row = t[t[t[x, np.arange(G.order)], inv[x]], inv[np.arange(G.order)]]
        comms.update(int(c) for c in row)
    return subgroup_generated(G, comms, normal=True).is_whole


def is_complete(G: FiniteGroup) -> bool:
    """Trivial center and no outer automorphisms."""
    if center(G).order != 1:
        return False
    ag = automorphism_group(G)
    return ag.order == ag.inner.order


def structural_flags(G: FiniteGroup) -> dict:
    return {
        "isSimple": is_simple(G),
        "isPerfect": is_perfect(G),
        "isComplete": is_complete(G),
    }


def subgroups_isomorphic_to(G: FiniteGroup, H: FiniteGroup) -> list:
    """All subgroups of G isomorphic to H, as Subgroups, deduplicated.

    Enumerated as images of injective homomorphisms, so every returned
    subgroup genuinely carries a copy of H.
    """
    hs = enumerate_homs(H, G)
    seen: dict = {}
    for row in hs.matrix:
        if len(np.unique(row)) != H.order:
            continue
        members = np.sort(row)
        key = members.tobytes()
        if key not in seen:
            seen[key] = Subgroup(G, members)
    return [seen[k] for k in sorted(seen)]


@dataclass
class CriterionReport:
    hom: GroupHom
    applicable: bool               # source simple and map injective
    source_simple: bool
    every_automorphism_extends: bool
    copies_conjugate_under_aut: bool
    copy_count: int
    orbit_count: int
    predicted_galois_order: Optional[int]
    predicted_galois_structure: Optional[str]
    direct_is_envelope: Optional[bool] = None
    direct_is_localization: Optional[bool] = None
    direct_galois_order: Optional[int] = None
    agrees: Optional[bool] = None
    witnesses: list = field(default_factory=list)

    @property
    def conditions_hold(self) -> bool:
        return (
            self.applicable
            and self.every_automorphism_extends
            and self.copies_conjugate_under_aut
        )

    def to_dict(self) -> dict:
        return {
            "source": {"name": self.hom.source.name, "order": self.hom.source.order},
            "target": {"name": self.hom.target.name, "order": self.hom.target.order},
            "hom": self.hom.images.tolist(),
            "applicable": self.applicable,
            "sourceSimple": self.source_simple,
            "everyAutomorphismExtends": self.every_automorphism_extends,
            "copiesConjugateUnderAut": self.copies_conjugate_under_aut,
            "copyCount": self.copy_count,
            "orbitCount": self.orbit_count,
            "predictedGaloisOrder": self.predicted_galois_order,
            "predictedGaloisStructure": self.predicted_galois_structure,
            "directIsEnvelope": self.direct_is_envelope,
            "directIsLocalization": self.direct_is_localization,
            "directGaloisOrder": self.direct_galois_order,
            "agrees": self.agrees,
            "witnesses": self.witnesses,
        }


def _automorphisms_extend(phi: GroupHom) -> tuple:
    """(all_extend, first_unextended_automorphism_images or None).

    alpha in Aut(H) extends when some f in Aut(G) satisfies
    f(phi(h)) = phi(alpha(h)) for all h.
    """
    H, G = phi.source, phi.target
    aut_h = automorphism_group(H)
    aut_g = automorphism_group(G)
    # rows of Aut(G) restricted to the embedded copy, hashed once
    restricted = aut_g.perms[:, phi.images]
    avail = {row.tobytes() for row in restricted}
    for a in range(aut_h.order):
        want = phi.images[aut_h.perms[a]]
        if np.ascontiguousarray(want, dtype=np.int32).tobytes() not in avail:
            return False, aut_h.perms[a].tolist()
    return True, None


def _copies_single_orbit(phi: GroupHom) -> tuple:
    """(single_orbit, copy_count, orbit_count, witness_copy or None)."""
    H, G = phi.source, phi.target
    copies = subgroups_isomorphic_to(G, H)
    aut_g = automorphism_group(G)
    base = phi.image_subgroup()
    orbit_keys = set()
    for a in range(aut_g.order):
        orbit_keys.add(np.sort(aut_g.perms[a][base.members]).astype(np.int32).tobytes())
    outside = [s for s in copies if np.ascontiguousarray(s.members, dtype=np.int32).tobytes() not in orbit_keys]
    orbit_count = 1
    pool = list(outside)
    while pool:
        rep = pool.pop(0)
        orbit_count += 1
        keys = set()
        for a in range(aut_g.order):
            keys.add(np.sort(aut_g.perms[a][rep.members]).astype(np.int32).tobytes())
        pool = [s for s in pool if np.ascontiguousarray(s.members, dtype=np.int32).tobytes() not in keys]
    single = not outside
    witness = outside[0].members.tolist() if outside else None
    return single, len(copies), orbit_count, witness


def simple_envelope_criterion(phi: GroupHom, cross_check: bool = True) -> CriterionReport:
    """Evaluate both criterion conditions and predict the Galois group.

    Raises NonInjectiveInput for non-embeddings.  When ``cross_check`` is
    set, also runs the exhaustive classifier and records agreement.
    """
    if not phi.is_injective:
        raise NonInjectiveInput(
            f"criterion needs an embedding; {phi.source.name} -> {phi.target.name} is not injective"
        )
    H, G = phi.source, phi.target
    source_simple = is_simple(H)
    applicable = source_simple
    extends, bad_auto = _automorphisms_extend(phi)
    single, n_copies, n_orbits, bad_copy = _copies_single_orbit(phi)
    witnesses = []
    if not extends:
        witnesses.append({"flag": "everyAutomorphismExtends", "automorphism": bad_auto})
    if not single:
        witnesses.append({"flag": "copiesConjugateUnderAut", "subgroup": bad_copy})
    cent = centralizer(G, phi.image_members())
    pred_order = pred_struct = None
    if applicable and extends and single:
        pred_order = cent.order
        pred_struct = describe_structure(cent.as_group())
    report = CriterionReport(
        phi, applicable, source_simple, extends, single,
        n_copies, n_orbits, pred_order, pred_struct, witnesses=witnesses,
    )
    if cross_check:
        from .approx import classify_hom

        cr = classify_hom(phi)
        report.direct_is_envelope = cr.flags["isEnvelope"]
        report.direct_is_localization = cr.flags["isLocalization"]
        report.direct_galois_order = cr.galois_order
        if pred_order is not None:
            report.agrees = bool(
                cr.flags["isEnvelope"] and cr.galois_order == pred_order
            )
    return report
