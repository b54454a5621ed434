import itertools

import numpy as np
import pytest

from grouper.groups import FiniteGroup, standard_group


@pytest.fixture(scope="session")
def groups():
    """Shared small groups, one instance each so hom caches are reused."""
    names = [
        "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
        "cyclic:8", "product:cyclic:2,cyclic:2", "product:cyclic:2,cyclic:4",
        "dihedral:6", "dihedral:8", "dihedral:16", "quaternion8",
        "symmetric:3", "symmetric:4", "alternating:4", "heisenberg:3",
    ]
    return {n: standard_group(n) for n in names}


def naive_hom_images(H: FiniteGroup, G: FiniteGroup):
    """Oracle: filter all |G|^|H| set maps by the homomorphism equations.

    Only usable for tiny pairs; returns a sorted list of image tuples.
    """
    out = []
    for images in itertools.product(range(G.order), repeat=H.order):
        if images[H.identity] != G.identity:
            continue
        ok = True
        for a in range(H.order):
            for b in range(H.order):
                if images[H.table[a, b]] != G.table[images[a], images[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(tuple(int(x) for x in images))
    return sorted(out)


def naive_subgroup_closure(G: FiniteGroup, seed):
    """Oracle: iterate products until closed, then adjoin inverses."""
    members = set(int(x) for x in seed) | {G.identity}
    changed = True
    while changed:
        changed = False
        for a in list(members):
            for b in list(members):
                c = int(G.table[a, b])
                if c not in members:
                    members.add(c)
                    changed = True
        for a in list(members):
            inv = int(G.inverses[a])
            if inv not in members:
                members.add(inv)
                changed = True
    return members
