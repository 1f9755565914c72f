"""Arc-level machinery for Cayley maps: automorphism propagation oracles.

An arc is a pair (vertex g, slot k) standing for the dart from g along the
generator x_k.  Two permutations act on arcs:

    R (rotation successor):  (g, k) -> (g, k+1)
    T (edge traversal):      (g, k) -> (g*x_k, c(k))

An orientation-preserving map automorphism commutes with both; an
orientation-reversing one commutes with T and conjugates R to R^-1.  Both
kinds are determined by the image of a single arc on a connected map, so
existence questions reduce to deterministic propagation from a root arc.

This module decides regularity and reflexibility straight from the rotation
system.  It deliberately shares nothing with the skew-morphism engine beyond
dihedral arithmetic, so the two can cross-validate each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .core import DihedralElement, group_tables
from .maps import CayleyMap, inverse_index

__all__ = [
    "DartSystem",
    "dart_system",
    "propagate_arc_map",
    "arc_map_is_automorphism",
    "rotary_transitive",
    "antirotary_vertex_map",
    "canonical_signature",
]


@dataclass(frozen=True)
class DartSystem:
    """Arc permutations of one Cayley map, in flat integer form.

    Arcs are indexed a = g_id * d + k.  rot/trav give R and T; rot_back
    gives R^-1.
    """

    n: int
    d: int
    rot: tuple[int, ...]
    rot_back: tuple[int, ...]
    trav: tuple[int, ...]

    @property
    def size(self) -> int:
        return 2 * self.n * self.d


@lru_cache(maxsize=None)
def dart_system(m: CayleyMap) -> DartSystem:
    n, d = m.n, m.d
    tab = group_tables(n)
    cyc = [tab.id_of(x) for x in m.cycle]
    c = inverse_index(m).c
    size = 2 * n * d
    rot = [0] * size
    rot_back = [0] * size
    trav = [0] * size
    for g in range(2 * n):
        base = g * d
        for k in range(d):
            rot[base + k] = base + (k + 1) % d
            rot_back[base + k] = base + (k - 1) % d
            trav[base + k] = tab.mul_id(g, cyc[k]) * d + c[k]
    return DartSystem(n, d, tuple(rot), tuple(rot_back), tuple(trav))


def propagate_arc_map(
    ds: DartSystem, root: int, target: int, reversing: bool = False
) -> Optional[list[int]]:
    """Extend root -> target to a full arc bijection, or return None.

    Propagates through R and T moves; orientation-reversing maps send R-moves
    to R^-1-moves.  Returns the arc image array when the extension is
    consistent and bijective.
    """
    size = ds.size
    img = [-1] * size
    hit = [False] * size
    img[root] = target
    hit[target] = True
    stack = [root]
    fwd = ds.rot_back if reversing else ds.rot
    while stack:
        a = stack.pop()
        ia = img[a]
        for move_a, move_ia in ((ds.rot[a], fwd[ia]), (ds.trav[a], ds.trav[ia])):
            known = img[move_a]
            if known >= 0:
                if known != move_ia:
                    return None
                continue
            if hit[move_ia]:
                return None
            img[move_a] = move_ia
            hit[move_ia] = True
            stack.append(move_a)
    if any(v < 0 for v in img):
        # X generates, so the arc graph is connected and this cannot happen.
        raise AssertionError("arc propagation did not reach every arc")
    return img


def arc_map_is_automorphism(ds: DartSystem, img: list[int], reversing: bool = False) -> bool:
    """Check that an arc bijection commutes with T and with R (or R^-1)."""
    if sorted(img) != list(range(ds.size)):
        return False
    fwd = ds.rot_back if reversing else ds.rot
    return all(
        img[ds.rot[a]] == fwd[img[a]] and img[ds.trav[a]] == ds.trav[img[a]]
        for a in range(ds.size)
    )


def rotary_transitive(m: CayleyMap) -> bool:
    """True iff every arc is the image of the root arc (1, x_0) under an
    orientation-preserving automorphism, i.e. |Aut+| = 2n*d."""
    ds = dart_system(m)
    return all(
        propagate_arc_map(ds, 0, target) is not None for target in range(ds.size)
    )


def _vertex_map_of(ds: DartSystem, img: list[int]) -> Optional[tuple[int, ...]]:
    """Vertex action induced by an arc map; None if it is not a bijection."""
    vn = 2 * ds.n
    vmap = [img[v * ds.d] // ds.d for v in range(vn)]
    if sorted(vmap) != list(range(vn)):
        return None
    return tuple(vmap)


def antirotary_vertex_map(m: CayleyMap) -> Optional[tuple[int, ...]]:
    """A vertex bijection fixing 1 that reverses the rotation, if one exists.

    This is the antirotary mapping existence test: the root arc (1, x_0) is
    sent to each arc (1, x_j) in turn under reversing propagation.  Returns
    the vertex image table (indexed by element id) of the first hit.
    """
    ds = dart_system(m)
    for j in range(ds.d):
        img = propagate_arc_map(ds, 0, j, reversing=True)
        if img is None:
            continue
        vmap = _vertex_map_of(ds, img)
        if vmap is not None and vmap[0] == 0:
            return vmap
    return None


def canonical_signature(m: CayleyMap) -> tuple[int, ...]:
    """Canonical form of the oriented map: minimum rooted BFS code.

    From each root arc, arcs are numbered in first-visit order exploring R
    then T; the code lists (number of R(a), number of T(a)) for each arc in
    order.  Two maps are isomorphic as oriented maps iff their minima agree.
    """
    ds = dart_system(m)
    size = ds.size
    best: Optional[tuple[int, ...]] = None
    for root in range(size):
        number = [-1] * size
        order = [root]
        number[root] = 0
        head = 0
        while head < len(order):
            a = order[head]
            head += 1
            for b in (ds.rot[a], ds.trav[a]):
                if number[b] < 0:
                    number[b] = len(order)
                    order.append(b)
        code = []
        for a in order:
            code.append(number[ds.rot[a]])
            code.append(number[ds.trav[a]])
        tup = tuple(code)
        if best is None or tup < best:
            best = tup
    assert best is not None
    return best
