"""Reflexibility of regular Cayley maps: witnesses and the reflection index.

A regular map is reflexible iff some group automorphism alpha satisfies
alpha(X) = X and alpha(p(x)) = p^-1(alpha(x)) on X; for non-balanced maps
alpha can be taken with alpha(a) = a^-1 (a partially inverting reflection).
An independent arc-level test (antirotary propagation) double-checks every
verdict in the test suites.

The paper uses "reflection index" and "rotation index" for the same
quantity; this library standardizes on reflection index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import GroupAutomorphism, apply_aut, automorphisms
from .flags import antirotary_vertex_map
from .maps import CayleyMap, balance_type, inverse_index
from .skew import extend_from_rotation

__all__ = [
    "ReflectionWitness",
    "NotRegular",
    "reflexible_by_automorphism",
    "reflexible_by_flags",
    "reflection_index",
    "partial_reflections",
    "reflection_to_json",
]


class NotRegular(ValueError):
    """Operation requires a regular map."""


@dataclass(frozen=True)
class ReflectionWitness:
    """An automorphism reversing the rotation; kind is "balanced" when the
    map is balanced, else "partial" (and then aut maps a to a^-1)."""

    aut: GroupAutomorphism
    kind: str


def _reverses_rotation(m: CayleyMap, s: GroupAutomorphism) -> bool:
    """alpha(X) = X and alpha(p(x)) = p^-1(alpha(x)) for all x in X."""
    n, d = m.n, m.d
    pos = {x: k for k, x in enumerate(m.cycle)}
    image_pos = []
    for x in m.cycle:
        y = apply_aut(s, x, n)
        k = pos.get(y)
        if k is None:
            return False
        image_pos.append(k)
    return all(
        image_pos[(k + 1) % d] == (image_pos[k] - 1) % d for k in range(d)
    )


def reflexible_by_automorphism(m: CayleyMap) -> Optional[ReflectionWitness]:
    """A reflection witness for a regular map, or None if the map is chiral.

    Balanced maps search all of Aut(D_n); non-balanced maps only need
    automorphisms with i = -1 (any reflection then partially inverts).
    """
    if extend_from_rotation(m) is None:
        raise NotRegular(f"{m} is not regular")
    balanced = balance_type(m).is_balanced
    if balanced:
        candidates = automorphisms(m.n)
    else:
        candidates = [s for s in automorphisms(m.n) if s.i == (m.n - 1) % m.n]
    for s in candidates:
        if _reverses_rotation(m, s):
            return ReflectionWitness(s, "balanced" if balanced else "partial")
    return None


def partial_reflections(m: CayleyMap) -> list[GroupAutomorphism]:
    """All witnesses with alpha(a) = a^-1 (to test the uniqueness claim)."""
    return [
        s
        for s in automorphisms(m.n)
        if s.i == (m.n - 1) % m.n and _reverses_rotation(m, s)
    ]


def reflexible_by_flags(m: CayleyMap) -> bool:
    """Antirotary-mapping existence decided by reversing arc propagation."""
    return antirotary_vertex_map(m) is not None


def reflection_index(m: CayleyMap) -> Optional[int]:
    """min{k >= 1 : p^k(x) = x^-1 for some x in X holding a rotation}.

    None when X contains no rotation (balanced, all-reflection maps): the
    index is only defined on X meeting A_n.
    """
    c = inverse_index(m).c
    d = m.d
    ks = [
        (c[k] - k) % d or d
        for k, x in enumerate(m.cycle)
        if not x.flip
    ]
    return min(ks) if ks else None


def reflection_to_json(w: ReflectionWitness) -> dict:
    return {"reflection": {"i": w.aut.i, "j": w.aut.j, "kind": w.kind}}
