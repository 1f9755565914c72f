"""Cayley maps on D_n as rotation systems, their invariants and equivalence.

A Cayley map is stored as the modulus n plus the ordered cycle
(x_0, ..., x_{d-1}) of generators; the cycle *is* the rotation p applied at
every vertex, and it determines the generating set X.  The cycle is kept
with a fixed starting element; cyclic rotations of it denote the same map,
and all comparisons that should not see the starting point quantify over
rotations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .core import (
    IDENTITY,
    DihedralElement,
    GroupAutomorphism,
    apply_aut,
    automorphisms,
    check_modulus,
    format_element,
    generated_subgroup,
    group_tables,
    inv,
    mul,
    parse_element,
)

__all__ = [
    "CayleyMap",
    "MapValidationError",
    "EmptyOrShort",
    "ContainsIdentity",
    "Duplicates",
    "NotInverseClosed",
    "NotGenerating",
    "InverseIndexMap",
    "BalanceType",
    "FaceStructure",
    "make_map",
    "inverse_index",
    "balance_type",
    "rotation_type_equal",
    "trace_faces",
    "equivalent",
    "apply_aut_to_map",
    "rotate_cycle",
    "map_to_json",
    "map_from_json",
]


class MapValidationError(ValueError):
    """A proposed cycle violates one of the Cayley map invariants."""


class EmptyOrShort(MapValidationError):
    pass


class ContainsIdentity(MapValidationError):
    pass


class Duplicates(MapValidationError):
    pass


class NotInverseClosed(MapValidationError):
    pass


class NotGenerating(MapValidationError):
    pass


@dataclass(frozen=True)
class CayleyMap:
    """CM(D_n, X, p) with p given by the cycle tuple; X is implicit.

    Instances are always valid: construction runs the full invariant check
    (valency >= 2, no identity, distinct entries, inverse-closed, generating).
    """

    n: int
    cycle: tuple[DihedralElement, ...]

    def __post_init__(self) -> None:
        check_modulus(self.n)
        cyc = self.cycle
        if len(cyc) < 2:
            raise EmptyOrShort(f"valency must be >= 2, got {len(cyc)}")
        for x in cyc:
            if not (0 <= x.exp < self.n):
                raise MapValidationError(f"{x} is not in normal form mod {self.n}")
        if any(x == IDENTITY for x in cyc):
            raise ContainsIdentity("the identity cannot be a generator")
        if len(set(cyc)) != len(cyc):
            raise Duplicates("cycle entries must be distinct")
        xset = set(cyc)
        for x in cyc:
            if inv(x, self.n) not in xset:
                raise NotInverseClosed(f"inverse of {x} missing from X")
        if len(generated_subgroup(cyc, self.n)) != 2 * self.n:
            raise NotGenerating("X does not generate D_n")

    @property
    def d(self) -> int:
        return len(self.cycle)

    @property
    def generating_set(self) -> frozenset[DihedralElement]:
        return frozenset(self.cycle)

    def successor(self, x: DihedralElement) -> DihedralElement:
        """p(x) for x in X."""
        k = self.cycle.index(x)
        return self.cycle[(k + 1) % self.d]

    def predecessor(self, x: DihedralElement) -> DihedralElement:
        k = self.cycle.index(x)
        return self.cycle[(k - 1) % self.d]

    def __str__(self) -> str:
        body = ", ".join(format_element(x) for x in self.cycle)
        return f"CM(D_{self.n}, ({body}))"


def make_map(n: int, cycle: Sequence[DihedralElement]) -> CayleyMap:
    """Validated Cayley map; raises a MapValidationError subclass otherwise."""
    return CayleyMap(n, tuple(cycle))


@dataclass(frozen=True)
class InverseIndexMap:
    """The involution c with x_k^-1 = x_{c(k)} and c(c(k)) = k."""

    c: tuple[int, ...]

    def __call__(self, k: int) -> int:
        return self.c[k % len(self.c)]


@lru_cache(maxsize=None)
def inverse_index(m: CayleyMap) -> InverseIndexMap:
    pos = {x: k for k, x in enumerate(m.cycle)}
    c = tuple(pos[inv(x, m.n)] for x in m.cycle)
    assert all(c[c[k]] == k for k in range(m.d))
    return InverseIndexMap(c)


@dataclass(frozen=True)
class BalanceType:
    """Balance of a map: the t with p(x)^-1 = p^t(x^-1) for all x, if any.

    kind is one of "balanced" (t = 1), "anti-balanced" (t = d-1),
    "t-balanced" (some other t) or "none".  The t satisfying the identity
    is unique modulo d when it exists.
    """

    kind: str
    t: Optional[int] = None

    @property
    def is_balanced(self) -> bool:
        return self.kind == "balanced"


def balance_type(m: CayleyMap) -> BalanceType:
    c = inverse_index(m).c
    d = m.d
    # p(x_k)^-1 = x_{c(k+1)}; p^t(x_k^-1) = x_{c(k)+t}: the identity says
    # c(k+1) = c(k) + t mod d for every k.
    hits = [
        t
        for t in range(d)
        if all(c[(k + 1) % d] == (c[k] + t) % d for k in range(d))
    ]
    if not hits:
        return BalanceType("none")
    t = hits[0]
    if t == 1 % d:
        return BalanceType("balanced", 1 % d)
    if t == d - 1:
        return BalanceType("anti-balanced", t)
    return BalanceType("t-balanced", t)


def _offset_pattern(m: CayleyMap) -> tuple[int, ...]:
    """f(k) = c(k) - k mod d: position offset of each entry's inverse."""
    c = inverse_index(m).c
    return tuple((c[k] - k) % m.d for k in range(m.d))


def rotation_type_equal(m1: CayleyMap, m2: CayleyMap) -> bool:
    """True iff some cyclic alignment makes the inverse-offset patterns equal."""
    if m1.d != m2.d:
        return False
    f1, f2 = _offset_pattern(m1), _offset_pattern(m2)
    d = m1.d
    return any(tuple(f1[(k + s) % d] for k in range(d)) == f2 for s in range(d))


@dataclass(frozen=True)
class FaceStructure:
    """Multiset of face lengths (sorted) and the orientable genus."""

    faces: tuple[int, ...]
    genus: int


def trace_faces(m: CayleyMap) -> FaceStructure:
    """Face tracing via the arc successor (g, x) -> (g*x, p(x^-1)).

    Genus comes from V - E + F = 2 - 2*genus with V = 2n, E = n*d.
    """
    n, d = m.n, m.d
    tab = group_tables(n)
    cyc_ids = [tab.id_of(x) for x in m.cycle]
    c = inverse_index(m).c
    # arc (g, k) -> (g*x_k, c(k)+1): p(x_k^-1) sits one step after x_k^-1.
    nxt = [0] * (2 * n * d)
    for g in range(2 * n):
        for k in range(d):
            nxt[g * d + k] = tab.mul_id(g, cyc_ids[k]) * d + (c[k] + 1) % d
    seen = [False] * len(nxt)
    faces = []
    for a0 in range(len(nxt)):
        if seen[a0]:
            continue
        length = 0
        a = a0
        while not seen[a]:
            seen[a] = True
            a = nxt[a]
            length += 1
        faces.append(length)
    v, e, f = 2 * n, n * d, len(faces)
    chi = v - e + f
    if chi % 2 != 0 or chi > 2:
        raise AssertionError(f"impossible Euler characteristic {chi}")
    return FaceStructure(tuple(sorted(faces)), (2 - chi) // 2)


def rotate_cycle(m: CayleyMap, s: int) -> CayleyMap:
    """The same map with the cycle started s places later."""
    d = m.d
    return CayleyMap(m.n, tuple(m.cycle[(k + s) % d] for k in range(d)))


def apply_aut_to_map(s: GroupAutomorphism, m: CayleyMap) -> CayleyMap:
    return CayleyMap(m.n, tuple(apply_aut(s, x, m.n) for x in m.cycle))


def equivalent(m1: CayleyMap, m2: CayleyMap) -> Optional[GroupAutomorphism]:
    """A sigma with sigma(X1) = X2 and sigma o p1 = p2 o sigma, if one exists.

    Brute force over all n*phi(n) automorphisms and all d cyclic rotations.
    By the equivalence criterion for regular Cayley maps of the same rotation
    type, a witness decides map isomorphism there.
    """
    if m1.n != m2.n:
        raise ValueError("equivalent() needs maps over the same D_n")
    if m1.d != m2.d:
        return None
    d = m1.d
    targets = {m2.cycle[s:] + m2.cycle[:s] for s in range(d)}
    for s in automorphisms(m1.n):
        image = tuple(apply_aut(s, x, m1.n) for x in m1.cycle)
        if image in targets:
            return s
    return None


def map_to_json(m: CayleyMap) -> dict:
    return {"n": m.n, "cycle": [format_element(x) for x in m.cycle]}


def map_from_json(data: dict) -> CayleyMap:
    if not isinstance(data, dict) or "n" not in data or "cycle" not in data:
        raise ValueError("map JSON must have 'n' and 'cycle' keys")
    n = data["n"]
    check_modulus(n)
    cycle = [parse_element(s, n) for s in data["cycle"]]
    return make_map(n, cycle)
