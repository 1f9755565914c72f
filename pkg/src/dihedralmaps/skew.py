"""Skew-morphism engine: verification, extension from a rotation, kernels.

A skew-morphism of D_n is a permutation phi fixing 1 together with a power
function pi such that phi(gh) = phi(g) phi^pi(g)(h) for all g, h.  A Cayley
map is regular exactly when its rotation p extends to a skew-morphism with
phi restricted to X equal to p; `extend_from_rotation` decides this by
deterministic propagation and `is_regular` cross-checks the answer against
the independent arc-propagation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import (
    IDENTITY,
    DihedralElement,
    Subgroup,
    all_elements,
    format_element,
    group_tables,
    parse_element,
)
from .flags import rotary_transitive
from .maps import CayleyMap, inverse_index

__all__ = [
    "SkewMorphism",
    "SkewCheck",
    "RegularityCertificate",
    "TablesIncomplete",
    "OracleDisagreement",
    "verify_skew",
    "extend_from_rotation",
    "power_kernel",
    "regular_by_flags",
    "is_regular",
    "permutation_order",
    "derive_power_function",
    "skew_to_json",
    "skew_from_json",
]


class TablesIncomplete(ValueError):
    """A phi or pi table does not cover all of D_n."""


class OracleDisagreement(RuntimeError):
    """The skew engine and the flag oracle returned different answers."""


@dataclass(frozen=True)
class SkewMorphism:
    """Total image table, permutation order, and power table on D_n.

    images and power are indexed by element id (exp + n*flip); power values
    are normalized into 1..order, so ker(pi) is literally {g : power[g] == 1}.
    """

    n: int
    order: int
    images: tuple[int, ...]
    power: tuple[int, ...]

    def image_of(self, x: DihedralElement) -> DihedralElement:
        tab = group_tables(self.n)
        return tab.element_of(self.images[tab.id_of(x)])

    def power_of(self, x: DihedralElement) -> int:
        return self.power[group_tables(self.n).id_of(x)]

    def orbit_of(self, x: DihedralElement) -> tuple[DihedralElement, ...]:
        tab = group_tables(self.n)
        orbit = [tab.id_of(x)]
        while True:
            nxt = self.images[orbit[-1]]
            if nxt == orbit[0]:
                return tuple(tab.element_of(i) for i in orbit)
            orbit.append(nxt)

    @property
    def is_identity(self) -> bool:
        return all(self.images[i] == i for i in range(2 * self.n))

    def as_mappings(self) -> tuple[dict, dict]:
        """(phi, pi) as element-keyed dictionaries, e.g. for verify_skew."""
        tab = group_tables(self.n)
        phi = {x: tab.element_of(self.images[tab.id_of(x)]) for x in tab.elements}
        pi = {x: self.power[tab.id_of(x)] for x in tab.elements}
        return phi, pi


@dataclass(frozen=True)
class SkewCheck:
    """Outcome of verify_skew; falsy on failure, with the first violation."""

    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def permutation_order(images: tuple[int, ...]) -> int:
    import math

    order = 1
    seen = [False] * len(images)
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = images[i]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def _power_tables(images: tuple[int, ...], order: int) -> list[tuple[int, ...]]:
    """phi^e for e = 0..order as id tables."""
    size = len(images)
    pows = [tuple(range(size))]
    for _ in range(order):
        prev = pows[-1]
        pows.append(tuple(images[prev[i]] for i in range(size)))
    return pows


def derive_power_function(images: tuple[int, ...], n: int):
    """The unique power function for an image table, or None.

    For each g finds the exponent e in 1..order with
    phi(g*h) = phi(g) * phi^e(h) for every h; failure at any g means the
    table is not a skew-morphism.
    """
    tab = group_tables(n)
    size = 2 * n
    order = permutation_order(images)
    pows = _power_tables(images, order)
    power = []
    for g in range(size):
        fg = images[g]
        found = None
        for e in range(1, order + 1):
            pe = pows[e % order]
            if all(
                images[tab.mul_id(g, h)] == tab.mul_id(fg, pe[h]) for h in range(size)
            ):
                found = e
                break
        if found is None:
            return None
        power.append(found)
    return order, tuple(power)


def verify_skew(
    phi: Mapping[DihedralElement, DihedralElement],
    pi: Mapping[DihedralElement, int],
    n: int,
) -> SkewCheck:
    """Check phi fixes 1, is a bijection, and the axiom holds for all pairs.

    Raises TablesIncomplete when either table misses an element; otherwise
    reports the first violation found.
    """
    elems = all_elements(n)
    for x in elems:
        if x not in phi or x not in pi:
            raise TablesIncomplete(f"no table entry for {format_element(x)}")
    if phi[IDENTITY] != IDENTITY:
        return SkewCheck(False, "phi does not fix the identity")
    if len({phi[x] for x in elems}) != len(elems):
        return SkewCheck(False, "phi is not a bijection")
    tab = group_tables(n)
    images = tuple(tab.id_of(phi[x]) for x in elems)
    if min(int(pi[x]) for x in elems) < 0:
        return SkewCheck(False, "negative power value")
    # phi^e only depends on e modulo the permutation order.
    order = permutation_order(images)
    pows = _power_tables(images, order)
    from .core import mul

    for a in elems:
        pa = int(pi[a]) % order
        for b in elems:
            lhs = phi[mul(a, b, n)]
            rhs = mul(phi[a], tab.element_of(pows[pa][tab.id_of(b)]), n)
            if lhs != rhs:
                return SkewCheck(
                    False,
                    f"axiom fails at ({format_element(a)}, {format_element(b)}): "
                    f"phi(ab)={format_element(lhs)} but "
                    f"phi(a)phi^{pa}(b)={format_element(rhs)}",
                )
    return SkewCheck(True)


def extend_from_rotation(m: CayleyMap) -> Optional[SkewMorphism]:
    """The unique skew-morphism with phi|X = p, or None if none exists.

    Seeds pi on X from the inverse-index differences c(k+1) - c(k) (valid
    modulo d), then propagates (phi(g), pi(g) mod d) outward from the
    identity over the Cayley graph; the sum rule pi(gx) = sum of pi over the
    phi-orbit window is well defined modulo d because each full window sums
    to 0.  The completed table is then given its true permutation order, the
    power function is re-derived modulo that order, and the axiom is
    verified in full; any inconsistency along the way means no extension
    exists.
    """
    n, d = m.n, m.d
    tab = group_tables(n)
    size = 2 * n
    cyc = [tab.id_of(x) for x in m.cycle]
    pos = {g: k for k, g in enumerate(cyc)}
    c = inverse_index(m).c

    phi = [-1] * size
    pid = [-1] * size
    preim = [-1] * size

    def assign(g: int, v: int, p: Optional[int]) -> bool:
        if phi[g] >= 0 and phi[g] != v:
            return False
        if phi[g] < 0:
            if preim[v] >= 0 and preim[v] != g:
                return False
            phi[g] = v
            preim[v] = g
            queue.append(g)
        if p is not None:
            if pid[g] >= 0 and pid[g] != p:
                return False
            pid[g] = p
        return True

    queue: list[int] = []
    if not assign(0, 0, 1 % d):
        return None
    for k, g in enumerate(cyc):
        if not assign(g, cyc[(k + 1) % d], (c[(k + 1) % d] - c[k]) % d):
            return None

    head = 0
    while head < len(queue):
        g = queue[head]
        head += 1
        pg = pid[g]
        fg = phi[g]
        if pg < 0:
            raise AssertionError("queued element without a power value")
        for k in range(d):
            x = cyc[k]
            h = tab.mul_id(g, x)
            val = tab.mul_id(fg, cyc[(k + pg) % d])
            ph = sum(pid[cyc[(k + i) % d]] for i in range(pg)) % d
            if not assign(h, val, ph):
                return None

    if any(v < 0 for v in phi):
        raise AssertionError("propagation did not cover D_n")

    images = tuple(phi)
    derived = derive_power_function(images, n)
    if derived is None:
        return None
    order, power = derived
    if any(power[g] % d != pid[g] for g in range(size)):
        return None
    sm = SkewMorphism(n, order, images, power)
    phi_map, pi_map = sm.as_mappings()
    if not verify_skew(phi_map, pi_map, n):
        return None
    if not sm.is_identity and any(p % order == 0 for p in power):
        # Sanity: power values of a non-identity skew-morphism are non-zero.
        raise AssertionError("zero power value on a non-identity skew-morphism")
    return sm


def power_kernel(sm: SkewMorphism) -> Subgroup:
    """ker(pi) = {g : pi(g) = 1}, always a subgroup for a verified table."""
    tab = group_tables(sm.n)
    members = [
        tab.element_of(g)
        for g in range(2 * sm.n)
        if sm.power[g] % sm.order == 1 % sm.order
    ]
    return Subgroup(sm.n, tuple(sorted(members)))


def regular_by_flags(m: CayleyMap) -> bool:
    """Arc-transitivity decided purely by flag propagation (independent oracle)."""
    return rotary_transitive(m)


@dataclass(frozen=True)
class RegularityCertificate:
    """A skew-morphism whose restriction to X is p, i.e. a regularity witness."""

    map: CayleyMap
    skew: SkewMorphism

    def __post_init__(self) -> None:
        tab = group_tables(self.map.n)
        cyc = [tab.id_of(x) for x in self.map.cycle]
        d = len(cyc)
        for k in range(d):
            if self.skew.images[cyc[k]] != cyc[(k + 1) % d]:
                raise ValueError("skew-morphism does not restrict to p on X")


def is_regular(m: CayleyMap) -> Optional[RegularityCertificate]:
    """Certificate iff the rotation extends to a skew-morphism.

    Always runs both the skew engine and the flag oracle; a disagreement is
    an internal error, never a result.
    """
    sm = extend_from_rotation(m)
    flag = regular_by_flags(m)
    if (sm is not None) != flag:
        raise OracleDisagreement(
            f"skew engine says {'regular' if sm else 'not regular'} but flag "
            f"oracle says {'regular' if flag else 'not regular'} for {m}"
        )
    if sm is None:
        return None
    return RegularityCertificate(m, sm)


def skew_to_json(sm: SkewMorphism) -> dict:
    tab = group_tables(sm.n)
    return {
        "order": sm.order,
        "images": {
            format_element(x): format_element(sm.image_of(x)) for x in tab.elements
        },
        "power": {format_element(x): sm.power_of(x) for x in tab.elements},
    }


def skew_from_json(data: dict, n: int) -> tuple[dict, dict]:
    """Parse a skew dump back into (phi, pi) element mappings."""
    phi = {
        parse_element(k, n): parse_element(v, n) for k, v in data["images"].items()
    }
    pi = {parse_element(k, n): int(v) for k, v in data["power"].items()}
    return phi, pi
