"""Exhaustive census of regular Cayley maps on D_n and the classification
cross-check.

The enumeration walks all inverse-closed generating sets and all cyclic
orders (up to rotation: the cycle is started at the least element of X),
pruned by incremental skew-propagation; every surviving cycle is then
re-certified by the authoritative engine plus the independent flag oracle.
Isomorphism classes use the rooted-flag canonical form, cross-checked
against the automorphism-equivalence criterion; the final report compares
the enumerated reflexible regular classes against the classification's
expected list and treats any mismatch as a first-class finding, not an
assertion failure.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Optional, Sequence

from ._search import search_regular_cycles
from .core import DihedralElement, generated_subgroup, group_tables, inv
from .families import (
    FamilyTag,
    build_family,
    family_parameters,
    maps_isomorphic,
)
from .flags import canonical_signature
from .maps import CayleyMap, balance_type, equivalent, make_map, rotation_type_equal, trace_faces
from .reflex import reflection_index, reflexible_by_automorphism, reflexible_by_flags
from .skew import is_regular

__all__ = [
    "BoundExceeded",
    "CensusClass",
    "CensusReport",
    "DEFAULT_BOUND",
    "FILTERED_BOUND",
    "enumerate_regular",
    "enumerate_reflexible_regular",
    "isomorphism_classes",
    "cross_check",
    "inverse_closed_generating_sets",
    "iter_valid_maps",
    "random_valid_maps",
]

DEFAULT_BOUND = 8
FILTERED_BOUND = 12
ENV_BOUND = "DIHEDRALMAPS_MAX_N"


class BoundExceeded(ValueError):
    """n is above the configured exhaustive-search bound."""


def _bound_for(max_d: Optional[int]) -> int:
    env = os.environ.get(ENV_BOUND)
    if env is not None:
        return int(env)
    if max_d is not None and max_d <= 8:
        return FILTERED_BOUND
    return DEFAULT_BOUND


def inverse_closed_generating_sets(
    n: int, max_d: Optional[int] = None
) -> list[tuple[DihedralElement, ...]]:
    """All inverse-closed generating subsets of D_n minus the identity,
    sorted, each given as a sorted element tuple."""
    tab = group_tables(n)
    singles = []  # involutions: reflections plus a^(n/2) for even n
    pairs = []
    for e in range(1, n):
        if (2 * e) % n == 0:
            singles.append((tab.elements[e],))
        elif e < (n - e) % n:
            pairs.append((tab.elements[e], tab.elements[(n - e) % n]))
    singles.extend((x,) for x in tab.elements[n:])
    blocks = pairs + singles
    out = []
    for mask in range(1, 1 << len(blocks)):
        xs: list[DihedralElement] = []
        for i, block in enumerate(blocks):
            if mask >> i & 1:
                xs.extend(block)
        if len(xs) < 2 or (max_d is not None and len(xs) > max_d):
            continue
        if len(generated_subgroup(xs, n)) != 2 * n:
            continue
        out.append(tuple(sorted(xs)))
    out.sort(key=lambda xs: (len(xs), xs))
    return out


def enumerate_regular(
    n: int, max_d: Optional[int] = None, check_bound: bool = True
) -> list[CayleyMap]:
    """All regular Cayley maps on D_n up to cycle rotation.

    Survivors of the propagation-pruned search are re-checked with
    is_regular, which runs both the skew engine and the flag oracle.
    """
    if n < 2:
        raise BoundExceeded(f"n must be >= 2, got {n}")
    if check_bound and n > _bound_for(max_d):
        raise BoundExceeded(
            f"n={n} above the enumeration bound {_bound_for(max_d)} "
            f"(set {ENV_BOUND} to override)"
        )
    tab = group_tables(n)
    found = []
    for xs in inverse_closed_generating_sets(n, max_d):
        x_ids = tuple(tab.id_of(x) for x in xs)
        for cyc_ids in search_regular_cycles(n, x_ids, tab.mul, tab.inv):
            m = make_map(n, [tab.element_of(i) for i in cyc_ids])
            if is_regular(m) is not None:
                found.append(m)
    return found


def enumerate_reflexible_regular(
    n: int, max_d: Optional[int] = None, check_bound: bool = True
) -> list[CayleyMap]:
    """The regular maps that also pass both reflexibility tests."""
    out = []
    for m in enumerate_regular(n, max_d, check_bound):
        by_aut = reflexible_by_automorphism(m) is not None
        by_flags = reflexible_by_flags(m)
        if by_aut != by_flags:
            raise AssertionError(f"reflexibility oracles disagree on {m}")
        if by_aut:
            out.append(m)
    return out


def isomorphism_classes(maps: Sequence[CayleyMap]) -> list[list[CayleyMap]]:
    """Partition regular maps over one D_n into oriented-isomorphism classes.

    The rooted-flag canonical form is the partition key; the automorphism
    equivalence criterion is run as a cross-check inside every rotation-type
    bucket (where it must agree for n >= 3).
    """
    buckets: dict[tuple, list[CayleyMap]] = {}
    for m in maps:
        buckets.setdefault(canonical_signature(m), []).append(m)
    classes = sorted(buckets.values(), key=lambda ms: (ms[0].d, canonical_signature(ms[0])))
    for cls in classes:
        rep = cls[0]
        if rep.n < 3:
            continue
        for other in cls[1:]:
            if rotation_type_equal(rep, other) and equivalent(rep, other) is None:
                raise AssertionError(
                    f"canonical form and equivalence disagree: {rep} vs {other}"
                )
    return classes


@dataclass(frozen=True)
class CensusClass:
    """One isomorphism class of the census, with its invariants."""

    representative: CayleyMap
    size: int
    tag: Optional[FamilyTag]
    genus: int
    reflection_index: Optional[int]
    balance: str


@dataclass
class CensusReport:
    """Comparison of the enumerated reflexible regular classes against the
    classification's expected list for one n."""

    n: int
    classes: list[CensusClass]
    expected: list[FamilyTag]
    verdict: str  # "match" or "mismatch"
    findings: list[str] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return self.verdict == "match"


def cross_check(n: int, max_d: Optional[int] = None) -> CensusReport:
    """Bijection test: enumerated reflexible regular classes vs the expected
    family list.  Unmatched classes and unrealized tags are reported as
    findings and flip the verdict to mismatch."""
    maps = enumerate_reflexible_regular(n, max_d)
    classes = isomorphism_classes(maps)
    expected = family_parameters(n)
    built = {tag.label(): build_family(tag, n).map for tag in expected}

    findings: list[str] = []
    assigned: dict[str, int] = {}
    out_classes: list[CensusClass] = []
    for idx, cls in enumerate(classes):
        rep = cls[0]
        hit: Optional[FamilyTag] = None
        for tag in expected:
            if maps_isomorphic(rep, built[tag.label()]):
                hit = tag
                break
        if hit is None:
            findings.append(f"enumerated class {rep} matches no expected family")
        else:
            label = hit.label()
            if label in assigned:
                findings.append(
                    f"classes #{assigned[label]} and #{idx} both match {label}"
                )
            assigned[label] = idx
        out_classes.append(
            CensusClass(
                representative=rep,
                size=len(cls),
                tag=hit,
                genus=trace_faces(rep).genus,
                reflection_index=reflection_index(rep),
                balance=balance_type(rep).kind,
            )
        )
    for tag in expected:
        if tag.label() not in assigned:
            findings.append(f"expected family {tag.label()} not found at n={n}")
    verdict = "match" if not findings else "mismatch"
    return CensusReport(n, out_classes, expected, verdict, findings)


def iter_valid_maps(n: int, max_d: int) -> Iterator[CayleyMap]:
    """Every valid Cayley map on D_n with valency <= max_d, up to rotation.

    Unpruned: this is the brute-force corpus generator for oracle
    cross-checks, only usable at very small n.
    """
    for xs in inverse_closed_generating_sets(n, max_d):
        first, rest = xs[0], xs[1:]
        for perm in permutations(rest):
            yield make_map(n, (first,) + perm)


def random_valid_maps(
    count: int, n_max: int, seed: int, n_min: int = 2
) -> list[CayleyMap]:
    """Seeded sample of valid maps with n <= n_max (duplicates possible)."""
    rng = random.Random(seed)
    out: list[CayleyMap] = []
    sets_by_n = {n: inverse_closed_generating_sets(n) for n in range(n_min, n_max + 1)}
    while len(out) < count:
        n = rng.randint(n_min, n_max)
        xs = list(rng.choice(sets_by_n[n]))
        rng.shuffle(xs)
        out.append(make_map(n, xs))
    return out
