"""Set families over [n] = {1, ..., n} and their extremal-set-theory predicates.

Members are stored as packed int bitmasks (element i = bit i-1); member
indices reported in witnesses are 1-based, matching the codeword convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence, Tuple

from .bitsets import elements_from_mask, full_mask, is_subset, mask_from_elements


@dataclass(frozen=True)
class SetFamily:
    """Family of distinct subsets of [n], kept in input order."""

    n: int
    members: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground-set size must be >= 1")
        object.__setattr__(self, "members", tuple(self.members))
        for m in self.members:
            if m < 0 or m >> self.n:
                raise ValueError("member has elements outside [n]")
        if len(set(self.members)) != len(self.members):
            raise ValueError("family members must be pairwise distinct")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, tuple(mask_from_elements(s, n) for s in sets))

    def sets(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(elements_from_mask(m) for m in self.members)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class CoverFreeResult:
    """Outcome of a cover-freeness test.

    A failing result carries the lexicographically first witness: 1-based
    member indices (intersecting_tuple, covering_tuple) with the intersection
    of the first contained in the union of the second.  ``vacuous`` marks
    families too small to host any admissible tuple, ``range_limited`` marks
    families where not every (s1, s2) combination up to (r1, r2) exists.
    """

    holds: bool
    witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    vacuous: bool = False
    range_limited: bool = False

    def __bool__(self) -> bool:
        return self.holds


def complement_family(family: SetFamily) -> SetFamily:
    """Replace every member by its complement in [n]; an involution."""
    full = full_mask(family.n)
    return SetFamily(family.n, tuple(full & ~m for m in family.members))


def is_sperner(family: SetFamily) -> bool:
    """True iff no member contains another (antichain)."""
    ms = family.members
    for a, b in itertools.combinations(ms, 2):
        if is_subset(a, b) or is_subset(b, a):
            return False
    return True


def lym_sum(family: SetFamily) -> Fraction:
    """Exact sum of 1 / C(n, |A|) over the members (at most 1 for antichains)."""
    total = Fraction(0)
    for m in family.members:
        total += Fraction(1, comb(family.n, m.bit_count()))
    return total


def shadow(family: SetFamily, r: int) -> SetFamily:
    """r-fold shadow for r > 0 (delete r elements), upward shadow for r < 0.

    The result collects, over all members, every set reachable by removing r
    (resp. adding -r) elements; members too small (resp. too large) contribute
    nothing.  Output members are sorted for reproducibility.
    """
    if r == 0:
        raise ValueError("shadow order must be nonzero")
    if abs(r) > family.n:
        raise ValueError(f"shadow order {r} exceeds ground-set size {family.n}")
    out = set()
    if r > 0:
        for m in family.members:
            bits = [1 << (e - 1) for e in elements_from_mask(m)]
            if len(bits) < r:
                continue
            for drop in itertools.combinations(bits, r):
                x = m
                for b in drop:
                    x ^= b
                out.add(x)
    else:
        k = -r
        for m in family.members:
            free = [1 << (e - 1) for e in elements_from_mask(full_mask(family.n) & ~m)]
            if len(free) < k:
                continue
            for add in itertools.combinations(free, k):
                x = m
                for b in add:
                    x |= b
                out.add(x)
    return SetFamily(family.n, tuple(sorted(out)))


def is_r_wise_intersecting(family: SetFamily, r: int) -> bool:
    """True iff every subfamily of at most r members has a common element."""
    if r < 1:
        raise ValueError("r must be >= 1")
    ms = family.members
    for s in range(1, min(r, len(ms)) + 1):
        for combo in itertools.combinations(ms, s):
            inter = full_mask(family.n)
            for m in combo:
                inter &= m
            if inter == 0:
                return False
    return True


def is_non_t_covering(family: SetFamily, t: int) -> bool:
    """True iff no union of at most t members equals the whole ground set."""
    if t < 1:
        raise ValueError("t must be >= 1")
    full = full_mask(family.n)
    ms = family.members
    for s in range(1, min(t, len(ms)) + 1):
        for combo in itertools.combinations(ms, s):
            union = 0
            for m in combo:
                union |= m
            if union == full:
                return False
    return True


def is_l_close_sperner(family: SetFamily, skew_distances: Iterable[int]) -> bool:
    """Pairwise test that min(|A \\ B|, |B \\ A|) lies in the given set."""
    allowed = set(skew_distances)
    if any(d < 1 for d in allowed):
        raise ValueError("skew distances must be positive")
    ms = family.members
    for a, b in itertools.combinations(ms, 2):
        d = min((a & ~b).bit_count(), (b & ~a).bit_count())
        if d not in allowed:
            return False
    return True


def is_cover_free_general(family: SetFamily, r1: int, r2: int) -> CoverFreeResult:
    """(r1, r2)-cover-freeness: no intersection of s1 <= r1 members lies inside
    the union of s2 <= r2 other members, over all tuples of distinct members.

    Tuples are scanned in a fixed order (total size ascending, then s1, then
    both index tuples lexicographically) and the scan stops at the first
    violation, so reported witnesses are reproducible.  The classical
    t-cover-free test is (r1, r2) = (1, t).
    """
    if r1 < 1 or r2 < 1:
        raise ValueError("cover-free orders must be >= 1")
    w = family.size
    if w < 2:
        return CoverFreeResult(holds=True, vacuous=True, range_limited=True)
    ms = family.members
    limited = w < r1 + r2 + 1
    indices = range(1, w + 1)
    for total in range(2, min(r1 + r2, w) + 1):
        for s1 in range(max(1, total - r2), min(r1, total - 1) + 1):
            s2 = total - s1
            for a_combo in itertools.combinations(indices, s1):
                inter = full_mask(family.n)
                for i in a_combo:
                    inter &= ms[i - 1]
                rest = [i for i in indices if i not in a_combo]
                for b_combo in itertools.combinations(rest, s2):
                    union = 0
                    for j in b_combo:
                        union |= ms[j - 1]
                    if is_subset(inter, union):
                        return CoverFreeResult(
                            holds=False,
                            witness=(a_combo, b_combo),
                            range_limited=limited,
                        )
    return CoverFreeResult(holds=True, range_limited=limited)
