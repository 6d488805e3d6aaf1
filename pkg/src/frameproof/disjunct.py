"""Binary incidence matrices: disjunctness, isolated columns, private pairs.

An n x w matrix is stored column-wise, each column an int mask over the rows
(row r = bit r-1).  Raw matrices may repeat columns (useful for adversarial
tests); converting to a SetFamily enforces distinctness.  Rows and columns
are 1-based in every reported witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from .bitsets import elements_from_mask, full_mask, is_subset
from .bounds import threshold_below
from .families import SetFamily


@dataclass(frozen=True)
class BinaryMatrix:
    """0/1 matrix with n rows and w >= 1 columns; n = 0 only as a peeling artifact."""

    n: int
    columns: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("row count must be >= 0")
        object.__setattr__(self, "columns", tuple(self.columns))
        if not self.columns:
            raise ValueError("matrix needs at least one column")
        for c in self.columns:
            if c < 0 or c >> self.n:
                raise ValueError("column has bits outside the row range")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        if not rows:
            raise ValueError("matrix needs at least one row")
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise ValueError("ragged rows")
        cols = [0] * w
        for r, row in enumerate(rows):
            for c, entry in enumerate(row):
                if entry not in (0, 1):
                    raise ValueError(f"entry {entry!r} is not 0/1")
                if entry:
                    cols[c] |= 1 << r
        return cls(len(rows), tuple(cols))

    @classmethod
    def from_family(cls, family: SetFamily) -> "BinaryMatrix":
        return cls(family.n, family.members)

    def to_family(self) -> SetFamily:
        """Distinct-column view; raises if columns repeat."""
        return SetFamily(self.n, self.columns)

    @property
    def w(self) -> int:
        return len(self.columns)

    def rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(self.columns[c] >> r & 1 for c in range(self.w)) for r in range(self.n)
        )

    def column_weight(self, u: int) -> int:
        """Weight of the 1-based column u."""
        if not 1 <= u <= self.w:
            raise ValueError(f"column index {u} outside [1, {self.w}]")
        return self.columns[u - 1].bit_count()


@dataclass(frozen=True)
class DisjunctResult:
    holds: bool
    # covered column, covering column tuple (1-based) for the first violation
    witness: Optional[Tuple[int, Tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class PrivatePairStats:
    """Counts of private vs shared 2-subsets inside one column's support."""

    column: int
    p_count: int
    n_count: int

    def __post_init__(self):
        assert self.p_count >= 0 and self.n_count >= 0


def is_disjunct(matrix: BinaryMatrix, t: int) -> DisjunctResult:
    """t-disjunctness: no boolean sum of at most t columns contains another column.

    Scans union sizes 1..t and index tuples lexicographically; the first
    violation (covered column, covering tuple) is returned as witness.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    cols = matrix.columns
    w = matrix.w
    for s in range(1, min(t, w - 1) + 1):
        for combo in itertools.combinations(range(1, w + 1), s):
            union = 0
            for j in combo:
                union |= cols[j - 1]
            for v in range(1, w + 1):
                if v in combo:
                    continue
                if is_subset(cols[v - 1], union):
                    return DisjunctResult(holds=False, witness=(v, combo))
    return DisjunctResult(holds=True)


def isolated_columns(matrix: BinaryMatrix) -> List[Tuple[int, int]]:
    """Columns owning a private row: (column, smallest witness row), 1-based, by column."""
    out = []
    for u in range(1, matrix.w + 1):
        private = matrix.columns[u - 1]
        for v in range(1, matrix.w + 1):
            if v != u:
                private &= ~matrix.columns[v - 1]
        if private:
            out.append((u, (private & -private).bit_length()))
    return out


def peel_column(matrix: BinaryMatrix, u: int) -> BinaryMatrix:
    """Delete column u and every row in its support.

    On a t-disjunct input the result is (t-1)-disjunct.  Peeling a full-weight
    column leaves a 0-row matrix, detectable via the result's n == 0.
    """
    if matrix.w < 2:
        raise ValueError("peeling needs at least two columns")
    if not 1 <= u <= matrix.w:
        raise ValueError(f"column index {u} outside [1, {matrix.w}]")
    support = matrix.columns[u - 1]
    keep_rows = [r for r in range(matrix.n) if not support >> r & 1]
    new_cols = []
    for v in range(matrix.w):
        if v == u - 1:
            continue
        c = matrix.columns[v]
        packed = 0
        for new_r, old_r in enumerate(keep_rows):
            if c >> old_r & 1:
                packed |= 1 << new_r
        new_cols.append(packed)
    return BinaryMatrix(len(keep_rows), tuple(new_cols))


def private_pair_stats(matrix: BinaryMatrix, u: int) -> PrivatePairStats:
    """Split the 2-subsets of column u's support into private and shared ones."""
    support = matrix.columns[u - 1] if 1 <= u <= matrix.w else None
    if support is None:
        raise ValueError(f"column index {u} outside [1, {matrix.w}]")
    rows = [1 << (e - 1) for e in elements_from_mask(support)]
    p_count = 0
    n_count = 0
    for a, b in itertools.combinations(rows, 2):
        pair = a | b
        if any(
            v != u - 1 and is_subset(pair, matrix.columns[v]) for v in range(matrix.w)
        ):
            n_count += 1
        else:
            p_count += 1
    assert p_count + n_count == comb(len(rows), 2)
    return PrivatePairStats(column=u, p_count=p_count, n_count=n_count)


@dataclass(frozen=True)
class MatchingBoundReport:
    """Per-column verdicts for the matching bound on non-isolated disjunct matrices."""

    applicable: bool
    reason: Optional[str] = None
    # (column, weight, n_count, bound, holds) for columns with t+1 <= weight <= 2t-1
    checked: Tuple[Tuple[int, int, int, int, bool], ...] = ()
    # columns whose weight falls outside the lemma's range
    out_of_range: Tuple[int, ...] = ()


def check_matching_bound(matrix: BinaryMatrix, t: int) -> MatchingBoundReport:
    """For t-disjunct matrices without isolated columns, check that every column
    of weight t+s (1 <= s <= t-1) has |N(u)| <= max{C(2s-1,2), C(t+s,2)-C(t+1,2)}.

    A reported violation signals an implementation bug, not a combinatorial
    discovery.  Heavier columns are listed as out of the lemma's range.
    """
    if not is_disjunct(matrix, t):
        return MatchingBoundReport(applicable=False, reason="matrix is not t-disjunct")
    if isolated_columns(matrix):
        return MatchingBoundReport(applicable=False, reason="matrix has isolated columns")
    checked = []
    out_of_range = []
    for u in range(1, matrix.w + 1):
        weight = matrix.column_weight(u)
        s = weight - t
        if not 1 <= s <= t - 1:
            out_of_range.append(u)
            continue
        bound = max(comb(2 * s - 1, 2), comb(t + s, 2) - comb(t + 1, 2))
        n_count = private_pair_stats(matrix, u).n_count
        checked.append((u, weight, n_count, bound, n_count <= bound))
    return MatchingBoundReport(
        applicable=True, checked=tuple(checked), out_of_range=tuple(out_of_range)
    )


@dataclass(frozen=True)
class SquareClassification:
    is_permutation: bool
    # column of the single 1 in each row, 1-based, when a permutation matrix
    permutation: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class TallClassification:
    is_stacked_permutation: bool
    # row order (1-based) placing a permutation matrix in the first n-1 rows
    row_order: Optional[Tuple[int, ...]] = None


class TheoremViolation(RuntimeError):
    """An exhaustively checkable theorem failed: implementation bug."""


def _permutation_of(matrix: BinaryMatrix) -> Optional[Tuple[int, ...]]:
    if matrix.n != matrix.w:
        return None
    perm = []
    seen = set()
    for row in matrix.rows():
        ones = [c + 1 for c, e in enumerate(row) if e == 1]
        if len(ones) != 1 or ones[0] in seen:
            return None
        seen.add(ones[0])
        perm.append(ones[0])
    return tuple(perm)


def classify_square(matrix: BinaryMatrix, t: int) -> SquareClassification:
    """Classify an n x n t-disjunct matrix (1 < n) as permutation or counterexample.

    Below the cover-free threshold n < (15+sqrt(33))/24 t^2 the permutation
    outcome is forced; seeing anything else there raises TheoremViolation.
    """
    if matrix.n != matrix.w:
        raise ValueError("classify_square needs a square matrix")
    if matrix.n <= 1:
        raise ValueError("classify_square needs n > 1")
    if not is_disjunct(matrix, t):
        raise ValueError("matrix is not t-disjunct")
    perm = _permutation_of(matrix)
    if perm is None and threshold_below(matrix.n, t):
        raise TheoremViolation(
            f"{matrix.n}x{matrix.n} {t}-disjunct non-permutation below threshold"
        )
    return SquareClassification(is_permutation=perm is not None, permutation=perm)


def classify_tall(matrix: BinaryMatrix, t: int) -> TallClassification:
    """Classify an n x (n-1) t-disjunct matrix (2 < n): can the rows be ordered
    so the first n-1 form a permutation matrix of degree n-1?

    Any n-1 weight-one rows with pairwise distinct supports qualify, so the
    search is a bipartite matching from columns to their weight-one rows.
    """
    if matrix.w != matrix.n - 1:
        raise ValueError("classify_tall needs an n x (n-1) matrix")
    if matrix.n <= 2:
        raise ValueError("classify_tall needs n > 2")
    if not is_disjunct(matrix, t):
        raise ValueError("matrix is not t-disjunct")
    rows = matrix.rows()
    ones_rows = {
        r: row.index(1) + 1 for r, row in enumerate(rows, start=1) if sum(row) == 1
    }
    # match each column to a distinct weight-one row (greedy + backtracking)
    candidates = {
        c: sorted(r for r, col in ones_rows.items() if col == c)
        for c in range(1, matrix.w + 1)
    }
    match: dict = {}

    def assign(c: int, banned: set) -> bool:
        for r in candidates[c]:
            if r in banned:
                continue
            banned.add(r)
            if r not in match or assign(match[r], banned):
                match[r] = c
                return True
        return False

    ok = all(assign(c, set()) for c in range(1, matrix.w + 1))
    if not ok:
        if threshold_below(matrix.n, t):
            raise TheoremViolation(
                f"{matrix.n}x{matrix.n - 1} {t}-disjunct matrix below threshold "
                "has no permutation row order"
            )
        return TallClassification(is_stacked_permutation=False)
    chosen = {r for r in match}
    order = sorted(chosen, key=lambda r: match[r])
    order += [r for r in range(1, matrix.n + 1) if r not in chosen]
    return TallClassification(is_stacked_permutation=True, row_order=tuple(order))
