"""Codes over a finite alphabet and their combinatorial companions.

A code is an ordered list of m distinct codewords, each a length-n tuple of
symbols from {0, ..., q-1}; equivalently an n x m representation matrix whose
columns are the codewords.  Conventions used across the package:

* codeword indices i, j run over [m] = {1, ..., m} (1-based, as is standard
  for representation matrices),
* positions run over [n] = {1, ..., n} and position sets are exposed 1-based,
* two codes are symbol-equivalent when one arises from the other by permuting
  the symbols 0, ..., q-1 within each row of the representation matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

from .bitsets import elements_from_mask, full_mask

Word = Tuple[int, ...]

NARROW = "narrow"
WIDE = "wide"

#: canonical_code falls back to a greedy (non-certified) order above this size
MAX_EXACT_CANONICAL_M = 9


@dataclass(frozen=True)
class Code:
    """q-ary code of length n, codewords ordered and pairwise distinct."""

    q: int
    n: int
    codewords: Tuple[Word, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("alphabet size q must be >= 2")
        if self.n < 1:
            raise ValueError("length n must be >= 1")
        if not self.codewords:
            raise ValueError("code must contain at least one codeword")
        object.__setattr__(self, "codewords", tuple(tuple(w) for w in self.codewords))
        for w in self.codewords:
            if len(w) != self.n:
                raise ValueError(f"codeword {w} has length {len(w)}, expected {self.n}")
            for s in w:
                if not 0 <= s < self.q:
                    raise ValueError(f"symbol {s} outside alphabet [0, {self.q - 1}]")
        if len(set(self.codewords)) != len(self.codewords):
            raise ValueError("codewords must be pairwise distinct")

    @property
    def m(self) -> int:
        return len(self.codewords)

    def word(self, i: int) -> Word:
        """Codeword with 1-based index i."""
        if not 1 <= i <= self.m:
            raise ValueError(f"codeword index {i} outside [1, {self.m}]")
        return self.codewords[i - 1]

    def matrix_rows(self) -> Tuple[Word, ...]:
        """Rows of the n x m representation matrix (row r lists symbol r of every codeword)."""
        return tuple(zip(*self.codewords))


@dataclass(frozen=True)
class PositionSet:
    """Subset of the position set [n], packed into an int mask (bit i-1 = position i)."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ground-set size must be >= 0")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("mask has bits outside [n]")

    def members(self) -> Tuple[int, ...]:
        """Sorted 1-based positions."""
        return elements_from_mask(self.bits)

    def complement(self) -> "PositionSet":
        return PositionSet(self.n, full_mask(self.n) & ~self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, position: int) -> bool:
        return 1 <= position <= self.n and self.bits >> (position - 1) & 1 == 1


@dataclass(frozen=True)
class CoincidenceProfile:
    """All coincidence sets I(i, j), j != i, generated by codeword i."""

    owner: int
    sets: Tuple[Tuple[int, PositionSet], ...]  # (j, I(owner, j)) in increasing j
    distinct_count: int


@dataclass(frozen=True)
class DescendantEnumeration:
    """Result of a capped descendant enumeration.

    When the descendant set is larger than the cap, ``words`` is None and
    ``count`` still carries the exact cardinality.
    """

    count: int
    words: Optional[Tuple[Word, ...]] = None

    @property
    def overflowed(self) -> bool:
        return self.words is None


def _validate_words(words: Sequence[Word], q: Optional[int] = None) -> int:
    if not words:
        raise ValueError("coalition must be nonempty")
    n = len(words[0])
    for w in words:
        if len(w) != n:
            raise ValueError("codewords have mismatched lengths")
        for s in w:
            if s < 0 or (q is not None and s >= q):
                raise ValueError(f"symbol {s} outside alphabet")
    return n


def undetectable_positions(words: Sequence[Word], q: Optional[int] = None) -> PositionSet:
    """Positions where all coalition members agree; every position for a singleton."""
    n = _validate_words(words, q)
    bits = 0
    first = words[0]
    for i in range(n):
        s = first[i]
        if all(w[i] == s for w in words):
            bits |= 1 << i
    return PositionSet(n, bits)


def descendant_contains(words: Sequence[Word], y: Word, mode: str, q: Optional[int] = None) -> bool:
    """Membership of y in the (narrow or wide-sense) descendant set of the coalition.

    Narrow: y picks, per position, a symbol some coalition member shows there.
    Wide: y matches the coalition exactly on its undetectable positions and is
    arbitrary elsewhere.
    """
    n = _validate_words(words, q)
    if len(y) != n:
        raise ValueError("candidate word has mismatched length")
    if any(s < 0 or (q is not None and s >= q) for s in y):
        raise ValueError("candidate word has symbols outside alphabet")
    if mode == NARROW:
        return all(any(w[i] == y[i] for w in words) for i in range(n))
    if mode == WIDE:
        first = words[0]
        for i in range(n):
            if all(w[i] == first[i] for w in words) and y[i] != first[i]:
                return False
        return True
    raise ValueError(f"unknown descendant mode {mode!r}")


def enumerate_descendants(
    words: Sequence[Word], mode: str, cap: int, q: Optional[int] = None
) -> DescendantEnumeration:
    """All descendants if there are at most cap of them, else just their exact count."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    n = _validate_words(words, q)
    if mode == WIDE:
        if q is None:
            raise ValueError("wide-sense enumeration needs the alphabet size q")
        free = [i for i in range(n) if not all(w[i] == words[0][i] for w in words)]
        count = q ** len(free)
        if count > cap:
            return DescendantEnumeration(count=count)
        base = list(words[0])
        out = []
        for choice in itertools.product(range(q), repeat=len(free)):
            w = base[:]
            for pos, s in zip(free, choice):
                w[pos] = s
            out.append(tuple(w))
        return DescendantEnumeration(count=count, words=tuple(sorted(out)))
    if mode == NARROW:
        per_position = [sorted({w[i] for w in words}) for i in range(n)]
        count = 1
        for syms in per_position:
            count *= len(syms)
        if count > cap:
            return DescendantEnumeration(count=count)
        out = [tuple(w) for w in itertools.product(*per_position)]
        return DescendantEnumeration(count=count, words=tuple(sorted(out)))
    raise ValueError(f"unknown descendant mode {mode!r}")


def coincidence_set(code: Code, i: int, j: int) -> PositionSet:
    """I(i, j): the positions where codewords i and j agree (1-based indices)."""
    if i == j:
        raise ValueError("coincidence set needs two distinct codeword indices")
    a, b = code.word(i), code.word(j)
    bits = 0
    for k in range(code.n):
        if a[k] == b[k]:
            bits |= 1 << k
    return PositionSet(code.n, bits)


def coincidence_families(code: Code) -> Tuple[CoincidenceProfile, ...]:
    """The m coincidence families: profile i collects I(i, j) for every j != i."""
    if code.m < 2:
        raise ValueError("coincidence families need at least two codewords")
    profiles = []
    for i in range(1, code.m + 1):
        tagged = tuple(
            (j, coincidence_set(code, i, j)) for j in range(1, code.m + 1) if j != i
        )
        distinct = len({ps.bits for _, ps in tagged})
        profiles.append(CoincidenceProfile(owner=i, sets=tagged, distinct_count=distinct))
    return tuple(profiles)


def _row_relabeling(row: Sequence[int], q: int) -> dict:
    """Map symbols of one matrix row to 0, 1, ... by decreasing frequency.

    Ties go to the symbol whose first occurrence (smallest codeword index)
    comes earlier, which makes the map deterministic for a fixed codeword
    order.  Symbols absent from the row keep a bijection but their image is
    irrelevant.
    """
    freq: dict = {}
    first_seen: dict = {}
    for idx, s in enumerate(row):
        freq[s] = freq.get(s, 0) + 1
        first_seen.setdefault(s, idx)
    used = sorted(freq, key=lambda s: (-freq[s], first_seen[s]))
    mapping = {s: label for label, s in enumerate(used)}
    unused = sorted(set(range(q)) - set(mapping))
    for offset, s in enumerate(unused):
        mapping[s] = len(used) + offset
    return mapping


def standard_form(code: Code) -> Code:
    """Relabel symbols within each row so row frequencies are non-increasing.

    The output satisfies lambda_0(r) >= lambda_1(r) >= ... >= lambda_{q-1}(r)
    in every row r and the operation is idempotent.
    """
    rows = code.matrix_rows()
    maps = [_row_relabeling(row, code.q) for row in rows]
    new_words = tuple(
        tuple(maps[r][w[r]] for r in range(code.n)) for w in code.codewords
    )
    return Code(code.q, code.n, new_words)


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative plus a certification flag.

    ``certified`` is False when the codeword-order minimization fell back to a
    greedy heuristic (codes with more than MAX_EXACT_CANONICAL_M codewords).
    """

    code: Code
    certified: bool


def _first_use_relabel_step(labels: list, next_label: list, word: Word) -> Word:
    """Relabel one more codeword, assigning fresh per-row labels on first use."""
    out = []
    for r, s in enumerate(word):
        lab = labels[r].get(s)
        if lab is None:
            lab = next_label[r]
            labels[r][s] = lab
            next_label[r] += 1
        out.append(lab)
    return tuple(out)


def _min_relabeled_sequence(code: Code, sort_rows: bool, exact: bool):
    """Lexicographically minimal first-use-relabeled codeword sequence.

    Minimizes over all codeword orders; per-row symbols are renamed 0, 1, ...
    in order of first appearance along the chosen order, which quotients out
    every per-row relabeling.  With sort_rows the rows of the relabeled matrix
    are additionally sorted, quotienting out row permutations as well; the
    sorted prefix of the partially relabeled rows is a true prefix of the
    final object, so branch-and-bound pruning stays exact.
    """
    m, n = code.m, code.n
    words = code.codewords
    best: list = [None]

    def candidate(order: Sequence[int]) -> Tuple[Word, ...]:
        labels = [dict() for _ in range(n)]
        next_label = [0] * n
        seq = [_first_use_relabel_step(labels, next_label, words[i]) for i in order]
        if sort_rows:
            rows = sorted(zip(*seq))
            seq = list(zip(*rows))
        return tuple(seq)

    if not exact:
        # greedy: repeatedly append the codeword whose relabeled image is smallest
        labels = [dict() for _ in range(n)]
        next_label = [0] * n
        remaining = list(range(m))
        order = []
        while remaining:
            scored = []
            for i in remaining:
                trial_labels = [dict(d) for d in labels]
                trial_next = next_label[:]
                scored.append((_first_use_relabel_step(trial_labels, trial_next, words[i]), i))
            scored.sort()
            pick = scored[0][1]
            _first_use_relabel_step(labels, next_label, words[pick])
            order.append(pick)
            remaining.remove(pick)
        return candidate(order)

    def prefix(seq: Sequence[Word]) -> Tuple[Word, ...]:
        if sort_rows:
            rows = sorted(zip(*seq))
            return tuple(zip(*rows))
        return tuple(seq)

    def rec(order: list, labels: list, next_label: list, seq: list):
        k = len(order)
        if best[0] is not None:
            p = prefix(seq)
            b = best[0][:k]
            if p > b:
                return
        if k == m:
            cand = prefix(seq)
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        for i in range(m):
            if i in order:
                continue
            trial_labels = [dict(d) for d in labels]
            trial_next = next_label[:]
            w = _first_use_relabel_step(trial_labels, trial_next, words[i])
            order.append(i)
            seq.append(w)
            rec(order, trial_labels, trial_next, seq)
            order.pop()
            seq.pop()

    rec([], [dict() for _ in range(n)], [0] * n, [])
    return best[0]


def canonical_code(code: Code, level: str = "symbol") -> CanonicalForm:
    """Canonical representative of the code's equivalence class.

    level="symbol" quotients out per-row symbol relabelings (and the codeword
    order); level="full" additionally quotients out row permutations.  The
    representative is reproducible: equivalent codes map to equal outputs.
    """
    if level not in ("symbol", "full"):
        raise ValueError(f"unknown canonicalization level {level!r}")
    exact = code.m <= MAX_EXACT_CANONICAL_M
    seq = _min_relabeled_sequence(code, sort_rows=(level == "full"), exact=exact)
    return CanonicalForm(code=Code(code.q, code.n, seq), certified=exact)


def is_permutation_code(code: Code) -> bool:
    """True iff m = n and some symbol-equivalent representative is a permutation matrix.

    Row r of a permutation matrix has a single 1, so row r of the code must
    use exactly two symbols with multiplicities n-1 and 1, and the columns
    carrying the rare symbol must form a system of distinct representatives.
    Testing the class directly avoids the frequency tie at n = 2, where the
    deterministic standard_form tie rule would relabel the permutation matrix
    away from itself.
    """
    if code.m != code.n:
        return False
    n = code.n
    candidates = []
    for row in code.matrix_rows():
        counts: dict = {}
        for s in row:
            counts[s] = counts.get(s, 0) + 1
        if len(counts) != 2 or sorted(counts.values()) != sorted((1, n - 1)):
            return False
        candidates.append([c for c, s in enumerate(row) if counts[s] == 1])
    # Kuhn's matching: rows to rare-symbol columns
    match: dict = {}

    def try_assign(r: int, seen: set) -> bool:
        for c in candidates[r]:
            if c in seen:
                continue
            seen.add(c)
            if c not in match or try_assign(match[c], seen):
                match[c] = r
                return True
        return False

    return all(try_assign(r, set()) for r in range(n))
