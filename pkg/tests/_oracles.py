"""Independent brute-force oracles used to freeze expected test values.

Everything here recomputes properties straight from definitions, without
touching the library's optimized code paths, so tests can cross-check the
two routes against each other.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, List, Sequence, Set, Tuple

Word = Tuple[int, ...]


def all_words(q: int, n: int) -> List[Word]:
    return [tuple(w) for w in itertools.product(range(q), repeat=n)]


def wide_descendants(words: Sequence[Word], q: int) -> Set[Word]:
    """wdesc(X) by scanning the whole space Q^n."""
    n = len(words[0])
    undet = [i for i in range(n) if len({w[i] for w in words}) == 1]
    out = set()
    for y in all_words(q, n):
        if all(y[i] == words[0][i] for i in undet):
            out.add(y)
    return out


def narrow_descendants(words: Sequence[Word], q: int) -> Set[Word]:
    n = len(words[0])
    out = set()
    for y in all_words(q, n):
        if all(any(y[i] == w[i] for w in words) for i in range(n)):
            out.add(y)
    return out


def is_frameproof_bruteforce(codewords: Sequence[Word], q: int, t: int, wide: bool) -> bool:
    """Definition-level frameproof test via full descendant-set construction."""
    cs = list(codewords)
    for s in range(1, min(t, len(cs)) + 1):
        for coalition in itertools.combinations(cs, s):
            desc = wide_descendants(coalition, q) if wide else narrow_descendants(coalition, q)
            for y in cs:
                if y not in coalition and y in desc:
                    return False
    return True


def is_shf_bruteforce(codewords: Sequence[Word], w1: int, w2: int, wide: bool) -> bool:
    """Separating-hash test straight from the displayed condition."""
    m = len(codewords)
    n = len(codewords[0])
    idx = range(m)
    for s1 in range(1, min(w1, m) + 1):
        for c1 in itertools.combinations(idx, s1):
            rest = [i for i in idx if i not in c1]
            for s2 in range(1, min(w2, len(rest)) + 1):
                for c2 in itertools.combinations(rest, s2):
                    ok = False
                    for l in range(n):
                        left = {codewords[i][l] for i in c1}
                        right = {codewords[j][l] for j in c2}
                        if left & right:
                            continue
                        if wide and len(right) != 1:
                            continue
                        ok = True
                        break
                    if not ok:
                        return False
    return True


def is_cover_free_bruteforce(sets: Sequence[Set[int]], r1: int, r2: int) -> bool:
    idx = range(len(sets))
    for s1 in range(1, r1 + 1):
        for s2 in range(1, r2 + 1):
            for a_combo in itertools.combinations(idx, s1):
                inter = set.intersection(*(sets[i] for i in a_combo))
                rest = [i for i in idx if i not in a_combo]
                for b_combo in itertools.combinations(rest, s2):
                    union = set().union(*(sets[j] for j in b_combo))
                    if inter <= union:
                        return False
    return True


def symbol_class_key(codewords: Sequence[Word], q: int) -> Tuple[Word, ...]:
    """Minimal sorted codeword tuple over every per-row symbol relabeling.

    Exhaustive over (q!)^n relabelings; only usable for tiny codes, which is
    exactly what makes it an independent check of the library's canonical form.
    """
    n = len(codewords[0])
    best = None
    for maps in itertools.product(itertools.permutations(range(q)), repeat=n):
        relabeled = tuple(
            sorted(tuple(maps[i][w[i]] for i in range(n)) for w in codewords)
        )
        if best is None or relabeled < best:
            best = relabeled
    return best


def binomial_sum(n: int, lo: int, hi: int) -> int:
    """Straight summation of C(n, i) for lo <= i <= hi, negatives contributing 0."""
    return sum(comb(n, i) for i in range(max(lo, 0), hi + 1) if i <= n)
