import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frameproof.core import (
    Code,
    DescendantEnumeration,
    canonical_code,
    coincidence_families,
    coincidence_set,
    descendant_contains,
    enumerate_descendants,
    is_permutation_code,
    standard_form,
    undetectable_positions,
)

from _oracles import all_words, narrow_descendants, symbol_class_key, wide_descendants


def identity_code(n):
    return Code(2, n, tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))


def random_code(rng, q, n, m):
    words = rng.sample(all_words(q, n), m)
    return Code(q, n, tuple(words))


# ---------------------------------------------------------------- Code type

def test_code_validates_symbols_and_duplicates():
    with pytest.raises(ValueError):
        Code(2, 2, ((0, 2),))
    with pytest.raises(ValueError):
        Code(2, 2, ((0, 1), (0, 1)))
    with pytest.raises(ValueError):
        Code(2, 2, ((0,),))
    with pytest.raises(ValueError):
        Code(1, 2, ((0, 0),))


def test_word_indexing_is_one_based():
    code = Code(2, 2, ((0, 0), (1, 1)))
    assert code.word(1) == (0, 0)
    assert code.word(2) == (1, 1)
    with pytest.raises(ValueError):
        code.word(0)


# ------------------------------------------------- undetectable positions

def test_undetectable_positions_examples():
    assert undetectable_positions([(0, 0, 1), (0, 1, 1)]).members() == (1, 3)
    assert undetectable_positions([(0, 0, 1)]).members() == (1, 2, 3)
    assert undetectable_positions([(0, 1), (1, 0)]).members() == ()


def test_undetectable_positions_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        undetectable_positions([(0, 0), (0, 1, 1)])
    with pytest.raises(ValueError):
        undetectable_positions([])


# ------------------------------------------------------- descendant tests

def test_descendant_contains_examples():
    X = [(0, 0, 1), (0, 1, 1)]
    assert descendant_contains(X, (0, 1, 1), "wide")
    assert not descendant_contains(X, (1, 1, 1), "narrow")
    # wide frees the detectable position 2 to any symbol, narrow does not
    assert descendant_contains(X, (0, 2, 1), "wide", q=3)
    assert not descendant_contains(X, (0, 2, 1), "narrow", q=3)


def test_narrow_implies_wide_membership():
    rng = random.Random(7)
    for _ in range(300):
        q = rng.randint(2, 4)
        n = rng.randint(1, 5)
        s = rng.randint(1, 3)
        X = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(s)]
        y = tuple(rng.randrange(q) for _ in range(n))
        if descendant_contains(X, y, "narrow"):
            assert descendant_contains(X, y, "wide")


def test_binary_modes_agree():
    rng = random.Random(8)
    for _ in range(300):
        n = rng.randint(1, 5)
        s = rng.randint(1, 3)
        X = [tuple(rng.randrange(2) for _ in range(n)) for _ in range(s)]
        y = tuple(rng.randrange(2) for _ in range(n))
        assert descendant_contains(X, y, "narrow", q=2) == descendant_contains(
            X, y, "wide", q=2
        )


def test_descendant_membership_matches_bruteforce_sets():
    rng = random.Random(9)
    for _ in range(100):
        q = rng.randint(2, 3)
        n = rng.randint(1, 4)
        s = rng.randint(1, 3)
        X = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(s)]
        wide = wide_descendants(X, q)
        narrow = narrow_descendants(X, q)
        for y in all_words(q, n):
            assert descendant_contains(X, y, "wide", q=q) == (y in wide)
            assert descendant_contains(X, y, "narrow", q=q) == (y in narrow)


def test_enumerate_descendants_examples():
    X = [(0, 0, 1), (0, 1, 1)]
    res = enumerate_descendants(X, "wide", cap=10, q=2)
    assert res.words == ((0, 0, 1), (0, 1, 1))
    assert res.count == 2 and not res.overflowed

    X2 = [(0, 1), (1, 0)]
    res2 = enumerate_descendants(X2, "wide", cap=10, q=2)
    assert set(res2.words) == set(all_words(2, 2))

    res3 = enumerate_descendants(X2, "wide", cap=1, q=2)
    assert res3.overflowed and res3.count == 4 and res3.words is None


def test_enumerate_descendants_narrow_count():
    X = [(0, 0, 1), (0, 1, 1)]
    res = enumerate_descendants(X, "narrow", cap=100)
    assert res.count == 2  # position 2 offers {0,1}, others fixed
    assert res.words == ((0, 0, 1), (0, 1, 1))


# ------------------------------------------------------- coincidence sets

def test_coincidence_set_examples():
    code = Code(2, 3, ((0, 0, 1), (0, 1, 1)))
    assert coincidence_set(code, 1, 2).members() == (1, 3)
    assert coincidence_set(code, 1, 2) == coincidence_set(code, 2, 1)

    assert coincidence_set(identity_code(3), 1, 2).members() == (3,)

    c = Code(2, 2, ((0, 1), (1, 0)))
    assert coincidence_set(c, 1, 2).members() == ()

    with pytest.raises(ValueError):
        coincidence_set(code, 1, 1)


def test_coincidence_families_examples():
    profiles = coincidence_families(identity_code(3))
    p1 = profiles[0]
    assert p1.owner == 1
    assert dict((j, ps.members()) for j, ps in p1.sets) == {2: (3,), 3: (2,)}
    assert p1.distinct_count == 2

    code = Code(2, 2, ((0, 0), (0, 1), (1, 0)))
    p1 = coincidence_families(code)[0]
    assert dict((j, ps.members()) for j, ps in p1.sets) == {2: (1,), 3: (2,)}
    assert p1.distinct_count == 2

    with pytest.raises(ValueError):
        coincidence_families(Code(2, 2, ((0, 0),)))


def test_symmetric_difference_lemma_on_random_codes():
    # I(i,j) & I(i,k) <= I(j,k) <= complement(I(i,j) ^ I(i,k))
    rng = random.Random(10)
    for _ in range(300):
        q = rng.randint(2, 4)
        n = rng.randint(2, 6)
        m = rng.randint(3, min(5, q**n))
        code = random_code(rng, q, n, m)
        for i, j, k in itertools.permutations(range(1, m + 1), 3):
            ij = coincidence_set(code, i, j).bits
            ik = coincidence_set(code, i, k).bits
            jk = coincidence_set(code, j, k).bits
            full = (1 << n) - 1
            assert ij & ik & ~jk == 0
            assert jk & ~(full & ~(ij ^ ik)) == 0


# ---------------------------------------------------------- standard form

def test_standard_form_majority_relabeling():
    # binary row (1,1,1,0) across four codewords relabels to (0,0,0,1)
    code = Code(2, 3, ((1, 0, 0), (1, 0, 1), (1, 1, 0), (0, 0, 0)))
    assert standard_form(code).matrix_rows()[0] == (0, 0, 0, 1)


def test_standard_form_fixes_identity():
    code = identity_code(3)
    assert standard_form(code) == code


def test_standard_form_tie_rule_two_by_two():
    # hand-applied tie rule: first codeword's symbol takes label 0 in tied rows
    code = Code(2, 2, ((1, 0), (0, 0)))
    sf = standard_form(code)
    assert sf.matrix_rows() == ((0, 1), (0, 0))
    assert standard_form(sf) == sf  # idempotent


def test_standard_form_preserves_coincidence_sets():
    rng = random.Random(11)
    for _ in range(200):
        q = rng.randint(2, 4)
        n = rng.randint(1, 5)
        m = rng.randint(2, min(5, q**n))
        code = random_code(rng, q, n, m)
        sf = standard_form(code)
        assert sf.q == code.q and sf.n == code.n and sf.m == code.m
        assert standard_form(sf) == sf
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                assert coincidence_set(code, i, j) == coincidence_set(sf, i, j)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_standard_form_row_frequencies_descend(data):
    q = data.draw(st.integers(2, 4))
    n = data.draw(st.integers(1, 4))
    universe = all_words(q, n)
    m = data.draw(st.integers(1, min(6, len(universe))))
    words = data.draw(
        st.lists(st.sampled_from(universe), min_size=m, max_size=m, unique=True)
    )
    sf = standard_form(Code(q, n, tuple(words)))
    for row in sf.matrix_rows():
        counts = [row.count(s) for s in range(q)]
        assert counts == sorted(counts, reverse=True)


# --------------------------------------------------------- canonical form

def test_canonical_symbol_constant_under_relabelings():
    rng = random.Random(12)
    for _ in range(60):
        q = rng.randint(2, 3)
        n = rng.randint(1, 4)
        m = rng.randint(1, min(5, q**n))
        code = random_code(rng, q, n, m)
        base = canonical_code(code, "symbol")
        assert base.certified
        for _ in range(5):
            maps = [list(rng.sample(range(q), q)) for _ in range(n)]
            relabeled = Code(
                q,
                n,
                tuple(tuple(maps[i][w[i]] for i in range(n)) for w in code.codewords),
            )
            assert canonical_code(relabeled, "symbol").code == base.code


def test_canonical_symbol_matches_exhaustive_class_key():
    # two codes share a library canonical form exactly when they share the
    # exhaustive-relabeling class key
    rng = random.Random(13)
    for _ in range(60):
        q = rng.randint(2, 3)
        n = rng.randint(1, 3)
        m = rng.randint(1, min(4, q**n))
        code = random_code(rng, q, n, m)
        if rng.random() < 0.5:
            maps = [list(rng.sample(range(q), q)) for _ in range(n)]
            words = [tuple(maps[i][w[i]] for i in range(n)) for w in code.codewords]
            rng.shuffle(words)
            other = Code(q, n, tuple(words))
        else:
            other = random_code(rng, q, n, m)
        lib_equal = (
            canonical_code(code, "symbol").code == canonical_code(other, "symbol").code
        )
        oracle_equal = symbol_class_key(code.codewords, q) == symbol_class_key(
            other.codewords, q
        )
        assert lib_equal == oracle_equal


def test_canonical_full_identifies_row_permutations():
    code = identity_code(3)
    rows = list(zip(*code.codewords))
    permuted = Code(2, 3, tuple(zip(*[rows[2], rows[0], rows[1]])))
    assert canonical_code(code, "full").code == canonical_code(permuted, "full").code


def test_canonical_identifies_relabeled_identity():
    # complementing row 2 of {000,110,011} gives exactly the identity code,
    # so the two are symbol-equivalent (confirmed by the exhaustive oracle)
    a = identity_code(3)
    b = Code(2, 3, ((0, 0, 0), (1, 1, 0), (0, 1, 1)))
    assert symbol_class_key(a.codewords, 2) == symbol_class_key(b.codewords, 2)
    assert canonical_code(a, "symbol").code == canonical_code(b, "symbol").code


def test_canonical_separates_inequivalent_codes():
    # coincidence-set sizes are relabel-invariant: |I(1,2)| = 2 here vs 1 in I3
    a = identity_code(3)
    b = Code(2, 3, ((0, 0, 0), (1, 0, 0), (0, 1, 0)))
    assert symbol_class_key(a.codewords, 2) != symbol_class_key(b.codewords, 2)
    assert canonical_code(a, "symbol").code != canonical_code(b, "symbol").code
    assert canonical_code(a, "full").code != canonical_code(b, "full").code


def test_canonical_rejects_unknown_level():
    with pytest.raises(ValueError):
        canonical_code(identity_code(2), "rows")


# ----------------------------------------------------- permutation codes

def test_is_permutation_code_examples():
    assert is_permutation_code(identity_code(4))

    plus_ones = Code(2, 3, identity_code(3).codewords + ((1, 1, 1),))
    assert not is_permutation_code(plus_ones)

    # a weight-2 column prevents the permutation shape
    code = Code(2, 3, ((1, 1, 0), (0, 1, 0), (0, 0, 1)))
    assert not is_permutation_code(code)


def test_is_permutation_code_handles_n2_ties():
    assert is_permutation_code(Code(2, 2, ((1, 0), (0, 1))))
    assert is_permutation_code(Code(2, 2, ((1, 1), (0, 0))))
    assert not is_permutation_code(Code(2, 2, ((1, 0), (0, 0))))
