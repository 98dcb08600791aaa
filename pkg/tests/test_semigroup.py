from itertools import combinations
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from randsg.semigroup import (
    apery_set,
    as_genset,
    closure_membership,
    frobenius_and_genus_from_apery,
    gap_count_up_to,
    is_irreducible,
    minimal_generators,
    profile,
)


def sums_oracle(A, bound):
    """Membership by explicit dynamic programming over sums."""
    table = [False] * (bound + 1)
    table[0] = True
    for x in range(1, bound + 1):
        table[x] = any(a <= x and table[x - a] for a in A)
    return table


def maximality_oracle(A):
    """Irreducible iff adding any gap below F drags F into the closure."""
    prof = profile(A)
    n = prof.frobenius
    for x in prof.gaps:
        if x == n:
            continue
        if not closure_membership(tuple(prof.min_gens) + (x,), n)[n]:
            return False
    return True


gensets = st.lists(st.integers(1, 40), min_size=1, max_size=6).map(as_genset)
cofinite_gensets = gensets.filter(lambda A: reduce(gcd, A) == 1)


def test_closure_examples():
    assert closure_membership((), 5) == [True, False, False, False, False, False]
    assert closure_membership((2, 3), 8) == [True, False] + [True] * 7
    t = closure_membership((3, 5), 8)
    assert [i for i, x in enumerate(t) if x] == [0, 3, 5, 6, 8]


@given(gensets, st.integers(0, 120))
def test_closure_matches_sums(A, bound):
    assert closure_membership(A, bound) == sums_oracle(A, bound)


@pytest.mark.parametrize(
    "A, expected", [((2, 3, 4), (2, 3)), ((4, 6, 9, 10), (4, 6, 9)), ((), ())]
)
def test_minimal_generators_examples(A, expected):
    assert minimal_generators(A) == expected


@given(gensets)
def test_minimal_generators_idempotent_and_same_semigroup(A):
    mg = minimal_generators(A)
    assert minimal_generators(mg) == mg
    bound = 3 * max(A)
    assert closure_membership(mg, bound) == closure_membership(A, bound)
    # antichain
    for i, a in enumerate(mg):
        assert not closure_membership(mg[:i] + mg[i + 1:], a)[a]


def test_apery_examples():
    assert apery_set((3, 5), 3) == [0, 10, 5]
    assert frobenius_and_genus_from_apery([0, 10, 5]) == (7, 4)
    assert apery_set((2, 3), 2) == [0, 3]
    assert frobenius_and_genus_from_apery([0, 3]) == (1, 1)
    assert apery_set((1,), 1) == [0]
    assert frobenius_and_genus_from_apery([0]) == (-1, 0)


def test_apery_rejects():
    with pytest.raises(ValueError):
        apery_set((4, 6), 4)
    with pytest.raises(ValueError):
        apery_set((3, 5), 4)


def _check_apery_vs_scan(A):
    prof = profile(A)
    m = prof.min_gens[0]
    F, g = frobenius_and_genus_from_apery(apery_set(A, m))
    assert (F, g) == (prof.frobenius, prof.genus)
    if F >= 0:
        table = sums_oracle(A, F + max(A))
        assert not table[F] and all(table[F + 1:])
        assert table.count(False) == g


def test_apery_vs_scan_exhaustive_small():
    for size in (1, 2, 3):
        for A in combinations(range(1, 31), size):
            if reduce(gcd, A) == 1:
                _check_apery_vs_scan(A)


@given(cofinite_gensets)
def test_apery_vs_scan_random(A):
    _check_apery_vs_scan(A)


def test_profile_examples():
    p = profile((3, 5))
    assert (p.embedding_dimension, p.cofinite, p.frobenius, p.genus) == (2, True, 7, 4)
    assert p.gaps == (1, 2, 4, 7)
    m = 4
    assert profile((m, m + 1)).frobenius == m * (m + 1) - 2 * m - 1 == 11
    p = profile((4, 6))
    assert (p.gcd, p.cofinite, p.genus, p.frobenius) == (2, False, 0, 0)
    assert 10 in p and 7 not in p and 1000 in p and 1001 not in p
    p = profile(())
    assert p.min_gens == () and not p.cofinite and 0 in p and 5 not in p
    assert profile((1, 7)).frobenius == -1


@given(gensets)
def test_profile_invariants(A):
    p = profile(A)
    assert p.cofinite == (p.gcd == 1)
    assert len(p.min_gens) <= p.min_gens[0]
    bound = len(p.membership) + 2 * max(A)
    table = sums_oracle(A, bound)
    assert [x in p for x in range(bound + 1)] == table
    if p.cofinite and p.frobenius >= 0:
        F, g = p.frobenius, p.genus
        assert g <= F + 1
        assert g <= F <= 2 * g
        for M in range(F + 1):
            assert 2 * sum(table[1 : M + 1]) <= M


def test_gap_count_examples():
    assert gap_count_up_to((3, 5), 7) == 4
    assert gap_count_up_to((3, 5), 100) == 4 == profile((3, 5)).genus
    assert gap_count_up_to((4, 6), 10) == 6
    assert gap_count_up_to((), 9) == 9


def test_is_irreducible_examples():
    assert is_irreducible((3, 5))
    assert is_irreducible((3, 7)) == maximality_oracle((3, 7))
    assert is_irreducible((2, 3))
    assert not is_irreducible((4, 5, 6, 7))
    with pytest.raises(ValueError):
        is_irreducible((4, 6))
    with pytest.raises(ValueError):
        is_irreducible((1,))


@settings(max_examples=300)
@given(st.lists(st.integers(2, 25), min_size=2, max_size=5).map(as_genset).filter(
    lambda A: reduce(gcd, A) == 1
))
def test_is_irreducible_matches_maximality(A):
    assert is_irreducible(A) == maximality_oracle(A)
    if is_irreducible(A):
        p = profile(A)
        n = p.frobenius
        assert p.genus == ((n + 1) // 2 if n % 2 else (n + 2) // 2)
