"""Exact arithmetic for numerical semigroups given by a generating set.

Membership tables are Python integers used as bitsets: bit ``i`` is set iff
``i`` lies in the semigroup.  Adding a generator ``a`` to a truncated
semigroup is a handful of shift-or steps (``X | X << a``, ``X | X << 2a``, ...),
which keeps every routine here linear in the table size up to a log factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

GenSet = tuple[int, ...]

INF = math.inf

# Apery updates switch to numpy above this multiplicity.
_NUMPY_APERY_MIN = 256
_NP_INF = np.int64(1) << 61


def as_genset(elements: Iterable[int]) -> GenSet:
    """Normalize ``elements`` into a sorted tuple of distinct positive integers."""
    out = sorted({int(a) for a in elements})
    if out and out[0] < 1:
        raise ValueError(f"generators must be positive integers, got {out[0]}")
    return tuple(out)


def _add_generator(bits: int, a: int, bound: int) -> int:
    """Close the truncated semigroup ``bits`` (over [0, bound]) under adding ``a``."""
    mask = (1 << (bound + 1)) - 1
    step = a
    while step <= bound:
        bits |= (bits << step) & mask
        step <<= 1
    return bits


def closure_bits(A: Iterable[int], bound: int) -> int:
    """Bitset of ``<A> ∩ [0, bound]``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    bits = 1
    for a in as_genset(A):
        if a > bound:
            break
        if not (bits >> a) & 1:
            bits = _add_generator(bits, a, bound)
    return bits


def closure_membership(A: Iterable[int], bound: int) -> list[bool]:
    """Membership table of ``<A>`` over ``[0, bound]``; entry 0 is always True."""
    return _bits_to_table(closure_bits(A, bound), bound)


def _bits_to_table(bits: int, bound: int) -> list[bool]:
    digits = format(bits, "b")[::-1].ljust(bound + 1, "0")
    return [ch == "1" for ch in digits[: bound + 1]]


def minimal_generators(A: Iterable[int]) -> GenSet:
    """Unique minimal generating set of ``<A>``.

    Elements are scanned in increasing order and kept iff they are not
    already in the semigroup generated by the elements kept so far.
    """
    gens = as_genset(A)
    if not gens:
        return ()
    top = gens[-1]
    kept = []
    bits = 1
    for a in gens:
        if (bits >> a) & 1:
            continue
        kept.append(a)
        bits = _add_generator(bits, a, top)
    return tuple(kept)


def _apery_add(ap: list, a: int, m: int) -> None:
    """Update the Apery list ``ap`` (modulus ``m``) in place for a new generator ``a``.

    Residues split into gcd(a, m) cycles under ``r -> r + a``; two relaxation
    passes around each cycle settle every entry.
    """
    g = math.gcd(a, m)
    if g == m:
        return
    length = m // g
    shift = a % m
    for start in range(g):
        r = start
        cur = ap[r]
        for _ in range(2 * length):
            nxt = r + shift
            if nxt >= m:
                nxt -= m
            cand = cur + a
            if cand < ap[nxt]:
                ap[nxt] = cand
                cur = cand
            else:
                cur = ap[nxt]
            r = nxt


def _apery_add_np(ap: np.ndarray, a: int, m: int) -> None:
    """Vectorized :func:`_apery_add` on an int64 array with ``_NP_INF`` sentinels."""
    g = math.gcd(a, m)
    if g == m:
        return
    length = m // g
    t = np.arange(2 * length, dtype=np.int64)
    starts = np.arange(g, dtype=np.int64)[:, None]
    res = (starts + t[None, :] * (a % m)) % m
    offset = t * a
    run = np.minimum.accumulate(ap[res] - offset[None, :], axis=1) + offset[None, :]
    tail = np.minimum(run[:, length:], _NP_INF)
    idx = res[:, :length]
    ap[idx] = np.minimum(ap[idx], tail)


def apery_set(A: Iterable[int], m: int) -> list[int]:
    """Apery set of ``<A>`` with respect to ``m``: entry ``r`` is the least element ≡ r mod m.

    Computed by cyclic relaxation, independently of the membership tables used
    by :func:`profile`.  Then ``F = max(Ap) - m`` and ``g = sum(Ap[r] // m)``.
    """
    gens = as_genset(A)
    if m < 1:
        raise ValueError("m must be positive")
    if reduce(math.gcd, gens, 0) != 1:
        raise ValueError("apery_set requires gcd(A) = 1")
    if not (closure_bits(gens, m) >> m) & 1:
        raise ValueError(f"{m} is not an element of the semigroup")
    ap: list = [0] + [INF] * (m - 1)
    for a in gens:
        if a % m and a < ap[a % m]:
            _apery_add(ap, a, m)
    return [int(x) for x in ap]


@dataclass(frozen=True)
class SemigroupProfile:
    """Invariants of ``<A>``.

    ``frobenius`` and ``genus`` follow the convention that a non-cofinite
    semigroup has ``g = F = 0``; check ``cofinite`` to tell the two apart.
    ``frobenius`` is -1 for the semigroup of all nonnegative integers.
    """

    min_gens: GenSet
    gcd: int
    cofinite: bool
    frobenius: int
    genus: int
    conductor: int | None
    membership: tuple[bool, ...] = field(repr=False)

    @property
    def embedding_dimension(self) -> int:
        return len(self.min_gens)

    @property
    def multiplicity(self) -> int | None:
        return self.min_gens[0] if self.min_gens else None

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x < len(self.membership):
            return self.membership[x]
        if self.cofinite:
            return True
        # non-cofinite: table covers one full period past the conductor of <A/gcd>
        if not self.min_gens or x % self.gcd:
            return False
        return True

    @property
    def gaps(self) -> tuple[int, ...]:
        if not self.cofinite:
            raise ValueError("a non-cofinite semigroup has infinitely many gaps")
        return tuple(i for i, inside in enumerate(self.membership) if not inside)


def _scan_invariants(gens: GenSet) -> tuple[int, int]:
    """Frobenius number and genus of ``<gens>`` (gcd 1) by scanning a membership table.

    The table starts at ``2 max(gens)`` and doubles until every residue class
    modulo the multiplicity has a representative; at that point the largest
    least representative bounds the conductor.
    """
    m = gens[0]
    if m == 1:
        return -1, 0
    bound = 2 * gens[-1]
    while True:
        bits = closure_bits(gens, bound)
        firsts = [-1] * m
        missing = m
        for i, ch in enumerate(format(bits, "b")[::-1]):
            if ch == "1" and firsts[i % m] < 0:
                firsts[i % m] = i
                missing -= 1
                if not missing:
                    break
        if not missing:
            top = max(firsts)
            gap_bits = ~bits & ((1 << (top + 1)) - 1)
            frob = gap_bits.bit_length() - 1
            return frob, gap_bits.bit_count()
        bound *= 2


def profile(A: Iterable[int]) -> SemigroupProfile:
    """Full invariant bundle of ``<A>``."""
    gens = as_genset(A)
    if not gens:
        return SemigroupProfile((), 0, False, 0, 0, None, (True,))
    d = reduce(math.gcd, gens)
    reduced = minimal_generators(a // d for a in gens)
    frob, genus = _scan_invariants(reduced)
    conductor = frob + 1
    table_top = conductor + reduced[-1]
    if d == 1:
        table = tuple(_bits_to_table(closure_bits(reduced, table_top), table_top))
        return SemigroupProfile(reduced, 1, True, frob, genus, conductor, table)
    base = _bits_to_table(closure_bits(reduced, table_top), table_top)
    table = tuple(i % d == 0 and base[i // d] for i in range(d * table_top + 1))
    return SemigroupProfile(tuple(d * a for a in reduced), d, False, 0, 0, None, table)


def gap_count_up_to(A: Iterable[int], M: int) -> int:
    """Number of gaps of ``<A>`` in ``[1, M]`` (defined whether or not ``<A>`` is cofinite)."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    bits = closure_bits(A, M)
    return M + 1 - bits.bit_count()


def is_irreducible(A: Iterable[int]) -> bool:
    """Whether ``<A>`` is irreducible, via the symmetric-pairing criterion.

    For Frobenius number n: every ``0 < s < n/2`` with ``n - s`` a gap must
    itself lie in the semigroup.
    """
    prof = profile(A)
    if not prof.cofinite:
        raise ValueError("irreducibility is only defined for cofinite semigroups")
    n = prof.frobenius
    if n < 1:
        raise ValueError("the semigroup of all nonnegative integers has no Frobenius number")
    for s in range(1, (n + 1) // 2):
        if (n - s) not in prof and s not in prof:
            return False
    return True


def frobenius_and_genus_from_apery(ap: Sequence[int]) -> tuple[int, int]:
    m = len(ap)
    return max(ap) - m, sum(x // m for x in ap)
