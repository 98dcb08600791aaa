"""Irreducible numerical semigroups with a fixed Frobenius number.

Each irreducible ``S`` with ``F(S) = n`` is determined by its minimal
generators below ``n/2`` (its *kernel*).  Conversely any minimal generating
set ``A ⊂ [2, n/2)`` with ``n ∉ <A>`` extends to exactly one irreducible by
adding the fill-in ``B = {s ∈ (n/2, n) : s ∉ <A>, n - s ∉ <A>}``.  So the
enumeration is a depth-first search over such kernel sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .semigroup import GenSet, _add_generator, as_genset, closure_bits

BRUTE_FORCE_MAX_N = 34


@dataclass(frozen=True)
class KernelSet:
    n: int
    gens: GenSet

    def __len__(self) -> int:
        return len(self.gens)


@dataclass(frozen=True)
class IrreducibleRecord:
    """One irreducible semigroup ``S`` with ``F(S) = n``.

    ``facet`` is ``S ∩ [1, n-1]``; ``S`` itself is ``{0} ∪ facet ∪ [n+1, ∞)``.
    """

    n: int
    kernel: KernelSet
    facet: frozenset[int]
    fill_in: frozenset[int]

    def __contains__(self, x: int) -> bool:
        return x == 0 or x > self.n or x in self.facet

    def generators(self) -> GenSet:
        """A (non-minimal) generating set of the semigroup."""
        return tuple(sorted(self.facet)) + tuple(range(self.n + 1, 2 * self.n + 2))


def _candidate_range(n: int) -> range:
    # integers a with 2 <= a < n/2
    return range(2, (n + 1) // 2)


def _facet_from_bits(n: int, bits: int) -> tuple[frozenset[int], frozenset[int]]:
    below = [s for s in range(1, n) if (bits >> s) & 1]
    fill = [s for s in range(n // 2 + 1, n) if not (bits >> s) & 1 and not (bits >> (n - s)) & 1]
    return frozenset(below) | frozenset(fill), frozenset(fill)


def record_from_kernel(n: int, kernel: GenSet) -> IrreducibleRecord:
    """Build the irreducible semigroup attached to a kernel set."""
    gens = as_genset(kernel)
    bits = closure_bits(gens, n)
    if (bits >> n) & 1:
        raise ValueError(f"{n} lies in <{gens}>")
    facet, fill = _facet_from_bits(n, bits)
    return IrreducibleRecord(n, KernelSet(n, gens), facet, fill)


def _dfs(n: int, bits: int, gens: tuple[int, ...], candidates: list[int]) -> Iterator[tuple[GenSet, int]]:
    yield gens, bits
    nbit = 1 << n
    for idx, a in enumerate(candidates):
        child = _add_generator(bits, a, n)
        # a later candidate stays valid only if it was valid at the parent
        rest = [
            b
            for b in candidates[idx + 1:]
            if not (child >> b) & 1 and not _add_generator(child, b, n) & nbit
        ]
        yield from _dfs(n, child, gens + (a,), rest)


def _root_candidates(n: int) -> list[int]:
    # a single generator a avoids n iff a does not divide n
    return [a for a in _candidate_range(n) if n % a]


def iter_kernels(n: int) -> Iterator[tuple[GenSet, int]]:
    """Kernel sets for ``n`` in DFS order, each with its membership bitset over [0, n]."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _dfs(n, 1, (), _root_candidates(n))


def enumerate_irreducibles(n: int) -> Iterator[IrreducibleRecord]:
    """Every irreducible numerical semigroup with Frobenius number ``n``, exactly once.

    Emission order is the DFS order over increasing candidate generators,
    so the empty kernel comes first.
    """
    for gens, bits in iter_kernels(n):
        facet, fill = _facet_from_bits(n, bits)
        yield IrreducibleRecord(n, KernelSet(n, gens), facet, fill)


def kernel_size_counts(n: int) -> list[int]:
    """Number of kernel sets of each size; index ``i`` holds the count of size ``i``."""
    counts: list[int] = []
    for gens, _ in iter_kernels(n):
        k = len(gens)
        if k == len(counts):
            counts.append(0)
        counts[k] += 1
    return counts


def count_irreducibles(n: int) -> int:
    return sum(kernel_size_counts(n))


def brute_force_irreducibles(n: int) -> list[frozenset[int]]:
    """Facets of all irreducibles with Frobenius number ``n`` by scanning every subset.

    Independent of the DFS: each subset of ``[2, n/2)`` is tested directly for
    being a minimal generating set that avoids ``n``.
    """
    if not 1 <= n <= BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force is capped at 1 <= n <= {BRUTE_FORCE_MAX_N}")
    pool = list(_candidate_range(n))
    facets = []
    for size in range(len(pool) + 1):
        for subset in combinations(pool, size):
            bits = closure_bits(subset, n)
            if (bits >> n) & 1:
                continue
            minimal = all(
                not (closure_bits(subset[:i] + subset[i + 1:], n) >> a) & 1
                for i, a in enumerate(subset)
            )
            if minimal:
                facets.append(_facet_from_bits(n, bits)[0])
    return facets


def canonical_facets(n: int) -> list[tuple[int, ...]]:
    """Sorted facets for ``n``, lexicographic, independent of enumeration order."""
    return sorted(tuple(sorted(r.facet)) for r in enumerate_irreducibles(n))
