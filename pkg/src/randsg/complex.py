"""The complex of irreducible semigroups with Frobenius number n.

Facets are ``S ∩ [1, n-1]`` over the irreducible ``S`` with ``F(S) = n``.
Facet *cardinality* is ``D(n) = (n - 1) // 2`` throughout (so the geometric
dimension is ``D(n) - 1``), and the f-to-h transform uses that ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .irreducible import enumerate_irreducibles

F_VECTOR_MAX_N = 40


def facet_size(n: int) -> int:
    return (n - 1) // 2


def _mask(face: Iterable[int]) -> int:
    out = 0
    for v in face:
        out |= 1 << v
    return out


def _unmask(bits: int) -> frozenset[int]:
    return frozenset(i for i, ch in enumerate(format(bits, "b")[::-1]) if ch == "1")


@dataclass(frozen=True)
class HPolynomial:
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError(f"h-vector of Δ_{self.n} must start with 1, got {self.coeffs}")
        if any(c < 0 for c in self.coeffs):
            raise ValueError(f"negative h-vector entry for Δ_{self.n}: {self.coeffs}")
        if len(self.coeffs) > 1 and self.coeffs[-1] == 0:
            raise ValueError("trailing zero coefficients must be trimmed")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            var = "x" if i == 1 else f"x^{i}"
            terms.append(var if c == 1 else f"{c}{var}")
        return f"h_{self.n}(x) = " + " + ".join(terms)


def _trimmed(coeffs: Sequence[int]) -> tuple[int, ...]:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Complex:
    n: int
    facets: tuple[frozenset[int], ...]

    @property
    def facet_size(self) -> int:
        return facet_size(self.n)


@dataclass(frozen=True)
class ShellingCertificate:
    """An ordering of facets together with the restriction face of each facet."""

    facets: tuple[frozenset[int], ...]
    restrictions: tuple[frozenset[int], ...]


def build_complex(n: int) -> Complex:
    if n < 2:
        raise ValueError("Δ_n is defined for n >= 2")
    facets = tuple(r.facet for r in enumerate_irreducibles(n))
    size = facet_size(n)
    bad = [sorted(f) for f in facets if len(f) != size]
    if bad:
        raise RuntimeError(f"Δ_{n} is not pure: facets {bad[:3]} differ from size {size}")
    if len(set(facets)) != len(facets):
        raise RuntimeError(f"duplicate facets while enumerating Δ_{n}")
    return Complex(n, facets)


def restriction_faces(facets: Sequence[frozenset[int]]) -> tuple[frozenset[int], ...]:
    """``R_j = {v ∈ F_j : F_j - {v} ⊆ F_k for some k < j}`` for each position ``j``."""
    masks = [_mask(f) for f in facets]
    out = []
    for j, fj in enumerate(masks):
        r = 0
        for fk in masks[:j]:
            missing = fj & ~fk
            if missing and missing & (missing - 1) == 0:
                r |= missing
        out.append(_unmask(r))
    return tuple(out)


def _sort_key(face: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    return sum(face), tuple(sorted(face))


def shelling_order(c: Complex) -> ShellingCertificate:
    """Facets by decreasing element sum, ties broken by descending lexicographic order."""
    ordered = tuple(sorted(c.facets, key=_sort_key, reverse=True))
    return ShellingCertificate(ordered, restriction_faces(ordered))


def verify_shelling(cert: ShellingCertificate) -> bool:
    """Check the shelling condition facet by facet.

    For each ``i > 1`` and ``j < i``, ``F_i ∩ F_j`` must sit inside some
    ``F_i ∩ F_k`` (``k < i``) of size ``|F_i| - 1``.  Also checks that the
    stored restriction faces match their definition.
    """
    facets = cert.facets
    if len(cert.restrictions) != len(facets):
        return False
    masks = [_mask(f) for f in facets]
    sizes = {len(f) for f in facets}
    if len(sizes) > 1:
        return False
    for i in range(1, len(masks)):
        fi = masks[i]
        ridges = [fi & fk for fk in masks[:i] if (fi & ~fk).bit_count() == 1]
        if not ridges:
            return False
        for fj in masks[:i]:
            meet = fi & fj
            if not any(meet & ~ridge == 0 for ridge in ridges):
                return False
    return tuple(cert.restrictions) == restriction_faces(facets)


def f_vector(c: Complex) -> tuple[int, ...]:
    """``(f_{-1}, f_0, ..., f_{D-1})``: distinct faces of each cardinality.

    Walks each face once as a vertex-increasing chain, tracking the set of
    facets containing it; once a single facet remains, the subtree is a
    simplex and is counted with binomials.
    """
    if c.n > F_VECTOR_MAX_N:
        raise ValueError(f"f_vector is capped at n <= {F_VECTOR_MAX_N}")
    size = c.facet_size
    counts = [0] * (size + 1)
    vertices = sorted(set().union(*c.facets)) if c.facets else []
    holders = {v: 0 for v in vertices}
    for idx, f in enumerate(c.facets):
        for v in f:
            holders[v] |= 1 << idx
    facet_masks = [_mask(f) for f in c.facets]
    every = (1 << len(c.facets)) - 1

    stack = [(0, 0, every)]  # (face size, position in vertex list, containing facets)
    while stack:
        k, start, live = stack.pop()
        if live & (live - 1) == 0:
            idx = live.bit_length() - 1
            free = sum(1 for v in vertices[start:] if (facet_masks[idx] >> v) & 1)
            for j in range(free + 1):
                counts[k + j] += comb(free, j)
            continue
        counts[k] += 1
        for pos in range(start, len(vertices)):
            nxt = live & holders[vertices[pos]]
            if nxt:
                stack.append((k + 1, pos + 1, nxt))
    return tuple(counts)


def h_from_f(f: Sequence[int], D: int) -> tuple[int, ...]:
    """h-vector from f-vector with facet cardinality ``D``.

    ``h_i = sum_j (-1)^(i-j) C(D-j, i-j) f_{j-1}``, trailing zeros trimmed.
    """
    f = list(f) + [0] * (D + 1 - len(f))
    h = [
        sum((-1) ** (i - j) * comb(D - j, i - j) * f[j] for j in range(i + 1))
        for i in range(D + 1)
    ]
    return _trimmed(h)


def h_from_restrictions(cert: ShellingCertificate) -> tuple[int, ...]:
    """h-vector as the tally of restriction-face sizes of a verified shelling."""
    if not verify_shelling(cert):
        raise ValueError("certificate is not a shelling")
    counts = [0] * (max((len(r) for r in cert.restrictions), default=0) + 1)
    for r in cert.restrictions:
        counts[len(r)] += 1
    return _trimmed(counts)


def h_polynomial(n: int) -> HPolynomial:
    """h-polynomial of Δ_n from the kernel-size tally (the fast route)."""
    from .irreducible import kernel_size_counts

    return HPolynomial(n, _trimmed(kernel_size_counts(n)))


def h1_count(n: int) -> int:
    """Number of ``a`` with ``2 <= a < n/2`` not dividing ``n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return sum(1 for a in range(2, (n + 1) // 2) if n % a)


def h1_closed_form(n: int) -> int:
    """``floor((n+1)/2) - tau(n)``; agrees with :func:`h1_count` for odd n only."""
    tau = sum(1 for d in range(1, n + 1) if n % d == 0)
    return (n + 1) // 2 - tau


def dn_formula(n: int) -> int:
    """Degree of the h-polynomial: ``floor((n-1)/2) - floor(n/3)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1) // 2 - n // 3


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def h_lower_bound(n: int, i: int) -> int:
    """Sum over j >= 2 of C(floor((n-1)/j) - floor(n/(j+1)), i).

    Terms vanish for ``j >= n`` since the interval is then empty.
    """
    if n < 1 or i < 1:
        raise ValueError("need n >= 1 and i >= 1")
    return sum(_binom((n - 1) // j - n // (j + 1), i) for j in range(2, max(n, 2) + 1))


def h_upper_bound(n: int, i: int) -> int:
    """C(ceil(n/2) - 2i, i)."""
    if n < 1 or i < 1:
        raise ValueError("need n >= 1 and i >= 1")
    return _binom(-(-n // 2) - 2 * i, i)
