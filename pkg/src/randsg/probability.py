"""Exact probabilities and expectations for the random model S(M, p).

``a_n(p)`` is the probability that ``n`` is not a sum of chosen generators
below ``n``; it equals ``(1-p)^floor(n/2) h_n(p)``.  The expectations of the
embedding dimension and of the gaps up to ``M`` are ``p`` resp. ``1-p``
times ``sum_{n <= M} a_n(p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .complex import HPolynomial
from .semigroup import SemigroupProfile, _add_generator, gap_count_up_to

A_N_ORACLE_MAX_N = 25

HLike = Union[HPolynomial, Sequence[int]]


@dataclass(frozen=True)
class ModelParams:
    M: int
    p: float

    def __post_init__(self):
        if self.M < 1:
            raise ValueError(f"M must be at least 1, got {self.M}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


def _coeffs(h) -> tuple[int, ...]:
    if isinstance(h, HPolynomial):
        return h.coeffs
    if hasattr(h, "h_coeffs"):
        return tuple(h.h_coeffs)
    return tuple(h)


def a_n(n: int, p: float, h: HLike) -> float:
    """``(1-p)^floor(n/2) * h_n(p)``."""
    if isinstance(h, HPolynomial) and h.n != n:
        raise ValueError(f"h-polynomial is for n={h.n}, not n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    acc = 0.0
    for c in reversed(_coeffs(h)):
        acc = acc * p + c
    value = (1.0 - p) ** (n // 2) * acc
    assert -1e-12 <= value <= 1.0 + 1e-12, f"a_{n}({p}) = {value} is not a probability"
    return value


def a_n_oracle(n: int, p: float) -> float:
    """``sum p^|A| (1-p)^(n-1-|A|)`` over all ``A ⊆ [n-1]`` with ``n ∉ <A>``.

    Sets are grown in increasing order; once ``n`` becomes representable
    every superset is too, so those branches contribute nothing.
    """
    if not 1 <= n <= A_N_ORACLE_MAX_N:
        raise ValueError(f"a_n_oracle is capped at 1 <= n <= {A_N_ORACLE_MAX_N}")
    by_size = [0] * n
    nbit = 1 << n
    stack = [(1, 1, 0)]  # (membership bits, next candidate, |A|)
    while stack:
        bits, start, k = stack.pop()
        by_size[k] += 1
        for a in range(start, n):
            child = bits if (bits >> a) & 1 else _add_generator(bits, a, n)
            if not child & nbit:
                stack.append((child, a + 1, k + 1))
    q = 1.0 - p
    return math.fsum(c * p**k * q ** (n - 1 - k) for k, c in enumerate(by_size))


def prob_of_semigroup(S: SemigroupProfile, params: ModelParams) -> float:
    """Probability that S(M, p) equals ``S``: ``p^e(S) (1-p)^g_M(S)``."""
    if S.min_gens and S.min_gens[-1] > params.M:
        raise ValueError(
            f"minimal generator {S.min_gens[-1]} exceeds M = {params.M}; probability is 0"
        )
    gaps = gap_count_up_to(S.min_gens, params.M)
    return params.p ** len(S.min_gens) * (1.0 - params.p) ** gaps


@dataclass(frozen=True)
class SeriesValue:
    """A partial sum over ``n = 1..through``; ``complete`` iff ``through == requested``."""

    value: float
    through: int
    requested: int

    @property
    def complete(self) -> bool:
        return self.through >= self.requested


def an_table(params: ModelParams, atlas: Mapping[int, HLike]) -> dict[int, float]:
    """``a_n(p)`` for consecutive ``n = 1, 2, ...`` up to ``M`` or the first gap in the atlas."""
    out = {}
    for n in range(1, params.M + 1):
        if n not in atlas:
            break
        out[n] = a_n(n, params.p, atlas[n])
    return out


def _an_sum(params: ModelParams, atlas: Mapping[int, HLike]) -> tuple[float, int]:
    table = an_table(params, atlas)
    total = 0.0
    for n in range(1, len(table) + 1):
        total += table[n]
    return total, len(table)


def expected_e(params: ModelParams, atlas: Mapping[int, HLike]) -> SeriesValue:
    """``E[e] = p * sum_{n<=M} a_n(p)``, truncated at the largest ``n`` the atlas covers."""
    total, through = _an_sum(params, atlas)
    return SeriesValue(params.p * total, through, params.M)


def expected_gM(params: ModelParams, atlas: Mapping[int, HLike]) -> SeriesValue:
    """``E[g_M] = (1-p) * sum_{n<=M} a_n(p)``."""
    total, through = _an_sum(params, atlas)
    return SeriesValue((1.0 - params.p) * total, through, params.M)


@dataclass(frozen=True)
class LimitBounds:
    p: float
    e_lower: float
    e_upper: float
    g_lower: float
    g_upper: float
    F_lower: float
    F_upper: float
    a_sum_lower: float
    a_sum_upper: float


def limit_bounds(p: float) -> LimitBounds:
    """Rational bounds on the ``M -> ∞`` limits of E[e], E[g], E[F] and sum a_n, fixed p."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"limit bounds need 0 < p < 1, got {p}")
    lower_num = 6 - 8 * p + 3 * p**2
    g_lower = (6 - 14 * p + 11 * p**2 - 3 * p**3) / (2 * p - 2 * p**3 + p**4)
    g_upper = (1 - p) * (2 - p**2) / p**2
    return LimitBounds(
        p=p,
        e_lower=lower_num / (2 - 2 * p**2 + p**3),
        e_upper=(2 - p**2) / p,
        g_lower=g_lower,
        g_upper=g_upper,
        F_lower=g_lower,
        F_upper=2 * g_upper,
        a_sum_lower=lower_num / (2 * p - 2 * p**3 + p**4),
        a_sum_upper=(2 - p**2) / p**2,
    )
