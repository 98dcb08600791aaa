"""Monte-Carlo sampling of S(M, p).

Every sample ``i`` gets its own generator ``numpy.random.default_rng([seed, i])``
(PCG64 keyed by SeedSequence hashing of ``(seed, i)``), so results do not
depend on how samples are split across workers.

Elements of the random generating set are produced in increasing order as
partial sums of geometric variates, which is the same law as independent
coin flips.  Analysis consumes them lazily and stops as soon as the next
element exceeds the Frobenius number of what has been generated so far.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .semigroup import INF, GenSet, as_genset, _NP_INF, _NUMPY_APERY_MIN, _apery_add, _apery_add_np

RNG_ALGORITHM = "numpy PCG64 via default_rng(SeedSequence([seed, sample_index]))"

_FIRST_CHUNK = 8


def sample_rng(seed: int, index: int, *extra: int) -> np.random.Generator:
    return np.random.default_rng([seed, index, *extra])


def iter_elements(M: int, p: float, rng: np.random.Generator) -> Iterator[int]:
    """Increasing elements of a random subset of ``[1, M]`` (each kept with prob. ``p``)."""
    if p <= 0.0 or M < 1:
        return
    if p >= 1.0:
        yield from range(1, M + 1)
        return
    pos = 0
    chunk = _FIRST_CHUNK
    while True:
        for step in rng.geometric(p, size=chunk).tolist():
            pos += step
            if pos > M:
                return
            yield pos
        chunk *= 2


def draw(M: int, p: float, rng: np.random.Generator) -> GenSet:
    """A random generating set: each ``n`` in ``[1, M]`` included independently with prob. ``p``."""
    return tuple(iter_elements(M, p, rng))


@dataclass(frozen=True)
class Analysis:
    e: int
    cofinite: bool
    genus: int
    frobenius: int
    multiplicity: int | None

    def __iter__(self):
        return iter((self.e, self.cofinite, self.genus, self.frobenius))


def analyze(A: Iterable[int]) -> Analysis:
    """Embedding dimension, cofiniteness, genus and Frobenius number of ``<A>``.

    A lazy iterator must yield increasing elements; it is consumed only
    up to the first element above the running Frobenius number.  Work is
    O(m) per minimal generator with m the multiplicity, never O(max A).
    """
    it = A if isinstance(A, Iterator) else iter(as_genset(A))
    m = next(it, None)
    if m is None:
        return Analysis(0, False, 0, 0, None)
    if m == 1:
        return Analysis(1, True, 0, -1, 1)
    use_np = m >= _NUMPY_APERY_MIN
    if use_np:
        ap = np.full(m, _NP_INF, dtype=np.int64)
        ap[0] = 0
    else:
        ap = [0] + [INF] * (m - 1)
    e = 1
    frob = None
    for a in it:
        if frob is not None and a > frob:
            break
        r = a % m
        if a >= ap[r]:
            continue
        e += 1
        if use_np:
            _apery_add_np(ap, a, m)
            top = int(ap.max())
            if top < _NP_INF:
                frob = top - m
        else:
            _apery_add(ap, a, m)
            top = max(ap)
            if top != INF:
                frob = top - m
    if frob is None:
        return Analysis(e, False, 0, 0, m)
    genus = int(sum(int(x) // m for x in ap))
    return Analysis(e, True, genus, frob, m)


@dataclass(frozen=True)
class SampleConfig:
    M: int
    p: float
    num_samples: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.num_samples < 1:
            raise ValueError("num_samples must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.M < 0:
            raise ValueError("M must be nonnegative")


@dataclass(frozen=True)
class InvariantStats:
    count: int
    mean: float
    variance: float
    stderr: float


@dataclass(frozen=True)
class SampleStats:
    num_samples: int
    e: InvariantStats
    g: InvariantStats
    F: InvariantStats
    cofinite_fraction: float
    zero_semigroup_fraction: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SampleArrays:
    """Per-sample results in sample-index order."""

    e: np.ndarray
    cofinite: np.ndarray
    genus: np.ndarray
    frobenius: np.ndarray


def _run_range(M: int, p: float, seed: int, start: int, stop: int, extra: tuple[int, ...]):
    n = stop - start
    e = np.empty(n, dtype=np.int64)
    cof = np.empty(n, dtype=bool)
    g = np.empty(n, dtype=np.int64)
    F = np.empty(n, dtype=np.int64)
    for k, i in enumerate(range(start, stop)):
        res = analyze(iter_elements(M, p, sample_rng(seed, i, *extra)))
        e[k], cof[k], g[k], F[k] = res.e, res.cofinite, res.genus, res.frobenius
    return e, cof, g, F


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def run_samples(cfg: SampleConfig, extra: Sequence[int] = ()) -> SampleArrays:
    """Analyze ``cfg.num_samples`` draws; output is identical for any worker count."""
    extra = tuple(extra)
    if cfg.workers == 1:
        parts = [_run_range(cfg.M, cfg.p, cfg.seed, 0, cfg.num_samples, extra)]
    else:
        ranges = _ranges(cfg.num_samples, 4 * cfg.workers)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [
                pool.submit(_run_range, cfg.M, cfg.p, cfg.seed, a, b, extra) for a, b in ranges
            ]
            parts = [f.result() for f in futures]
    cols = [np.concatenate([part[c] for part in parts]) for c in range(4)]
    return SampleArrays(*cols)


def summarize(values: np.ndarray) -> InvariantStats:
    """Mean, unbiased variance and standard error, computed exactly from integer sums."""
    n = len(values)
    s1 = int(values.sum())
    s2 = int((values.astype(object) ** 2).sum()) if n else 0
    mean = Fraction(s1, n)
    var = Fraction(n * s2 - s1 * s1, n * (n - 1)) if n > 1 else Fraction(0)
    return InvariantStats(n, float(mean), float(var), math.sqrt(float(var) / n))


def stats_from_arrays(arr: SampleArrays) -> SampleStats:
    n = len(arr.e)
    zero = int(np.count_nonzero(arr.e == 0))
    return SampleStats(
        num_samples=n,
        e=summarize(arr.e),
        g=summarize(arr.genus),
        F=summarize(arr.frobenius),
        cofinite_fraction=int(arr.cofinite.sum()) / n,
        zero_semigroup_fraction=zero / n,
    )


def monte_carlo(cfg: SampleConfig) -> SampleStats:
    return stats_from_arrays(run_samples(cfg))


@dataclass(frozen=True)
class ThresholdCell:
    M: int
    c: float
    p: float
    num_samples: int
    cofinite_fraction: float
    cofinite_stderr: float
    zero_fraction: float
    zero_stderr: float
    exact_zero_probability: float


def _binomial_se(frac: float, n: int) -> float:
    return math.sqrt(frac * (1.0 - frac) / n)


def threshold_sweep(
    M_list: Sequence[int],
    c_list: Sequence[float],
    num_samples: int,
    seed: int = 0,
    workers: int = 1,
) -> list[ThresholdCell]:
    """Empirical P[cofinite] and P[S = <0>] at ``p = c / M`` for every grid cell.

    Cell ``(i, j)`` (M index, c index) draws its samples from streams keyed by
    ``(seed, sample, i, j)``.
    """
    cells = []
    for i, M in enumerate(M_list):
        for j, c in enumerate(c_list):
            p = min(1.0, c / M)
            cfg = SampleConfig(M, p, num_samples, seed, workers)
            arr = run_samples(cfg, extra=(i, j))
            cof = int(arr.cofinite.sum()) / num_samples
            zero = int(np.count_nonzero(arr.e == 0)) / num_samples
            cells.append(
                ThresholdCell(
                    M=M,
                    c=c,
                    p=p,
                    num_samples=num_samples,
                    cofinite_fraction=cof,
                    cofinite_stderr=_binomial_se(cof, num_samples),
                    zero_fraction=zero,
                    zero_stderr=_binomial_se(zero, num_samples),
                    exact_zero_probability=(1.0 - p) ** M,
                )
            )
    return cells
