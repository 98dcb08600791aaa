"""Acceptance criteria, one ``criterion`` mark per check.

The terminal summary prints a PASS/FAIL line per criterion (see conftest.py).
"""

import math
import time
from itertools import combinations, groupby

import numpy as np
import pytest

from randsg.atlas import packaged_atlas
from randsg.complex import (
    build_complex,
    dn_formula,
    f_vector,
    h1_count,
    h_from_f,
    h_from_restrictions,
    h_lower_bound,
    h_polynomial,
    h_upper_bound,
    shelling_order,
    verify_shelling,
)
from randsg.irreducible import brute_force_irreducibles, enumerate_irreducibles, kernel_size_counts
from randsg.probability import ModelParams, a_n, a_n_oracle, expected_e, limit_bounds, prob_of_semigroup
from randsg.sampler import SampleConfig, draw, monte_carlo, sample_rng, threshold_sweep
from randsg.semigroup import profile

S = frozenset
criterion = pytest.mark.criterion


def _trunc_sig(x, digits=2):
    """``x`` truncated (not rounded) to ``digits`` significant figures, as (mantissa, exponent)."""
    e = len(str(x)) - 1
    return int(str(x)[:digits]) / 10 ** (digits - 1), e


def _trunc(x, decimals):
    return math.floor(x * 10**decimals + 1e-9) / 10**decimals


@criterion("1", "Δ_7 golden shelling and h_7(x) = 1 + 2x")
def test_delta7_golden():
    t0 = time.perf_counter()
    c = build_complex(7)
    cert = shelling_order(c)
    assert cert.facets == (S({4, 5, 6}), S({3, 5, 6}), S({2, 4, 6}))
    assert cert.restrictions == (S(), S({3}), S({2}))
    assert verify_shelling(cert)
    assert h_from_restrictions(cert) == (1, 2)
    assert h_polynomial(7).coeffs == (1, 2)
    assert str(h_polynomial(7)) == "h_7(x) = 1 + 2x"
    assert time.perf_counter() - t0 < 1.0


@criterion("2", "triple h-vector agreement, verified shellings, DFS = brute force, n <= 30")
def test_triple_agreement():
    t0 = time.perf_counter()
    for n in range(2, 31):
        c = build_complex(n)
        cert = shelling_order(c)
        assert verify_shelling(cert), n
        via_f = h_from_f(f_vector(c), c.facet_size)
        via_r = h_from_restrictions(cert)
        via_k = tuple(kernel_size_counts(n))
        assert via_f == via_r == via_k, n
    for n in range(1, 31):
        dfs = sorted(sorted(r.facet) for r in enumerate_irreducibles(n))
        assert dfs == sorted(sorted(f) for f in brute_force_irreducibles(n)), n
    assert time.perf_counter() - t0 < 120


@criterion("3", "h_{n,1} = non-divisor count (n <= 60) and deg h_n formula (n <= 40)")
def test_h1_and_degree():
    for n in range(2, 61):
        h = kernel_size_counts(n)
        assert (h[1] if len(h) > 1 else 0) == h1_count(n), n
    assert kernel_size_counts(89)[1] == 43
    assert kernel_size_counts(90)[1] == 34
    for n in range(2, 41):
        assert h_polynomial(n).degree == (n - 1) // 2 - n // 3 == dn_formula(n), n


BOUNDS_89 = {1: (43, 43), 3: (501, 9139), 5: (3025, 324632), 7: (6436, 2629575),
             9: (5005, 4686825), 11: (1365, 1352078), 13: (105, 27132)}
BOUNDS_90 = {1: (34, 43), 3: (403, 9139), 5: (2023, 324632), 7: (3433, 2629575),
             9: (2002, 4686825), 11: (364, 1352078), 13: (14, 27132)}
BOUNDS_500 = {10: ((2.4, 12), (9.3, 16)), 20: ((8.1, 18), (4.4, 27)),
              30: ((3.4, 22), (7.7, 34)), 40: ((8.0, 23), (1.3, 39)),
              50: ((1.4, 23), (2.0, 40)), 60: ((1.8, 20), (6.4, 37)),
              70: ((5.2, 14), (1.6, 30))}


@criterion("4", "bound formulas reproduce the n = 89, 90, 500 bound columns")
def test_bounds_table():
    t0 = time.perf_counter()
    for table, n in ((BOUNDS_89, 89), (BOUNDS_90, 90)):
        for i, (lo, up) in table.items():
            assert (h_lower_bound(n, i), h_upper_bound(n, i)) == (lo, up), (n, i)
    for i, (lo, up) in BOUNDS_500.items():
        assert _trunc_sig(h_lower_bound(500, i)) == lo, i
        assert _trunc_sig(h_upper_bound(500, i)) == up, i
    assert time.perf_counter() - t0 < 1.0


@criterion("5", "lower <= h_{n,i} <= upper for all n <= 40, i >= 1")
def test_sandwich():
    for n in range(2, 41):
        h = h_polynomial(n)
        for i in range(1, (n - 1) // 2 + 2):
            assert h_lower_bound(n, i) <= h[i] <= h_upper_bound(n, i), (n, i)


@criterion("6", "a_n formula equals the subset oracle for n <= 20")
def test_a_n_oracle():
    assert abs(a_n(7, 0.5, h_polynomial(7)) - 0.25) <= 1e-12
    for n in range(1, 21):
        h = h_polynomial(n)
        for p in (0.1, 0.3, 0.5, 0.7, 0.9):
            assert abs(a_n(n, p, h) - a_n_oracle(n, p)) <= 1e-12, (n, p)


@criterion("7", "P[S = <2,3>] = p^2(1-p) and the law sums to 1 for M <= 10")
def test_distribution_law():
    p = 0.5
    mass = 0.0
    for k in range(11):
        for A in combinations(range(1, 11), k):
            if profile(A).min_gens == (2, 3):
                mass += p**k * (1 - p) ** (10 - k)
    assert abs(mass - 0.125) <= 1e-12
    assert abs(prob_of_semigroup(profile((2, 3)), ModelParams(10, p)) - p**2 * (1 - p)) <= 1e-12
    for M in range(1, 11):
        seen = {profile(A).min_gens for k in range(M + 1) for A in combinations(range(1, M + 1), k)}
        total = math.fsum(prob_of_semigroup(profile(g), ModelParams(M, p)) for g in seen)
        assert abs(total - 1.0) <= 1e-12, M


@criterion("8", "limit-bound formulas reproduce the printed Lower/Upper values")
def test_limit_bounds():
    for p, s in {0.25: "2.21", 0.1: "2.64", 0.01: "2.96", 0.001: "2.996"}.items():
        assert _trunc(limit_bounds(p).e_lower, len(s) - 2) == float(s), p
    for p, s in {0.1: "19.9", 0.01: "199.9", 0.001: "1999.9"}.items():
        assert _trunc(limit_bounds(p).e_upper, 1) == float(s), p


MC_SAMPLES = 100_000


@criterion("9", "Monte-Carlo mean e at M = 25000 (p = 0.25, 0.1)")
@pytest.mark.slow
@pytest.mark.parametrize("p, target, tol", [(0.25, 3.3663, 0.05), (0.1, 4.6236, 0.07)])
def test_mc_fixed_p(p, target, tol):
    t0 = time.perf_counter()
    stats = monte_carlo(SampleConfig(25_000, p, MC_SAMPLES, seed=2024))
    print(f"p={p}: mean e = {stats.e.mean:.4f} ± {stats.e.stderr:.4f} (target {target} ± {tol})")
    assert time.perf_counter() - t0 < 600
    assert abs(stats.e.mean - target) <= tol


@criterion("9-opt", "optional Monte-Carlo mean e at M = 25000, p = 0.01")
@pytest.mark.slow
def test_mc_fixed_p_small():
    stats = monte_carlo(SampleConfig(25_000, 0.01, MC_SAMPLES, seed=2024))
    print(f"p=0.01: mean e = {stats.e.mean:.4f} ± {stats.e.stderr:.4f} (target 9.79 ± 0.15)")
    assert abs(stats.e.mean - 9.79) <= 0.15


@criterion("10", "exact E[e] at M = 40, p = 0.1 within 3 SE of Monte Carlo")
def test_exact_vs_mc():
    exact = expected_e(ModelParams(40, 0.1), packaged_atlas())
    assert exact.complete
    stats = monte_carlo(SampleConfig(40, 0.1, 100_000, seed=7))
    assert abs(stats.e.mean - exact.value) <= 3 * stats.e.stderr


@criterion("11", "threshold behaviour at M = 10^4")
def test_threshold():
    M = 10_000
    grid = [1e-4, 0.01, 0.1, 0.5, 1, 2, 5, 10, 100]
    cells = threshold_sweep([M], grid, 1000, seed=11)
    assert cells[0].p == pytest.approx(M**-2) and cells[0].zero_fraction >= 0.99
    assert cells[-1].p == pytest.approx(M**-0.5) and cells[-1].cofinite_fraction >= 0.99
    for a, b in zip(cells, cells[1:]):
        slack = 2 * math.hypot(a.cofinite_stderr, b.cofinite_stderr)
        assert b.cofinite_fraction >= a.cofinite_fraction - slack, (a.c, b.c)


@criterion("12", "atlas to n = 90 and E[e] at M = 90, p = 0.1 equal to 3.782")
def test_atlas_partial_sum():
    atlas = packaged_atlas()
    assert atlas.max_contiguous_n >= 90
    val = expected_e(ModelParams(90, 0.1), atlas)
    assert val.complete
    assert abs(val.value - 3.782) <= 1e-3


@criterion("13", "structural properties of 10^5 samples at M = 1000, p = 0.1")
def test_structural_properties():
    violations = 0
    for i in range(100_000):
        prof = profile(draw(1000, 0.1, sample_rng(13, i)))
        if not prof.cofinite:
            continue
        F, g = prof.frobenius, prof.genus
        if F >= 1 and not g <= F <= 2 * g:
            violations += 1
        if len(prof.min_gens) > prof.multiplicity:
            violations += 1
        if F >= 1 and 2 * sum(1 for x in range(1, F + 1) if x in prof) > F:
            violations += 1
    assert violations == 0
