"""Fixed-p table: limit bounds, exact partial sums at M = 90, and Monte-Carlo E[e].

    python scripts/fixedp_table.py --samples 100000 --M 25000 --jobs 4
"""

import argparse
import time

from randsg.atlas import default_atlas
from randsg.probability import ModelParams, expected_e, limit_bounds
from randsg.sampler import SampleConfig, monte_carlo


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=float, nargs="+", default=[0.25, 0.1, 0.01, 0.001])
    parser.add_argument("--M", type=int, default=25_000)
    parser.add_argument("--exact-M", type=int, default=90)
    parser.add_argument("--samples", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    atlas = default_atlas()
    print(f"{'p':>6} {'lower':>8} {'upper':>9} {'exact M=' + str(args.exact_M):>11} "
          f"{'MC mean e':>10} {'stderr':>7} {'secs':>6}")
    for p in args.p:
        b = limit_bounds(p)
        exact = expected_e(ModelParams(args.exact_M, p), atlas)
        t0 = time.perf_counter()
        stats = monte_carlo(SampleConfig(args.M, p, args.samples, args.seed, args.jobs))
        secs = time.perf_counter() - t0
        print(f"{p:>6g} {b.e_lower:>8.4f} {b.e_upper:>9.2f} {exact.value:>11.5f} "
              f"{stats.e.mean:>10.4f} {stats.e.stderr:>7.4f} {secs:>6.1f}")


if __name__ == "__main__":
    main()
