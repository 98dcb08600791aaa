"""Extend an h-polynomial atlas file up to a given n.

    python scripts/build_atlas.py --max-n 90 --out atlas.jsonl --jobs 4
"""

import argparse
import time

from randsg.atlas import build_atlas


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=90)
    parser.add_argument("--out", default="atlas.jsonl")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    t0 = time.perf_counter()
    atlas = build_atlas(args.out, args.max_n, args.jobs)
    slowest = max(atlas.values(), key=lambda e: e.compute_seconds)
    print(f"{args.out}: n = 1..{atlas.max_contiguous_n} in {time.perf_counter() - t0:.1f}s")
    print(f"slowest entry: n = {slowest.n} ({slowest.compute_seconds:.2f}s, "
          f"{slowest.num_irreducible} irreducibles)")


if __name__ == "__main__":
    main()
