"""Empirical P[cofinite] and P[S = <0>] across p = c/M, as CSV on stdout."""

import argparse
import csv
import sys
from dataclasses import asdict, fields

from randsg.sampler import ThresholdCell, threshold_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--M", type=int, nargs="+", default=[100, 1000, 10_000])
    parser.add_argument("--c", type=float, nargs="+",
                        default=[1e-4, 0.01, 0.1, 0.5, 1, 2, 5, 10, 100])
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    writer = csv.DictWriter(sys.stdout, fieldnames=[f.name for f in fields(ThresholdCell)])
    writer.writeheader()
    for cell in threshold_sweep(args.M, args.c, args.samples, args.seed, args.jobs):
        writer.writerow(asdict(cell))


if __name__ == "__main__":
    main()
