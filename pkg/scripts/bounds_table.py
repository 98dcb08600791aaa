"""Compare the h-vector bounds with exact coefficients.

Prints lower / actual / upper for n in {89, 90} and the bounds alone for
n = 500, where exact coefficients are out of reach.
"""

import argparse

from randsg.atlas import default_atlas
from randsg.cli import fmt_count
from randsg.complex import h_lower_bound, h_upper_bound


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[89, 90])
    parser.add_argument("--large-n", type=int, default=500)
    args = parser.parse_args()

    atlas = default_atlas()
    for n in args.n:
        h = atlas[n].hpoly if n in atlas else None
        print(f"n = {n}")
        print(f"{'i':>4} {'lower':>10} {'actual':>10} {'upper':>10}")
        for i in range(1, (n - 1) // 2 - n // 3 + 1, 2):
            actual = h[i] if h is not None else "-"
            print(f"{i:>4} {h_lower_bound(n, i):>10} {actual:>10} {h_upper_bound(n, i):>10}")
        print()
    n = args.large_n
    print(f"n = {n}")
    print(f"{'i':>4} {'lower':>10} {'upper':>10}")
    for i in range(10, 80, 10):
        print(f"{i:>4} {fmt_count(h_lower_bound(n, i)):>10} {fmt_count(h_upper_bound(n, i)):>10}")


if __name__ == "__main__":
    main()
