"""Command-line interface: ``randsg <command> ...``.

Results go to stdout, either as an aligned table or (``--json``) as one JSON
document that validates against ``OUTPUT_SCHEMAS[command]``.  A run manifest
goes to stderr, or to ``--manifest PATH``, so stdout stays byte-identical
across runs with the same arguments.

Exit codes: 0 success, 2 usage error, 3 failed precondition or validation,
4 corrupt atlas.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Any, Sequence

from . import __version__
from .atlas import ATLAS_ENV, Atlas, AtlasError, build_atlas, compute_entry, default_atlas
from .complex import (
    F_VECTOR_MAX_N,
    HPolynomial,
    build_complex,
    f_vector,
    h_from_f,
    h_from_restrictions,
    h_lower_bound,
    h_upper_bound,
    shelling_order,
    verify_shelling,
)
from .irreducible import kernel_size_counts
from .probability import ModelParams, a_n, expected_e, expected_gM, limit_bounds, prob_of_semigroup
from .sampler import RNG_ALGORITHM, SampleConfig, monte_carlo, threshold_sweep
from .semigroup import gap_count_up_to, profile

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_ATLAS = 0, 2, 3, 4


class ValidationFailure(Exception):
    """A computed certificate failed its own check."""


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    seed: int | None
    code_version: str
    rng_algorithm: str | None
    timestamp: str


def fmt_prob(x: float) -> str:
    return f"{x:.6g}"


def fmt_count(v: int) -> str:
    """Integers below 10^6 verbatim; larger ones as two truncated significant digits."""
    if abs(v) < 10**6:
        return str(v)
    exp = len(str(abs(v))) - 1
    lead = abs(v) // 10 ** (exp - 1)
    return f"{'-' if v < 0 else ''}{lead // 10}.{lead % 10}e{exp}"


def _table(rows: Sequence[Sequence[Any]], header: Sequence[str] | None = None) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows = [list(header)] + rows
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _hpoly(n: int, atlas: Atlas) -> tuple[HPolynomial, str]:
    if n in atlas:
        return atlas[n].hpoly, "atlas"
    return compute_entry(n).hpoly, "computed"


def _parse_gens(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise ValueError(f"cannot parse generators {text!r}") from None
    if any(a < 1 for a in out):
        raise ValueError("generators must be positive integers")
    return out


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


# Each command returns (result document, human-readable text).


def cmd_hvector(args, atlas):
    if args.n < 1:
        raise ValueError("N must be at least 1")
    h, source = _hpoly(args.n, atlas)
    doc = {
        "n": args.n,
        "h_coeffs": list(h.coeffs),
        "degree": h.degree,
        "num_irreducible": sum(h.coeffs),
        "source": source,
    }
    return doc, str(h)


def cmd_complex_verify(args, atlas):
    n = args.n
    if n < 2:
        raise ValueError("N must be at least 2")
    c = build_complex(n)
    cert = shelling_order(c)
    ok = verify_shelling(cert)
    if not ok:
        raise ValidationFailure(f"shelling order of Δ_{n} does not verify")
    via_r = list(h_from_restrictions(cert))
    via_k = list(kernel_size_counts(n))
    via_f = list(h_from_f(f_vector(c), c.facet_size)) if n <= F_VECTOR_MAX_N else None
    agree = via_r == via_k and (via_f is None or via_f == via_r)
    doc = {
        "n": n,
        "num_facets": len(c.facets),
        "facet_size": c.facet_size,
        "shelling_verified": ok,
        "h_from_restrictions": via_r,
        "h_from_kernels": via_k,
        "h_from_f": via_f,
        "agree": agree,
    }
    text = _table(
        [
            ["facets", len(c.facets)],
            ["facet size", c.facet_size],
            ["shelling verified", ok],
            ["h (restriction faces)", via_r],
            ["h (kernel tally)", via_k],
            ["h (f-vector)", via_f if via_f is not None else f"skipped (n > {F_VECTOR_MAX_N})"],
            ["routes agree", agree],
        ]
    )
    if not agree:
        raise ValidationFailure(f"h-vector routes disagree for Δ_{n}: {doc}")
    return doc, text


def cmd_bounds(args, atlas):
    n, i = args.n, args.i
    lower, upper = h_lower_bound(n, i), h_upper_bound(n, i)
    actual = atlas[n].hpoly[i] if n in atlas else None
    doc = {"n": n, "i": i, "lower": lower, "actual": actual, "upper": upper}
    text = _table(
        [[n, i, fmt_count(lower), "-" if actual is None else fmt_count(actual), fmt_count(upper)]],
        header=["n", "i", "lower", "actual", "upper"],
    )
    return doc, text


def cmd_an(args, atlas):
    if args.n < 1:
        raise ValueError("N must be at least 1")
    h, source = _hpoly(args.n, atlas)
    value = a_n(args.n, args.p, h)
    doc = {"n": args.n, "p": args.p, "a_n": value, "h_coeffs": list(h.coeffs), "source": source}
    return doc, fmt_prob(value)


def cmd_dist(args, atlas):
    params = ModelParams(args.M, args.p)
    prof = profile(_parse_gens(args.gens))
    prob = prob_of_semigroup(prof, params)
    doc = {
        "min_gens": list(prof.min_gens),
        "M": args.M,
        "p": args.p,
        "embedding_dimension": len(prof.min_gens),
        "gaps_up_to_M": gap_count_up_to(prof.min_gens, args.M),
        "cofinite": prof.cofinite,
        "probability": prob,
    }
    text = _table(
        [
            ["minimal generators", ",".join(map(str, prof.min_gens)) or "(none)"],
            ["e(S)", doc["embedding_dimension"]],
            ["g_M(S)", doc["gaps_up_to_M"]],
            ["P[S = <A>]", fmt_prob(prob)],
        ]
    )
    return doc, text


def cmd_expect(args, atlas):
    params = ModelParams(args.M, args.p)
    e = expected_e(params, atlas)
    g = expected_gM(params, atlas)
    doc = {
        "M": args.M,
        "p": args.p,
        "expected_e": e.value,
        "expected_gM": g.value,
        "through_n": e.through,
        "complete": e.complete,
        "limit_bounds": asdict(limit_bounds(args.p)) if 0 < args.p < 1 else None,
    }
    rows = [
        ["E[e]", fmt_prob(e.value)],
        ["E[g_M]", fmt_prob(g.value)],
        ["computed through n", e.through if e.complete else f"{e.through} (atlas incomplete)"],
    ]
    if doc["limit_bounds"]:
        lb = doc["limit_bounds"]
        rows.append(["lim E[e] in", f"[{fmt_prob(lb['e_lower'])}, {fmt_prob(lb['e_upper'])}]"])
        rows.append(["lim E[g] in", f"[{fmt_prob(lb['g_lower'])}, {fmt_prob(lb['g_upper'])}]"])
    return doc, _table(rows)


def cmd_sample(args, atlas):
    cfg = SampleConfig(args.M, args.p, args.count, args.seed, args.jobs)
    stats = monte_carlo(cfg)
    doc = {"M": args.M, "p": args.p, "seed": args.seed, **stats.to_dict()}
    rows = [
        [name, fmt_prob(s.mean), fmt_prob(s.variance), fmt_prob(s.stderr)]
        for name, s in (("e", stats.e), ("g", stats.g), ("F", stats.F))
    ]
    text = _table(rows, header=["invariant", "mean", "variance", "stderr"])
    text += (
        f"\ncofinite fraction: {fmt_prob(stats.cofinite_fraction)}"
        f"\n<0> fraction: {fmt_prob(stats.zero_semigroup_fraction)}"
        f"\nsamples: {stats.num_samples}"
    )
    return doc, text


def cmd_threshold(args, atlas):
    cells = threshold_sweep(_ints(args.M), _floats(args.grid), args.samples, args.seed, args.jobs)
    doc = {"seed": args.seed, "cells": [asdict(c) for c in cells]}
    rows = [
        [
            c.M,
            f"{c.c:g}",
            f"{c.p:.6g}",
            f"{fmt_prob(c.cofinite_fraction)} ± {fmt_prob(c.cofinite_stderr)}",
            f"{fmt_prob(c.zero_fraction)} ± {fmt_prob(c.zero_stderr)}",
            fmt_prob(c.exact_zero_probability),
        ]
        for c in cells
    ]
    text = _table(rows, header=["M", "c", "p", "P[cofinite]", "P[S=<0>]", "exact P[S=<0>]"])
    return doc, text


def cmd_atlas_build(args, atlas):
    out = args.out or os.environ.get(ATLAS_ENV) or "atlas.jsonl"
    built = build_atlas(out, args.max_n, args.jobs)
    doc = {"path": str(out), "max_n": args.max_n, "entries": len(built)}
    return doc, f"{out}: {len(built)} entries (n = 1..{built.max_contiguous_n})"


OUTPUT_SCHEMAS: dict[str, dict] = {}


def _obj(props: dict, required: Sequence[str] | None = None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(required if required is not None else props),
        "additionalProperties": False,
    }


_INT = {"type": "integer"}
_NUM = {"type": "number"}
_BOOL = {"type": "boolean"}
_INTS = {"type": "array", "items": _INT}
_PROB = {"type": "number", "minimum": 0, "maximum": 1}
_STAT = _obj({"count": _INT, "mean": _NUM, "variance": _NUM, "stderr": _NUM})

OUTPUT_SCHEMAS.update(
    {
        "hvector": _obj(
            {"n": _INT, "h_coeffs": _INTS, "degree": _INT, "num_irreducible": _INT,
             "source": {"enum": ["atlas", "computed"]}}
        ),
        "complex verify": _obj(
            {"n": _INT, "num_facets": _INT, "facet_size": _INT, "shelling_verified": _BOOL,
             "h_from_restrictions": _INTS, "h_from_kernels": _INTS,
             "h_from_f": {"oneOf": [_INTS, {"type": "null"}]}, "agree": _BOOL}
        ),
        "bounds": _obj(
            {"n": _INT, "i": _INT, "lower": _INT, "actual": {"type": ["integer", "null"]},
             "upper": _INT}
        ),
        "an": _obj(
            {"n": _INT, "p": _PROB, "a_n": _PROB, "h_coeffs": _INTS,
             "source": {"enum": ["atlas", "computed"]}}
        ),
        "dist": _obj(
            {"min_gens": _INTS, "M": _INT, "p": _PROB, "embedding_dimension": _INT,
             "gaps_up_to_M": _INT, "cofinite": _BOOL, "probability": _PROB}
        ),
        "expect": _obj(
            {"M": _INT, "p": _PROB, "expected_e": _NUM, "expected_gM": _NUM, "through_n": _INT,
             "complete": _BOOL,
             "limit_bounds": {"oneOf": [
                 _obj({k: _NUM for k in ("p", "e_lower", "e_upper", "g_lower", "g_upper",
                                         "F_lower", "F_upper", "a_sum_lower", "a_sum_upper")}),
                 {"type": "null"}]}}
        ),
        "sample": _obj(
            {"M": _INT, "p": _PROB, "seed": _INT, "num_samples": _INT, "e": _STAT, "g": _STAT,
             "F": _STAT, "cofinite_fraction": _PROB, "zero_semigroup_fraction": _PROB}
        ),
        "threshold": _obj(
            {"seed": _INT, "cells": {"type": "array", "items": _obj(
                {"M": _INT, "c": _NUM, "p": _PROB, "num_samples": _INT,
                 "cofinite_fraction": _PROB, "cofinite_stderr": _NUM, "zero_fraction": _PROB,
                 "zero_stderr": _NUM, "exact_zero_probability": _PROB})}}
        ),
        "atlas build": _obj({"path": {"type": "string"}, "max_n": _INT, "entries": _INT}),
    }
)

# documents are wrapped as {"command": ..., "result": ...}
ENVELOPE_SCHEMA = _obj({"command": {"type": "string"}, "result": {"type": "object"}})


def _prob_arg(text: str) -> float:
    x = float(text)
    if not 0.0 <= x <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--manifest", metavar="PATH", help="write the run manifest here")

    parser = argparse.ArgumentParser(prog="randsg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hvector", parents=[common], help="h-polynomial of Δ_N")
    p.add_argument("n", type=int, metavar="N")
    p.set_defaults(func=cmd_hvector, name="hvector")

    p = sub.add_parser("complex", help="operations on Δ_N")
    csub = p.add_subparsers(dest="complex_command", required=True)
    q = csub.add_parser("verify", parents=[common], help="verify the shelling and h-vector routes")
    q.add_argument("n", type=int, metavar="N")
    q.set_defaults(func=cmd_complex_verify, name="complex verify")

    p = sub.add_parser("bounds", parents=[common], help="bounds on h_{N,I}")
    p.add_argument("n", type=int, metavar="N")
    p.add_argument("i", type=int, metavar="I")
    p.set_defaults(func=cmd_bounds, name="bounds")

    p = sub.add_parser("an", parents=[common], help="a_N(P)")
    p.add_argument("n", type=int, metavar="N")
    p.add_argument("p", type=_prob_arg, metavar="P")
    p.set_defaults(func=cmd_an, name="an")

    p = sub.add_parser("dist", parents=[common], help="P[S = <A>] under S(M, P)")
    p.add_argument("gens", metavar="A", help='comma-separated generators, e.g. "2,3"')
    p.add_argument("M", type=int)
    p.add_argument("p", type=_prob_arg, metavar="P")
    p.set_defaults(func=cmd_dist, name="dist")

    p = sub.add_parser("expect", parents=[common], help="E[e] and E[g_M] under S(M, P)")
    p.add_argument("M", type=int)
    p.add_argument("p", type=_prob_arg, metavar="P")
    p.set_defaults(func=cmd_expect, name="expect")

    p = sub.add_parser("sample", parents=[common], help="Monte-Carlo statistics for S(M, P)")
    p.add_argument("M", type=int)
    p.add_argument("p", type=_prob_arg, metavar="P")
    p.add_argument("count", type=int, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sample, name="sample")

    p = sub.add_parser("threshold", parents=[common], help="cofiniteness sweep at p = c/M")
    p.add_argument("--M", default="10000", help="comma-separated M values")
    p.add_argument("--grid", default="0.0001,0.01,0.1,0.5,1,2,5,10,100",
                   help="comma-separated c values")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_threshold, name="threshold")

    p = sub.add_parser("atlas", help="h-polynomial atlas")
    asub = p.add_subparsers(dest="atlas_command", required=True)
    q = asub.add_parser("build", parents=[common], help="compute missing entries up to --max-n")
    q.add_argument("--max-n", type=int, required=True)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--out", help=f"atlas path (default ${ATLAS_ENV} or ./atlas.jsonl)")
    q.set_defaults(func=cmd_atlas_build, name="atlas build")
    return parser


def _manifest(args, argv: Sequence[str]) -> RunManifest:
    params = {
        k: v for k, v in vars(args).items()
        if k not in {"func", "name", "json", "manifest", "command", "complex_command",
                     "atlas_command"}
    }
    return RunManifest(
        command=args.name,
        parameters=params,
        seed=getattr(args, "seed", None),
        code_version=__version__,
        rng_algorithm=RNG_ALGORITHM if args.name in {"sample", "threshold"} else None,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        atlas = default_atlas() if args.name != "atlas build" else Atlas()
        doc, text = args.func(args, atlas)
    except AtlasError as exc:
        print(f"randsg: atlas error: {exc}", file=sys.stderr)
        return EXIT_ATLAS
    except (ValueError, ValidationFailure) as exc:
        print(f"randsg: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        print(json.dumps({"command": args.name, "result": doc}, sort_keys=True))
    else:
        print(text)
    manifest = json.dumps(asdict(_manifest(args, argv)), sort_keys=True)
    if args.manifest:
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(manifest + "\n")
    else:
        print(f"manifest: {manifest}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
