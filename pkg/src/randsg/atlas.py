"""Persistent atlas of h-polynomials, one JSON object per line.

Line format (keys in this order, no whitespace)::

    {"n":7,"h_coeffs":[1,2],"num_irreducible":3,"compute_seconds":0.000131}

Lines are sorted by ``n`` and new entries are only ever appended.
"""

from __future__ import annotations

import json
import os
import time
from collections.abc import Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

from .complex import HPolynomial, dn_formula
from .irreducible import kernel_size_counts

ATLAS_ENV = "RANDSG_ATLAS"
PACKAGED_MAX_N = 90


class AtlasError(Exception):
    """A malformed or inconsistent atlas file."""


@dataclass(frozen=True)
class AtlasEntry:
    n: int
    h_coeffs: tuple[int, ...]
    num_irreducible: int
    compute_seconds: float

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not self.h_coeffs or self.h_coeffs[0] != 1:
            raise ValueError(f"h_coeffs must start with 1 for n={self.n}")
        if any(c < 0 for c in self.h_coeffs):
            raise ValueError(f"negative coefficient for n={self.n}")
        if sum(self.h_coeffs) != self.num_irreducible:
            raise ValueError(f"coefficients of n={self.n} do not sum to num_irreducible")
        if len(self.h_coeffs) - 1 != dn_formula(self.n):
            raise ValueError(f"degree of h_{self.n} is not {dn_formula(self.n)}")

    @property
    def hpoly(self) -> HPolynomial:
        return HPolynomial(self.n, self.h_coeffs)

    def to_line(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "h_coeffs": list(self.h_coeffs),
                "num_irreducible": self.num_irreducible,
                "compute_seconds": self.compute_seconds,
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_line(cls, line: str) -> "AtlasEntry":
        obj = json.loads(line)
        if set(obj) != {"n", "h_coeffs", "num_irreducible", "compute_seconds"}:
            raise ValueError(f"unexpected keys {sorted(obj)}")
        if not isinstance(obj["n"], int) or not isinstance(obj["num_irreducible"], int):
            raise ValueError("n and num_irreducible must be integers")
        if not isinstance(obj["h_coeffs"], list) or not all(
            isinstance(c, int) for c in obj["h_coeffs"]
        ):
            raise ValueError("h_coeffs must be a list of integers")
        entry = cls(
            obj["n"], tuple(obj["h_coeffs"]), obj["num_irreducible"], float(obj["compute_seconds"])
        )
        entry.validate()
        return entry


def compute_entry(n: int) -> AtlasEntry:
    start = time.perf_counter()
    counts = kernel_size_counts(n)
    elapsed = round(time.perf_counter() - start, 6)
    return AtlasEntry(n, tuple(counts), sum(counts), elapsed)


class Atlas(Mapping):
    """Read-only mapping ``n -> AtlasEntry``."""

    def __init__(self, entries: dict[int, AtlasEntry] | None = None):
        self._entries = dict(sorted((entries or {}).items()))

    def __getitem__(self, n: int) -> AtlasEntry:
        return self._entries[n]

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def max_contiguous_n(self) -> int:
        n = 0
        while n + 1 in self._entries:
            n += 1
        return n

    @classmethod
    def parse(cls, text: str, source: str = "<atlas>") -> "Atlas":
        entries: dict[int, AtlasEntry] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                entry = AtlasEntry.from_line(line)
            except (ValueError, TypeError, KeyError) as exc:
                raise AtlasError(f"{source}:{lineno}: corrupt atlas line ({exc})") from None
            if entry.n in entries:
                raise AtlasError(f"{source}:{lineno}: duplicate entry for n={entry.n}")
            entries[entry.n] = entry
        return cls(entries)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "Atlas":
        path = Path(path)
        if not path.exists():
            return cls()
        return cls.parse(path.read_text(encoding="utf-8"), str(path))

    def dumps(self) -> str:
        return "".join(e.to_line() + "\n" for e in self._entries.values())


def packaged_atlas() -> Atlas:
    text = resources.files("randsg").joinpath("data/atlas.jsonl").read_text(encoding="utf-8")
    return Atlas.parse(text, "randsg/data/atlas.jsonl")


def default_atlas() -> Atlas:
    """Atlas at ``$RANDSG_ATLAS`` if set, otherwise the packaged one (n <= 90)."""
    path = os.environ.get(ATLAS_ENV)
    if path:
        return Atlas.load(path)
    return packaged_atlas()


def build_atlas(path: str | os.PathLike, max_n: int, jobs: int = 1) -> Atlas:
    """Append entries for every missing ``n <= max_n`` to the atlas file at ``path``.

    Existing lines are parsed and validated, never recomputed; rebuilding
    with the same ``max_n`` leaves the file byte-identical.
    """
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    path = Path(path)
    atlas = Atlas.load(path)
    missing = [n for n in range(1, max_n + 1) if n not in atlas]
    if not missing:
        return atlas
    # biggest first so the slow tail starts early
    order = sorted(missing, reverse=True)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = dict(zip(order, pool.map(compute_entry, order)))
    else:
        computed = {n: compute_entry(n) for n in order}
    entries = dict(atlas.items())
    entries.update(computed)
    merged = Atlas(entries)
    text = merged.dumps()
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    if existing and text.startswith(existing) and missing[0] > max(atlas, default=0):
        with path.open("a", encoding="utf-8") as fh:
            fh.write(text[len(existing):])
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return merged
