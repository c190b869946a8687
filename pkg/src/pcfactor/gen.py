"""Seed-controlled instance generators.

All generation is a pure function of the spec (including its seed): the same
spec always yields the same color matrix. Randomness comes from one private
``random.Random`` per call; no global state is touched.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from pcfactor.errors import InvalidInstance
from pcfactor.graph import (ColoredBipartiteGraph, min_color_degree,
                            read_instance, write_instance)

LATIN = "latin"
RAINBOW = "rainbow"
MONOCHROMATIC = "monochromatic"
RANDOM_MIN_DEGREE = "random_min_degree"
ADVERSARIAL_STAR = "adversarial_star"

MODES = (LATIN, RAINBOW, MONOCHROMATIC, RANDOM_MIN_DEGREE, ADVERSARIAL_STAR)

__all__ = ["GenSpec", "generate", "canonical_mode", "latin_graph",
           "rainbow_graph", "monochromatic_graph", "read_instance",
           "write_instance", "MODES"]

_ALIASES = {"mono": MONOCHROMATIC, "random": RANDOM_MIN_DEGREE,
            "star": ADVERSARIAL_STAR}


def canonical_mode(name: str) -> str:
    mode = _ALIASES.get(name, name)
    if mode not in MODES:
        raise InvalidInstance(f"unknown generator mode {name!r}")
    return mode


@dataclass(frozen=True)
class GenSpec:
    n: int
    mode: str
    delta: int | None = None       # random_min_degree: target minimum color degree
    palette: int | None = None     # random_min_degree: number of colors q
    star_size: int | None = None   # adversarial_star: planted star size
    seed: int = 0

    def validate(self) -> None:
        if self.n < 2:
            raise InvalidInstance("n must be >= 2")
        mode = canonical_mode(self.mode)
        if mode == RANDOM_MIN_DEGREE:
            if self.delta is None or not 1 <= self.delta <= self.n:
                raise InvalidInstance("random_min_degree needs 1 <= delta <= n")
            q = self.palette if self.palette is not None else self.delta
            if q < self.delta:
                raise InvalidInstance("palette must satisfy q >= delta")
        if mode == ADVERSARIAL_STAR:
            s = self.star_size
            if s is None or not 1 <= s <= self.n:
                raise InvalidInstance("adversarial_star needs 1 <= s <= n")


def latin_graph(n: int) -> ColoredBipartiteGraph:
    """Proper edge coloring colors(i,j) = (i+j) mod n; every subgraph is PC."""
    return ColoredBipartiteGraph([[(i + j) % n for j in range(n)] for i in range(n)])


def rainbow_graph(n: int) -> ColoredBipartiteGraph:
    return ColoredBipartiteGraph([[i * n + j for j in range(n)] for i in range(n)])


def monochromatic_graph(n: int) -> ColoredBipartiteGraph:
    return ColoredBipartiteGraph([[0] * n for _ in range(n)])


def generate(spec: GenSpec) -> ColoredBipartiteGraph:
    spec.validate()
    mode = canonical_mode(spec.mode)
    if mode == LATIN:
        return latin_graph(spec.n)
    if mode == RAINBOW:
        return rainbow_graph(spec.n)
    if mode == MONOCHROMATIC:
        return monochromatic_graph(spec.n)
    if mode == ADVERSARIAL_STAR:
        return _adversarial_star(spec.n, spec.star_size)
    return _random_min_degree(spec.n, spec.delta,
                              spec.palette if spec.palette is not None else spec.delta,
                              spec.seed)


def _adversarial_star(n: int, s: int) -> ColoredBipartiteGraph:
    """Latin base with a planted size-s monochromatic star at x_0."""
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    for j in range(s):
        rows[0][j] = 0
    return ColoredBipartiteGraph(rows)


def _random_min_degree(n: int, delta: int, q: int,
                       seed: int) -> ColoredBipartiteGraph:
    """Random coloring with min color degree kept >= delta throughout.

    Start from colors(i,j) = (i+j) mod q, which gives each vertex
    min(n, q) >= delta distinct colors, then attempt 10*n^2 random
    single-cell recolorings, keeping one only if both touched vertices
    retain >= delta distinct colors. Per-vertex color multiplicities are
    maintained incrementally, so each attempt is O(1).
    """
    rng = random.Random(seed)
    rows = [[(i + j) % q for j in range(n)] for i in range(n)]

    row_counts: list[dict[int, int]] = [dict() for _ in range(n)]
    col_counts: list[dict[int, int]] = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = rows[i][j]
            row_counts[i][c] = row_counts[i].get(c, 0) + 1
            col_counts[j][c] = col_counts[j].get(c, 0) + 1

    for _ in range(10 * n * n):
        i = rng.randrange(n)
        j = rng.randrange(n)
        new = rng.randrange(q)
        old = rows[i][j]
        if new == old:
            continue
        rc, cc = row_counts[i], col_counts[j]
        row_deg = len(rc) - (1 if rc[old] == 1 else 0) + (0 if new in rc else 1)
        col_deg = len(cc) - (1 if cc[old] == 1 else 0) + (0 if new in cc else 1)
        if row_deg < delta or col_deg < delta:
            continue
        rows[i][j] = new
        for counts in (rc, cc):
            if counts[old] == 1:
                del counts[old]
            else:
                counts[old] -= 1
            counts[new] = counts.get(new, 0) + 1

    g = ColoredBipartiteGraph(rows)
    # the seed construction makes this unreachable for q >= delta
    if min_color_degree(g) < delta:
        raise InvalidInstance(
            f"generation failed: min color degree {min_color_degree(g)} < {delta}")
    return g
