"""Brute-force ground truth at desk scale.

Exact searches only: depth-first cycle search with color pruning, exhaustive
2-factor enumeration over perfect-matching pairs, and the per-vertex
per-length pancyclicity table. Everything here is the reference the fast
constructive algorithms are checked against.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from pcfactor import _kernels
from pcfactor.errors import BudgetExhausted, InvalidInstance, SideSizeTooLarge
from pcfactor.graph import (CYCLE, AlternatingWalk, ColoredBipartiteGraph,
                            TwoFactor, Vertex, is_properly_colored)

TWO_FACTOR_CAP = 7
PANCYCLIC_CAP = 8


def find_pc_cycle_through(g: ColoredBipartiteGraph, u: Vertex,
                          k: int) -> AlternatingWalk | None:
    """Exact search for a properly colored k-cycle through u (k even >= 4)."""
    if k % 2 != 0 or not 4 <= k <= 2 * g.n:
        raise InvalidInstance(f"cycle length {k} must be even in [4, {2 * g.n}]")
    if not g.valid_vertex(u):
        raise InvalidInstance(f"vertex {u} invalid for n={g.n}")
    side = 0 if u.side == "X" else 1
    hit = _kernels.find_pc_cycle(g.rows, side, u.index, k)
    if hit is None:
        return None
    sides = (u.side, u.opposite_side())
    verts = [Vertex(sides[i % 2], idx) for i, idx in enumerate(hit)]
    cycle = AlternatingWalk(verts, CYCLE)
    assert is_properly_colored(g, cycle)
    return cycle


def find_pc_4cycle_through(g: ColoredBipartiteGraph, u: Vertex) -> AlternatingWalk | None:
    """Shortest even case of find_pc_cycle_through.

    A witness must exist whenever min color degree >= n/2 + 1.
    """
    return find_pc_cycle_through(g, u, 4)


def enumerate_pc_two_factors(g: ColoredBipartiteGraph, t: int,
                             cap: int = TWO_FACTOR_CAP) -> list[TwoFactor]:
    """All properly colored 2-factors with every cycle length >= t.

    Enumerates unordered pairs of disjoint perfect matchings and keeps the
    properly colored ones, deduplicated by edge set. Exact, hence capped.
    """
    if g.n > cap:
        raise SideSizeTooLarge(
            f"n={g.n} above enumeration cap {cap}")
    if t < 3:
        raise InvalidInstance("cycle-length threshold t must be >= 3")
    keys = _kernels.enumerate_two_factor_keys(g.rows, t)
    return [_factor_from_key(key, g.n) for key in keys]


def _factor_from_key(key: tuple[int, ...], n: int) -> TwoFactor:
    """Rebuild cycles from the flat (low, high) neighbor pairs of each x_i."""
    nbrs = [(key[2 * i], key[2 * i + 1]) for i in range(n)]
    y_nbrs: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(nbrs):
        y_nbrs.setdefault(a, []).append(i)
        y_nbrs.setdefault(b, []).append(i)
    seen_x = [False] * n
    cycles = []
    for start in range(n):
        if seen_x[start]:
            continue
        verts = [Vertex("X", start)]
        seen_x[start] = True
        j = nbrs[start][0]
        prev_x = start
        while True:
            verts.append(Vertex("Y", j))
            a, b = y_nbrs[j]
            nxt = b if a == prev_x else a
            if nxt == start:
                break
            verts.append(Vertex("X", nxt))
            seen_x[nxt] = True
            prev_x = nxt
            j0, j1 = nbrs[nxt]
            j = j1 if j0 == j else j0
        cycles.append(AlternatingWalk(verts, CYCLE))
    return TwoFactor(tuple(cycles))


@dataclass
class PancyclicReport:
    """Witness table: (vertex, even length) -> cycle or None."""

    n: int
    witnesses: dict[tuple[Vertex, int], AlternatingWalk | None] = field(default_factory=dict)
    complete: bool = True  # False when a budget cut the sweep short

    @property
    def verdict(self) -> bool:
        if not self.complete:
            return False
        return all(w is not None for w in self.witnesses.values())

    def missing(self) -> list[tuple[Vertex, int]]:
        return [cell for cell, w in self.witnesses.items() if w is None]

    def to_text(self) -> str:
        lines = [f"n={self.n}", f"complete={'yes' if self.complete else 'no'}"]
        for (v, k), w in sorted(self.witnesses.items()):
            val = f"pass;{w}" if w is not None else "fail;none"
            lines.append(f"cell.{v}.k{k}={val}")
        lines.append(f"verdict={'pass' if self.verdict else 'fail'}")
        return "\n".join(lines)


def verify_vertex_even_pancyclic(g: ColoredBipartiteGraph,
                                 cap: int = PANCYCLIC_CAP,
                                 budget_seconds: float | None = None) -> PancyclicReport:
    """Exact per-(vertex, length) witness sweep.

    Above ``cap`` a time budget is required; when it runs out the partial
    report is raised inside BudgetExhausted.
    """
    if g.n > cap and budget_seconds is None:
        raise SideSizeTooLarge(
            f"n={g.n} above pancyclicity cap {cap}; supply a time budget")
    report = PancyclicReport(n=g.n)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    for v in g.vertices():
        for k in range(4, 2 * g.n + 1, 2):
            if deadline is not None and time.monotonic() > deadline:
                report.complete = False
                raise BudgetExhausted("pancyclicity sweep budget exhausted", report)
            report.witnesses[(v, k)] = find_pc_cycle_through(g, v, k)
    return report
