"""Data model and verification primitives for edge-colored complete
balanced bipartite graphs and their properly colored subgraphs.

Conventions used throughout the package:

* sides are named ``X`` and ``Y``; the host graph has ``n`` vertices per side
  and every pair ``(x_i, y_j)`` carries exactly one color (a non-negative
  integer with no semantics beyond equality);
* a cycle's length is its edge count, which equals its vertex count;
* a path's size ``|P|`` is its vertex count (a single vertex is a size-1
  path); its edge count is ``|P| - 1``;
* an odd path has an odd edge count, hence endpoints on opposite sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from pcfactor.errors import InvalidInstance

PATH = "path"
CYCLE = "cycle"


class Vertex(NamedTuple):
    side: str  # "X" or "Y"
    index: int

    def opposite_side(self) -> str:
        return "Y" if self.side == "X" else "X"

    def __str__(self) -> str:
        return f"{self.side.lower()}{self.index}"


def vx(i: int) -> Vertex:
    return Vertex("X", i)


def vy(i: int) -> Vertex:
    return Vertex("Y", i)


def parse_vertex(token: str) -> Vertex:
    side = token[0].upper()
    if side not in ("X", "Y") or not token[1:].isdigit():
        raise InvalidInstance(f"bad vertex token {token!r}")
    return Vertex(side, int(token[1:]))


class ColoredBipartiteGraph:
    """Complete balanced bipartite host with one color per edge.

    ``rows[i][j]`` is the color of the edge between x_i and y_j. Instances
    are immutable after construction; derived quantities are cached.
    """

    __slots__ = ("n", "rows", "_cols", "_min_cdeg", "_max_mono")

    def __init__(self, rows: Sequence[Sequence[int]]):
        mat = tuple(tuple(int(c) for c in row) for row in rows)
        n = len(mat)
        if n < 1:
            raise InvalidInstance("empty color matrix")
        for row in mat:
            if len(row) != n:
                raise InvalidInstance("color matrix is not square")
            if any(c < 0 for c in row):
                raise InvalidInstance("colors must be non-negative integers")
        self.n = n
        self.rows = mat
        self._cols: Optional[tuple[tuple[int, ...], ...]] = None
        self._min_cdeg: Optional[int] = None
        self._max_mono: Optional[int] = None

    def cols(self) -> tuple[tuple[int, ...], ...]:
        if self._cols is None:
            self._cols = tuple(zip(*self.rows))
        return self._cols

    def color_xy(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def color(self, u: Vertex, v: Vertex) -> int:
        if u.side == v.side:
            raise InvalidInstance(f"no edge between {u} and {v}: same side")
        if u.side == "X":
            return self.rows[u.index][v.index]
        return self.rows[v.index][u.index]

    def valid_vertex(self, v: Vertex) -> bool:
        return v.side in ("X", "Y") and 0 <= v.index < self.n

    def vertices(self) -> Iterator[Vertex]:
        for i in range(self.n):
            yield Vertex("X", i)
        for j in range(self.n):
            yield Vertex("Y", j)

    def incident_colors(self, v: Vertex) -> tuple[int, ...]:
        if v.side == "X":
            return self.rows[v.index]
        return self.cols()[v.index]

    def transpose(self) -> "ColoredBipartiteGraph":
        """Swap the two sides (colors transposed)."""
        return ColoredBipartiteGraph(self.cols())

    def induced(self, xs: Sequence[int], ys: Sequence[int]) -> "InducedSubgraph":
        return InducedSubgraph(self, xs, ys)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColoredBipartiteGraph) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ColoredBipartiteGraph(n={self.n})"


class InducedSubgraph:
    """Balanced induced subgraph with mappings to and from the parent."""

    def __init__(self, parent: ColoredBipartiteGraph, xs: Sequence[int], ys: Sequence[int]):
        xs = sorted(xs)
        ys = sorted(ys)
        if len(xs) != len(ys):
            raise InvalidInstance("induced subgraph must stay balanced")
        self.parent = parent
        self.xs = tuple(xs)
        self.ys = tuple(ys)
        self.graph = ColoredBipartiteGraph(
            [[parent.rows[i][j] for j in ys] for i in xs])
        self._x_back = {i: k for k, i in enumerate(xs)}
        self._y_back = {j: k for k, j in enumerate(ys)}

    def to_parent(self, v: Vertex) -> Vertex:
        return Vertex(v.side, self.xs[v.index] if v.side == "X" else self.ys[v.index])

    def from_parent(self, v: Vertex) -> Vertex:
        back = self._x_back if v.side == "X" else self._y_back
        return Vertex(v.side, back[v.index])

    def walk_to_parent(self, w: "AlternatingWalk") -> "AlternatingWalk":
        return AlternatingWalk([self.to_parent(v) for v in w.vertices], w.kind)


class AlternatingWalk:
    """A side-alternating sequence of distinct vertices, open or closed.

    Cycles carry an implicit closing edge between the last and first vertex
    and must have an even vertex count of at least 4.
    """

    __slots__ = ("vertices", "kind")

    def __init__(self, vertices: Iterable[Vertex], kind: str = PATH):
        vs = tuple(vertices)
        if kind not in (PATH, CYCLE):
            raise InvalidInstance(f"unknown walk kind {kind!r}")
        if not vs:
            raise InvalidInstance("empty walk")
        for a, b in zip(vs, vs[1:]):
            if a.side == b.side:
                raise InvalidInstance(f"walk does not alternate at {a}->{b}")
        if len(set(vs)) != len(vs):
            raise InvalidInstance("walk repeats a vertex")
        if kind == CYCLE:
            if len(vs) < 4 or len(vs) % 2 != 0:
                raise InvalidInstance("cycle needs an even vertex count >= 4")
        self.vertices = vs
        self.kind = kind

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE

    @property
    def size(self) -> int:
        """Vertex count (|P| for paths; equals the length for cycles)."""
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return self.size if self.is_cycle else self.size - 1

    @property
    def length(self) -> int:
        """Cycle length = edge count = vertex count; path length = edges."""
        return self.edge_count

    def edges(self) -> Iterator[tuple[Vertex, Vertex]]:
        yield from zip(self.vertices, self.vertices[1:])
        if self.is_cycle:
            yield self.vertices[-1], self.vertices[0]

    def edge_colors(self, g: ColoredBipartiteGraph) -> list[int]:
        return [g.color(a, b) for a, b in self.edges()]

    def reversed_(self) -> "AlternatingWalk":
        return AlternatingWalk(reversed(self.vertices), self.kind)

    def rotated(self, shift: int) -> "AlternatingWalk":
        if not self.is_cycle:
            raise InvalidInstance("only cycles rotate")
        k = shift % self.size
        return AlternatingWalk(self.vertices[k:] + self.vertices[:k], CYCLE)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        """Edges as (x index, y index) pairs, orientation-free."""
        return frozenset(
            (a.index, b.index) if a.side == "X" else (b.index, a.index)
            for a, b in self.edges())

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlternatingWalk)
                and self.kind == other.kind and self.vertices == other.vertices)

    def __hash__(self) -> int:
        return hash((self.kind, self.vertices))

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.vertices)

    def __repr__(self) -> str:
        return f"AlternatingWalk({self}, {self.kind})"


def walk(tokens: str, cycle: bool = False) -> AlternatingWalk:
    """Build a walk from a token string like ``"x0 y2 x1"``."""
    return AlternatingWalk(
        [parse_vertex(t) for t in tokens.split()], CYCLE if cycle else PATH)


@dataclass(frozen=True)
class PathCycleSystem:
    """One path plus vertex-disjoint cycles (all properly colored in use)."""

    path: AlternatingWalk
    cycles: tuple[AlternatingWalk, ...] = ()

    def vertices(self) -> set[Vertex]:
        vs = set(self.path.vertices)
        for c in self.cycles:
            vs.update(c.vertices)
        return vs

    @property
    def size(self) -> int:
        """Total vertex count |H|."""
        return self.path.size + sum(c.size for c in self.cycles)


@dataclass(frozen=True)
class TwoFactor:
    """Disjoint cycles covering a vertex set (spanning when over all of G)."""

    cycles: tuple[AlternatingWalk, ...]

    def vertices(self) -> set[Vertex]:
        vs: set[Vertex] = set()
        for c in self.cycles:
            vs.update(c.vertices)
        return vs

    def edge_set(self) -> frozenset[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for c in self.cycles:
            out.update(c.edge_set())
        return frozenset(out)

    def min_cycle_length(self) -> int:
        return min(c.length for c in self.cycles)


# ---------------------------------------------------------------------------
# degree statistics


def color_degree(g: ColoredBipartiteGraph, v: Vertex) -> int:
    """Number of distinct colors on the n edges incident to v."""
    if not g.valid_vertex(v):
        raise InvalidInstance(f"vertex {v} invalid for n={g.n}")
    return len(set(g.incident_colors(v)))


def min_color_degree(g: ColoredBipartiteGraph) -> int:
    if g._min_cdeg is None:
        g._min_cdeg = min(
            min(len(set(r)) for r in g.rows),
            min(len(set(c)) for c in g.cols()))
    return g._min_cdeg


def max_mono_degree(g: ColoredBipartiteGraph) -> int:
    """Largest number of same-colored edges at any single vertex."""
    if g._max_mono is None:
        def worst(lines):
            best = 0
            for line in lines:
                counts: dict[int, int] = {}
                for c in line:
                    counts[c] = counts.get(c, 0) + 1
                best = max(best, max(counts.values()))
            return best
        g._max_mono = max(worst(g.rows), worst(g.cols()))
    return g._max_mono


# ---------------------------------------------------------------------------
# proper-coloring checks and reports


def is_properly_colored(g: ColoredBipartiteGraph, w: AlternatingWalk) -> bool:
    """True iff consecutive edges (wrapping around for cycles) differ in color."""
    cols = w.edge_colors(g)
    if len(cols) < 2:
        return True
    for a, b in zip(cols, cols[1:]):
        if a == b:
            return False
    if w.is_cycle and cols[-1] == cols[0]:
        return False
    return True


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CheckReport:
    """Ordered pass/fail checks with witnesses; machine-renderable."""

    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            val = "pass" if c.ok else "fail"
            if c.detail:
                val += f";{c.detail}"
            lines.append(f"check.{c.name}={val}")
        lines.append(f"verdict={'pass' if self.passed else 'fail'}")
        return "\n".join(lines)


def _walks_wellformed(g: ColoredBipartiteGraph, walks: Iterable[AlternatingWalk],
                      report: CheckReport) -> bool:
    bad = [str(v) for w in walks for v in w.vertices if not g.valid_vertex(v)]
    report.add("wellformed", not bad,
               f"invalid vertices {' '.join(bad)}" if bad else "")
    return not bad


def verify_two_factor(g: ColoredBipartiteGraph, f: TwoFactor, t: int) -> CheckReport:
    """Check spanning / disjointness / proper coloring / minimum length >= t.

    t >= 3 is required; bipartite parity then makes >= 4 automatic for any
    cycle that passes.
    """
    if t < 3:
        raise InvalidInstance("cycle-length threshold t must be >= 3")
    report = CheckReport()
    if not _walks_wellformed(g, f.cycles, report):
        return report

    counts: dict[Vertex, int] = {}
    for c in f.cycles:
        for v in c.vertices:
            counts[v] = counts.get(v, 0) + 1
    dupes = [str(v) for v, k in counts.items() if k > 1]
    report.add("disjoint", not dupes,
               f"shared vertices {' '.join(dupes)}" if dupes else "")

    missing = [str(v) for v in g.vertices() if v not in counts]
    report.add("spanning", not missing,
               f"missing {' '.join(missing)}" if missing else "")

    bad_pc = [str(i) for i, c in enumerate(f.cycles) if not is_properly_colored(g, c)]
    report.add("pc", not bad_pc,
               f"cycles {' '.join(bad_pc)} not properly colored" if bad_pc else "")

    short = [f"{i}:{c.length}" for i, c in enumerate(f.cycles) if c.length < t]
    report.add("min_length", not short,
               f"cycles below t={t}: {' '.join(short)}" if short else "")
    return report


def verify_path_cycle_system(g: ColoredBipartiteGraph, h: PathCycleSystem,
                             t: int) -> CheckReport:
    """Check a candidate system: disjointness, PC path, PC cycles >= t."""
    report = CheckReport()
    if not _walks_wellformed(g, [h.path, *h.cycles], report):
        return report

    counts: dict[Vertex, int] = {}
    for w in (h.path, *h.cycles):
        for v in w.vertices:
            counts[v] = counts.get(v, 0) + 1
    dupes = [str(v) for v, k in counts.items() if k > 1]
    report.add("disjoint", not dupes,
               f"shared vertices {' '.join(dupes)}" if dupes else "")

    report.add("pc_path", is_properly_colored(g, h.path))
    bad_pc = [str(i) for i, c in enumerate(h.cycles) if not is_properly_colored(g, c)]
    report.add("pc_cycles", not bad_pc,
               f"cycles {' '.join(bad_pc)}" if bad_pc else "")
    short = [f"{i}:{c.length}" for i, c in enumerate(h.cycles) if c.length < t]
    report.add("cycle_length", not short,
               f"below t={t}: {' '.join(short)}" if short else "")
    return report


# ---------------------------------------------------------------------------
# instance file format


def write_instance(g: ColoredBipartiteGraph, path: str,
                   comments: Sequence[str] = ()) -> None:
    """Text format: '#' comment lines, then n, then n rows of n colors."""
    with open(path, "w", encoding="utf-8") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(f"{g.n}\n")
        for row in g.rows:
            fh.write(" ".join(str(c) for c in row) + "\n")


def read_instance(path: str) -> ColoredBipartiteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        tokens: list[str] = []
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens.extend(line.split())
    if not tokens:
        raise InvalidInstance(f"{path}: no data")
    try:
        n = int(tokens[0])
        vals = [int(t) for t in tokens[1:]]
    except ValueError as exc:
        raise InvalidInstance(f"{path}: non-integer entry ({exc})") from None
    if n < 1 or len(vals) != n * n:
        raise InvalidInstance(
            f"{path}: expected {n}x{n} entries, got {len(vals)}")
    rows = [vals[i * n:(i + 1) * n] for i in range(n)]
    return ColoredBipartiteGraph(rows)


def write_factor(f: TwoFactor, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# two-factor with {len(f.cycles)} cycles\n")
        for c in f.cycles:
            fh.write(str(c) + "\n")


def read_factor(path: str) -> TwoFactor:
    cycles = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cycles.append(walk(line, cycle=True))
    if not cycles:
        raise InvalidInstance(f"{path}: no cycles")
    return TwoFactor(tuple(cycles))
