"""Constructive search for properly colored 2-factors with a cycle-length
floor, via local search on path-cycle systems.

The driver maintains a system H = one PC path P plus disjoint PC cycles
(each of length >= t) and improves it under the lexicographic order
(|H|, |P|). When no growth move applies, every endpoint-compatible neighbor
lies on P; rotation sets built from the two path ends then feed an exchange
digraph whose "both directions" vertex pairs certify a surgery:

* |P| even: the path vertices are repartitioned into PC cycles, giving a
  2-factor of the subgraph induced by V(H);
* |P| odd: the path is rebuilt into cycles plus a fresh 2-vertex path that
  pulls in one vertex from outside H, so the system strictly grows.

Above the color-degree threshold (min color degree >= 2n/3 + t, n >= 3t)
a usable pair always exists, so the loop terminates with a spanning factor;
below it, a structured StuckReport is returned instead.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from pcfactor.errors import (InvalidSystem, NoOutsideVertex,
                             PreconditionViolated, SurgeryInvariantViolated)
from pcfactor.graph import (CYCLE, PATH, AlternatingWalk,
                            ColoredBipartiteGraph, PathCycleSystem, TwoFactor,
                            Vertex, is_properly_colored, min_color_degree,
                            verify_path_cycle_system)

FRESH = -1  # vertex label for dual-membership vertices; never a real color

# variant tags for the exchange digraph
EVEN = "even"
ODD_SMALL_T = "odd-small-t"  # t <= 4: pair distance != 3
ODD_LARGE_T = "odd-large-t"  # t >= 5: pair distance >= t-1 or == 1

#: instrumentation: how often each membership case fired, e.g. "even:prev-dual"
surgery_cases: Counter[str] = Counter()

#: instrumentation: surgeries that failed verification (must stay 0)
surgery_violations = 0


def _bump_violations() -> None:
    global surgery_violations
    surgery_violations += 1


# ---------------------------------------------------------------------------
# maximality moves


def maximality_move(g: ColoredBipartiteGraph, h: PathCycleSystem,
                    t: int) -> Optional[PathCycleSystem]:
    """One strict improvement of (|H|, |P|), or None if the system is stuck.

    Moves, in order: replace a single-vertex path by an edge outside the
    cycles; extend an endpoint to a free vertex on a color-compatible edge;
    splice one of the cycles into the path at an endpoint. A None return
    certifies that all endpoint-compatible neighbors lie on the path.
    """
    report = verify_path_cycle_system(g, h, t)
    if not report.passed:
        raise InvalidSystem(f"not a valid system: {report.failures()}")

    path = h.path.vertices
    n = g.n

    if len(path) == 1:
        cyc_verts = {v for c in h.cycles for v in c.vertices}
        x = next(Vertex("X", i) for i in range(n) if Vertex("X", i) not in cyc_verts)
        y = next(Vertex("Y", j) for j in range(n) if Vertex("Y", j) not in cyc_verts)
        return PathCycleSystem(AlternatingWalk([x, y], PATH), h.cycles)

    in_h = h.vertices()

    def forbidden(end: int) -> int:
        # color of the path edge at that endpoint
        return g.color(path[end], path[1 if end == 0 else -2])

    # extend an endpoint into a free vertex
    for end in (0, -1):
        anchor = path[end]
        bad = forbidden(end)
        for i in range(n):
            v = Vertex(anchor.opposite_side(), i)
            if v in in_h or g.color(anchor, v) == bad:
                continue
            new_path = [v, *path] if end == 0 else [*path, v]
            return PathCycleSystem(AlternatingWalk(new_path, PATH), h.cycles)

    # splice a cycle into the path at an endpoint
    for end in (0, -1):
        anchor = path[end]
        bad = forbidden(end)
        for ci, cyc in enumerate(h.cycles):
            cpos = {v: i for i, v in enumerate(cyc.vertices)}
            for i in range(n):
                v = Vertex(anchor.opposite_side(), i)
                if v not in cpos or g.color(anchor, v) == bad:
                    continue
                chain = _open_cycle_at(g, cyc, cpos[v], g.color(anchor, v))
                rest = h.cycles[:ci] + h.cycles[ci + 1:]
                if end == 0:
                    new_path = [*reversed(chain), *path]
                else:
                    new_path = [*path, *chain]
                return PathCycleSystem(AlternatingWalk(new_path, PATH), rest)

    return None


def _open_cycle_at(g: ColoredBipartiteGraph, cyc: AlternatingWalk, p: int,
                   entry_color: int) -> list[Vertex]:
    """Cycle vertices starting at position p, directed so the first step's
    color differs from the color of the entry edge."""
    vs = cyc.vertices
    m = len(vs)
    if g.color(vs[p], vs[(p + 1) % m]) != entry_color:
        return [vs[(p + i) % m] for i in range(m)]
    return [vs[(p - i) % m] for i in range(m)]


# ---------------------------------------------------------------------------
# rotation structures


@dataclass(frozen=True)
class EndpointSets:
    """Endpoint-compatible neighbor sets and their near-end trimmed variants."""

    s1_prime: frozenset[Vertex]
    sk_prime: frozenset[Vertex]
    s1: frozenset[Vertex]
    sk: frozenset[Vertex]
    window: frozenset[Vertex]


@dataclass(frozen=True)
class RotationSets:
    """Path vertices usable as rotation pivots at either end.

    ``left_*`` sets live on the side of the first path vertex, ``right_*``
    on the opposite side. Membership is via the predecessor (``prev``) or
    successor (``next``) lying in the trimmed endpoint set with the extra
    color condition; on odd paths the right end uses offset-2 neighbors.
    Vertices in both sets of one end form the ``dual`` class and carry a
    fresh label; the others are labeled by their surviving path edge.
    """

    parity: str  # "even" | "odd"
    left_prev: frozenset[Vertex]
    left_next: frozenset[Vertex]
    right_prev: frozenset[Vertex]
    right_next: frozenset[Vertex]
    left_dual: frozenset[Vertex]
    right_dual: frozenset[Vertex]
    left_star: frozenset[Vertex]
    right_star: frozenset[Vertex]
    labels: dict[Vertex, int]

    def left_all(self) -> frozenset[Vertex]:
        return self.left_star | self.left_dual

    def right_all(self) -> frozenset[Vertex]:
        return self.right_star | self.right_dual


def _neighbors(g: ColoredBipartiteGraph, v: Vertex):
    side = v.opposite_side()
    return (Vertex(side, i) for i in range(g.n))


def _endpoint_sets(g: ColoredBipartiteGraph, path: tuple[Vertex, ...],
                   t: int) -> EndpointSets:
    k = len(path)
    u1, uk = path[0], path[-1]
    c_head = g.color(u1, path[1])
    c_tail = g.color(path[-2], uk)
    s1p = frozenset(v for v in _neighbors(g, u1) if g.color(u1, v) != c_head)
    skp = frozenset(v for v in _neighbors(g, uk) if g.color(uk, v) != c_tail)
    window = frozenset(path[:t - 1]) | frozenset(path[max(0, k - t):k - 1])
    return EndpointSets(s1p, skp, s1p - window, skp - window, window)


def _rotation_sets(g: ColoredBipartiteGraph, path: tuple[Vertex, ...],
                   t: int, parity: str) -> tuple[EndpointSets, RotationSets]:
    """Literal evaluation of the pivot-set definitions on the given path."""
    ends = _endpoint_sets(g, path, t)
    k = len(path)
    u1, uk = path[0], path[-1]
    s1, sk = ends.s1, ends.sk
    off = 1 if parity == "even" else 2  # right-end pivot offset

    left_prev, left_next, right_prev, right_next = set(), set(), set(), set()
    for p, v in enumerate(path):
        if p >= 2 and path[p - 1] in s1 and \
                g.color(u1, path[p - 1]) != g.color(path[p - 1], path[p - 2]):
            left_prev.add(v)
        if p <= k - 3 and path[p + 1] in s1 and \
                g.color(u1, path[p + 1]) != g.color(path[p + 1], path[p + 2]):
            left_next.add(v)
        if p >= off + 1 and path[p - off] in sk and \
                g.color(uk, path[p - off]) != g.color(path[p - off], path[p - off - 1]):
            right_prev.add(v)
        if p <= k - off - 2 and path[p + off] in sk and \
                g.color(uk, path[p + off]) != g.color(path[p + off], path[p + off + 1]):
            right_next.add(v)

    left_dual = left_prev & left_next
    right_dual = right_prev & right_next
    left_star = (left_prev | left_next) - left_dual
    right_star = (right_prev | right_next) - right_dual

    pos = {v: i for i, v in enumerate(path)}
    labels: dict[Vertex, int] = {}
    for v in left_star | right_star:
        if v in left_prev or v in right_prev:
            labels[v] = g.color(v, path[pos[v] + 1])  # survives via next edge
        else:
            labels[v] = g.color(v, path[pos[v] - 1])
    for v in left_dual | right_dual:
        labels[v] = FRESH

    rot = RotationSets(parity,
                       frozenset(left_prev), frozenset(left_next),
                       frozenset(right_prev), frozenset(right_next),
                       frozenset(left_dual), frozenset(right_dual),
                       frozenset(left_star), frozenset(right_star), labels)
    return ends, rot


def compute_rotation_structures(g: ColoredBipartiteGraph, h: PathCycleSystem,
                                t: int) -> tuple[EndpointSets, RotationSets, str]:
    """Endpoint and rotation sets of a stuck system.

    Requires that both endpoint-compatible neighbor sets lie inside the
    path, which is exactly what a None from maximality_move certifies.
    """
    path = h.path.vertices
    if len(path) < 2:
        raise PreconditionViolated("rotation structures need |P| >= 2")
    parity = "even" if len(path) % 2 == 0 else "odd"
    ends = _endpoint_sets(g, path, t)
    stray = (ends.s1_prime | ends.sk_prime) - set(path)
    if stray:
        raise PreconditionViolated(
            f"system is not stuck: {sorted(str(v) for v in stray)} off the path")
    _, rot = _rotation_sets(g, path, t, parity)
    return ends, rot, parity


# ---------------------------------------------------------------------------
# exchange digraph


@dataclass(frozen=True)
class ExchangeDigraph:
    """Directed certificate graph over the rotation-set vertices.

    Arcs require the distance guard along the path and a color mismatch
    with the source's label; arcs into a dual class are structurally
    excluded. A usable pair is one with the guard and the edge color off
    both labels (dual labels are fresh, so they never match).
    """

    graph: ColoredBipartiteGraph
    variant: str
    t: int
    left: tuple[Vertex, ...]
    right: tuple[Vertex, ...]
    left_dual: frozenset[Vertex]
    right_dual: frozenset[Vertex]
    labels: dict[Vertex, int]
    positions: dict[Vertex, int]
    arcs: frozenset[tuple[Vertex, Vertex]]

    def guard(self, x: Vertex, y: Vertex) -> bool:
        d = abs(self.positions[x] - self.positions[y])
        if self.variant == ODD_SMALL_T:
            return d != 3
        return d >= self.t - 1 or d == 1


def build_exchange_digraph(g: ColoredBipartiteGraph, path_walk: AlternatingWalk,
                           rot: RotationSets, t: int,
                           parity: str) -> ExchangeDigraph:
    if parity != rot.parity:
        raise PreconditionViolated("rotation sets computed for other parity")
    if parity == "even":
        variant = EVEN
    else:
        variant = ODD_SMALL_T if t <= 4 else ODD_LARGE_T
    pos = {v: i for i, v in enumerate(path_walk.vertices)}
    left = tuple(sorted(rot.left_all(), key=pos.__getitem__))
    right = tuple(sorted(rot.right_all(), key=pos.__getitem__))

    def guard(a: Vertex, b: Vertex) -> bool:
        d = abs(pos[a] - pos[b])
        if variant == ODD_SMALL_T:
            return d != 3
        return d >= t - 1 or d == 1

    arcs = set()
    for x in left:
        for y in right:
            if not guard(x, y):
                continue
            c = g.color(x, y)
            if y not in rot.right_dual and c != rot.labels[x]:
                arcs.add((x, y))
            if x not in rot.left_dual and c != rot.labels[y]:
                arcs.add((y, x))
    d = ExchangeDigraph(g, variant, t, left, right, rot.left_dual,
                        rot.right_dual, dict(rot.labels), pos, frozenset(arcs))
    for a, b in d.arcs:
        if b in d.left_dual or b in d.right_dual:
            raise SurgeryInvariantViolated(f"arc into dual class: {a}->{b}")
    return d


def find_directed_2cycle(d: ExchangeDigraph) -> Optional[tuple[Vertex, Vertex]]:
    """First pair (x, y) with the guard and the edge color off both labels.

    For non-dual endpoints this is exactly "both arcs present"; a dual
    endpoint's own test always passes (its label is fresh).
    """
    g = d.graph
    for x in d.left:
        lx = d.labels[x]
        for y in d.right:
            if not d.guard(x, y):
                continue
            c = g.color(x, y)
            if c != lx and c != d.labels[y]:
                return x, y
    return None


# ---------------------------------------------------------------------------
# exchange surgeries


def _classify(v: Vertex, prev_set: frozenset[Vertex],
              next_set: frozenset[Vertex]) -> Optional[str]:
    if v in prev_set:
        return "dual" if v in next_set else "prev"
    return "next" if v in next_set else None


def _seg(path, a, b):
    return list(path[a:b + 1])


def _rseg(path, b, a):
    return list(reversed(path[a:b + 1]))


def _even_cycle_runs(path, ix, iy, xe, ye):
    """Vertex lists of the replacement cycles on an even path.

    ``xe``/``ye`` are the effective classes ("prev" = labeled by the next
    path edge, "next" = labeled by the previous one) justifying each new
    junction; the adjacent case is handled by the caller.
    """
    k = len(path)
    if xe == "prev" and ye == "prev":
        if ix < iy:
            return [_seg(path, 0, ix - 1),
                    _seg(path, ix, iy - 1) + _rseg(path, k - 1, iy)]
        return [_seg(path, 0, iy - 1) + _rseg(path, k - 1, ix) + _seg(path, iy, ix - 1)]
    if xe == "prev" and ye == "next":
        if ix < iy:
            return [_seg(path, 0, ix - 1), _seg(path, ix, iy),
                    _seg(path, iy + 1, k - 1)]
        return [_seg(path, 0, iy) + _seg(path, ix, k - 1) + _seg(path, iy + 1, ix - 1)]
    if xe == "next" and ye == "prev":
        if ix < iy:
            return [_seg(path, 0, ix) + _seg(path, iy, k - 1) + _rseg(path, iy - 1, ix + 1)]
        return [_seg(path, 0, iy - 1) + _rseg(path, k - 1, ix + 1), _seg(path, iy, ix)]
    if ix < iy:
        return [_seg(path, iy + 1, k - 1), _seg(path, 0, ix) + _rseg(path, iy, ix + 1)]
    # both labels from the previous edge: thread the middle stretch backward
    return [_seg(path, 0, iy) + _rseg(path, ix, iy + 1) + _rseg(path, k - 1, ix + 1)]


def _odd_cycle_runs(path, ix, iy, xe, ye):
    """Replacement cycles plus the leftover position on an odd path."""
    k = len(path)
    if xe == "prev" and ye == "prev":
        if ix < iy:
            return [_seg(path, 0, ix - 1),
                    [path[ix]] + _seg(path, iy, k - 1) + _rseg(path, iy - 2, ix + 1)], iy - 1
        return [_seg(path, 0, iy - 2) + _rseg(path, k - 1, ix) + _seg(path, iy, ix - 1)], iy - 1
    if xe == "prev" and ye == "next":
        if ix < iy:
            return [_seg(path, 0, ix - 1), _seg(path, ix, iy),
                    _seg(path, iy + 2, k - 1)], iy + 1
        return [_seg(path, 0, iy) + _seg(path, ix, k - 1) + _seg(path, iy + 2, ix - 1)], iy + 1
    if xe == "next" and ye == "prev":
        if ix < iy:
            return [_seg(path, 0, ix) + _seg(path, iy, k - 1) + _rseg(path, iy - 2, ix + 1)], iy - 1
        return [_seg(path, 0, iy - 2) + _rseg(path, k - 1, ix + 1), _seg(path, iy, ix)], iy - 1
    if ix < iy:
        return [_seg(path, 0, ix) + _rseg(path, iy, ix + 1),
                _seg(path, iy + 2, k - 1)], iy + 1
    return [_seg(path, 0, iy) + _rseg(path, ix, iy + 2) + _rseg(path, k - 1, ix + 1)], iy + 1


def _effective_classes(g, path, p, v, other, in_prev, in_next):
    """Effective classes to try for one pair vertex, dual resolving to
    whichever of its two path-edge colors the pair edge avoids ("next"
    tried first). Pure members always qualify for their own class."""
    c = g.color(v, other)
    opts = []
    if v in in_next and c != g.color(v, path[p - 1]):
        opts.append("next")
    if v in in_prev and c != g.color(v, path[p + 1]):
        opts.append("prev")
    return opts


def _surgery_runs(g, path, rot, x, y, parity):
    """Dispatch a usable pair to its replacement cycles.

    Returns (cycle vertex lists, leftover position or None, case id).
    """
    pos = {v: i for i, v in enumerate(path)}
    ix, iy = pos[x], pos[y]
    cx = _classify(x, rot.left_prev, rot.left_next)
    cy = _classify(y, rot.right_prev, rot.right_next)
    if cx is None or cy is None:
        raise SurgeryInvariantViolated(f"pair {x},{y} outside rotation sets")
    case = f"{parity}:{cx}-{cy}"

    leftover = None
    if abs(ix - iy) == 1:
        k = len(path)
        if ix == iy + 1:  # x right after y: split into prefix + suffix cycles
            if x not in rot.left_prev or y not in rot.right_next:
                raise SurgeryInvariantViolated(f"adjacent pair {x},{y} misclassified")
            if parity == "even":
                runs = [_seg(path, 0, iy), _seg(path, ix, k - 1)]
            else:
                runs, leftover = [_seg(path, 0, iy), _seg(path, ix + 1, k - 1)], ix
        else:  # x right before y: one wrap-around cycle
            if x not in rot.left_next or y not in rot.right_prev:
                raise SurgeryInvariantViolated(f"adjacent pair {x},{y} misclassified")
            if parity == "even":
                runs = [_seg(path, 0, ix) + _rseg(path, k - 1, iy)]
            else:
                runs, leftover = [_seg(path, 0, iy - 2) + _rseg(path, k - 1, ix + 1)], ix
    else:
        x_opts = _effective_classes(g, path, ix, x, y, rot.left_prev, rot.left_next)
        y_opts = _effective_classes(g, path, iy, y, x, rot.right_prev, rot.right_next)
        if not x_opts or not y_opts:
            raise SurgeryInvariantViolated(f"no effective class for pair {x},{y}")
        xe, ye = x_opts[0], y_opts[0]
        if parity == "even":
            runs = _even_cycle_runs(path, ix, iy, xe, ye)
        else:
            runs, leftover = _odd_cycle_runs(path, ix, iy, xe, ye)
    return runs, leftover, case


def _cycles_from_runs(g, runs, t, expected: set[Vertex]) -> list[AlternatingWalk]:
    cycles = []
    covered: set[Vertex] = set()
    for run in runs:
        cyc = AlternatingWalk(run, CYCLE)
        if not is_properly_colored(g, cyc):
            raise SurgeryInvariantViolated(f"cycle not properly colored: {cyc}")
        if cyc.length < t:
            raise SurgeryInvariantViolated(f"cycle below length floor: {cyc}")
        if covered & set(run):
            raise SurgeryInvariantViolated("replacement cycles overlap")
        covered.update(run)
        cycles.append(cyc)
    if covered != expected:
        raise SurgeryInvariantViolated("replacement cycles miss path vertices")
    return cycles


def apply_even_exchange(g: ColoredBipartiteGraph, h: PathCycleSystem,
                        path_walk: AlternatingWalk, x: Vertex, y: Vertex,
                        t: int) -> TwoFactor:
    """Repartition an even stuck path into PC cycles; together with the
    untouched cycles this is a 2-factor of the subgraph induced by V(H).
    Fully verified before return."""
    path = path_walk.vertices
    if len(path) % 2 != 0:
        raise PreconditionViolated("even exchange needs an even path")
    _, rot = _rotation_sets(g, path, t, "even")
    try:
        runs, _, case = _surgery_runs(g, path, rot, x, y, "even")
        new_cycles = _cycles_from_runs(g, runs, t, set(path))
        factor = TwoFactor(tuple(new_cycles) + h.cycles)
        total = sum(c.size for c in factor.cycles)
        if factor.vertices() != h.vertices() or total != h.size:
            raise SurgeryInvariantViolated("exchange result does not cover V(H)")
        for c in factor.cycles:
            if c.length < t or not is_properly_colored(g, c):
                raise SurgeryInvariantViolated(f"invalid cycle in result: {c}")
    except SurgeryInvariantViolated:
        _bump_violations()
        raise
    surgery_cases[case] += 1
    return factor


def apply_odd_exchange(g: ColoredBipartiteGraph, h: PathCycleSystem,
                       path_walk: AlternatingWalk, x: Vertex, y: Vertex,
                       t: int, y_star: Vertex) -> PathCycleSystem:
    """Rebuild an odd stuck path into cycles plus a 2-vertex path through
    the outside vertex y_star; the system grows by exactly one vertex."""
    path = path_walk.vertices
    if len(path) % 2 != 1:
        raise PreconditionViolated("odd exchange needs an odd path")
    if y_star in h.vertices() or y_star.side != path[0].opposite_side():
        raise PreconditionViolated(f"{y_star} is not a free opposite-side vertex")
    _, rot = _rotation_sets(g, path, t, "odd")
    try:
        runs, leftover, case = _surgery_runs(g, path, rot, x, y, "odd")
        if leftover is None:
            raise SurgeryInvariantViolated("odd exchange produced no leftover")
        new_cycles = _cycles_from_runs(g, runs, t, set(path) - {path[leftover]})
        new_path = AlternatingWalk([path[leftover], y_star], PATH)
        out = PathCycleSystem(new_path, tuple(new_cycles) + h.cycles)
        report = verify_path_cycle_system(g, out, t)
        if not report.passed or out.size != h.size + 1:
            raise SurgeryInvariantViolated(f"odd exchange invalid: {report.failures()}")
    except SurgeryInvariantViolated:
        _bump_violations()
        raise
    surgery_cases[case] += 1
    return out


# ---------------------------------------------------------------------------
# the driver


@dataclass
class StuckReport:
    """Terminal state of a run that found no usable exchange pair."""

    n: int
    t: int
    delta: int
    hypotheses_met: bool
    system: PathCycleSystem
    digraph: Optional[ExchangeDigraph]

    def to_text(self) -> str:
        lines = [
            "outcome=stuck",
            f"n={self.n}",
            f"t={self.t}",
            f"min_color_degree={self.delta}",
            f"hypotheses_met={'yes' if self.hypotheses_met else 'no'}",
            f"system_size={self.system.size}",
            f"path_size={self.system.path.size}",
            f"path={self.system.path}",
        ]
        for i, c in enumerate(self.system.cycles):
            lines.append(f"cycle.{i}={c}")
        if self.digraph is not None:
            lines.append(f"digraph.variant={self.digraph.variant}")
            lines.append(f"digraph.left={len(self.digraph.left)}")
            lines.append(f"digraph.right={len(self.digraph.right)}")
            lines.append(f"digraph.arcs={len(self.digraph.arcs)}")
        return "\n".join(lines)


def threshold_hypotheses_met(g: ColoredBipartiteGraph, t: int) -> bool:
    """n >= 3t and min color degree >= 2n/3 + t (exact rational check)."""
    return g.n >= 3 * t and 3 * min_color_degree(g) >= 2 * g.n + 3 * t


def find_pc_2factor(g: ColoredBipartiteGraph, t: int,
                    strict: bool = True) -> TwoFactor | StuckReport:
    """Spanning PC 2-factor with all cycles of length >= t, or a StuckReport.

    With ``strict`` (the default) t above n/3 is rejected outright. Passing
    ``strict=False`` runs the search anyway, which is what the threshold
    hunter uses; below the color-degree threshold the search may legally
    end stuck either way.
    """
    if t < 3:
        raise PreconditionViolated("cycle-length floor t must be >= 3")
    if strict and 3 * t > g.n:
        raise PreconditionViolated(f"t={t} above cap: need n >= 3t, n={g.n}")

    n = g.n
    delta = min_color_degree(g)
    hyp = threshold_hypotheses_met(g, t)
    state = PathCycleSystem(AlternatingWalk([Vertex("X", 0)], PATH), ())
    measure = (state.size, state.path.size)
    max_steps = (2 * n + 1) ** 2 + 8

    for _ in range(max_steps):
        moved = maximality_move(g, state, t)
        if moved is not None:
            state = moved
            measure = _advance(measure, state)
            continue

        ends, rot, parity = compute_rotation_structures(g, state, t)
        digraph = build_exchange_digraph(g, state.path, rot, t, parity)
        pair = find_directed_2cycle(digraph)
        if pair is None:
            counting_ok = (
                hyp
                and 3 * len(ends.s1) >= 2 * n + 3
                and 3 * len(ends.sk) >= 2 * n + 3
                and len(rot.left_prev) + len(rot.left_next) >= len(ends.s1)
                and len(rot.right_prev) + len(rot.right_next) >= len(ends.sk))
            assert not counting_ok, \
                "no exchange pair despite the counting guarantees; this is a bug"
            return StuckReport(n, t, delta, hyp, state, digraph)

        x, y = pair
        if parity == "even":
            factor = apply_even_exchange(g, state, state.path, x, y, t)
            if len(factor.vertices()) == 2 * n:
                return factor
            state = _reseed_outside(g, factor)
        else:
            y_star = _free_vertex(g, state, state.path.vertices[0].opposite_side())
            state = apply_odd_exchange(g, state, state.path, x, y, t, y_star)
        measure = _advance(measure, state)

    raise AssertionError("improvement loop exceeded its step bound; this is a bug")


def _advance(measure, state: PathCycleSystem):
    new = (state.size, state.path.size)
    assert new > measure, f"loop measure did not increase: {measure} -> {new}"
    return new


def _reseed_outside(g: ColoredBipartiteGraph, factor: TwoFactor) -> PathCycleSystem:
    used = factor.vertices()
    x = next(Vertex("X", i) for i in range(g.n) if Vertex("X", i) not in used)
    y = next(Vertex("Y", j) for j in range(g.n) if Vertex("Y", j) not in used)
    return PathCycleSystem(AlternatingWalk([x, y], PATH), factor.cycles)


def _free_vertex(g: ColoredBipartiteGraph, h: PathCycleSystem, side: str) -> Vertex:
    used = h.vertices()
    for i in range(g.n):
        v = Vertex(side, i)
        if v not in used:
            return v
    raise NoOutsideVertex(f"no free vertex on side {side}")


def cover_by_pc_odd_paths(g: ColoredBipartiteGraph, t: int,
                          strict: bool = True) -> list[AlternatingWalk] | StuckReport:
    """Vertex-disjoint spanning PC odd paths, at most ceil(2n/t) of them.

    Builds the 2-factor and drops each cycle's closing edge; an even cycle
    minus one edge is an odd path. A StuckReport propagates unchanged.
    """
    result = find_pc_2factor(g, t, strict=strict)
    if isinstance(result, StuckReport):
        return result
    return [AlternatingWalk(c.vertices, PATH) for c in result.cycles]
