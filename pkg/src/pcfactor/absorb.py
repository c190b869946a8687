"""Absorbing machinery for properly colored cycles of prescribed even length.

A short PC path can "swallow" either a designated edge (a D1 element) or the
two end pairs of a longer odd path (a D2 element) while staying properly
colored. A randomized family of disjoint absorbing 3-edge paths is threaded
into one PC cycle via linking edges; disjoint PC odd paths outside the cycle
are then spliced in simultaneously through a path-to-absorber matching. The
prescribed-length driver combines three regimes: the exact short search, a
greedy path closed by a linking edge, and the absorbing cycle.

The sampler's acceptance thresholds follow fixed analytic formulas by
default; engineering mode exposes them to the caller (desk-scale side sizes
make the analytic constants vacuous, the mechanism itself is unchanged).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from pcfactor import oracle
from pcfactor.builder import StuckReport, cover_by_pc_odd_paths
from pcfactor.errors import (InvalidInstance, LinkFailure, MatchingDeficient,
                             NoLinkingEdge, NotAbsorbing, OverlapError,
                             PreconditionViolated, RegimeFailure,
                             ResampleBudgetExhausted, SpliceInvariantViolated)
from pcfactor.graph import (CYCLE, PATH, AlternatingWalk,
                            ColoredBipartiteGraph, Vertex, is_properly_colored,
                            min_color_degree)


class D1Element(NamedTuple):
    """A designated edge (x, y) to be absorbed."""

    x: Vertex
    y: Vertex

    def validate(self) -> None:
        if self.x.side != "X" or self.y.side != "Y":
            raise InvalidInstance(f"bad element sides: {self.x}, {self.y}")

    def vertex_set(self) -> set[Vertex]:
        return {self.x, self.y}


class D2Element(NamedTuple):
    """The two end pairs (x1, y1; x2, y2) of an odd path to be absorbed."""

    x1: Vertex
    y1: Vertex
    x2: Vertex
    y2: Vertex

    def validate(self) -> None:
        if (self.x1.side != "X" or self.x2.side != "X"
                or self.y1.side != "Y" or self.y2.side != "Y"):
            raise InvalidInstance("element pairs must be (X, Y) vertices")
        if self.x1 == self.x2 or self.y1 == self.y2:
            raise InvalidInstance("element vertices must be distinct")

    def vertex_set(self) -> set[Vertex]:
        return {self.x1, self.y1, self.x2, self.y2}


@dataclass(frozen=True)
class AbsorberParams:
    """Knobs of the absorbing pipeline.

    Analytic mode (the default) derives every threshold from epsilon; those
    constants only bite at astronomically large n. Engineering mode keeps
    the procedures identical but takes the family-size / coverage
    thresholds (and optionally the sampling probability) from the caller.
    """

    epsilon: float = 1 / 3              # in (0, 1/3]
    gamma: float | None = None          # default 2^4 eps^2 / 9
    sample_p: float | None = None       # default 2^-5 gamma / (n (n-1)^2)
    max_resample: int = 64
    engineering: bool = False
    size_threshold: float | None = None       # engineering: max family size
    coverage_threshold: float | None = None   # engineering: min absorbers per element
    min_family: int = 1                       # engineering: reject empty draws
    cover_t: int = 3                          # cycle floor for the remainder cover
    short_regime_max: int | None = None       # engineering: greedy regime cutoff
    retry_budget: int = 8

    def validate(self) -> None:
        if not 0 < self.epsilon <= 1 / 3:
            raise InvalidInstance("epsilon must lie in (0, 1/3]")
        if self.max_resample < 1 or self.retry_budget < 1:
            raise InvalidInstance("budgets must be positive")
        if self.sample_p is not None and not 0 < self.sample_p <= 1:
            raise InvalidInstance("sample probability must lie in (0, 1]")

    def gamma_(self) -> float:
        return self.gamma if self.gamma is not None else 16 * self.epsilon ** 2 / 9

    def p_for(self, n: int) -> float:
        if self.sample_p is not None:
            return self.sample_p
        if self.engineering and self.size_threshold is not None:
            # aim the expected draw at the size limit
            return min(1.0, self.size_threshold / (n * n * (n - 1) ** 2))
        return self.gamma_() / (32 * n * (n - 1) ** 2)

    def size_limit(self, n: int) -> float:
        if self.engineering:
            if self.size_threshold is None:
                raise PreconditionViolated(
                    "engineering mode needs an explicit size threshold")
            return self.size_threshold
        return self.gamma_() * n / 16

    def coverage_floor(self, n: int) -> float:
        if self.engineering:
            if self.coverage_threshold is None:
                raise PreconditionViolated(
                    "engineering mode needs an explicit coverage threshold")
            return self.coverage_threshold
        return self.gamma_() ** 2 * n / 128

    def short_cutoff(self, n: int) -> int:
        if self.short_regime_max is not None:
            return self.short_regime_max
        if self.engineering:
            return 2 * n
        return math.floor(4 * self.epsilon * n / 3)

    def min_side(self) -> int:
        """Side size below which analytic mode refuses to run."""
        return math.ceil(243 / self.epsilon ** 5)


@dataclass(frozen=True)
class AbsorbingFamily:
    """Pairwise disjoint PC 3-edge paths, each 4 vertices X,Y,X,Y."""

    paths: tuple[AlternatingWalk, ...]
    params: AbsorberParams

    def vertices(self) -> set[Vertex]:
        return {v for p in self.paths for v in p.vertices}


# ---------------------------------------------------------------------------
# absorbing predicates


def _check_absorber_shape(p: AlternatingWalk) -> None:
    if p.kind != PATH or p.size != 4 or p.vertices[0].side != "X":
        raise InvalidInstance("absorbing path must be a 4-vertex path x'y'x''y''")


def is_absorbing_d1(g: ColoredBipartiteGraph, p: AlternatingWalk,
                    e: D1Element) -> bool:
    """PC 3-path disjoint from (x, y) that stays PC with the edge inserted."""
    _check_absorber_shape(p)
    e.validate()
    if set(p.vertices) & e.vertex_set():
        return False
    if not is_properly_colored(g, p):
        return False
    a, b, c, d = p.vertices
    spliced = AlternatingWalk([a, b, e.x, e.y, c, d], PATH)
    return is_properly_colored(g, spliced)


def is_absorbing_d2(g: ColoredBipartiteGraph, p: AlternatingWalk,
                    e: D2Element) -> bool:
    """PC 3-path whose ends extend both element pairs properly."""
    _check_absorber_shape(p)
    e.validate()
    if set(p.vertices) & e.vertex_set():
        return False
    if not is_properly_colored(g, p):
        return False
    a, b, c, d = p.vertices
    head = AlternatingWalk([a, b, e.x1, e.y1], PATH)
    tail = AlternatingWalk([d, c, e.y2, e.x2], PATH)
    return is_properly_colored(g, head) and is_properly_colored(g, tail)


def _absorbs(g, p, e) -> bool:
    return is_absorbing_d1(g, p, e) if isinstance(e, D1Element) \
        else is_absorbing_d2(g, p, e)


def insert_element(g: ColoredBipartiteGraph, p_long: AlternatingWalk,
                   a: AlternatingWalk) -> AlternatingWalk:
    """Wrap a PC path x1y1...xlyl into an absorbing path for its end pairs."""
    if p_long.kind != PATH or p_long.size < 4 or p_long.size % 2 != 0 \
            or p_long.vertices[0].side != "X":
        raise InvalidInstance("expected a path x1y1...xlyl with l >= 2")
    if set(a.vertices) & set(p_long.vertices):
        raise OverlapError("absorbing path touches the path being extended")
    e = D2Element(p_long.vertices[0], p_long.vertices[1],
                  p_long.vertices[-2], p_long.vertices[-1])
    if not is_absorbing_d2(g, a, e):
        raise NotAbsorbing(f"{a} does not absorb {e}")
    out = AlternatingWalk([a.vertices[0], a.vertices[1], *p_long.vertices,
                           a.vertices[2], a.vertices[3]], PATH)
    assert is_properly_colored(g, out)
    return out


def count_absorbing_paths(g: ColoredBipartiteGraph,
                          e: D1Element | D2Element) -> int:
    """Exact count of absorbing paths for the element (full quadruple scan)."""
    e.validate()
    n = g.n
    rows = g.rows
    count = 0
    if isinstance(e, D1Element):
        xi, yi = e.x.index, e.y.index
        for a in range(n):
            if a == xi:
                continue
            for b in range(n):
                if b == yi:
                    continue
                ab = rows[a][b]
                bx = rows[xi][b]
                if ab == bx:
                    continue
                xy = rows[xi][yi]
                if bx == xy:
                    continue
                for c in range(n):
                    if c == a or c == xi:
                        continue
                    cb = rows[c][b]
                    if ab == cb:  # the 3-path itself must be PC
                        continue
                    yc = rows[c][yi]
                    if xy == yc:
                        continue
                    for d in range(n):
                        if d == b or d == yi:
                            continue
                        cd = rows[c][d]
                        if cb == cd or yc == cd:
                            continue
                        count += 1
        return count

    x1, y1 = e.x1.index, e.y1.index
    x2, y2 = e.x2.index, e.y2.index
    e12 = rows[x1][y1]
    e22 = rows[x2][y2]
    for a in range(n):
        if a in (x1, x2):
            continue
        for b in range(n):
            if b in (y1, y2):
                continue
            ab = rows[a][b]
            b1 = rows[x1][b]
            if ab == b1 or b1 == e12:  # head splice a-b-x1-y1
                continue
            for c in range(n):
                if c == a or c in (x1, x2):
                    continue
                cb = rows[c][b]
                if ab == cb:
                    continue
                c2 = rows[c][y2]
                for d in range(n):
                    if d == b or d in (y1, y2):
                        continue
                    cd = rows[c][d]
                    if cb == cd:
                        continue
                    if cd == c2 or c2 == e22:  # tail splice d-c-y2-x2
                        continue
                    count += 1
    return count


# ---------------------------------------------------------------------------
# linking edges


def _linking_ok(rows, e: D2Element, xi: int, yi: int) -> bool:
    # path x1 y1 x y x2 y2 properly colored
    c0 = rows[e.x1.index][e.y1.index]
    c1 = rows[xi][e.y1.index]
    if c0 == c1:
        return False
    c2 = rows[xi][yi]
    if c1 == c2:
        return False
    c3 = rows[e.x2.index][yi]
    if c2 == c3:
        return False
    return c3 != rows[e.x2.index][e.y2.index]


def find_linking_edge(g: ColoredBipartiteGraph,
                      e: D2Element) -> tuple[Vertex, Vertex]:
    """First edge xy outside the element with x1 y1 x y x2 y2 properly colored.

    Existence is guaranteed above min color degree 2n/3 + 2; the scan is
    attempted regardless, and a miss raises NoLinkingEdge flagged with
    whether the guarantee applied.
    """
    e.validate()
    rows = g.rows
    for xi in range(g.n):
        if xi in (e.x1.index, e.x2.index):
            continue
        for yi in range(g.n):
            if yi in (e.y1.index, e.y2.index):
                continue
            if _linking_ok(rows, e, xi, yi):
                return Vertex("X", xi), Vertex("Y", yi)
    met = 3 * min_color_degree(g) >= 2 * g.n + 6
    raise NoLinkingEdge(
        f"no linking edge for {e} (degree guarantee "
        f"{'met' if met else 'not met'})", precondition_met=met)


def count_linking_edges(g: ColoredBipartiteGraph, e: D2Element) -> int:
    """Exact count of linking edges (at least ceil(4n/3) above threshold)."""
    e.validate()
    rows = g.rows
    return sum(
        1
        for xi in range(g.n) if xi not in (e.x1.index, e.x2.index)
        for yi in range(g.n) if yi not in (e.y1.index, e.y2.index)
        if _linking_ok(rows, e, xi, yi))


# ---------------------------------------------------------------------------
# the randomized family


def _bernoulli_indices(rng: random.Random, count: int, p: float) -> list[int]:
    """Indices of an independent p-coin subset of range(count), via
    geometric gap sampling (exact, O(successes))."""
    if p <= 0:
        return []
    if p >= 1:
        return list(range(count))
    out = []
    log_q = math.log1p(-p)
    i = -1
    while True:
        u = rng.random()
        if u <= 0.0:
            u = 5e-324
        i += int(math.log(u) / log_q) + 1
        if i >= count:
            return out
        out.append(i)


def _decode_candidate(idx: int, n: int) -> tuple[int, int, int, int]:
    """Index -> (x', y', x'', y'') over the n^2 (n-1)^2 ordered 3-paths."""
    y2o = idx % (n - 1)
    idx //= n - 1
    x2o = idx % (n - 1)
    idx //= n - 1
    y1 = idx % n
    x1 = idx // n
    x2 = x2o + (x2o >= x1)
    y2 = y2o + (y2o >= y1)
    return x1, y1, x2, y2


def candidate_count(n: int) -> int:
    return n * n * (n - 1) ** 2


def sample_absorbing_family(g: ColoredBipartiteGraph,
                            elems: Sequence[D1Element | D2Element],
                            params: AbsorberParams,
                            seed: int = 0) -> AbsorbingFamily:
    """Random disjoint PC 3-path family meeting the acceptance thresholds.

    Each round draws every candidate path independently with probability p,
    removes one path from each intersecting pair (first kept wins), drops
    improperly colored paths, and accepts iff the family is small enough
    and covers every requested element often enough. Deterministic in
    (graph, params, seed).
    """
    params.validate()
    n = g.n
    if n < 2:
        raise InvalidInstance("need n >= 2 to sample 3-paths")
    p = params.p_for(n)
    size_limit = params.size_limit(n)
    cov_floor = params.coverage_floor(n)
    total = candidate_count(n)
    rng = random.Random(seed)
    best: dict[str, float] = {"round": -1, "size": -1, "min_coverage": -1.0}

    for rnd in range(params.max_resample):
        chosen: list[AlternatingWalk] = []
        used: set[Vertex] = set()
        for idx in _bernoulli_indices(rng, total, p):
            x1, y1, x2, y2 = _decode_candidate(idx, n)
            verts = (Vertex("X", x1), Vertex("Y", y1),
                     Vertex("X", x2), Vertex("Y", y2))
            if used & set(verts):
                continue
            chosen.append(AlternatingWalk(verts, PATH))
            used.update(verts)
        family = [f for f in chosen if is_properly_colored(g, f)]

        coverages = [sum(1 for f in family if _absorbs(g, f, e)) for e in elems]
        min_cov = min(coverages) if coverages else math.inf
        if (len(family) <= size_limit and len(family) >= params.min_family
                and all(c >= cov_floor for c in coverages)):
            return AbsorbingFamily(tuple(family), params)
        score = (min_cov if coverages else 0, len(family))
        if score > (best["min_coverage"], best["size"]):
            best = {"round": rnd, "size": len(family),
                    "min_coverage": min_cov if coverages else 0}

    raise ResampleBudgetExhausted(
        f"no acceptable family in {params.max_resample} rounds "
        f"(p={p:.3g}, size<= {size_limit:.3g}, coverage>= {cov_floor:.3g})",
        best_stats=best)


# ---------------------------------------------------------------------------
# the absorbing cycle


@dataclass(frozen=True)
class AbsorbingCycle:
    """PC cycle threaded through an absorbing family.

    Layout: family path (4 vertices), connector edge (2 vertices), repeated;
    the provenance is kept so absorbed paths can replace family segments.
    """

    cycle: AlternatingWalk
    family: tuple[AlternatingWalk, ...]
    connectors: tuple[tuple[Vertex, Vertex], ...]


def build_absorbing_cycle(g: ColoredBipartiteGraph,
                          family: AbsorbingFamily) -> AbsorbingCycle:
    """Thread the family into one PC cycle of length 6 * |family|.

    Each consecutive pair of family paths is joined by a linking edge found
    in the graph minus all vertices already committed, so the connector is
    automatically disjoint from everything else.
    """
    paths = family.paths
    f = len(paths)
    if f == 0:
        raise PreconditionViolated("cannot thread an empty family")
    committed: set[Vertex] = {v for fp in paths for v in fp.vertices}
    connectors: list[tuple[Vertex, Vertex]] = []
    for i in range(f):
        cur = paths[i].vertices
        nxt = paths[(i + 1) % f].vertices
        anchors = {cur[2], cur[3], nxt[0], nxt[1]}
        keep_x = sorted({v.index for v in (set(g.vertices()) - committed | anchors)
                         if v.side == "X"})
        keep_y = sorted({v.index for v in (set(g.vertices()) - committed | anchors)
                         if v.side == "Y"})
        sub = g.induced(keep_x, keep_y)
        elem = D2Element(sub.from_parent(cur[2]), sub.from_parent(cur[3]),
                         sub.from_parent(nxt[0]), sub.from_parent(nxt[1]))
        try:
            ex, ey = find_linking_edge(sub.graph, elem)
        except NoLinkingEdge as exc:
            raise LinkFailure(i, exc) from exc
        edge = (sub.to_parent(ex), sub.to_parent(ey))
        connectors.append(edge)
        committed.update(edge)

    verts: list[Vertex] = []
    for i in range(f):
        verts.extend(paths[i].vertices)
        verts.extend(connectors[i])
    cycle = AlternatingWalk(verts, CYCLE)
    if not is_properly_colored(g, cycle) or cycle.length != 6 * f:
        raise LinkFailure(f, "threaded cycle failed verification")
    return AbsorbingCycle(cycle, paths, tuple(connectors))


# ---------------------------------------------------------------------------
# absorbing disjoint odd paths into the cycle


def _orient_from_x(q: AlternatingWalk) -> AlternatingWalk:
    return q if q.vertices[0].side == "X" else q.reversed_()


def _element_of(q: AlternatingWalk) -> D1Element | D2Element:
    vs = q.vertices
    if len(vs) == 2:
        return D1Element(vs[0], vs[1])
    return D2Element(vs[0], vs[1], vs[-2], vs[-1])


def _hall_matching(adj: list[list[int]], n_right: int) -> tuple[list[int], list[int]]:
    """Augmenting-path matching; returns (match_left, unmatched_left)."""
    match_left = [-1] * len(adj)
    match_right = [-1] * n_right

    def augment(i: int, seen: set[int]) -> bool:
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if match_right[j] == -1 or augment(match_right[j], seen):
                match_left[i] = j
                match_right[j] = i
                return True
        return False

    unmatched = [i for i in range(len(adj)) if not augment(i, set())]
    return match_left, unmatched


def _hall_violators(adj: list[list[int]], match_left: list[int],
                    start: int) -> list[int]:
    """Alternating-reachability set from an unmatched left vertex; its
    neighborhood is strictly smaller, witnessing the Hall failure."""
    owner = {j: i for i, j in enumerate(match_left) if j != -1}
    frontier = [start]
    left_seen = {start}
    right_seen: set[int] = set()
    while frontier:
        nxt = []
        for i in frontier:
            for j in adj[i]:
                if j in right_seen:
                    continue
                right_seen.add(j)
                k = owner.get(j)
                if k is not None and k not in left_seen:
                    left_seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(left_seen)


def absorb_paths(g: ColoredBipartiteGraph, ac: AbsorbingCycle,
                 rest: Sequence[AlternatingWalk]) -> AlternatingWalk:
    """Splice vertex-disjoint PC odd paths into the absorbing cycle.

    Each path is matched to a family segment that absorbs its element (the
    edge itself for 2-vertex paths, the end pairs otherwise); the matched
    segment x'y'x''y'' becomes x'y' <path> x''y''. The result is a PC cycle
    on V(cycle) plus all path vertices.
    """
    if not rest:
        return ac.cycle
    queue = [_orient_from_x(q) for q in rest]
    cyc_verts = set(ac.cycle.vertices)
    seen: set[Vertex] = set()
    for q in queue:
        if q.kind != PATH or q.size % 2 != 0:
            raise InvalidInstance(f"not an odd path: {q}")
        if not is_properly_colored(g, q):
            raise InvalidInstance(f"path not properly colored: {q}")
        overlap = (set(q.vertices) & cyc_verts) | (set(q.vertices) & seen)
        if overlap:
            raise OverlapError(f"absorbed paths must be disjoint; clash at "
                               f"{sorted(str(v) for v in overlap)}")
        seen.update(q.vertices)

    elems = [_element_of(q) for q in queue]
    adj = [[j for j, fp in enumerate(ac.family) if _absorbs(g, fp, e)]
           for e in elems]
    match_left, unmatched = _hall_matching(adj, len(ac.family))
    if unmatched:
        violators = _hall_violators(adj, match_left, unmatched[0])
        raise MatchingDeficient(
            f"paths {violators} share only "
            f"{len({j for i in violators for j in adj[i]})} absorbers",
            violators=violators)

    replacement = {match_left[i]: queue[i] for i in range(len(queue))}
    verts: list[Vertex] = []
    for i, fp in enumerate(ac.family):
        a, b, c, d = fp.vertices
        q = replacement.get(i)
        if q is None:
            verts.extend((a, b, c, d))
        else:
            verts.extend((a, b, *q.vertices, c, d))
        verts.extend(ac.connectors[i])
    out = AlternatingWalk(verts, CYCLE)
    expected = cyc_verts | seen
    if not is_properly_colored(g, out) or set(out.vertices) != expected \
            or out.size != ac.cycle.size + sum(q.size for q in queue):
        raise SpliceInvariantViolated("absorption broke the cycle")
    return out


# ---------------------------------------------------------------------------
# prescribed-length driver


class StuckAsFailure(Exception):
    """Internal: remainder cover got stuck; retry with fresh randomness."""


def find_pc_even_cycle_through(g: ColoredBipartiteGraph, u: Vertex,
                               target_length: int, params: AbsorberParams,
                               seed: int = 0) -> AlternatingWalk:
    """PC cycle of exactly target_length through u.

    Three regimes: length 4 goes to the exact search; short lengths grow a
    greedy PC path from u and close it with a linking edge; long lengths
    build an absorbing cycle, cover the remainder with PC odd paths, trim
    the cover to the missing vertex count (keeping u), and absorb. Analytic
    mode aborts on the first failure; engineering mode retries with fresh
    randomness up to the retry budget.
    """
    params.validate()
    n = g.n
    if target_length % 2 != 0 or not 4 <= target_length <= 2 * n:
        raise InvalidInstance(
            f"target length {target_length} must be even in [4, {2 * n}]")
    if not g.valid_vertex(u):
        raise InvalidInstance(f"vertex {u} invalid for n={n}")
    if not params.engineering:
        if n < params.min_side():
            raise PreconditionViolated(
                f"analytic mode needs n >= {params.min_side()}")
        if min_color_degree(g) < (2 / 3 + params.epsilon) * n:
            raise PreconditionViolated("analytic mode color-degree bound unmet")

    if target_length == 4:
        hit = oracle.find_pc_4cycle_through(g, u)
        if hit is None:
            raise RegimeFailure("shortest", f"no PC 4-cycle through {u}")
        return hit

    # work with u on side X; mirror back at the end
    mirrored = u.side == "Y"
    if mirrored:
        g = g.transpose()
        u = Vertex("X", u.index)

    retries = params.retry_budget if params.engineering else 1
    failures: list[str] = []
    short = target_length <= params.short_cutoff(n)
    for attempt in range(retries):
        try:
            if short:
                out = _short_regime(g, u, target_length, seed, attempt)
            else:
                out = _long_regime(g, u, target_length, params, seed, attempt)
            break
        except (RegimeFailure, NoLinkingEdge, LinkFailure, MatchingDeficient,
                ResampleBudgetExhausted, StuckAsFailure) as exc:
            failures.append(f"attempt {attempt}: {exc}")
    else:
        raise RegimeFailure("short" if short else "long", "; ".join(failures))

    assert is_properly_colored(g, out) and out.size == target_length \
        and u in out.vertices
    if mirrored:
        out = AlternatingWalk(
            [Vertex("Y" if v.side == "X" else "X", v.index) for v in out.vertices],
            CYCLE)
    return out


def _short_regime(g: ColoredBipartiteGraph, u: Vertex, target: int,
                  seed: int, attempt: int) -> AlternatingWalk:
    """Greedy PC path of target-2 vertices from u, closed by a linking edge."""
    rng = random.Random(seed * 7919 + attempt) if attempt else None
    path = _greedy_pc_path(g, u, target - 2, rng)
    if path is None:
        raise RegimeFailure("greedy", "dead end while extending the path")
    interior = set(path[2:-2])
    keep_x = [i for i in range(g.n) if Vertex("X", i) not in interior]
    keep_y = [j for j in range(g.n) if Vertex("Y", j) not in interior]
    sub = g.induced(keep_x, keep_y)
    elem = D2Element(sub.from_parent(path[-2]), sub.from_parent(path[-1]),
                     sub.from_parent(path[0]), sub.from_parent(path[1]))
    ex, ey = find_linking_edge(sub.graph, elem)
    closing = [sub.to_parent(ex), sub.to_parent(ey)]
    return AlternatingWalk([*path, *closing], CYCLE)


def _greedy_pc_path(g: ColoredBipartiteGraph, u: Vertex, nverts: int,
                    rng: Optional[random.Random]) -> Optional[list[Vertex]]:
    path = [u]
    used = {u}
    prev_color = None
    while len(path) < nverts:
        side = path[-1].opposite_side()
        cands = [Vertex(side, i) for i in range(g.n)]
        if rng is not None:
            rng.shuffle(cands)
        for v in cands:
            if v in used:
                continue
            c = g.color(path[-1], v)
            if c == prev_color:
                continue
            path.append(v)
            used.add(v)
            prev_color = c
            break
        else:
            return None
    return path


def _long_regime(g: ColoredBipartiteGraph, u: Vertex, target: int,
                 params: AbsorberParams, seed: int, attempt: int) -> AlternatingWalk:
    family = sample_absorbing_family(g, [], params, seed=seed * 997 + attempt)
    paths = sorted(family.paths, key=lambda p: u not in p.vertices)

    if target % 6 == 0 and len(paths) >= target // 6 and u in paths[0].vertices:
        # the cycle alone can hit the target with u on a family path
        ac = build_absorbing_cycle(
            g, AbsorbingFamily(tuple(paths[:target // 6]), params))
        return ac.cycle

    f_use = min(len(paths), max(1, (target - 2) // 6))
    ac = build_absorbing_cycle(g, AbsorbingFamily(tuple(paths[:f_use]), params))
    cyc_verts = set(ac.cycle.vertices)
    budget = target - ac.cycle.size
    if budget < 2:
        raise RegimeFailure("long", f"cycle length {ac.cycle.size} leaves no room")

    keep_x = sorted(i for i in range(g.n) if Vertex("X", i) not in cyc_verts)
    keep_y = sorted(j for j in range(g.n) if Vertex("Y", j) not in cyc_verts)
    sub = g.induced(keep_x, keep_y)
    tc = params.cover_t
    if sub.graph.n < 3 * tc:
        raise RegimeFailure("cover", f"remainder side {sub.graph.n} below 3t")
    cov = cover_by_pc_odd_paths(sub.graph, tc)
    if isinstance(cov, StuckReport):
        raise StuckAsFailure("remainder cover got stuck")
    parent_paths = [list(sub.walk_to_parent(p).vertices) for p in cov]

    keep = None if u in cyc_verts else u
    trimmed = _trim_cover(parent_paths, keep, budget)
    rest = [_orient_from_x(AlternatingWalk(p, PATH)) for p in trimmed]
    return absorb_paths(g, ac, rest)


def _trim_cover(paths: list[list[Vertex]], keep: Optional[Vertex],
                total: int) -> list[list[Vertex]]:
    """Shrink the cover to exactly ``total`` vertices.

    Vertex pairs come off path ends (keeping sizes even, hence odd paths);
    a path disappears only once fully drained. The path holding ``keep``
    never loses it and is drained last.
    """
    paths = [list(p) for p in paths]
    if keep is not None and not any(keep in p for p in paths):
        raise InvalidInstance(f"{keep} is not on the cover")
    excess = sum(len(p) for p in paths) - total
    if excess < 0 or excess % 2 != 0:
        raise InvalidInstance(f"cannot trim cover by {excess} vertices")
    while excess > 0:
        victims = [p for p in paths if p and (keep is None or keep not in p)]
        if victims:
            victim = min(victims, key=len)
            del victim[-2:]
        else:
            victim = next(p for p in paths if keep in p)
            if len(victim) <= 2:
                raise InvalidInstance("cannot trim below the kept vertex")
            if keep in victim[-2:]:
                del victim[:2]
            else:
                del victim[-2:]
        excess -= 2
    return [p for p in paths if p]
