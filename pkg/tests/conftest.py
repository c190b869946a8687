"""Shared helpers: instance shorthands and independent brute-force oracles.

The brute-force enumerators here deliberately use different strategies from
the library (arrangement enumeration instead of pruned DFS, neighbor-pair
products instead of permutation pairs) so agreement is meaningful.
"""

import random
from itertools import combinations, permutations

import pytest

from pcfactor import builder
from pcfactor.gen import GenSpec, generate
from pcfactor.graph import ColoredBipartiteGraph, Vertex


def random_graph(n: int, q: int, seed: int) -> ColoredBipartiteGraph:
    """Uniformly random coloring; no degree guarantee."""
    rng = random.Random(seed)
    return ColoredBipartiteGraph(
        [[rng.randrange(q) for _ in range(n)] for _ in range(n)])


def min_degree_graph(n: int, delta: int, q: int | None = None,
                     seed: int = 0) -> ColoredBipartiteGraph:
    return generate(GenSpec(n=n, mode="random_min_degree", delta=delta,
                            palette=q if q is not None else delta, seed=seed))


def greedy_pc_path(g: ColoredBipartiteGraph, nverts: int,
                   seed: int = 0) -> list[Vertex] | None:
    """Deterministic random PC path of the requested vertex count."""
    rng = random.Random(seed)
    for _ in range(50):
        side = rng.choice("XY")
        path = [Vertex(side, rng.randrange(g.n))]
        used = {path[0]}
        while len(path) < nverts:
            cands = [Vertex(path[-1].opposite_side(), i) for i in range(g.n)]
            rng.shuffle(cands)
            for v in cands:
                if v in used:
                    continue
                if len(path) > 1 and \
                        g.color(path[-1], v) == g.color(path[-1], path[-2]):
                    continue
                path.append(v)
                used.add(v)
                break
            else:
                break
        if len(path) == nverts:
            return path
    return None


def pc_check(g, verts, closed) -> bool:
    cols = [g.color(a, b) for a, b in zip(verts, verts[1:])]
    if closed:
        cols.append(g.color(verts[-1], verts[0]))
    return all(a != b for a, b in zip(cols, cols[1:])) and \
        (not closed or len(cols) < 2 or cols[-1] != cols[0])


def brute_has_pc_cycle(g: ColoredBipartiteGraph, u: Vertex, k: int) -> bool:
    """Any PC k-cycle through u, by full arrangement enumeration (tiny n)."""
    n = g.n
    h = k // 2
    own = [Vertex(u.side, i) for i in range(n) if i != u.index]
    other = [Vertex(u.opposite_side(), i) for i in range(n)]
    for own_pick in permutations(own, h - 1):
        for other_pick in permutations(other, h):
            verts = [u]
            for a, b in zip(other_pick, own_pick + (None,)):
                verts.append(a)
                if b is not None:
                    verts.append(b)
            if pc_check(g, verts, closed=True):
                return True
    return False


def brute_two_factor_edge_sets(g: ColoredBipartiteGraph, t: int) -> set:
    """All PC 2^(t)-factor edge sets by choosing a neighbor pair per x_i.

    Independent of the permutation-pair enumeration: iterates the
    product of per-vertex neighbor pairs and keeps valid 2-regular PC
    subgraphs, deduplicated by construction.
    """
    n = g.n
    out = set()
    pair_options = list(combinations(range(n), 2))

    def extend(i, ydeg, acc):
        if i == n:
            out.add(tuple(acc))
            return
        for a, b in pair_options:
            if ydeg[a] >= 2 or ydeg[b] >= 2:
                continue
            ydeg[a] += 1
            ydeg[b] += 1
            acc.append((a, b))
            extend(i + 1, ydeg, acc)
            acc.pop()
            ydeg[a] -= 1
            ydeg[b] -= 1

    extend(0, [0] * n, [])
    good = set()
    for key in out:
        if _pc_two_factor_ok(g, key, t):
            good.add(frozenset((i, j) for i, (a, b) in enumerate(key)
                               for j in (a, b)))
    return good


def _pc_two_factor_ok(g, key, t) -> bool:
    n = g.n
    # proper coloring at every vertex
    for i, (a, b) in enumerate(key):
        if g.rows[i][a] == g.rows[i][b]:
            return False
    y_edges: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(key):
        y_edges.setdefault(a, []).append(i)
        y_edges.setdefault(b, []).append(i)
    for j, xs in y_edges.items():
        if g.rows[xs[0]][j] == g.rows[xs[1]][j]:
            return False
    # cycle lengths
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        size = 0
        i, j = start, key[start][0]
        while not seen[i]:
            seen[i] = True
            size += 1
            a, b = y_edges[j]
            i2 = b if a == i else a
            ka, kb = key[i2]
            j = kb if ka == j else ka
            i = i2
        if 2 * size < t:
            return False
    return True


def factor_key(factor) -> frozenset:
    return frozenset(factor.edge_set())


@pytest.fixture(scope="session", autouse=True)
def no_surgery_violations():
    """The defensive surgery check must never fire across the whole run."""
    yield
    assert builder.surgery_violations == 0
