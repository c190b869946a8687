import pytest

from conftest import greedy_pc_path, min_degree_graph, random_graph
from pcfactor import builder
from pcfactor.builder import (EVEN, FRESH, ODD_LARGE_T, ODD_SMALL_T,
                              StuckReport, build_exchange_digraph,
                              compute_rotation_structures, cover_by_pc_odd_paths,
                              find_directed_2cycle, find_pc_2factor,
                              maximality_move, threshold_hypotheses_met)
from pcfactor.errors import InvalidSystem, PreconditionViolated
from pcfactor.gen import latin_graph, monochromatic_graph, rainbow_graph
from pcfactor.graph import (PATH, AlternatingWalk, ColoredBipartiteGraph,
                            PathCycleSystem, TwoFactor, Vertex,
                            is_properly_colored, min_color_degree,
                            verify_two_factor, vx, vy, walk)


def system(path_tokens, *cycle_tokens):
    return PathCycleSystem(walk(path_tokens),
                           tuple(walk(c, cycle=True) for c in cycle_tokens))


def hamilton_path(n):
    verts = []
    for i in range(n):
        verts.append(vx(i))
        verts.append(vy(i))
    return AlternatingWalk(verts, PATH)


def custom_graph(n, overrides=()):
    """All-distinct base colors, with targeted equalities planted on top."""
    rows = [[100 + i * n + j for j in range(n)] for i in range(n)]
    for (i, j), (i2, j2) in overrides:
        rows[i][j] = rows[i2][j2]
    return ColoredBipartiteGraph(rows)


# ---------------------------------------------------------------------------
# maximality moves


def test_single_vertex_path_replaced_by_edge():
    g = latin_graph(3)
    out = maximality_move(g, system("x0"), 3)
    assert out is not None
    assert out.path.size == 2 and out.size == 2


def test_endpoint_extension():
    g = latin_graph(3)
    out = maximality_move(g, system("x0 y0"), 3)
    assert out is not None
    assert out.path.size == 3
    assert is_properly_colored(g, out.path)


def test_spanning_hamilton_path_is_stuck():
    g = latin_graph(4)
    assert maximality_move(g, PathCycleSystem(hamilton_path(4)), 3) is None


def test_cycle_splice():
    g = latin_graph(3)
    h = system("x0 y0", "x1 y1 x2 y2")
    out = maximality_move(g, h, 3)
    assert out is not None
    assert not out.cycles and out.path.size == 6  # cycle absorbed into the path
    assert is_properly_colored(g, out.path)
    assert out.size == h.size and out.path.size > h.path.size


def test_moves_strictly_improve():
    g = min_degree_graph(8, 7, q=9, seed=4)
    state = system("x0")
    for _ in range(40):
        nxt = maximality_move(g, state, 3)
        if nxt is None:
            break
        assert (nxt.size, nxt.path.size) > (state.size, state.path.size)
        state = nxt


def test_invalid_system_rejected():
    g = monochromatic_graph(3)
    with pytest.raises(InvalidSystem):
        maximality_move(g, system("x0 y0 x1"), 3)  # path not PC on mono


# ---------------------------------------------------------------------------
# rotation structures


def _literal_rotation_recount(g, path, t, parity):
    """Definitional recount used to cross-check the implementation."""
    k = len(path)
    u1, uk = path[0], path[-1]
    s1p = {v for v in (Vertex(u1.opposite_side(), i) for i in range(g.n))
           if g.color(u1, v) != g.color(u1, path[1])}
    skp = {v for v in (Vertex(uk.opposite_side(), i) for i in range(g.n))
           if g.color(uk, v) != g.color(path[-2], uk)}
    window = set(path[:t - 1]) | set(path[max(0, k - t):k - 1])
    s1, sk = s1p - window, skp - window
    off = 1 if parity == "even" else 2
    lp, ln, rp, rn = set(), set(), set(), set()
    for p in range(k):
        if p - 2 >= 0 and path[p - 1] in s1 and \
                g.color(u1, path[p - 1]) != g.color(path[p - 1], path[p - 2]):
            lp.add(path[p])
        if p + 2 <= k - 1 and path[p + 1] in s1 and \
                g.color(u1, path[p + 1]) != g.color(path[p + 1], path[p + 2]):
            ln.add(path[p])
        if p - off - 1 >= 0 and path[p - off] in sk and \
                g.color(uk, path[p - off]) != g.color(path[p - off], path[p - off - 1]):
            rp.add(path[p])
        if p + off + 1 <= k - 1 and path[p + off] in sk and \
                g.color(uk, path[p + off]) != g.color(path[p + off], path[p + off + 1]):
            rn.add(path[p])
    return s1, sk, lp, ln, rp, rn


@pytest.mark.parametrize("n,seed,q", [(6, 0, 4), (6, 3, 8), (7, 1, 3), (8, 5, 10)])
def test_rotation_sets_match_definition(n, seed, q):
    from pcfactor.builder import _rotation_sets
    g = random_graph(n, q, seed)
    checked = 0
    for size in (2 * n, 2 * n - 1, 2 * n - 4, 2 * n - 5):
        for s2 in range(4):
            verts = greedy_pc_path(g, size, seed=seed * 100 + size * 10 + s2)
            if verts is None:
                continue
            parity = "even" if size % 2 == 0 else "odd"
            for t in (3, 4, 5):
                ends, rot = _rotation_sets(g, tuple(verts), t, parity)
                s1, sk, lp, ln, rp, rn = _literal_rotation_recount(
                    g, verts, t, parity)
                assert ends.s1 == s1 and ends.sk == sk
                assert rot.left_prev == lp and rot.left_next == ln
                assert rot.right_prev == rp and rot.right_next == rn
                checked += 1
    assert checked >= 6


def test_rotation_membership_example():
    # u with predecessor in the trimmed endpoint set and the color condition
    # lands in the pivot set; dual members get the fresh label
    g = latin_graph(6)
    h = PathCycleSystem(hamilton_path(6))
    ends, rot, parity = compute_rotation_structures(g, h, 3)
    assert parity == "even"
    path = h.path.vertices
    for v in rot.left_prev:
        p = path.index(v)
        assert path[p - 1] in ends.s1
        assert g.color(path[0], path[p - 1]) != g.color(path[p - 1], path[p - 2])
    for v in rot.left_dual | rot.right_dual:
        assert rot.labels[v] == FRESH
    for v in rot.left_star | rot.right_star:
        assert rot.labels[v] != FRESH


def test_rotation_set_size_bound_on_stuck_state():
    # stuck spanning path: pivot sets at least as large as the endpoint set
    g = latin_graph(6)
    h = PathCycleSystem(hamilton_path(6))
    assert maximality_move(g, h, 3) is None
    ends, rot, _ = compute_rotation_structures(g, h, 3)
    assert len(rot.left_prev) + len(rot.left_next) >= len(ends.s1)
    assert len(rot.right_prev) + len(rot.right_next) >= len(ends.sk)


def test_rotation_requires_stuck_state():
    g = latin_graph(6)
    h = system("x0 y0 x1 y1")  # plenty of endpoint-compatible free vertices
    with pytest.raises(PreconditionViolated):
        compute_rotation_structures(g, h, 3)


def test_stuck_path_spans_twice_the_degree():
    # stuck with the degree hypotheses met forces |P| >= 2 * min color degree
    g = latin_graph(9)
    h = PathCycleSystem(hamilton_path(9))
    assert maximality_move(g, h, 3) is None
    assert threshold_hypotheses_met(g, 3)
    assert h.path.size >= 2 * min_color_degree(g)


# ---------------------------------------------------------------------------
# exchange digraph


def _digraph_state(g, size, t, seed=None):
    if seed is None:
        verts = hamilton_path(g.n).vertices[:size]
    else:
        verts = greedy_pc_path(g, size, seed=seed)
        assert verts is not None
    h = PathCycleSystem(AlternatingWalk(verts, PATH))
    parity = "even" if size % 2 == 0 else "odd"
    from pcfactor.builder import _rotation_sets
    _, rot = _rotation_sets(g, tuple(verts), t, parity)
    return h, rot, parity


@pytest.mark.parametrize("n,seed,q,size,t", [
    (6, 2, 4, 12, 3), (6, 7, 5, 11, 3), (7, 0, 6, 14, 4), (8, 1, 5, 15, 5)])
def test_digraph_arcs_match_definition(n, seed, q, size, t):
    g = random_graph(n, q, seed)
    h, rot, parity = _digraph_state(g, size, t, seed=seed + 17)
    assert is_properly_colored(g, h.path)
    d = build_exchange_digraph(g, h.path, rot, t, parity)
    pos = {v: i for i, v in enumerate(h.path.vertices)}
    expected = set()
    for x in rot.left_all():
        for y in rot.right_all():
            dist = abs(pos[x] - pos[y])
            guard = (dist != 3) if d.variant == ODD_SMALL_T \
                else (dist >= t - 1 or dist == 1)
            if not guard:
                continue
            c = g.color(x, y)
            if y not in rot.right_dual and c != rot.labels[x]:
                expected.add((x, y))
            if x not in rot.left_dual and c != rot.labels[y]:
                expected.add((y, x))
    assert d.arcs == frozenset(expected)
    for a, b in d.arcs:  # arcs never enter a dual class
        assert b not in d.left_dual and b not in d.right_dual


def test_digraph_variant_selection():
    g = latin_graph(7)
    h, rot, parity = _digraph_state(g, 13, 3)
    assert build_exchange_digraph(g, h.path, rot, 3, parity).variant == ODD_SMALL_T
    h, rot, parity = _digraph_state(g, 13, 5)  # hypothetical larger floor
    assert build_exchange_digraph(g, h.path, rot, 5, parity).variant == ODD_LARGE_T
    h, rot, parity = _digraph_state(g, 14, 3)
    assert build_exchange_digraph(g, h.path, rot, 3, parity).variant == EVEN


def test_small_t_odd_variant_excludes_distance_three():
    g = custom_graph(7)
    h, rot, parity = _digraph_state(g, 13, 3)
    d = build_exchange_digraph(g, h.path, rot, 3, parity)
    pos = {v: i for i, v in enumerate(h.path.vertices)}
    assert d.left and d.right
    for a, b in d.arcs:
        assert abs(pos[a] - pos[b]) != 3
    x = next(iter(d.left))
    three_away = [y for y in d.right if abs(pos[x] - pos[y]) == 3]
    assert three_away and all(not d.guard(x, y) for y in three_away)


def test_matching_labels_kill_both_arcs():
    # plant c(xy) = label(x) = label(y) on a pure-prev pair: no arc survives
    n = 5
    g = custom_graph(n, overrides=[
        ((0, 3), (4, 3)),   # x3 loses its next-pivot membership
        ((2, 4), (2, 2)),   # y1 loses its next-pivot membership
    ])
    rows = [list(r) for r in g.rows]
    rows[3][1] = 7   # c(x3, y1)
    rows[3][3] = 7   # label(x3) = c(x3, y3)
    rows[2][1] = 7   # label(y1) = c(y1, x2)
    g = ColoredBipartiteGraph(rows)
    h, rot, parity = _digraph_state(g, 10, 3)
    assert is_properly_colored(g, h.path)
    x3, y1 = vx(3), vy(1)
    assert x3 in rot.left_prev and x3 not in rot.left_next
    assert y1 in rot.right_prev and y1 not in rot.right_next
    assert rot.labels[x3] == rot.labels[y1] == g.color(x3, y1) == 7
    d = build_exchange_digraph(g, h.path, rot, 3, parity)
    assert (x3, y1) not in d.arcs and (y1, x3) not in d.arcs
    hit = find_directed_2cycle(d)
    assert hit != (x3, y1)


def test_find_directed_2cycle_returns_first_valid_pair():
    g = custom_graph(6)
    h, rot, parity = _digraph_state(g, 12, 3)
    d = build_exchange_digraph(g, h.path, rot, 3, parity)
    hit = find_directed_2cycle(d)
    assert hit is not None
    x, y = hit
    assert d.guard(x, y)
    assert g.color(x, y) not in (d.labels[x], d.labels[y])
    pos = d.positions
    for x2 in d.left:  # nothing earlier qualifies
        for y2 in d.right:
            if (pos[x2], pos[y2]) >= (pos[x], pos[y]):
                continue
            if pos[x2] > pos[x] or (pos[x2] == pos[x] and pos[y2] > pos[y]):
                continue
            assert not (d.guard(x2, y2)
                        and g.color(x2, y2) not in (d.labels[x2], d.labels[y2]))


def test_stuck_digraph_pair_yields_spanning_factor():
    # a stuck spanning even path above the threshold must repartition cleanly
    g = latin_graph(9)
    h = PathCycleSystem(hamilton_path(9))
    ends, rot, parity = compute_rotation_structures(g, h, 3)
    d = build_exchange_digraph(g, h.path, rot, 3, parity)
    x, y = find_directed_2cycle(d)
    factor = builder.apply_even_exchange(g, h, h.path, x, y, 3)
    assert verify_two_factor(g, factor, 3).passed


# ---------------------------------------------------------------------------
# the driver


def test_find_factor_on_rainbow():
    g = rainbow_graph(9)
    f = find_pc_2factor(g, 3)
    assert isinstance(f, TwoFactor)
    assert verify_two_factor(g, f, 3).passed


def test_find_factor_on_latin_grid():
    for n in (9, 10, 12):
        g = latin_graph(n)
        f = find_pc_2factor(g, 3)
        assert verify_two_factor(g, f, 3).passed


def test_monochromatic_gets_stuck():
    r = find_pc_2factor(monochromatic_graph(9), 3)
    assert isinstance(r, StuckReport)
    assert not r.hypotheses_met
    text = r.to_text()
    assert "outcome=stuck" in text and "digraph.arcs=" in text


def test_random_instances_above_threshold():
    for seed in range(20):
        g = min_degree_graph(12, 11, q=14, seed=seed)
        f = find_pc_2factor(g, 3)
        assert isinstance(f, TwoFactor), f"seed {seed} got stuck"
        assert verify_two_factor(g, f, 3).passed


def test_length_floor_respected():
    for seed in range(8):
        g = min_degree_graph(15, 15, q=17, seed=seed)
        f = find_pc_2factor(g, 5)
        assert isinstance(f, TwoFactor)
        assert f.min_cycle_length() >= 5


def test_t_cap_is_a_precondition():
    with pytest.raises(PreconditionViolated):
        find_pc_2factor(latin_graph(9), 4)
    with pytest.raises(PreconditionViolated):
        find_pc_2factor(latin_graph(9), 2)


def test_lenient_mode_runs_below_cap():
    g = latin_graph(6)
    r = find_pc_2factor(g, 3, strict=False)
    if isinstance(r, TwoFactor):
        assert verify_two_factor(g, r, 3).passed


# ---------------------------------------------------------------------------
# odd-path cover


def test_cover_counts_and_shape():
    import math
    g = latin_graph(9)
    paths = cover_by_pc_odd_paths(g, 3)
    assert not isinstance(paths, StuckReport)
    assert len(paths) <= math.ceil(2 * 9 / 3)
    covered = set()
    for p in paths:
        assert p.edge_count % 2 == 1
        assert p.vertices[0].side != p.vertices[-1].side
        assert is_properly_colored(g, p)
        assert not covered & set(p.vertices)
        covered.update(p.vertices)
    assert covered == set(g.vertices())


def test_cover_edge_deletion_arithmetic():
    # an even cycle minus its closing edge is an odd path on the same vertices
    g = latin_graph(6)
    factor = TwoFactor((walk("x0 y0 x1 y1", cycle=True),
                        walk("x2 y2 x3 y3 x4 y4 x5 y5", cycle=True)))
    paths = [AlternatingWalk(c.vertices, PATH) for c in factor.cycles]
    assert sorted(p.edge_count for p in paths) == [3, 7]
    assert all(is_properly_colored(g, p) for p in paths)


def test_cover_propagates_stuck():
    r = cover_by_pc_odd_paths(monochromatic_graph(9), 3)
    assert isinstance(r, StuckReport)


def test_driver_exercises_both_parities_below_threshold():
    # sub-threshold instances push the driver through genuine odd-parity
    # exchanges (the system grows by one vertex) as well as even ones; every
    # produced factor must still verify
    import random
    from collections import Counter

    before = Counter(builder.surgery_cases)
    rng = random.Random(4)
    factors = stuck = 0
    for _ in range(700):
        n = rng.choice([4, 5, 6, 7])
        q = rng.choice([2, 3, 4, n])
        g = ColoredBipartiteGraph(
            [[rng.randrange(q) for _ in range(n)] for _ in range(n)])
        r = find_pc_2factor(g, 3, strict=False)
        if isinstance(r, StuckReport):
            stuck += 1
        else:
            assert verify_two_factor(g, r, 3).passed
            factors += 1
    delta = Counter(builder.surgery_cases) - before
    assert factors > 200 and stuck > 50  # both outcomes well represented
    assert any(case.startswith("even") for case in delta)
    assert any(case.startswith("odd") for case in delta)
    assert builder.surgery_violations == 0


def test_builder_on_minimal_palette_instances():
    # palette exactly at the degree floor maximizes color collisions
    import math

    from conftest import min_degree_graph
    for n, t in ((9, 3), (15, 5), (18, 4)):
        delta = math.ceil(2 * n / 3) + t
        for seed in range(10):
            g = min_degree_graph(n, delta, q=delta, seed=900 + seed)
            r = find_pc_2factor(g, t)
            assert not isinstance(r, StuckReport)
            assert verify_two_factor(g, r, t).passed
