import pytest

from conftest import (brute_has_pc_cycle, brute_two_factor_edge_sets,
                      factor_key, min_degree_graph, random_graph)
from pcfactor import oracle
from pcfactor.errors import BudgetExhausted, InvalidInstance, SideSizeTooLarge
from pcfactor.gen import latin_graph, monochromatic_graph, rainbow_graph
from pcfactor.graph import is_properly_colored, min_color_degree, vx, vy


def test_find_pc_cycle_examples():
    hit = oracle.find_pc_cycle_through(latin_graph(2), vx(0), 4)
    assert hit is not None and set(hit.vertices) == {vx(0), vy(0), vx(1), vy(1)}

    assert oracle.find_pc_cycle_through(monochromatic_graph(3), vx(0), 4) is None

    hit = oracle.find_pc_cycle_through(latin_graph(3), vx(0), 6)
    assert hit is not None and hit.length == 6
    assert is_properly_colored(latin_graph(3), hit)


def test_find_pc_cycle_validates_length():
    g = latin_graph(3)
    with pytest.raises(InvalidInstance):
        oracle.find_pc_cycle_through(g, vx(0), 5)
    with pytest.raises(InvalidInstance):
        oracle.find_pc_cycle_through(g, vx(0), 8)


def test_4cycle_examples():
    hit = oracle.find_pc_4cycle_through(latin_graph(4), vy(2))
    assert hit is not None and vy(2) in hit.vertices
    assert oracle.find_pc_4cycle_through(monochromatic_graph(4), vx(0)) is None


def test_4cycle_guaranteed_above_half_degree():
    # with min color degree >= n/2 + 1 a witness must exist at every vertex
    for seed in range(10):
        g = min_degree_graph(8, 5, q=8, seed=seed)
        assert min_color_degree(g) >= 5
        for v in g.vertices():
            assert oracle.find_pc_4cycle_through(g, v) is not None


def test_search_is_exact_against_bruteforce():
    for n in (3, 4):
        for q in (2, 3, 6):
            for seed in range(4):
                g = random_graph(n, q, seed)
                for idx in range(n):
                    for k in range(4, 2 * n + 1, 2):
                        for u in (vx(idx), vy(idx)):
                            got = oracle.find_pc_cycle_through(g, u, k)
                            assert (got is not None) == brute_has_pc_cycle(g, u, k)


def test_two_factor_enumeration_counts():
    assert len(oracle.enumerate_pc_two_factors(latin_graph(2), 3)) == 1
    assert oracle.enumerate_pc_two_factors(monochromatic_graph(2), 3) == []
    factors = oracle.enumerate_pc_two_factors(latin_graph(3), 3)
    assert len(factors) == 6
    for f in factors:
        assert len(f.cycles) == 1 and f.cycles[0].length == 6


def test_two_factor_enumeration_against_bruteforce():
    for n in (2, 3, 4):
        for q in (2, 4, 9):
            for seed in range(3):
                g = random_graph(n, q, seed)
                for t in (3, 5):
                    got = {factor_key(f)
                           for f in oracle.enumerate_pc_two_factors(g, t)}
                    assert got == brute_two_factor_edge_sets(g, t)


def test_enumerated_factors_are_valid():
    from pcfactor.graph import verify_two_factor
    g = min_degree_graph(5, 4, q=6, seed=2)
    for f in oracle.enumerate_pc_two_factors(g, 3):
        assert verify_two_factor(g, f, 3).passed


def test_enumeration_cap():
    with pytest.raises(SideSizeTooLarge):
        oracle.enumerate_pc_two_factors(latin_graph(8), 3)
    with pytest.raises(InvalidInstance):
        oracle.enumerate_pc_two_factors(latin_graph(3), 2)


def test_pancyclic_reports():
    assert oracle.verify_vertex_even_pancyclic(latin_graph(4)).verdict
    assert oracle.verify_vertex_even_pancyclic(rainbow_graph(3)).verdict

    rep = oracle.verify_vertex_even_pancyclic(monochromatic_graph(4))
    assert not rep.verdict
    assert all(w is None for w in rep.witnesses.values())


def test_pancyclic_report_text():
    rep = oracle.verify_vertex_even_pancyclic(latin_graph(2))
    text = rep.to_text()
    assert "cell.x0.k4=pass" in text and "verdict=pass" in text


def test_pancyclic_cap_and_budget():
    with pytest.raises(SideSizeTooLarge):
        oracle.verify_vertex_even_pancyclic(latin_graph(9))
    with pytest.raises(BudgetExhausted) as info:
        oracle.verify_vertex_even_pancyclic(latin_graph(9), budget_seconds=0.0)
    assert not info.value.report.complete
    assert not info.value.report.verdict


def test_pancyclic_witnesses_verified():
    g = min_degree_graph(4, 4, q=5, seed=1)
    rep = oracle.verify_vertex_even_pancyclic(g)
    for (v, k), w in rep.witnesses.items():
        if w is not None:
            assert w.length == k and v in w.vertices
            assert is_properly_colored(g, w)
