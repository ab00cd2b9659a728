from __future__ import annotations

import networkx as nx
import pytest
from conftest import pipeline
from hypothesis import given, settings
from hypothesis import strategies as st

from epg_rainbow.graphs import SimpleGraph, graph_metrics
from epg_rainbow.rainbow import (BudgetExceeded, EdgeColoring, is_rainbow_connected,
                                 rainbow_path, rc_exact, rc_lower_bound, rc_naive, search_k,
                                 spanning_tree_coloring)


def from_nx(h: nx.Graph) -> SimpleGraph:
    h = nx.convert_node_labels_to_integers(h)
    return SimpleGraph.from_edges(h.number_of_nodes(), h.edges())


def small_connected_graphs(max_edges: int = 7):
    """Connected graphs with 2+ vertices and at most ``max_edges`` edges from
    the networkx atlas (all graphs on up to 7 vertices, one per isomorphism class)."""
    return [h for h in nx.graph_atlas_g()
            if h.number_of_nodes() >= 2 and h.number_of_edges() <= max_edges and nx.is_connected(h)]


ATLAS = small_connected_graphs()


def test_atlas_size():
    assert len(ATLAS) > 100


@pytest.mark.parametrize("idx", range(len(ATLAS)))
def test_exact_agrees_with_naive(idx):
    g = from_nx(ATLAS[idx])
    res = rc_exact(g, budget=10**7, override_gate=True)
    assert res.kind == "EXACT"
    assert res.value == rc_naive(g)
    assert is_rainbow_connected(g, res.certificate)[0]
    assert max(res.certificate.assignment) <= res.value


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_graphs(n):
    g = from_nx(nx.complete_graph(n))
    assert rc_exact(g).value == 1


@pytest.mark.parametrize("n", range(2, 7))
def test_paths(n):
    assert rc_exact(from_nx(nx.path_graph(n))).value == n - 1


@pytest.mark.parametrize("n, rc", [(4, 2), (5, 3), (6, 3), (7, 4)])
def test_cycles(n, rc):
    assert rc_exact(from_nx(nx.cycle_graph(n))).value == rc


@pytest.mark.parametrize("k", range(1, 8))
def test_stars_resolve_without_search(k):
    res = rc_exact(from_nx(nx.star_graph(k)))
    assert res.value == k
    assert res.stats.nodes == 0


def test_verifier_reports_failing_pair():
    g = from_nx(nx.path_graph(3))
    ok, pair = is_rainbow_connected(g, EdgeColoring(1, (1, 1)))
    assert not ok and pair == (0, 2)
    with pytest.raises(ValueError):
        is_rainbow_connected(g, EdgeColoring(1, (1,)))


def test_rainbow_path_is_rainbow():
    G, _, _, g = pipeline("SYMMETRIC 3")
    res = rc_exact(g)
    for u in range(g.n):
        for v in range(g.n):
            p = rainbow_path(g, res.certificate, u, v)
            assert p[0] == u and p[-1] == v
            colors = [res.certificate.assignment[g.eid(a, b)] for a, b in zip(p, p[1:])]
            assert len(colors) == len(set(colors))


def test_rainbow_path_none_when_blocked():
    g = from_nx(nx.path_graph(3))
    assert rainbow_path(g, EdgeColoring(1, (1, 1)), 0, 2) is None


def test_lower_bound_sources():
    assert rc_lower_bound(from_nx(nx.complete_graph(4))) == (1, "COMPLETE")
    assert rc_lower_bound(from_nx(nx.star_graph(5))) == (5, "BRIDGES")
    assert rc_lower_bound(from_nx(nx.cycle_graph(6))) == (3, "DIAMETER")
    assert rc_lower_bound(from_nx(nx.cycle_graph(4)), icn_hint=3) == (3, "ICS_TRIPLE")
    assert rc_lower_bound(from_nx(nx.cycle_graph(4)), invmax_hint=4) == (4, "INVMAX")


def test_search_budget():
    _, _, _, g = pipeline("DICYCLIC 4")
    with pytest.raises(BudgetExceeded):
        search_k(g, 2, budget=1000)


def test_gate_yields_interval():
    _, _, _, g = pipeline("DIRECT_PRODUCT(CYCLIC 4, CYCLIC 4)")
    res = rc_exact(g, budget=10**6)
    assert res.kind == "INTERVAL"
    assert res.lb == 3 and res.value is None
    assert res.stats.levels[3] == "gated"
    assert is_rainbow_connected(g, res.certificate)[0]


def test_budget_exhaustion_yields_interval():
    _, _, _, g = pipeline("DICYCLIC 4")
    res = rc_exact(g, budget=1000)
    assert res.kind == "INTERVAL" and "budget" in res.note
    assert res.lb == 2 and res.stats.levels[2] == "budget"


def test_petersen():
    assert rc_exact(from_nx(nx.petersen_graph())).value == 3


def test_candidate_certificates_are_reverified():
    g = from_nx(nx.path_graph(4))
    bogus = EdgeColoring(1, (1, 1, 1))
    res = rc_exact(g, candidates=[("bogus", bogus)])
    assert res.value == 3 and res.certificate_source != "bogus"


def test_quaternion_two_colorable():
    _, _, _, g = pipeline("DICYCLIC 2")
    assert g.m == 16
    col = search_k(g, 2, budget=2**15)
    assert col is not None and is_rainbow_connected(g, col)[0]


def test_klein_product_not_two_colorable():
    _, _, _, g = pipeline("DIRECT_PRODUCT(CYCLIC 2, CYCLIC 4)")
    assert g.m == 13
    assert search_k(g, 2, budget=2**12) is None
    assert rc_exact(g).value == 3


def test_json_excludes_timing_by_default():
    g = from_nx(nx.cycle_graph(5))
    res = rc_exact(g)
    assert "elapsed" not in res.to_json(g)["search_stats"]
    assert "elapsed" in res.to_json(g, timing=True)["search_stats"]
    c = EdgeColoring.from_json(g, res.to_json(g)["certificate"])
    assert c == res.certificate


def random_connected(draw, max_n=7):
    n = draw(st.integers(2, max_n))
    # random spanning tree plus extra edges
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    return SimpleGraph.from_edges(n, sorted(edges))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_search_properties(data):
    g = random_connected(data.draw)
    res = rc_exact(g, budget=10**6)
    met = graph_metrics(g)
    assert res.lb >= max(1, met.diameter, met.bridge_count) or met.is_complete
    assert is_rainbow_connected(g, res.certificate)[0]
    assert res.ub <= spanning_tree_coloring(g).k
    if res.kind == "EXACT":
        # feasible at rc and rc+1, infeasible below rc
        assert search_k(g, res.value, 10**6) is not None
        if res.value > 1:
            assert search_k(g, res.value - 1, 10**6) is None
        assert search_k(g, res.value + 1, 10**6) is not None


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_spanning_tree_coloring_is_rainbow(data):
    g = random_connected(data.draw)
    assert is_rainbow_connected(g, spanning_tree_coloring(g))[0]
