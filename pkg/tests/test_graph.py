import json
import random

import pytest

import oracles
from conftest import random_graph
from rllab.errors import GraphError
from rllab.families import complete, cycle, fig1, paw, whirl, WHIRL_LABELS
from rllab.graph import (
    Graph,
    boundary,
    components,
    graph_from_edge_list,
    graph_from_json,
    induced_subgraph,
    is_forest,
    is_induced_path,
    is_path_graph,
    load_graph,
)


def test_components_paw():
    assert components(paw(), {2, 3}) == [frozenset({1}), frozenset({4})]


def test_components_everything_removed():
    g = fig1()
    assert components(g, g.vertices) == []


def test_components_fig1_matches_flood_fill():
    g = fig1()
    removed = {1, 2, 3, 4, 6}
    assert components(g, removed) == oracles.bfs_components(g.n, list(g.edges), removed)


def test_boundary_examples():
    assert boundary(paw(), {1}) == {2}
    assert boundary(paw(), set()) == frozenset()
    assert boundary(fig1(), {9, 10, 11, 12}) == {5, 6, 7, 8}


def test_induced_subgraph_examples():
    k3, mapping = induced_subgraph(complete(4), {1, 2, 3})
    assert k3.n == 3 and len(k3.edges) == 3
    assert mapping == {1: 1, 2: 2, 3: 3}
    w = whirl()
    forest, _ = induced_subgraph(w, set(w.vertices) - {WHIRL_LABELS["v0"]})
    assert is_forest(forest)
    assert len(components(forest)) == 3


def test_is_induced_path_examples():
    assert is_induced_path(cycle(4), (1, 2, 3))
    assert not is_induced_path(complete(3), (1, 2, 3))
    g = fig1()
    p = (9, 5, 1, 6, 10)
    edges = set(g.edges)
    chordless = all((min(u, v), max(u, v)) not in edges
                    for i, u in enumerate(p) for v in p[i + 2:])
    consecutive = all((min(u, v), max(u, v)) in edges for u, v in zip(p, p[1:]))
    assert is_induced_path(g, p) == (chordless and consecutive)


def test_random_graphs_against_edge_list_oracle():
    rng = random.Random(1)
    for _ in range(1000):
        n = rng.randint(0, 12)
        g = random_graph(rng, n, rng.random())
        removed = {v for v in g.vertices if rng.random() < 0.3}
        comps = components(g, removed)
        assert comps == oracles.bfs_components(n, list(g.edges), removed)
        covered = set().union(*comps) if comps else set()
        assert covered == set(g.vertices) - removed
        assert sum(len(c) for c in comps) == len(covered)
        x = {v for v in g.vertices if rng.random() < 0.4}
        b = boundary(g, x)
        assert b == oracles.boundary(n, list(g.edges), x)
        assert not b & x
        keep = sorted(v for v in g.vertices if rng.random() < 0.6)
        sub, mapping = induced_subgraph(g, keep)
        want = {(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping}
        assert set(sub.edges) == want


def test_invalid_graphs_rejected():
    with pytest.raises(GraphError):
        Graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(3, [(1, 4)])
    with pytest.raises(GraphError):
        Graph(3, [(1, 2), (2, 1)])
    with pytest.raises(GraphError):
        Graph(-1)


def test_path_graph_recognition():
    assert is_path_graph(Graph(4, [(1, 2), (2, 3), (3, 4)]))
    assert not is_path_graph(cycle(4))


def test_file_formats(tmp_path):
    g = paw()
    js = tmp_path / "paw.json"
    js.write_text(json.dumps({"n": 4, "edges": [[1, 2], [2, 3], [2, 4], [3, 4]]}))
    assert load_graph(js) == g
    el = tmp_path / "paw.txt"
    el.write_text("4\n1 2\n2 3\n2 4\n3 4\n")
    assert load_graph(el) == g
    assert graph_from_json(g.to_json()) == g
    assert graph_from_edge_list("4\n1 2\n2 3\n2 4\n3 4\n") == g
    with pytest.raises(GraphError):
        graph_from_json({"n": 3, "edges": [[1, 2], [1, 2]]})
