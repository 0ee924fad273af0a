import functools
import random

import networkx as nx
import pytest

from rllab.graph import Graph


def to_graph(h: nx.Graph) -> Graph:
    """Relabel a networkx graph onto 1..n in sorted node order."""
    nodes = sorted(h.nodes)
    idx = {v: i + 1 for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(idx[u], idx[v]) for u, v in h.edges])


@functools.lru_cache(maxsize=None)
def connected_graphs(max_n: int) -> tuple[Graph, ...]:
    """One representative of every connected graph on 1..max_n (max_n <= 7)."""
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(to_graph(h))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def connected_graphs_8() -> tuple[Graph, ...]:
    """All 11117 connected graphs on 8 vertices up to isomorphism.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending each connected 7-vertex graph by one new vertex with every
    nonempty neighbourhood reaches all of them; duplicates are removed by a
    WL hash and an isomorphism test within each hash bucket.
    """
    buckets: dict[str, list[nx.Graph]] = {}
    base = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 7 and nx.is_connected(h)]
    for h in base:
        for mask in range(1, 1 << 7):
            k = h.copy()
            k.add_edges_from((7, v) for v in range(7) if mask >> v & 1)
            key = nx.weisfeiler_lehman_graph_hash(k, iterations=3)
            bucket = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(k, other) for other in bucket):
                bucket.append(k)
    return tuple(to_graph(k) for bucket in buckets.values() for k in bucket)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
