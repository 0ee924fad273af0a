import math
import random

import pytest

import oracles
from conftest import connected_graphs, random_graph
from rllab.errors import BudgetExceeded, PreconditionError
from rllab.families import (
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    fig1,
    fig5,
    path,
    whirl,
)
from rllab.forcing import zero_forcing_number
from rllab.graph import Graph, induced_subgraph
from rllab.linkage import (
    Linkage,
    all_rigid_linkages,
    count_linkages,
    enumerate_linkages,
    is_rigid,
    is_rigid_any_labeling,
    is_rigid_shortest,
    is_unique_linkage,
    is_vital,
    labelings,
    orient,
    rigid_linkage_number,
    rigid_linkage_search,
    rigid_shortest_linkage_number,
    rigid_shortest_linkage_search,
    shortest_linkage_size,
)

K4_PAIRS = Linkage.of([(1, 2), (3, 4)])


def test_canonical_form():
    p = Linkage.of([(4, 3), (2, 1), (5,)])
    assert p.paths == ((1, 2), (3, 4), (5,))
    assert p.order == 3 and p.size == 5
    assert p.pattern == {frozenset({1, 2}), frozenset({3, 4}), frozenset({5})}
    with pytest.raises(PreconditionError):
        Linkage.of([(1, 2), (2, 3)])


def test_k4_linkages():
    found = enumerate_linkages(complete(4), {1, 3}, {2, 4})
    assert K4_PAIRS in found
    assert Linkage.of([(1, 4), (3, 2)]) in found
    assert not is_rigid(complete(4), K4_PAIRS, {1, 3}, {2, 4})
    assert is_rigid_any_labeling(complete(4), K4_PAIRS) is None
    assert is_unique_linkage(complete(4), K4_PAIRS)
    assert is_vital(complete(4), K4_PAIRS)


def test_path_examples():
    assert enumerate_linkages(path(3), {1}, {3}) == [Linkage.of([(1, 2, 3)])]
    assert rigid_linkage_number(path(6), 1) == 6
    assert is_vital(path(5), Linkage.of([(1, 2, 3, 4, 5)]))


def test_fig1_linkages_match_oracle():
    g = fig1()
    found = set(enumerate_linkages(g, {1, 2, 3, 4}, {5, 6, 7, 8}))
    table = oracles.labeling_table(g.n, list(g.edges))
    want = {Linkage.of(lk) for lk in table[(frozenset({1, 2, 3, 4}), frozenset({5, 6, 7, 8}))]}
    assert found == want
    assert Linkage.of([(1, 6), (2, 7), (3, 8), (4, 5)]) in found
    assert Linkage.of([(1, 5), (2, 6), (3, 7), (4, 8)]) in found


def test_enumeration_limits():
    g = complete(5)
    assert len(enumerate_linkages(g, {1}, {2}, max_count=3)) == 3
    short = enumerate_linkages(g, {1}, {2}, max_total_vertices=3)
    assert all(p.size <= 3 for p in short)
    assert len(short) == 1 + 3
    assert count_linkages(g, {1}, {2}) == 2


def test_tree_linkages_are_rigid():
    rng = random.Random(3)
    w = whirl()
    for _ in range(30):
        a, b = rng.sample(list(w.vertices), 2)
        p = enumerate_linkages(w, {a}, {b})
        assert len(p) == 1
        assert is_rigid(w, p[0], {a}, {b})


def test_two_parallel_paths_rigid():
    # ladder with parallel rungs: left ends to right ends is rigid
    g = Graph(8, [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (1, 5), (2, 6), (3, 7), (4, 8)])
    p = Linkage.of([(1, 2, 3, 4), (5, 6, 7, 8)])
    assert is_rigid(g, p, {1, 5}, {4, 8})


def test_unique_examples():
    assert not is_unique_linkage(cycle(4), Linkage.of([(1, 2)]))
    assert is_unique_linkage(complete(5), Linkage.of([(3,)]))
    assert not is_vital(whirl(), Linkage.of([(1, 2)]))


def test_labelings_count():
    p = Linkage.of([(1, 2), (3, 4), (5, 6)])
    labs = list(labelings(p))
    assert len(labs) == 4
    assert all(orient(p, a, b) is not None for a, b in labs)


def test_shortest_examples():
    for n in range(4, 10):
        c = cycle(n)
        end = math.ceil(n / 2)
        assert shortest_linkage_size(c, {1}, {end}) == end
        arc = Linkage.of([tuple(range(1, end + 1))])
        assert is_rigid_shortest(c, arc, {1}, {end})
    assert shortest_linkage_size(complete(4), {1, 2}, {1, 2}) == 2
    g = fig5()
    assert shortest_linkage_size(g, {1, 6}, {5, 9}) == 9
    assert is_rigid_shortest(g, Linkage.of([(1, 2, 3, 4, 5), (6, 7, 8, 9)]), {1, 6}, {5, 9})


def test_rigid_is_rigid_shortest_and_unique():
    for g in connected_graphs(5):
        for p, (a, b) in all_rigid_linkages(g).items():
            assert is_rigid_shortest(g, p, a, b)
            assert is_unique_linkage(g, p)


def test_whirl_numbers():
    w = whirl()
    assert [rigid_linkage_number(w, t) for t in (1, 2, 3, 4)] == [7, 12, 14, 15]


def test_closed_forms_small():
    assert [rigid_shortest_linkage_number(complete(5), t) for t in range(1, 5)] == [2, 3, 4, 5]
    assert rigid_shortest_linkage_number(complete_bipartite(1, 3), 1) == 3
    assert rigid_shortest_linkage_number(complete_bipartite(2, 3), 1) == 2
    assert [rigid_shortest_linkage_number(fig5(), t) for t in (1, 2)] == [4, 9]


def test_rl_rsl_match_oracle_exhaustive_n5():
    for g in connected_graphs(5):
        rl = oracles.rl_numbers(g.n, list(g.edges))
        rsl = oracles.rl_numbers(g.n, list(g.edges), shortest=True)
        for t in range(1, g.n + 1):
            a = rigid_linkage_search(g, t)
            b = rigid_shortest_linkage_search(g, t)
            assert (a.value, b.value) == (rl[t], rsl[t])
            assert b.value >= a.value
            if a.exists:
                assert a.witness.size == a.value and a.witness.order == t
                assert is_rigid(g, a.witness, a.alpha, a.beta)
            if b.value == g.n:
                assert t >= zero_forcing_number(g)


def test_is_rigid_any_labeling_agrees_with_loop():
    for g in connected_graphs(5):
        table = oracles.labeling_table(g.n, list(g.edges))
        for lk in {lk for lks in table.values() for lk in lks}:
            p = Linkage.of(lk)
            want = any(len(table[lab]) == 1 for lab in oracles.endpoint_labelings(lk))
            assert (is_rigid_any_labeling(g, p) is not None) == want


def test_unique_matches_oracle():
    rng = random.Random(5)
    for _ in range(40):
        g = random_graph(rng, 6, 0.5)
        lks = oracles.all_linkages(g.n, list(g.edges))
        for lk in rng.sample(lks, min(5, len(lks))):
            assert is_unique_linkage(g, Linkage.of(lk)) == oracles.is_unique(g.n, list(g.edges), lk)


def test_sublinkage_rigidity():
    rng = random.Random(11)
    checked = 0
    for g in connected_graphs(6)[-60:]:
        for p, (alpha, beta) in all_rigid_linkages(g).items():
            paths = orient(p, alpha, beta)
            keep = [i for i in range(len(paths)) if rng.random() < 0.7] or [0]
            sub = []
            for i in keep:
                q = paths[i]
                x = rng.randrange(len(q))
                y = rng.randrange(x, len(q))
                sub.append(q[x:y + 1])
            p2 = Linkage.of(sub)
            removed = p.vertices - p2.vertices
            h, mapping = induced_subgraph(g, set(g.vertices) - removed)
            moved = Linkage.of([[mapping[v] for v in q] for q in sub])
            a2 = {mapping[q[0]] for q in sub}
            b2 = {mapping[q[-1]] for q in sub}
            assert is_rigid(h, moved, a2, b2)
            checked += 1
    assert checked > 100


def test_subgraph_restriction():
    rng = random.Random(12)
    for g in connected_graphs(6)[-40:]:
        for p, (alpha, beta) in list(all_rigid_linkages(g).items())[:10]:
            extra = [e for e in g.edges if e not in p.edges]
            kept = [e for e in extra if rng.random() < 0.5]
            h = Graph(g.n, sorted(set(p.edges) | set(kept)))
            assert is_rigid(h, p, alpha, beta)


def test_product_bound():
    for g, h in [(complete(3), path(2)), (cycle(4), path(2)), (complete(2), complete(3))]:
        gh = cartesian_product(g, h)
        base = rigid_shortest_linkage_number(g, 1)
        for t in range(1, h.n + 1):
            assert rigid_shortest_linkage_number(gh, t) >= t * base


def test_no_rigid_linkage_flag_and_bad_order():
    g = Graph(3)  # edgeless: the only linkages are sets of single vertices
    r = rigid_linkage_search(g, 2)
    assert r.exists and r.value == 2
    assert rigid_linkage_search(complete(3), 3).value == 3
    with pytest.raises(PreconditionError):
        rigid_linkage_number(complete(3), 4)
    with pytest.raises(PreconditionError):
        rigid_linkage_number(complete(3), 0)


def test_certificate_shape():
    cert = rigid_linkage_search(whirl(), 2).to_certificate()
    assert cert["query"] == "RL(2)" and cert["value"] == 12
    assert set(cert["witness"]) == {"alpha", "beta", "paths"}
    assert cert["exhaustive"] is True


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        rigid_linkage_number(complete(8), 2, budget=50)
