import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

import oracles
from conftest import connected_graphs, random_graph
from rllab.errors import ClusteringAmbiguous, InputError, PreconditionError
from rllab.families import (
    complete,
    complete_bipartite,
    h_graph,
    path,
    t_graph,
    t_matrix,
    whirl,
    whirl_matrix,
)
from rllab.graph import Graph
from rllab.linkage import Linkage, all_rigid_linkages, rigid_linkage_search
from rllab.spectral import (
    SymMatrix,
    adjacency_matrix,
    conjugate,
    cycledet,
    enumerate_linear_subgraphs,
    float_matrix,
    matrix_from_json,
    minor_det,
    nullity_exact,
    rank_exact,
    rigid_minor_identity,
    sample_matrix,
    spectrum,
    tight_rl_spectrum_check,
    tk_relation_check,
    verify_multiplicity_bound,
    verify_nullity_bound,
    verify_q_bounds,
    weight_cycle_part,
)


def test_sample_matrix_pattern_and_reproducibility():
    g = whirl()
    for seed in range(100):
        a = sample_matrix(g, seed)
        for i in range(1, g.n + 1):
            assert -1 <= a[i, i] <= 1
            for j in range(i + 1, g.n + 1):
                assert (a[i, j] != 0) == g.has_edge(i, j)
                if a[i, j]:
                    assert Fraction(1, 2) <= abs(a[i, j]) <= 2
    assert sample_matrix(g, 5) == sample_matrix(g, 5)
    d = sample_matrix(Graph(4), 1)
    assert all(d[i, j] == 0 for i in range(1, 5) for j in range(1, 5) if i != j)
    assert adjacency_matrix(g).graph is g


def test_pattern_enforced():
    with pytest.raises(InputError):
        SymMatrix([[0, 1], [1, 0]], Graph(2))
    with pytest.raises(InputError):
        SymMatrix([[0, 1], [2, 0]])
    m = matrix_from_json({"n": 2, "entries": [["1/2", 1], [1, "-3/4"]]}, complete(2))
    assert m.exact and m[1, 1] == Fraction(1, 2)


def test_weight_cycle_part():
    a = sample_matrix(complete(4), 3)
    assert weight_cycle_part(a, isolated=[2]) == a[2, 2]
    assert weight_cycle_part(a, pairs=[(1, 3)]) == a[1, 3] ** 2
    assert weight_cycle_part(a, cycles=[(1, 2, 4)]) == a[1, 2] * a[2, 4] * a[4, 1]


def _is_glsg(n, edges):
    """Components are isolated vertices, single edges or cycles."""
    deg = {v: 0 for v in range(1, n + 1)}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for comp in oracles.bfs_components(n, edges):
        inner = [e for e in edges if e[0] in comp]
        if len(comp) == 1:
            continue
        if len(comp) == 2 and len(inner) == 1:
            continue
        if len(comp) >= 3 and all(deg[v] == 2 for v in comp) and len(inner) == len(comp):
            continue
        return False
    return True


def test_linear_subgraphs_empty_labels_k4():
    g = complete(4)
    got = list(enumerate_linear_subgraphs(g, (), ()))
    want = [sub for k in range(len(g.edges) + 1) for sub in itertools.combinations(g.edges, k)
            if _is_glsg(4, list(sub))]
    assert len(got) == len(want) == 1 + 6 + 3 + 4 + 3
    assert len({h.factors() for h in got}) == len(got)


def test_linear_subgraphs_p2():
    hs = list(enumerate_linear_subgraphs(path(2), {1}, {2}))
    assert len(hs) == 1
    assert hs[0].paths == ((1, 2),) and not hs[0].isolated and not hs[0].pairs


def test_linear_subgraphs_k4_each_sigma():
    # with alpha and beta covering all four vertices the cycle part is empty,
    # so H is just a linkage joining 1 and 2 to their prescribed partners
    g = complete(4)
    alpha, beta = (1, 2), (3, 4)
    linkages = [lk for lk in oracles.all_linkages(4, list(g.edges)) if len(lk) == 2]
    for sigma in itertools.permutations(range(2)):
        got = list(enumerate_linear_subgraphs(g, alpha, beta, sigma))
        pattern = {frozenset({1, beta[sigma[0]]}), frozenset({2, beta[sigma[1]]})}
        want = [lk for lk in linkages if {frozenset({p[0], p[-1]}) for p in lk} == pattern]
        assert len(got) == len(want) == 1
        assert all(not h.isolated and not h.pairs and not h.cycles for h in got)


def test_cycledet_small_cases():
    a = SymMatrix([[Fraction(3), Fraction(2)], [Fraction(2), Fraction(5)]], complete(2))
    assert cycledet(a) == 3 * 5 - 2 * 2
    assert cycledet(adjacency_matrix(complete(3))) == 2
    assert cycledet(sample_matrix(Graph(0), 1)) == 1


def test_cycledet_matches_leibniz():
    rng = random.Random(21)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 6), rng.uniform(0.2, 0.9))
        a = sample_matrix(g, rng.randrange(1000))
        k = rng.randint(0, min(3, g.n))
        alpha = rng.sample(list(g.vertices), k)
        beta = rng.sample(list(g.vertices), k)
        want = oracles.leibniz_det(oracles.minor_rows(a.rows, alpha, beta))
        assert cycledet(a, alpha, beta, g) == want
        assert minor_det(a, alpha, beta) == want


def test_cycledet_float_mode():
    g = complete(4)
    a = float_matrix(adjacency_matrix(g).to_numpy() * 0.5, g)
    assert cycledet(a, (1,), (2,)) == pytest.approx(np.linalg.det(np.delete(np.delete(a.to_numpy(), 0, 0), 1, 1)))


def test_rigid_minor_identity_tree():
    w = whirl()
    path_lk = rigid_linkage_search(w, 1)
    for seed in range(20):
        a = sample_matrix(w, seed)
        rep = rigid_minor_identity(a, path_lk.witness, path_lk.alpha, path_lk.beta)
        assert abs(rep["lhs"]) == abs(rep["rhs"])
    p = Linkage.of([(1, 2, 3, 4)])
    rep = rigid_minor_identity(sample_matrix(path(4), 2), p, {1}, {4})
    assert rep["det_rest"] == 1 and abs(rep["lhs"]) == abs(rep["w"])
    two = rigid_linkage_search(w, 2)
    rep = rigid_minor_identity(sample_matrix(w, 9), two.witness, two.alpha, two.beta)
    assert rep["sign"] in (-1, 1, 0)
    with pytest.raises(PreconditionError):
        rigid_minor_identity(sample_matrix(complete(4), 1), Linkage.of([(1, 2), (3, 4)]), {1, 3}, {2, 4})


def test_spectrum_examples():
    for n in range(2, 8):
        rep = spectrum(adjacency_matrix(complete(n)))
        assert rep.multiplicities == ((n - 1, 1) if n > 2 else (1, 1))
        assert rep.values[0] == pytest.approx(-1) and rep.values[-1] == pytest.approx(n - 1)
    for k in range(2, 6):
        rep = spectrum(adjacency_matrix(h_graph(k)))
        got = dict(zip((round(v, 6) for v in rep.values), rep.multiplicities))
        r2, rk = round(math.sqrt(2), 6), round(math.sqrt(k + 2), 6)
        assert got == {0.0: k + 1, r2: k - 1, -r2: k - 1, rk: 1, -rk: 1}
    z = spectrum(np.zeros((5, 5)))
    assert z.multiplicities == (5,) and z.q == 1
    assert spectrum(np.zeros((0, 0))).q == 0


def test_spectrum_ambiguous():
    with pytest.raises(ClusteringAmbiguous):
        spectrum(np.diag([1.0, 1.0 + 3e-9]), 1e-9)
    assert spectrum(np.diag([1.0, 1.0 + 1e-10]), 1e-9).multiplicities == (2,)


def test_conjugate_partitions():
    rng = random.Random(3)
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 9))
        rep = spectrum(adjacency_matrix(g), 1e-6)
        assert sum(rep.m) == g.n == sum(rep.q_list)
        assert conjugate(rep.q_list) == rep.m
    assert conjugate((4, 3, 2, 2, 2, 1, 1)) == (7, 5, 2, 1)


def test_nullity_examples():
    g = whirl()
    eye = SymMatrix([[Fraction(int(i == j)) for j in range(15)] for i in range(15)], Graph(15))
    p = Linkage.of([(1,)])
    assert verify_nullity_bound(eye, p, {1}, {1})["null"] == 0
    cert = rigid_linkage_search(g, 2)
    a = adjacency_matrix(g)
    rep = verify_nullity_bound(a, cert.witness, cert.alpha, cert.beta)
    assert rep["null"] == 15 - oracles.fraction_rank(a.rows)
    for lam in (0, 1, -1):
        assert verify_nullity_bound(a, cert.witness, cert.alpha, cert.beta, shift=lam)["holds"]
    with pytest.raises(PreconditionError):
        verify_nullity_bound(float_matrix(a.to_numpy(), g), cert.witness, cert.alpha, cert.beta)


def test_multiplicity_examples():
    g = Graph(5)
    a = float_matrix(np.diag([2.0, 2.0, 2.0, 3.0, 3.0]), g)
    rep = verify_multiplicity_bound(a, Linkage.of([(1,), (4,)]), {1, 4}, {1, 4})
    assert rep["holds"]
    by_value = {round(r["value"]): r for r in rep["eigenvalues"]}
    assert by_value[2]["mult_sub"] == 2 and by_value[3]["mult_sub"] == 1
    t2 = t_graph(2)
    e = float_matrix(t_matrix(2), t2)
    cert = rigid_linkage_search(t2, 1)
    assert cert.value == 7
    assert verify_multiplicity_bound(e, cert.witness, cert.alpha, cert.beta)["holds"]


def test_interlacing_one_vertex():
    rng = random.Random(8)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 8), 0.5)
        a = adjacency_matrix(g)
        full = spectrum(a, 1e-6)
        v = rng.choice(list(g.vertices))
        sub = spectrum(a.principal_deleted({v}), 1e-6)
        for lam, m in zip(full.values, full.multiplicities):
            assert abs(sub.mult(lam, 1e-5) - m) <= 1


def test_rank_plus_nullity():
    rng = random.Random(10)
    for g in rng.sample(connected_graphs(6), 20):
        for seed in range(5):
            a = sample_matrix(g, seed)
            assert rank_exact(a.rows) + nullity_exact(a) == g.n
            assert rank_exact(a.rows) == oracles.fraction_rank(a.rows)


def test_q_bounds_examples():
    w = whirl()
    a = float_matrix(whirl_matrix(), w)
    assert [verify_q_bounds(w, a, t)["equality"] for t in (1, 2, 3, 4)] == [True] * 4
    k5 = complete(5)
    a = float_matrix(adjacency_matrix(k5).to_numpy(), k5)
    for t in range(1, 5):
        rep = verify_q_bounds(k5, a, t, use_rsl=True)
        assert rep["sum_q"] == t + 1 and rep["equality"]
    k33 = complete_bipartite(3, 3)
    a = float_matrix(adjacency_matrix(k33).to_numpy(), k33)
    assert [verify_q_bounds(k33, a, t, use_rsl=True)["equality"] for t in (1, 2, 3)] == [False, True, True]


def test_tight_rl_spectrum_whirl():
    w = whirl()
    a = float_matrix(whirl_matrix(), w)
    for t in (1, 2, 3):
        cert = rigid_linkage_search(w, t)
        rep = tight_rl_spectrum_check(w, a, cert.witness, t)
        assert rep["holds"]
    cert = rigid_linkage_search(w, 4)
    assert tight_rl_spectrum_check(w, a, cert.witness, 4)["expected"] == []


def test_tight_rl_spectrum_edgeless():
    g = Graph(4)
    a = float_matrix(np.eye(4), g)
    rep = tight_rl_spectrum_check(g, a, Linkage.of([(2,)]), 1)
    assert rep["got"] == [[1.0, 3]]


def test_tk_relation():
    rep = tk_relation_check(2)
    assert rep["m"] == [8, 4, 3, 2, 2, 1, 1, 1] and rep["holds"]
    rep = tk_relation_check(3)
    assert rep["relation_residual"] < 1e-8 and rep["holds"]
    assert rep["trace_ok"]


def test_rigid_pairs_sampled():
    rng = random.Random(12)
    for g in rng.sample(connected_graphs(6), 15):
        for p, (alpha, beta) in list(all_rigid_linkages(g).items())[:5]:
            a = sample_matrix(g, rng.randrange(100))
            assert verify_nullity_bound(a, p, alpha, beta)["holds"]
            assert rigid_minor_identity(a, p, alpha, beta)
