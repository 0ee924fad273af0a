"""Treewidth, two-parallel-paths recognition, chords/rungs and the X minor test."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, IsAPathError, PreconditionError, PropertyViolation
from .forcing import zero_forcing_number
from .graph import (
    Graph,
    boundary_mask,
    component_masks,
    is_forest,
    is_path_graph,
    iter_bits,
    popcount,
    reach_mask,
    to_set,
)
from .linkage import Linkage, check_linkage, is_rigid_any_labeling, orient

TREEWIDTH_LIMIT = 10


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed ``1..m``; ``tree`` is a tree on those indices."""

    tree: Graph
    bags: tuple[frozenset[int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def violations(self, g: Graph) -> list[str]:
        """Reasons this is not a tree decomposition of ``g`` (empty if valid)."""
        out = []
        m = len(self.bags)
        if self.tree.n != m:
            out.append("tree and bag list disagree in size")
            return out
        if m and (len(self.tree.edges) != m - 1 or len(component_masks(self.tree, self.tree.full_mask)) != 1):
            out.append("index graph is not a tree")
        covered = frozenset().union(*self.bags) if self.bags else frozenset()
        missing = set(g.vertices) - covered
        if missing:
            out.append(f"vertices {sorted(missing)} lie in no bag")
        for u, v in g.edges:
            if not any(u in b and v in b for b in self.bags):
                out.append(f"edge {u}-{v} lies in no bag")
        for v in g.vertices:
            holding = [i + 1 for i, b in enumerate(self.bags) if v in b]
            if holding:
                sub = 0
                for i in holding:
                    sub |= 1 << i
                if len(component_masks(self.tree, sub)) != 1:
                    out.append(f"bags holding {v} are not connected in the tree")
        return out

    def is_valid(self, g: Graph) -> bool:
        return not self.violations(g)


def _width_of_order(g: Graph, order: list[int]) -> int:
    """Width of the elimination ordering (largest set of later neighbours)."""
    adj = list(g.adj)
    alive = g.full_mask
    width = -1
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        width = max(width, popcount(nb))
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
    return width


def decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    if g.n == 0:
        return TreeDecomposition(Graph(0), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = list(g.adj)
    alive = g.full_mask
    bags = []
    later = []
    for v in order:
        nb = adj[v] & alive & ~(1 << v)
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        bags.append(to_set(nb | (1 << v)))
        later.append(nb)
        alive &= ~(1 << v)
    edges = []
    roots = []
    for i, nb in enumerate(later):
        if nb:
            parent = min(iter_bits(nb), key=pos.__getitem__)
            edges.append((i + 1, pos[parent] + 1))
        else:
            roots.append(i + 1)
    # roots belong to different components and share no vertex; chain them into one tree
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(Graph(len(order), edges), tuple(bags))


def _min_degree_order(g: Graph) -> list[int]:
    adj = list(g.adj)
    alive = g.full_mask
    order = []
    while alive:
        v = min(iter_bits(alive), key=lambda x: (popcount(adj[x] & alive), x))
        nb = adj[v] & alive & ~(1 << v)
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        alive &= ~(1 << v)
        order.append(v)
    return order


def _degeneracy(g: Graph) -> int:
    """Largest minimum degree over the subgraphs peeled off greedily; tw >= this."""
    alive = g.full_mask
    best = 0
    adj = g.adj
    while alive:
        v = min(iter_bits(alive), key=lambda x: popcount(adj[x] & alive))
        best = max(best, popcount(adj[v] & alive))
        alive &= ~(1 << v)
    return best


def _dp_order(g: Graph) -> list[int]:
    """Optimal elimination ordering by dynamic programming over vertex subsets.

    ``best[S]`` is the least width needed to eliminate ``S`` first; eliminating
    v after ``S`` costs the number of outside vertices reachable from v through
    ``S``.
    """
    n = g.n
    full = g.full_mask
    best = {0: -1}
    choice = {}
    layer = [0]
    for _ in range(n):
        nxt = {}
        for s in layer:
            base = best[s]
            for v in iter_bits(full & ~s):
                r = reach_mask(g, 1 << v, s | (1 << v))
                cost = max(base, popcount(boundary_mask(g, r)))
                t = s | (1 << v)
                if t not in nxt or cost < nxt[t]:
                    nxt[t] = cost
                    choice[t] = v
        best.update(nxt)
        layer = list(nxt)
    seq = []
    s = full
    while s:
        v = choice[s]
        seq.append(v)
        s &= ~(1 << v)
    return seq[::-1]


def treewidth_decomposition(g: Graph, limit: int = TREEWIDTH_LIMIT) -> tuple[int, TreeDecomposition]:
    """Exact treewidth together with a validated decomposition of that width."""
    if g.n == 0:
        return -1, TreeDecomposition(Graph(0), ())
    if is_forest(g):
        order = _min_degree_order(g)
    else:
        if g.n > limit:
            raise BudgetExceeded(f"exact treewidth is limited to n <= {limit} (graph has {g.n})")
        order = _min_degree_order(g)
        if _width_of_order(g, order) > _degeneracy(g):
            order = _dp_order(g)
    td = decomposition_from_order(g, order)
    bad = td.violations(g)
    if bad:
        raise PropertyViolation("invalid tree decomposition: " + "; ".join(bad))
    return td.width, td


def treewidth_exact(g: Graph, limit: int = TREEWIDTH_LIMIT) -> int:
    return treewidth_decomposition(g, limit)[0]


def check_tw_bound(g: Graph, p: Linkage, limit: int = TREEWIDTH_LIMIT) -> bool:
    """Compare treewidth with the order of a spanning rigid linkage."""
    check_linkage(g, p)
    if not p.is_spanning(g):
        raise PreconditionError("linkage must span the graph")
    if is_rigid_any_labeling(g, p) is None:
        raise PreconditionError("linkage must be rigid")
    return treewidth_exact(g, limit) <= p.order


def is_two_parallel_paths(g: Graph) -> bool:
    """Decided through Z(G) = 2, which is equivalent for graphs that are not paths."""
    if is_path_graph(g):
        raise IsAPathError("a path graph is excluded from the two-parallel-paths test")
    return zero_forcing_number(g) == 2


def classify_edges(g: Graph, p: Linkage) -> dict[str, list[tuple[int, int]]]:
    """Split the edges of ``g`` into path edges, chords and rungs of ``p``.

    A chord joins two vertices of one path without being a path edge; every
    other non-path edge is a rung.
    """
    check_linkage(g, p)
    which = {v: i for i, q in enumerate(p.paths) for v in q}
    own = p.edges
    out: dict[str, list[tuple[int, int]]] = {"path": [], "chord": [], "rung": []}
    for e in g.edges:
        u, v = e
        if e in own:
            out["path"].append(e)
        elif u in which and which.get(v) == which[u]:
            out["chord"].append(e)
        else:
            out["rung"].append(e)
    return out


def linkage_chords(g: Graph, p: Linkage) -> list[tuple[int, int]]:
    return classify_edges(g, p)["chord"]


def has_X_minor(g: Graph, p: Linkage, alpha, beta) -> bool:
    """Whether the labeled order-2 linkage contracts to a crossed C_4.

    With both paths read from their alpha ends, an X exists exactly when two
    rungs cross: one joins positions (i, j), the other (i', j') with i < i'
    and j > j'. Contracting the path segments between the rung ends then
    gives a 4-cycle where each alpha end is adjacent to the other path's beta
    end.
    """
    check_linkage(g, p)
    if p.order != 2:
        raise PreconditionError("X minor test needs a linkage of order 2")
    if linkage_chords(g, p):
        raise PreconditionError("X minor test needs a chordless linkage")
    paths = orient(p, alpha, beta)
    if paths is None:
        raise PreconditionError("p is not an (alpha, beta)-linkage")
    x, y = paths
    px = {v: i for i, v in enumerate(x)}
    py = {v: j for j, v in enumerate(y)}
    rungs = []
    for u, v in g.edges:
        if u in px and v in py:
            rungs.append((px[u], py[v]))
        elif v in px and u in py:
            rungs.append((px[v], py[u]))
    rungs.sort()
    for a in range(len(rungs)):
        i, j = rungs[a]
        for b in range(a + 1, len(rungs)):
            i2, j2 = rungs[b]
            if i < i2 and j > j2:
                return True
    return False
