"""Simple undirected graphs on vertices ``1..n`` with bitset adjacency.

Vertex sets travel through the public API as ``frozenset[int]``; internally
every routine works on integer bitmasks where bit ``v`` stands for vertex
``v`` (bit 0 is never used).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from pathlib import Path

from .errors import GraphError

VertexSet = frozenset


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the vertices of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbour bitmask of ``v``.

    Construction validates its input: endpoints must lie in ``1..n``, loops
    and repeated edges are rejected rather than silently repaired.
    """

    __slots__ = ("n", "adj", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise GraphError(f"vertex count must be a non-negative integer, got {n!r}")
        adj = [0] * (n + 1)
        seen = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {e!r} does not have two endpoints")
            i, j = e
            for x in (i, j):
                if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= n:
                    raise GraphError(f"edge {e!r} has an endpoint outside 1..{n}")
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.n = n
        self.adj = tuple(adj)
        self._edges = tuple(sorted(seen))
        self._hash = hash((n, self.adj))

    @classmethod
    def from_adjacency(cls, n: int, adj: Sequence[int]) -> "Graph":
        """Build from neighbour bitmasks indexed ``0..n`` (entry 0 ignored)."""
        if len(adj) != n + 1:
            raise GraphError("adjacency list must have n + 1 entries")
        full = ((1 << (n + 1)) - 1) ^ 1
        edges = []
        for i in range(1, n + 1):
            row = adj[i]
            if row & ~full:
                raise GraphError(f"vertex {i} has a neighbour outside 1..{n}")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in iter_bits(row):
                if not adj[j] >> i & 1:
                    raise GraphError(f"adjacency is not symmetric at ({i}, {j})")
                if i < j:
                    edges.append((i, j))
        return cls(n, edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def full_mask(self) -> int:
        return ((1 << (self.n + 1)) - 1) ^ 1

    def has_edge(self, u: int, v: int) -> bool:
        return 1 <= u <= self.n and bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return to_set(self.adj[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def mask(self, vertices: Iterable[int]) -> int:
        """Bitmask of ``vertices``, checking that each one belongs to the graph."""
        m = 0
        for v in vertices:
            if not isinstance(v, int) or not 1 <= v <= self.n:
                raise GraphError(f"vertex {v!r} is not in 1..{self.n}")
            m |= 1 << v
        return m

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self._edges)})"

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self._edges]}


# structural primitives -------------------------------------------------------

def component_masks(g: Graph, avail: int) -> list[int]:
    """Connected components of ``g[avail]`` as bitmasks, sorted by minimum vertex."""
    adj = g.adj
    out = []
    rest = avail
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= avail & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def reach_mask(g: Graph, start: int, avail: int) -> int:
    """Vertices of ``avail`` reachable from the bitmask ``start`` inside ``avail``."""
    adj = g.adj
    seen = start & avail
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= avail & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def neighborhood_mask(g: Graph, x: int) -> int:
    adj = g.adj
    out = 0
    for v in iter_bits(x):
        out |= adj[v]
    return out


def boundary_mask(g: Graph, x: int) -> int:
    return neighborhood_mask(g, x) & ~x


def components(g: Graph, removed: Iterable[int] = ()) -> list[frozenset[int]]:
    """Vertex sets of the components of ``g - removed``, ordered by minimum vertex."""
    avail = g.full_mask & ~g.mask(removed)
    return [to_set(c) for c in component_masks(g, avail)]


def boundary(g: Graph, x: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``x`` with at least one neighbour in ``x``."""
    return to_set(boundary_mask(g, g.mask(x)))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``keep``, relabelled ``1..k`` in increasing order.

    Returns the graph together with the old-to-new label map.
    """
    kept = members(g.mask(keep))
    relabel = {v: i for i, v in enumerate(kept, start=1)}
    km = mask_of(kept)
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if km >> u & 1 and km >> v & 1
    ]
    return Graph(len(kept), edges), relabel


def is_path(g: Graph, p: Sequence[int]) -> bool:
    """True when ``p`` is a path of ``g``: distinct vertices, consecutive ones adjacent."""
    if len(p) == 0 or len(set(p)) != len(p):
        return False
    if any(not isinstance(v, int) or not 1 <= v <= g.n for v in p):
        return False
    return all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


def is_induced_path(g: Graph, p: Sequence[int]) -> bool:
    """True iff ``p`` is a path of ``g`` whose vertex set spans no chord."""
    if not is_path(g, p):
        return False
    pos = {v: i for i, v in enumerate(p)}
    for v in p:
        for u in iter_bits(g.adj[v]):
            j = pos.get(u)
            if j is not None and abs(j - pos[v]) != 1:
                return False
    return True


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(component_masks(g, g.full_mask)) == 1


def is_forest(g: Graph) -> bool:
    return len(g.edges) == g.n - len(component_masks(g, g.full_mask))


def is_path_graph(g: Graph) -> bool:
    """True when ``g`` itself is a path (a single vertex counts)."""
    if g.n == 0 or not is_connected(g) or len(g.edges) != g.n - 1:
        return False
    return all(g.degree(v) <= 2 for v in g.vertices)


def relabel_graph(g: Graph, mapping: dict[int, int]) -> Graph:
    return Graph(g.n, [(mapping[u], mapping[v]) for u, v in g.edges])


# file formats -----------------------------------------------------------------

def graph_from_json(obj: dict) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise GraphError('graph JSON must be an object with "n" and "edges"')
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise GraphError('"edges" must be a list of [i, j] pairs')
    return Graph(obj["n"], [tuple(e) for e in edges])


def graph_from_edge_list(text: str) -> Graph:
    """Parse the plain format: first line ``n``, then one ``i j`` pair per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list file")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphError(f"malformed edge line {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from exc
    return Graph(n, edges)


def load_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON graph file: {exc}") from exc
        return graph_from_json(obj)
    return graph_from_edge_list(text)
