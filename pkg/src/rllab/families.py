"""Named graphs, fixture matrices and the table of known values.

Labelings are fixed and documented per constructor, because several checks
(forcing sequences, linkage lists) refer to specific vertex numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .errors import InputError
from .graph import Graph


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def complete_bipartite(m: int, n: int) -> Graph:
    """Parts ``1..m`` and ``m+1..m+n``."""
    _need(m >= 1 and n >= 1, "complete bipartite graph needs m, n >= 1")
    return Graph(m + n, [(i, m + j) for i in range(1, m + 1) for j in range(1, n + 1)])


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with ``(u, v)`` numbered ``(u - 1) * |V(H)| + v``."""
    _need(g.n >= 1 and h.n >= 1, "product factors must be nonempty")
    k = h.n

    def num(u: int, v: int) -> int:
        return (u - 1) * k + v

    edges = []
    for u in g.vertices:
        for a, b in h.edges:
            edges.append((num(u, a), num(u, b)))
    for a, b in g.edges:
        for v in h.vertices:
            edges.append((num(a, v), num(b, v)))
    return Graph(g.n * k, edges)


def hypercube(n: int) -> Graph:
    """Q_n built as K_2 □ Q_{n-1}, with Q_1 = K_2."""
    _need(n >= 1, "hypercube needs n >= 1")
    q = complete(2)
    for _ in range(n - 1):
        q = cartesian_product(complete(2), q)
    return q


def paw() -> Graph:
    """Triangle 2-3-4 with pendant 1 on vertex 2."""
    return Graph(4, [(1, 2), (2, 3), (2, 4), (3, 4)])


def fig1() -> Graph:
    """Inner 4-cycle 1-2-3-4, middle ring 5..8 joined to consecutive inner
    vertices, and pendants 9..12 on 5..8."""
    return Graph(12, [
        (1, 2), (2, 3), (3, 4), (1, 4),
        (1, 5), (1, 6), (2, 6), (2, 7), (3, 7), (3, 8), (4, 8), (4, 5),
        (5, 9), (6, 10), (7, 11), (8, 12),
    ])


def fig5() -> Graph:
    """Two paths 1-2-3-4-5 and 6-7-8-9 with cross edges, plus vertex 10."""
    return Graph(10, [
        (1, 2), (2, 3), (3, 4), (4, 5), (6, 7), (7, 8), (8, 9),
        (1, 6), (1, 10), (5, 9), (3, 9), (3, 7), (6, 10), (2, 10),
    ])


WHIRL_LABELS = {
    "v0": 1, "v1": 2, "v2": 3, "v3": 4,
    "i11": 5, "i12": 6, "j11": 7, "j12": 8,
    "i21": 9, "i22": 10, "j21": 11, "j22": 12,
    "i31": 13, "i32": 14, "j31": 15,
}


def whirl() -> Graph:
    """The 15-vertex tree W; see ``WHIRL_LABELS`` for the numbering.

    ``v0`` joins ``v1, v2, v3``; ``v1`` and ``v2`` each carry two legs of two
    vertices; ``v3`` carries the two-vertex leg ``i31-i32`` and the leaf ``j31``.
    """
    L = WHIRL_LABELS
    e = [(L["v0"], L["v1"]), (L["v0"], L["v2"]), (L["v0"], L["v3"])]
    for k in (1, 2):
        v = L[f"v{k}"]
        for leg in ("i", "j"):
            a, b = L[f"{leg}{k}1"], L[f"{leg}{k}2"]
            e += [(v, a), (a, b)]
    e += [(L["v3"], L["i31"]), (L["i31"], L["i32"]), (L["v3"], L["j31"])]
    return Graph(15, e)


def h_graph(k: int) -> Graph:
    """k claws glued at one pendant: center 1, claw centers ``2..k+1``, then
    two leaves per claw (``k+2+2c``, ``k+3+2c`` for claw ``c``)."""
    _need(k >= 1, "H_k needs k >= 1")
    e = []
    for c in range(k):
        mid = 2 + c
        e += [(1, mid), (mid, k + 2 + 2 * c), (mid, k + 3 + 2 * c)]
    return Graph(3 * k + 1, e)


def t_graph(k: int) -> Graph:
    """T_k: center 1, level-1 vertices 2, 3, 4; branch ``b`` copy ``j`` has its
    level-2 vertex at ``5 + b*k + j`` and level-3 leaves at
    ``5 + 3k + 2(b*k + j)`` and the next label. 9k+4 vertices in all."""
    _need(k >= 1, "T_k needs k >= 1")
    e = [(1, 2), (1, 3), (1, 4)]
    for b in range(3):
        for j in range(k):
            idx = b * k + j
            mid = 5 + idx
            leaf = 5 + 3 * k + 2 * idx
            e += [(2 + b, mid), (mid, leaf), (mid, leaf + 1)]
    return Graph(9 * k + 4, e)


def t_levels(k: int) -> dict[int, int]:
    """Distance of every T_k vertex from the center."""
    lv = {1: 0, 2: 1, 3: 1, 4: 1}
    for v in range(5, 5 + 3 * k):
        lv[v] = 2
    for v in range(5 + 3 * k, 9 * k + 5):
        lv[v] = 3
    return lv


def barioli_fallat() -> Graph:
    """K_{1,3} (center 1, leaves 2, 3, 4) with two leaves appended to each leaf."""
    e = [(1, 2), (1, 3), (1, 4)]
    for i, leaf in enumerate((2, 3, 4)):
        e += [(leaf, 5 + 2 * i), (leaf, 6 + 2 * i)]
    return Graph(10, e)


def x_fixture() -> Graph:
    """C_4 read as paths (1,2), (3,4) with crossing rungs 1-4 and 3-2."""
    return Graph(4, [(1, 2), (3, 4), (1, 4), (2, 3)])


def xx_fixture() -> Graph:
    """Paths 1-2-3 and 4-5-6 with rungs 1-5, 5-3, 4-2, 2-6."""
    return Graph(6, [(1, 2), (2, 3), (4, 5), (5, 6), (1, 5), (3, 5), (2, 4), (2, 6)])


# parsing -----------------------------------------------------------------------

_FAMILIES: dict[str, tuple[Callable[..., Graph], int, str]] = {
    "path": (path, 1, "path P_n on 1..n"),
    "cycle": (cycle, 1, "cycle C_n on 1..n"),
    "complete": (complete, 1, "complete graph K_n"),
    "complete_bipartite": (complete_bipartite, 2, "K_{m,n}, parts 1..m and m+1..m+n"),
    "hypercube": (hypercube, 1, "hypercube Q_n = K_2 x Q_{n-1}"),
    "paw": (paw, 0, "paw: triangle 2-3-4 plus pendant 1"),
    "fig1": (fig1, 0, "12-vertex graph with Z = 4 and the 1->6 blocking example"),
    "fig5": (fig5, 0, "10-vertex graph with RSL(1) = 4, RSL(2) = 9"),
    "whirl": (whirl, 0, "15-vertex tree W with RL = 7, 12, 14, 15"),
    "hk": (h_graph, 1, "H_k: k claws sharing a pendant vertex"),
    "tk": (t_graph, 1, "T_k: 9k+4 vertex tree"),
    "barioli_fallat": (barioli_fallat, 0, "K_{1,3} with two leaves on each leaf"),
    "x_fixture": (x_fixture, 0, "order-2 linkage with an X minor (C_4)"),
    "xx_fixture": (xx_fixture, 0, "order-2 chordless linkage with four rungs"),
}

_ALIASES = {
    "mary": "fig1", "seth": "fig5", "w": "whirl", "whirl_w": "whirl",
    "h": "hk", "h_k": "hk", "t": "tk", "t_k": "tk", "k": "complete",
    "kmn": "complete_bipartite", "q": "hypercube", "c": "cycle", "p": "path",
    "barioli_fallat_tree": "barioli_fallat",
}


def family_names() -> list[str]:
    return sorted(_FAMILIES)


def catalog() -> list[dict[str, Any]]:
    return [
        {"name": name, "params": arity, "description": desc}
        for name, (_, arity, desc) in sorted(_FAMILIES.items())
    ]


def build(name: str, *params: int) -> Graph:
    key = _ALIASES.get(name.lower(), name.lower())
    if key not in _FAMILIES:
        raise InputError(f"unknown family {name!r}; known: {', '.join(family_names())}")
    fn, arity, _ = _FAMILIES[key]
    if len(params) != arity:
        raise InputError(f"family {key!r} takes {arity} parameter(s), got {len(params)}")
    try:
        return fn(*params)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_family(text: str) -> Graph:
    """Build a graph from ``name[:p1,p2]``; ``A*B`` gives a Cartesian product."""
    text = text.strip()
    if "*" in text:
        parts = text.split("*")
        g = parse_family(parts[0])
        for part in parts[1:]:
            g = cartesian_product(g, parse_family(part))
        return g
    name, _, raw = text.partition(":")
    params = []
    if raw:
        for tok in raw.split(","):
            try:
                params.append(int(tok))
            except ValueError as exc:
                raise InputError(f"family parameter {tok!r} is not an integer") from exc
    return build(name, *params)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InputError(msg)


# fixture matrices -----------------------------------------------------------------

def whirl_matrix() -> np.ndarray:
    """A matrix in S(W) with multiplicity list 4, 3, 2, 2, 2, 1, 1 (q = 7, 5, 2, 1).

    Every two-vertex leg is [[1, 1], [1, 1]] (eigenvalues 0, 2). The vertices
    v1 and v2 get diagonal 3 and weight sqrt(5/2) to both leg ends, which makes
    each of those branches have eigenvalues {0, 0, 2, 2, 5}. The v3 branch is
    tuned to share the eigenvalues 0, 2, 5 and v0 then ties the branches
    together, leaving 0 with multiplicity 4 and 2 with multiplicity 3.
    """
    L = WHIRL_LABELS
    a = np.zeros((15, 15))

    def edge(x: str, y: str, w: float) -> None:
        i, j = L[x] - 1, L[y] - 1
        a[i, j] = a[j, i] = w

    def diag(x: str, w: float) -> None:
        a[L[x] - 1, L[x] - 1] = w

    r = math.sqrt(5 / 2)
    for k in (1, 2):
        vk = f"v{k}"
        diag(vk, 3.0)
        edge("v0", vk, 1.0)
        for leg in ("i", "j"):
            x1, x2 = f"{leg}{k}1", f"{leg}{k}2"
            edge(vk, x1, r)
            diag(x1, 1.0)
            diag(x2, 1.0)
            edge(x1, x2, 1.0)
    edge("v0", "v3", math.sqrt(5))
    diag("v3", 2.0)
    edge("v3", "i31", 2.0)
    diag("i31", 2.5)
    diag("i32", 0.5)
    edge("i31", "i32", math.sqrt(5 / 4))
    edge("v3", "j31", 1.0)
    return a


def two_eigenvalue_bipartite_matrix(n: int) -> np.ndarray:
    """[[0, B], [B^T, 0]] in S(K_{n,n}) with B orthogonal and nowhere zero,
    so the only eigenvalues are +1 and -1."""
    if n == 1:
        b = np.array([[1.0]])
    elif n == 2:
        b = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    elif n == 3:
        b = np.array([[-1.0, 2, 2], [2, -1, 2], [2, 2, -1]]) / 3
    elif n == 4:
        b = np.array([[1.0, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]) / 2
    else:
        # Householder reflection I - 2vv^T/|v|^2 with v = ones is nowhere zero for n >= 3
        b = np.eye(n) - 2.0 / n * np.ones((n, n))
    z = np.zeros((n, n))
    return np.block([[z, b], [b.T, z]])


def hypercube_matrix(n: int) -> np.ndarray:
    """A_n = [[A_{n-1}, I], [I, -A_{n-1}]] in S(Q_n); A_n^2 = nI, so two eigenvalues."""
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    for _ in range(n - 1):
        m = a.shape[0]
        eye = np.eye(m)
        a = np.block([[a, eye], [eye, -a]])
    return a


def cycle_matrix(n: int) -> np.ndarray:
    """Signed adjacency of C_n: the (1, n) entry is negated for even n.

    Odd n: the eigenvalue 2 is simple and the rest are double. Even n: every
    eigenvalue is double. Either way there are ``ceil(n/2)`` distinct values.
    """
    a = np.zeros((n, n))
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1.0
    w = -1.0 if n % 2 == 0 else 1.0
    a[0, n - 1] = a[n - 1, 0] = w
    return a


def t_matrix(k: int) -> np.ndarray:
    """Adjacency of T_k with the center's diagonal entry set to sqrt(2)."""
    g = t_graph(k)
    a = np.zeros((g.n, g.n))
    for i, j in g.edges:
        a[i - 1, j - 1] = a[j - 1, i - 1] = 1.0
    a[0, 0] = math.sqrt(2)
    return a


# known values ----------------------------------------------------------------------

@dataclass(frozen=True)
class FixtureRecord:
    """One known value: ``family`` is a :func:`parse_family` spec, ``quantity``
    one of ``Z``, ``Z_RL``, ``RL(t)``, ``RSL(t)``, ``spectrum``,
    ``multiplicity_list``, ``vertices``. ``basis`` says where the number comes
    from: ``stated`` (published value), ``trivial`` or ``derived`` (computed
    here by an independent method).
    """

    family: str
    quantity: str
    expected: Any
    basis: str
    note: str

    def key(self) -> str:
        return f"{self.family} {self.quantity}"


def _kmn_rsl(m: int, n: int, t: int) -> int:
    m, n = min(m, n), max(m, n)
    if t == 1:
        return 2 if m >= 2 else 3
    return t + 2


def fixture_corpus() -> list[FixtureRecord]:
    recs = [
        FixtureRecord("fig1", "Z", 4, "stated", "fig1: {4,9,10,11} forces everything, Z = 4"),
        FixtureRecord("fig1", "Z_RL", 4, "stated", "fig1: RL-forcing number equals Z"),
        FixtureRecord("paw", "Z", 2, "derived", "paw: {2,3} is a minimum zero forcing set"),
        FixtureRecord("whirl", "vertices", 15, "trivial", "tree W has 15 vertices"),
        FixtureRecord("whirl", "Z", 4, "derived", "tree W: RL(4) = |V| and RL(3) < |V|, so Z = 4"),
        FixtureRecord("fig5", "Z", 3, "stated", "fig5: Z = 3"),
        FixtureRecord("fig5", "RSL(1)", 4, "stated", "fig5: (1,2,3,4) is the longest rigid shortest path"),
        FixtureRecord("fig5", "RSL(2)", 9, "stated", "fig5: {(1..5),(6..9)} is rigid shortest"),
        FixtureRecord("fig5", "RSL(3)", 10, "derived", "fig5: spanning rigid shortest linkage of order 3 exists"),
    ]
    for t, v in zip(range(1, 5), (7, 12, 14, 15)):
        recs.append(FixtureRecord("whirl", f"RL({t})", v, "stated", f"tree W: RL({t}) = {v}"))
    for n in range(2, 8):
        for t in range(1, n):
            recs.append(FixtureRecord(f"complete:{n}", f"RSL({t})", t + 1, "stated",
                                      f"K_{n}: RSL(t) = t + 1"))
    for n in range(3, 10):
        recs.append(FixtureRecord(f"cycle:{n}", "RSL(1)", -(-n // 2), "stated",
                                  f"C_{n}: RSL(1) = ceil(n/2)"))
        recs.append(FixtureRecord(f"cycle:{n}", "RSL(2)", n, "stated", f"C_{n}: RSL(2) = n"))
    for m in range(1, 8):
        for n in range(m, 9 - m):
            if m + n < 3:
                continue
            for t in range(1, m + n - 1):
                recs.append(FixtureRecord(
                    f"complete_bipartite:{m},{n}", f"RSL({t})", _kmn_rsl(m, n, t), "stated",
                    f"K_{{{m},{n}}}: closed form for RSL({t})"))
    for t in range(1, 5):
        recs.append(FixtureRecord("hypercube:3", f"RSL({t})", 2 * t, "stated", "Q_3: RSL(t) = 2t"))
    for n in (1, 2, 3, 4):
        recs.append(FixtureRecord(f"hypercube:{n}", "vertices", 2 ** n, "trivial", "|V(Q_n)| = 2^n"))
    for k in range(1, 6):
        recs.append(FixtureRecord(f"tk:{k}", "vertices", 9 * k + 4, "stated", "T_k has 9k+4 vertices"))
        recs.append(FixtureRecord(f"hk:{k}", "vertices", 3 * k + 1, "derived", "H_k has 3k+1 vertices"))
    for k in range(2, 6):
        r2, rk = math.sqrt(2), math.sqrt(k + 2)
        spec = [[-rk, 1], [-r2, k - 1], [0.0, k + 1], [r2, k - 1], [rk, 1]]
        recs.append(FixtureRecord(f"hk:{k}", "spectrum", spec, "stated",
                                  "adjacency of H_k: 0^(k+1), +-sqrt2^(k-1), +-sqrt(k+2)"))
    for n in range(2, 8):
        recs.append(FixtureRecord(f"complete:{n}", "spectrum", [[-1.0, n - 1], [float(n - 1), 1]],
                                  "stated", "adjacency of K_n: (-1)^(n-1), n-1"))
    for k in (2, 3):
        recs.append(FixtureRecord(f"tk:{k}", "multiplicity_list",
                                  [3 * k + 2, 3 * k - 2, 3 * k - 3, 2, 2, 1, 1, 1], "stated",
                                  "E matrix of T_k: 3k+2, 3k-2, 3k-3, 2, 2, 1, 1, 1"))
    return recs
