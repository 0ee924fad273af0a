"""Linkages: enumeration, rigidity / uniqueness certification, RL(t) and RSL(t).

Everything here is exact brute force sized for graphs of a dozen vertices.
The workhorse is :func:`_route`, a depth-first router that links an ordered
list of source vertices to target vertices by vertex-disjoint paths whose
interiors avoid every terminal.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import Budget, PreconditionError, as_budget
from .graph import (
    Graph,
    component_masks,
    iter_bits,
    lowest,
    mask_of,
    members,
    neighborhood_mask,
    popcount,
    to_set,
)

_INF = 1 << 30


@dataclass(frozen=True)
class Linkage:
    """A set of vertex-disjoint paths in canonical form.

    Each path is stored with its smaller endpoint first and paths are sorted
    by first vertex, so two labelings of the same subgraph compare equal.
    Use :meth:`of` to build one from arbitrary paths.
    """

    paths: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, paths: Iterable[Sequence[int]]) -> "Linkage":
        canon = []
        seen: set[int] = set()
        for p in paths:
            p = tuple(p)
            if not p:
                raise PreconditionError("a linkage path must contain at least one vertex")
            if len(set(p)) != len(p):
                raise PreconditionError(f"path {p} repeats a vertex")
            if seen.intersection(p):
                raise PreconditionError("linkage paths must be vertex-disjoint")
            seen.update(p)
            if p[-1] < p[0]:
                p = p[::-1]
            canon.append(p)
        canon.sort()
        return cls(tuple(canon))

    @property
    def order(self) -> int:
        return len(self.paths)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)

    @property
    def size(self) -> int:
        return sum(len(p) for p in self.paths)

    @property
    def mask(self) -> int:
        return mask_of(v for p in self.paths for v in p)

    @property
    def pattern(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset((p[0], p[-1])) for p in self.paths)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (min(a, b), max(a, b)) for p in self.paths for a, b in zip(p, p[1:])
        )

    def is_spanning(self, g: Graph) -> bool:
        return self.mask == g.full_mask

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.paths]

    def __repr__(self) -> str:
        return f"Linkage({[list(p) for p in self.paths]})"


def check_linkage(g: Graph, p: Linkage) -> None:
    """Raise :class:`PreconditionError` unless every path of ``p`` is a path of ``g``."""
    for path in p.paths:
        for v in path:
            if not 1 <= v <= g.n:
                raise PreconditionError(f"vertex {v} is not in the graph")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise PreconditionError(f"{a}-{b} is not an edge of the graph")


def orient(p: Linkage, alpha: Iterable[int], beta: Iterable[int]) -> list[tuple[int, ...]] | None:
    """Paths of ``p`` directed from their ``alpha`` end, or None if ``p`` is not an
    (alpha, beta)-linkage.
    """
    a, b = frozenset(alpha), frozenset(beta)
    if len(a) != p.order or len(b) != p.order:
        return None
    out = []
    for path in p.paths:
        x, y = path[0], path[-1]
        if x == y:
            if x not in a or x not in b:
                return None
            out.append(path)
        elif x in a and y in b and x not in b and y not in a:
            out.append(path)
        elif y in a and x in b and y not in b and x not in a:
            out.append(path[::-1])
        else:
            return None
    return out


def is_alpha_beta_linkage(p: Linkage, alpha: Iterable[int], beta: Iterable[int]) -> bool:
    return orient(p, alpha, beta) is not None


def labelings(p: Linkage) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """The (up to ``2**(t-1)``) endpoint labelings making ``p`` an (alpha, beta)-linkage.

    The first non-trivial path keeps its stored orientation, which removes the
    (alpha, beta) ~ (beta, alpha) duplicate.
    """
    singles = [q[0] for q in p.paths if len(q) == 1]
    longs = [q for q in p.paths if len(q) > 1]
    if not longs:
        yield frozenset(singles), frozenset(singles)
        return
    first, rest = longs[0], longs[1:]
    for flips in range(1 << len(rest)):
        a = [first[0]]
        b = [first[-1]]
        for i, q in enumerate(rest):
            if flips >> i & 1:
                a.append(q[-1])
                b.append(q[0])
            else:
                a.append(q[0])
                b.append(q[-1])
        yield frozenset(a + singles), frozenset(b + singles)


# the router -------------------------------------------------------------------

def _dist_to_end(adj, x: int, free: int, endmask: int) -> int:
    """Fewest extra vertices (end included) on a path from ``x`` to ``endmask``
    whose interior stays inside ``free``."""
    d = 1
    seen = 1 << x
    frontier = seen
    while frontier:
        nb = 0
        for v in iter_bits(frontier):
            nb |= adj[v]
        if nb & endmask:
            return d
        frontier = nb & free & ~seen
        seen |= frontier
        d += 1
    return _INF


def _route(
    g: Graph,
    sources: Sequence[int],
    ends: Sequence[int],
    blocked: int,
    budget: Budget,
    cap: list[int] | None = None,
) -> Iterator[tuple[tuple[tuple[int, ...], ...], int]]:
    """Yield ``(paths, size)`` for every way of linking each ``sources[i]`` to a
    vertex of ``ends[i]`` by vertex-disjoint paths.

    Path interiors avoid ``blocked`` (all terminals). Each target is used at
    most once. When ``cap`` is given, only linkages with at most ``cap[0]``
    vertices are produced; the caller may lower ``cap[0]`` while iterating.
    """
    adj = g.adj
    k = len(sources)
    interior = g.full_mask & ~blocked
    paths: list[tuple[int, ...]] = [()] * k

    def lower_bound(i: int, head: int, used: int) -> int:
        free = interior & ~used
        lb = _dist_to_end(adj, head, free, ends[i] & ~used)
        for j in range(i + 1, k):
            if lb >= _INF:
                break
            lb += 1 + _dist_to_end(adj, sources[j], free, ends[j] & ~used)
        return lb

    def grow(i: int, path: list[int], used: int, size: int):
        budget.tick()
        head = path[-1]
        if cap is not None:
            if size + lower_bound(i, head, used) > cap[0]:
                return
        nb = adj[head]
        hits = nb & ends[i] & ~used
        for b in iter_bits(hits):
            paths[i] = tuple(path) + (b,)
            yield from place(i + 1, used | (1 << b), size + 1)
        free = interior & ~used
        for v in iter_bits(nb & free):
            nused = used | (1 << v)
            if cap is None and _dist_to_end(adj, v, free & ~nused, ends[i] & ~nused) >= _INF:
                continue
            path.append(v)
            yield from grow(i, path, nused, size + 1)
            path.pop()

    def place(i: int, used: int, size: int):
        if i == k:
            yield tuple(paths), size
            return
        if cap is None:
            free = interior & ~used
            for j in range(i, k):
                if _dist_to_end(adj, sources[j], free, ends[j] & ~used) >= _INF:
                    return
        yield from grow(i, [sources[i]], used, size + 1)

    for s in sources:
        if not blocked >> s & 1:
            raise AssertionError("sources must be blocked from path interiors")
    yield from place(0, 0, 0)


def _split_terminals(g: Graph, alpha: Iterable[int], beta: Iterable[int]):
    am = g.mask(alpha)
    bm = g.mask(beta)
    if popcount(am) != popcount(bm):
        raise PreconditionError("|alpha| must equal |beta|")
    single = am & bm
    return single, members(am & ~single), bm & ~single


def _free_linkages(g: Graph, single: int, sources: Sequence[int], targets: int,
                   budget: Budget, cap: list[int] | None = None):
    blocked = single | mask_of(sources) | targets
    singles = tuple((v,) for v in iter_bits(single))
    base = popcount(single)
    ends = [targets] * len(sources)
    for paths, size in _route(g, sources, ends, blocked, budget, cap):
        yield paths + singles, size + base


def enumerate_linkages(
    g: Graph,
    alpha: Iterable[int],
    beta: Iterable[int],
    max_count: int | None = None,
    max_total_vertices: int | None = None,
    budget: Budget | int | None = None,
) -> list[Linkage]:
    """All (alpha, beta)-linkages of ``g``.

    Vertices in both sets are one-vertex paths; every other alpha vertex is
    matched to a beta vertex, and the matching is part of the search. Results
    come in depth-first order (neighbours ascending) and each subgraph appears
    once.
    """
    budget = as_budget(budget)
    single, sources, targets = _split_terminals(g, alpha, beta)
    cap = None if max_total_vertices is None else [max_total_vertices - popcount(single)]
    if cap is not None and cap[0] < 0:
        return []
    out = []
    for paths, _ in _free_linkages(g, single, sources, targets, budget,
                                   None if cap is None else cap):
        out.append(Linkage.of(paths))
        if max_count is not None and len(out) >= max_count:
            break
    return out


def count_linkages(g: Graph, alpha, beta, limit: int = 2, budget=None) -> int:
    """Number of (alpha, beta)-linkages, saturating at ``limit``."""
    return len(enumerate_linkages(g, alpha, beta, max_count=limit, budget=budget))


def is_rigid(g: Graph, p: Linkage, alpha: Iterable[int], beta: Iterable[int],
             budget: Budget | int | None = None) -> bool:
    """True iff ``p`` is the only (alpha, beta)-linkage of ``g``."""
    check_linkage(g, p)
    if not is_alpha_beta_linkage(p, alpha, beta):
        raise PreconditionError("p is not an (alpha, beta)-linkage")
    found = enumerate_linkages(g, alpha, beta, max_count=2, budget=budget)
    return found == [p]


def is_rigid_any_labeling(g: Graph, p: Linkage, budget: Budget | int | None = None
                          ) -> tuple[frozenset[int], frozenset[int]] | None:
    """A labeling ``(alpha, beta)`` for which ``p`` is rigid, or None."""
    check_linkage(g, p)
    budget = as_budget(budget)
    for a, b in labelings(p):
        if is_rigid(g, p, a, b, budget=budget):
            return a, b
    return None


def _pattern_linkages(g: Graph, p: Linkage, budget: Budget, limit: int):
    sources, ends, single = [], [], 0
    for q in p.paths:
        if len(q) == 1:
            single |= 1 << q[0]
        else:
            sources.append(q[0])
            ends.append(1 << q[-1])
    blocked = single | mask_of(sources)
    for e in ends:
        blocked |= e
    singles = tuple((v,) for v in iter_bits(single))
    out = []
    for paths, _ in _route(g, sources, ends, blocked, budget):
        out.append(Linkage.of(paths + singles))
        if len(out) >= limit:
            break
    return out


def is_unique_linkage(g: Graph, p: Linkage, budget: Budget | int | None = None) -> bool:
    """True iff no other linkage of ``g`` has the pattern of ``p``."""
    check_linkage(g, p)
    found = _pattern_linkages(g, p, as_budget(budget), 2)
    return found == [p]


def is_vital(g: Graph, p: Linkage, budget: Budget | int | None = None) -> bool:
    check_linkage(g, p)
    return p.is_spanning(g) and is_unique_linkage(g, p, budget)


# shortest linkages --------------------------------------------------------------

def _shortest(g: Graph, single: int, sources, targets: int, budget: Budget,
              abort_at: int | None = None):
    """Minimum size of an (alpha, beta)-linkage and how many attain it.

    Returns ``(size, count, witness)`` with ``count`` saturating at 2, or
    ``None`` when no linkage exists. If a linkage with at most ``abort_at``
    vertices turns up, the search stops early and returns ``None``; callers
    use that to skip candidates that cannot beat a known value.
    """
    best = None
    count = 0
    witness = None
    cap = [g.n]
    for paths, size in _free_linkages(g, single, sources, targets, budget, cap):
        if abort_at is not None and size <= abort_at:
            return None
        if best is None or size < best:
            best, count, witness = size, 1, paths
            cap[0] = size - popcount(single)
        elif size == best:
            count = 2
            cap[0] = size - popcount(single) - 1
    if best is None:
        return None
    return best, count, Linkage.of(witness)


def shortest_linkage_size(g: Graph, alpha, beta, budget: Budget | int | None = None) -> int | None:
    """Fewest vertices in any (alpha, beta)-linkage, or None if none exists."""
    single, sources, targets = _split_terminals(g, alpha, beta)
    res = _shortest(g, single, sources, targets, as_budget(budget))
    return None if res is None else res[0]


def is_rigid_shortest(g: Graph, p: Linkage, alpha, beta, budget: Budget | int | None = None) -> bool:
    """True iff ``p`` is the unique (alpha, beta)-linkage of minimum size."""
    check_linkage(g, p)
    if not is_alpha_beta_linkage(p, alpha, beta):
        raise PreconditionError("p is not an (alpha, beta)-linkage")
    single, sources, targets = _split_terminals(g, alpha, beta)
    res = _shortest(g, single, sources, targets, as_budget(budget))
    assert res is not None
    size, count, witness = res
    return count == 1 and witness == p


# extremal numbers -------------------------------------------------------------

@dataclass(frozen=True)
class ExtremalLinkage:
    """Result of an RL(t) / RSL(t) search.

    ``value`` is 0 and ``exists`` False when the graph has no order-t rigid
    (shortest) linkage at all.
    """

    query: str
    t: int
    value: int
    exists: bool
    witness: Linkage | None
    alpha: frozenset[int] | None
    beta: frozenset[int] | None
    exhaustive: bool = True

    def to_certificate(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "alpha": sorted(self.alpha),
                "beta": sorted(self.beta),
                "paths": self.witness.to_json(),
            }
        return {
            "query": f"{self.query}({self.t})",
            "value": self.value,
            "exists": self.exists,
            "witness": witness,
            "exhaustive": self.exhaustive,
        }


def _candidates(g: Graph, t: int):
    """Every ``(singles, sources, targets)`` split of order ``t``, one per
    unordered pair {alpha, beta}.

    Yields ``(single_mask, A, B_mask, upper)`` where ``upper`` bounds the size
    of any (alpha, beta)-linkage by counting terminals plus interior vertices
    in components of ``g - terminals`` that touch both sides.
    """
    n = g.n
    verts = list(g.vertices)
    for s in range(0, t + 1):
        k = t - s
        if s + 2 * k > n:
            continue
        for S in combinations(verts, s):
            smask = mask_of(S)
            rest = [v for v in verts if not smask >> v & 1]
            if k == 0:
                yield smask, (), 0, s
                continue
            for U in combinations(rest, 2 * k):
                umask = mask_of(U)
                tmask = smask | umask
                comps = [
                    (c, neighborhood_mask(g, c) & umask, popcount(c))
                    for c in component_masks(g, g.full_mask & ~tmask)
                ]
                first, others = U[0], U[1:]
                for pick in combinations(others, k - 1):
                    amask = (1 << first) | mask_of(pick)
                    bmask = umask & ~amask
                    upper = s + 2 * k
                    for c, touch, sz in comps:
                        if touch & amask and touch & bmask:
                            upper += sz
                    yield smask, members(amask), bmask, upper


def _check_order(g: Graph, t: int) -> None:
    if not isinstance(t, int) or t < 1 or t > g.n:
        raise PreconditionError(f"order t must satisfy 1 <= t <= |V(G)| = {g.n}, got {t}")


def rigid_linkage_search(g: Graph, t: int, budget: Budget | int | None = None) -> ExtremalLinkage:
    """RL_G(t) with a witness.

    Candidates whose vertex bound cannot beat the incumbent are skipped, and a
    candidate is abandoned as soon as it produces a linkage no larger than the
    incumbent (its unique linkage, if any, cannot be larger either).
    """
    _check_order(g, t)
    budget = as_budget(budget)
    best, found = 0, None
    for single, sources, targets, upper in _candidates(g, t):
        if upper <= best:
            continue
        first = None
        rigid = True
        for paths, size in _free_linkages(g, single, sources, targets, budget):
            if size <= best:
                rigid = False
                break
            if first is not None:
                rigid = False
                break
            first = (paths, size)
        if rigid and first is not None:
            best = first[1]
            found = (Linkage.of(first[0]), single, sources, targets)
            if best == g.n:
                break
    return _extremal("RL", t, best, found)


def rigid_shortest_linkage_search(g: Graph, t: int, budget: Budget | int | None = None) -> ExtremalLinkage:
    """RSL_G(t) with a witness."""
    _check_order(g, t)
    budget = as_budget(budget)
    best, found = 0, None
    for single, sources, targets, upper in _candidates(g, t):
        if upper <= best:
            continue
        res = _shortest(g, single, sources, targets, budget, abort_at=best)
        if res is None:
            continue
        size, count, witness = res
        if count == 1 and size > best:
            best = size
            found = (witness, single, sources, targets)
            if best == g.n:
                break
    return _extremal("RSL", t, best, found)


def _extremal(query: str, t: int, best: int, found) -> ExtremalLinkage:
    if found is None:
        return ExtremalLinkage(query, t, 0, False, None, None, None)
    lk, single, sources, targets = found
    alpha = to_set(single | mask_of(sources))
    beta = to_set(single | targets)
    return ExtremalLinkage(query, t, best, True, lk, alpha, beta)


def rigid_linkage_number(g: Graph, t: int, budget: Budget | int | None = None) -> int:
    """Maximum number of vertices in an order-``t`` rigid linkage (0 if none)."""
    return rigid_linkage_search(g, t, budget).value


def rigid_shortest_linkage_number(g: Graph, t: int, budget: Budget | int | None = None) -> int:
    """Maximum number of vertices in an order-``t`` rigid shortest linkage (0 if none)."""
    return rigid_shortest_linkage_search(g, t, budget).value


def all_rigid_linkages(g: Graph, t: int | None = None, budget: Budget | int | None = None
                       ) -> dict[Linkage, tuple[frozenset[int], frozenset[int]]]:
    """Every rigid linkage (of order ``t``, or of every order), with one
    witnessing labeling each."""
    budget = as_budget(budget)
    orders = range(1, g.n + 1) if t is None else [t]
    out: dict[Linkage, tuple[frozenset[int], frozenset[int]]] = {}
    for order in orders:
        for single, sources, targets, _ in _candidates(g, order):
            found = []
            for paths, _size in _free_linkages(g, single, sources, targets, budget):
                found.append(paths)
                if len(found) > 1:
                    break
            if len(found) == 1:
                lk = Linkage.of(found[0])
                out.setdefault(lk, (to_set(single | mask_of(sources)), to_set(single | targets)))
    return out
