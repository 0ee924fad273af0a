"""Matrices described by a graph and the eigenvalue bounds built on rigid linkages.

Determinants, ranks and nullities are computed exactly over the rationals.
Eigenvalues are computed in floating point and grouped into multiplicities by
single-linkage clustering, which refuses to guess when a gap is borderline.
"""

from __future__ import annotations

import json
import math
import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from pathlib import Path

import numpy as np

from .errors import (
    Budget,
    ClusteringAmbiguous,
    InputError,
    PreconditionError,
    PropertyViolation,
    as_budget,
)
from .graph import Graph, iter_bits, lowest, mask_of
from .linkage import (
    Linkage,
    _route,
    check_linkage,
    is_rigid,
    is_rigid_any_labeling,
    rigid_linkage_number,
    rigid_shortest_linkage_number,
)

DEFAULT_TOL = 1e-9


# matrices ---------------------------------------------------------------------------

class SymMatrix:
    """Dense symmetric matrix indexed by vertices ``1..n``.

    Entries are all :class:`~fractions.Fraction` (exact mode) or all floats.
    When ``graph`` is given the off-diagonal zero pattern must match its edges.
    """

    __slots__ = ("n", "rows", "exact", "graph")

    def __init__(self, rows: Sequence[Sequence], graph: Graph | None = None, exact: bool | None = None):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InputError("matrix must be square")
        if exact is None:
            exact = all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for r in rows for x in r)
        conv = Fraction if exact else float
        self.rows = tuple(tuple(conv(x) for x in r) for r in rows)
        self.n = n
        self.exact = exact
        for i in range(n):
            for j in range(i + 1, n):
                if self.rows[i][j] != self.rows[j][i]:
                    raise InputError(f"matrix is not symmetric at ({i + 1}, {j + 1})")
        self.graph = graph
        if graph is not None:
            if graph.n != n:
                raise InputError(f"matrix order {n} does not match graph order {graph.n}")
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    if (self.rows[i - 1][j - 1] != 0) != graph.has_edge(i, j):
                        raise InputError(f"entry ({i}, {j}) does not follow the graph's pattern")

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SymMatrix(n={self.n}, exact={self.exact})"

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(self.n, self.n)

    def shifted(self, lam) -> "SymMatrix":
        """``A - lam*I`` (same pattern, so still described by the graph)."""
        rows = [list(r) for r in self.rows]
        for i in range(self.n):
            rows[i][i] -= lam
        return SymMatrix(rows, self.graph, self.exact)

    def principal_deleted(self, remove: Iterable[int]) -> "SymMatrix":
        """A(X): delete rows and columns indexed by ``remove``."""
        rm = set(remove)
        keep = [i for i in range(1, self.n + 1) if i not in rm]
        rows = [[self.rows[i - 1][j - 1] for j in keep] for i in keep]
        return SymMatrix(rows, exact=self.exact)

    def minor_matrix(self, alpha: Iterable[int], beta: Iterable[int]) -> list[list]:
        """A(alpha, beta): delete the rows in ``alpha`` and the columns in ``beta``."""
        ra, cb = set(alpha), set(beta)
        rows = [i for i in range(1, self.n + 1) if i not in ra]
        cols = [j for j in range(1, self.n + 1) if j not in cb]
        return [[self.rows[i - 1][j - 1] for j in cols] for i in rows]

    def to_json(self) -> dict:
        if self.exact:
            entries = [[str(x) for x in r] for r in self.rows]
        else:
            entries = [list(r) for r in self.rows]
        return {"n": self.n, "entries": entries}


def matrix_from_json(obj: dict, graph: Graph | None = None) -> SymMatrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError('matrix JSON must be an object with "entries"')
    entries = obj["entries"]
    n = obj.get("n", len(entries))
    if not isinstance(entries, list) or len(entries) != n:
        raise InputError('"entries" must hold n rows')
    exact = True
    rows = []
    for r in entries:
        if not isinstance(r, list):
            raise InputError("each matrix row must be a list")
        row = []
        for x in r:
            if isinstance(x, bool):
                raise InputError("boolean matrix entry")
            if isinstance(x, int):
                row.append(Fraction(x))
            elif isinstance(x, float):
                exact = False
                row.append(x)
            elif isinstance(x, str):
                try:
                    row.append(Fraction(x.strip()))
                except (ValueError, ZeroDivisionError) as exc:
                    raise InputError(f"bad rational entry {x!r}") from exc
            else:
                raise InputError(f"bad matrix entry {x!r}")
        rows.append(row)
    if not exact:
        rows = [[float(x) for x in r] for r in rows]
    return SymMatrix(rows, graph, exact)


def load_matrix(path: str | Path, graph: Graph | None = None) -> SymMatrix:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON matrix file: {exc}") from exc
    return matrix_from_json(obj, graph)


def sample_matrix(g: Graph, seed: int) -> SymMatrix:
    """Reproducible exact matrix in S(g).

    Off-diagonal entries on edges are ``±k/8`` with ``4 <= k <= 16`` (so in
    ±[1/2, 2], never zero); diagonal entries are ``k/8`` with ``|k| <= 8``.
    """
    rng = random.Random(seed)
    n = g.n
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Fraction(rng.randint(-8, 8), 8)
    for i, j in g.edges:
        x = Fraction(rng.randint(4, 16), 8) * rng.choice((-1, 1))
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = x
    return SymMatrix(rows, g, exact=True)


def adjacency_matrix(g: Graph) -> SymMatrix:
    rows = [[Fraction(0)] * g.n for _ in range(g.n)]
    for i, j in g.edges:
        rows[i - 1][j - 1] = rows[j - 1][i - 1] = Fraction(1)
    return SymMatrix(rows, g, exact=True)


def float_matrix(a: np.ndarray, g: Graph | None = None) -> SymMatrix:
    return SymMatrix(np.asarray(a, dtype=float).tolist(), g, exact=False)


# exact linear algebra -------------------------------------------------------------

def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - aik * row_k[j]) // prev
        prev = pk
    return sign * a[n - 1][n - 1]


def _common_denominator(m: Sequence[Sequence]) -> int:
    d = 1
    for r in m:
        for x in r:
            d = math.lcm(d, Fraction(x).denominator)
    return d


def det_exact(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a rational matrix (the empty matrix has determinant 1)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    d = _common_denominator(m)
    ints = [[int(Fraction(x) * d) for x in r] for r in m]
    return Fraction(bareiss_det(ints), d ** n)


def rank_exact(m: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            f = rows[r][c]
            if f:
                f /= pr[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def nullity_exact(a: SymMatrix) -> int:
    if not a.exact:
        raise PreconditionError("exact nullity needs a rational matrix")
    return a.n - rank_exact(a.rows)


# the determinant expansion ----------------------------------------------------------

@dataclass(frozen=True)
class LinearSubgraph:
    """A spanning subgraph split into a linkage part and a generalized cycle part.

    ``paths[i]`` runs from the i-th smallest alpha vertex to beta vertex
    number ``sigma[i]`` (0-based, beta sorted ascending).
    """

    paths: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...]
    isolated: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def edge_count(self) -> int:
        return (sum(len(p) - 1 for p in self.paths) + len(self.pairs)
                + sum(len(c) for c in self.cycles))

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def linkage(self) -> Linkage:
        return Linkage.of(self.paths)

    def factors(self) -> tuple[tuple[int, int], ...]:
        """Index pairs whose entries multiply to w(H), with repetition."""
        out = []
        for p in self.paths:
            out += [(min(a, b), max(a, b)) for a, b in zip(p, p[1:])]
        out += [(i, i) for i in self.isolated]
        for i, j in self.pairs:
            out += [(i, j), (i, j)]
        for c in self.cycles:
            out += [(min(a, b), max(a, b)) for a, b in zip(c, c[1:] + c[:1])]
        return tuple(sorted(out))


def weight_cycle_part(a: SymMatrix, isolated: Iterable[int] = (), pairs: Iterable[tuple[int, int]] = (),
                      cycles: Iterable[Sequence[int]] = ()):
    """w(C): diagonal entries of isolated vertices, squares over edge
    components and plain entries around each cycle."""
    w = Fraction(1) if a.exact else 1.0
    for i in isolated:
        w *= a[i, i]
    for i, j in pairs:
        w *= a[i, j] ** 2
    for c in cycles:
        c = tuple(c)
        for x, y in zip(c, c[1:] + c[:1]):
            w *= a[x, y]
    return w


def path_weight(a: SymMatrix, p: Linkage):
    """w(P): product of entries over path edges (one-vertex paths contribute 1)."""
    w = Fraction(1) if a.exact else 1.0
    for q in p.paths:
        for x, y in zip(q, q[1:]):
            w *= a[x, y]
    return w


def _cycles_through(g: Graph, v: int, avail: int) -> Iterator[tuple[int, ...]]:
    """Cycles (length >= 3) through ``v`` using vertices of ``avail``, each once."""
    adj = g.adj
    path = [v]

    def ext(head: int, used: int):
        for u in iter_bits(adj[head] & avail & ~used):
            path.append(u)
            if len(path) >= 3 and adj[u] >> v & 1 and path[1] < u:
                yield tuple(path)
            yield from ext(u, used | (1 << u))
            path.pop()

    yield from ext(v, 1 << v)


def _cycle_parts(g: Graph, avail: int, budget: Budget):
    """Generalized linear subgraphs of g[avail] as (isolated, pairs, cycles)."""
    if not avail:
        yield (), (), ()
        return
    budget.tick()
    v = lowest(avail)
    rest = avail & ~(1 << v)
    for iso, pr, cy in _cycle_parts(g, rest, budget):
        yield (v,) + iso, pr, cy
    for u in iter_bits(g.adj[v] & rest):
        for iso, pr, cy in _cycle_parts(g, rest & ~(1 << u), budget):
            yield iso, ((v, u),) + pr, cy
    for c in _cycles_through(g, v, rest):
        for iso, pr, cy in _cycle_parts(g, avail & ~mask_of(c), budget):
            yield iso, pr, (c,) + cy


def _sign(sigma: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(sigma)) for j in range(i + 1, len(sigma)) if sigma[i] > sigma[j])
    return -1 if inv % 2 else 1


def enumerate_linear_subgraphs(g: Graph, alpha: Iterable[int], beta: Iterable[int],
                               sigma: Sequence[int] | None = None,
                               budget: Budget | int | None = None) -> Iterator[LinearSubgraph]:
    """Stream the (alpha, beta_sigma)-linear subgraphs of ``g``.

    ``sigma`` maps the i-th smallest alpha vertex to the ``sigma[i]``-th
    smallest beta vertex (0-based); it defaults to the identity.
    """
    budget = as_budget(budget)
    a = sorted(set(alpha))
    b = sorted(set(beta))
    g.mask(a)
    g.mask(b)
    t = len(a)
    if len(b) != t:
        raise PreconditionError("|alpha| must equal |beta|")
    sigma = tuple(range(t)) if sigma is None else tuple(sigma)
    if sorted(sigma) != list(range(t)):
        raise PreconditionError(f"{sigma} is not a permutation of 0..{t - 1}")
    aset, bset = set(a), set(b)
    sources, ends, singles = [], [], []
    for i in range(t):
        x, y = a[i], b[sigma[i]]
        if x == y:
            singles.append(x)
        elif x in bset or y in aset:
            return
        else:
            sources.append(x)
            ends.append(1 << y)
    blocked = mask_of(a) | mask_of(b)
    for paths, _ in _route(g, sources, ends, blocked, budget):
        by_source = {p[0]: p for p in paths}
        for s in singles:
            by_source[s] = (s,)
        ordered = tuple(by_source[x] for x in a)
        used = blocked
        for p in paths:
            used |= mask_of(p)
        for iso, pr, cy in _cycle_parts(g, g.full_mask & ~used, budget):
            yield LinearSubgraph(ordered, sigma, iso, pr, cy)


@lru_cache(maxsize=4096)
def _expansion_terms(g: Graph, alpha: tuple[int, ...], beta: tuple[int, ...]):
    """Signed monomials of the expansion of det A(alpha, beta) over S(g)."""
    t = len(alpha)
    base = -1 if (sum(alpha) + sum(beta)) % 2 else 1
    terms: dict[tuple, int] = {}
    budget = as_budget(None)
    for sigma in permutations(range(t)):
        sg = base * _sign(sigma)
        for h in enumerate_linear_subgraphs(g, alpha, beta, sigma, budget):
            coef = sg * (-1 if h.edge_count % 2 else 1) * (-2) ** h.cycle_count
            key = h.factors()
            terms[key] = terms.get(key, 0) + coef
    return tuple((c, k) for k, c in terms.items() if c)


def cycledet(a: SymMatrix, alpha: Iterable[int] = (), beta: Iterable[int] = (),
             graph: Graph | None = None):
    """det A(alpha, beta) evaluated term by term from linear subgraphs.

    Every term is a monomial of degree ``n - t`` in the entries, so an exact
    matrix is scaled to integers once and the sum divided back at the end.
    """
    g = graph or a.graph
    if g is None:
        raise PreconditionError("cycledet needs the describing graph")
    if g.n != a.n:
        raise PreconditionError("matrix and graph orders differ")
    al, be = tuple(sorted(set(alpha))), tuple(sorted(set(beta)))
    if len(al) != len(be):
        raise PreconditionError("|alpha| must equal |beta|")
    terms = _expansion_terms(g, al, be)
    if not a.exact:
        total = 0.0
        for c, fac in terms:
            w = float(c)
            for i, j in fac:
                w *= a[i, j]
            total += w
        return total
    d = _common_denominator(a.rows)
    ints = [[int(x * d) for x in r] for r in a.rows]
    total = 0
    for c, fac in terms:
        w = c
        for i, j in fac:
            w *= ints[i - 1][j - 1]
        total += w
    return Fraction(total, d ** (a.n - len(al)))


def minor_det(a: SymMatrix, alpha: Iterable[int], beta: Iterable[int]):
    m = a.minor_matrix(alpha, beta)
    if a.exact:
        return det_exact(m)
    return float(np.linalg.det(np.array(m, dtype=float))) if m else 1.0


def rigid_minor_identity(a: SymMatrix, p: Linkage, alpha, beta, graph: Graph | None = None) -> dict:
    """Both sides of det A(alpha, beta) = ±w(P)·det A(V(P)) for a rigid P.

    Raises :class:`PropertyViolation` if the absolute values differ; ``sign``
    is ``lhs / rhs`` (0 when both vanish).
    """
    g = graph or a.graph
    if g is None:
        raise PreconditionError("the describing graph is required")
    if not a.exact:
        raise PreconditionError("the identity is checked in exact arithmetic")
    if not is_rigid(g, p, alpha, beta):
        raise PreconditionError("linkage is not (alpha, beta)-rigid")
    lhs = minor_det(a, alpha, beta)
    w = path_weight(a, p)
    sub = det_exact(a.principal_deleted(p.vertices).rows)
    rhs = w * sub
    if abs(lhs) != abs(rhs):
        raise PropertyViolation(f"|det A(alpha,beta)| = {abs(lhs)} but |w(P) det A(V(P))| = {abs(rhs)}")
    sign = 0 if rhs == 0 else int(lhs / rhs)
    return {"lhs": lhs, "rhs": rhs, "w": w, "det_rest": sub, "sign": sign}


# spectra ---------------------------------------------------------------------------

def conjugate(parts: Sequence[int]) -> tuple[int, ...]:
    """Conjugate partition: entry i counts parts of size at least i."""
    if not parts:
        return ()
    return tuple(sum(1 for m in parts if m >= i) for i in range(1, max(parts) + 1))


@dataclass(frozen=True)
class SpectrumReport:
    values: tuple[float, ...]
    multiplicities: tuple[int, ...]
    threshold: float

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(sorted(self.multiplicities, reverse=True))

    @property
    def q_list(self) -> tuple[int, ...]:
        return conjugate(self.multiplicities)

    @property
    def q(self) -> int:
        return len(self.values)

    def q_sum(self, t: int) -> int:
        return sum(self.q_list[:t])

    def mult(self, lam: float, tol: float | None = None) -> int:
        tol = self.threshold * 10 if tol is None else tol
        return sum(m for v, m in zip(self.values, self.multiplicities) if abs(v - lam) <= tol)

    def to_json(self) -> dict:
        return {
            "eigenvalues": [[v, m] for v, m in zip(self.values, self.multiplicities)],
            "m": list(self.m),
            "q_list": list(self.q_list),
            "q": self.q,
        }


def _as_array(a) -> np.ndarray:
    if isinstance(a, SymMatrix):
        return a.to_numpy()
    return np.asarray(a, dtype=float)


def spectrum(a, tol: float = DEFAULT_TOL) -> SpectrumReport:
    """Eigenvalues grouped into multiplicities.

    Consecutive sorted eigenvalues closer than ``tol * max(1, max|lambda|)``
    merge into one cluster. A gap at least that large but below ten times it
    raises :class:`ClusteringAmbiguous`.
    """
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    arr = _as_array(a)
    if arr.size == 0:
        return SpectrumReport((), (), tol)
    if not np.array_equal(arr, arr.T):
        raise InputError("matrix is not symmetric")
    ev = np.linalg.eigvalsh(arr)
    thr = tol * max(1.0, float(np.max(np.abs(ev))))
    clusters = [[float(ev[0])]]
    for x, y in zip(ev, ev[1:]):
        gap = float(y - x)
        if gap < thr:
            clusters[-1].append(float(y))
        elif gap < 10 * thr:
            raise ClusteringAmbiguous(f"eigenvalue gap {gap:.3e} falls in [{thr:.1e}, {10 * thr:.1e})")
        else:
            clusters.append([float(y)])
    values = tuple(sum(c) / len(c) for c in clusters)
    mults = tuple(len(c) for c in clusters)
    return SpectrumReport(values, mults, thr)


# bound verification ----------------------------------------------------------------

def _need_rigid(a: SymMatrix, p: Linkage, alpha, beta, graph: Graph | None) -> Graph:
    g = graph or a.graph
    if g is None:
        raise PreconditionError("the describing graph is required")
    check_linkage(g, p)
    if not is_rigid(g, p, alpha, beta):
        raise PreconditionError("linkage is not (alpha, beta)-rigid")
    return g


def verify_nullity_bound(a: SymMatrix, p: Linkage, alpha, beta, graph: Graph | None = None,
                         shift=0) -> dict:
    """null(B(V(P))) >= null(B) - t for B = A - shift*I, exactly."""
    _need_rigid(a, p, alpha, beta, graph)
    if not a.exact:
        raise PreconditionError("nullity bound is checked in exact arithmetic")
    b = a.shifted(Fraction(shift)) if shift else a
    full = nullity_exact(b)
    sub = b.principal_deleted(p.vertices)
    part = sub.n - rank_exact(sub.rows)
    t = p.order
    report = {"null": full, "null_sub": part, "t": t, "shift": str(Fraction(shift)),
              "slack": part - (full - t), "holds": part >= full - t}
    if not report["holds"]:
        raise PropertyViolation(f"nullity bound fails: {part} < {full} - {t}")
    return report


def verify_multiplicity_bound(a, p: Linkage, alpha, beta, tol: float = 1e-8,
                              graph: Graph | None = None) -> dict:
    """For each eigenvalue with multiplicity above t, the matrix with V(P)
    deleted keeps at least ``m - t`` eigenvalues within matching tolerance."""
    m_a = a if isinstance(a, SymMatrix) else float_matrix(a)
    _need_rigid(m_a, p, alpha, beta, graph)
    full = spectrum(m_a, tol)
    sub = spectrum(m_a.principal_deleted(p.vertices), tol)
    match = 10 * max(full.threshold, sub.threshold)
    t = p.order
    rows = []
    ok = True
    for lam, m in zip(full.values, full.multiplicities):
        got = sub.mult(lam, match)
        need = m - t
        good = got >= need
        ok &= good
        rows.append({"value": lam, "mult": m, "mult_sub": got, "required": max(need, 0),
                     "slack": got - need, "holds": good})
    report = {"t": t, "eigenvalues": rows, "holds": ok}
    if not ok:
        raise PropertyViolation("multiplicity bound fails: " + json.dumps([r for r in rows if not r["holds"]]))
    return report


def verify_q_bounds(g: Graph, a, t: int, use_rsl: bool = False, tol: float = 1e-8,
                    budget: Budget | int | None = None) -> dict:
    """sum_{j<=t} q_j(A) >= RL(t) (or RSL(t)); also reports ceil(bound / t)."""
    rep = spectrum(a, tol)
    value = (rigid_shortest_linkage_number if use_rsl else rigid_linkage_number)(g, t, budget)
    qs = rep.q_sum(t)
    report = {
        "t": t,
        "quantity": "RSL" if use_rsl else "RL",
        "value": value,
        "q_list": list(rep.q_list),
        "sum_q": qs,
        "equality": qs == value,
        "q_lower_bound": -(-value // t),
        "q": rep.q,
        "holds": qs >= value and rep.q >= -(-value // t),
    }
    if not report["holds"]:
        raise PropertyViolation(f"sum of first {t} q_j is {qs} < {report['quantity']}({t}) = {value}")
    return report


def tight_rl_spectrum_check(g: Graph, a, p: Linkage, t: int, tol: float = 1e-8,
                            budget: Budget | int | None = None) -> dict:
    """When sum_{i<=t} q_i = RL(t) and |V(P)| = RL(t), the spectrum of A(V(P))
    is exactly {lambda^(m - t) : m > t}."""
    m_a = a if isinstance(a, SymMatrix) else float_matrix(a, g)
    check_linkage(g, p)
    if p.order != t:
        raise PreconditionError(f"linkage has order {p.order}, expected {t}")
    if is_rigid_any_labeling(g, p) is None:
        raise PreconditionError("linkage is not rigid")
    rl = rigid_linkage_number(g, t, budget)
    full = spectrum(m_a, tol)
    if full.q_sum(t) != rl:
        raise PreconditionError(f"not tight: sum of q_i is {full.q_sum(t)}, RL({t}) = {rl}")
    if p.size != rl:
        raise PreconditionError(f"|V(P)| = {p.size} but RL({t}) = {rl}")
    expected = sorted((lam, m - t) for lam, m in zip(full.values, full.multiplicities) if m > t)
    sub = spectrum(m_a.principal_deleted(p.vertices), tol)
    got = sorted(zip(sub.values, sub.multiplicities))
    match = 10 * max(full.threshold, sub.threshold)
    ok = len(got) == len(expected) and all(
        m1 == m2 and abs(l1 - l2) <= match for (l1, m1), (l2, m2) in zip(expected, got))
    report = {"t": t, "expected": [[l, m] for l, m in expected], "got": [[l, m] for l, m in got], "holds": ok}
    if not ok:
        raise PropertyViolation("residual spectrum differs from the tight prediction")
    return report


def tk_relation_check(k: int, tol: float = 1e-8) -> dict:
    """Multiplicity list of the T_k matrix with sqrt(2) at the center and, for
    k >= 3, the linear relation among its eigenvalues."""
    from .families import t_matrix

    if k < 2:
        raise PreconditionError("the T_k multiplicity list needs k >= 2")
    e = t_matrix(k)
    rep = spectrum(e, tol)
    expected = [3 * k + 2, 3 * k - 2, 3 * k - 3, 2, 2, 1, 1, 1]
    mlist = list(rep.m)
    trace_gap = abs(float(np.trace(e)) - sum(v * m for v, m in zip(rep.values, rep.multiplicities)))
    report = {"k": k, "m": mlist, "expected_m": expected, "list_ok": mlist == expected,
              "trace_residual": trace_gap, "trace_ok": trace_gap < tol}
    if k >= 3 and report["list_ok"]:
        by_mult: dict[int, list[float]] = {}
        for v, m in zip(rep.values, rep.multiplicities):
            by_mult.setdefault(m, []).append(v)
        l1 = by_mult[3 * k + 2][0]
        l2 = by_mult[3 * k - 2][0]
        l3 = by_mult[3 * k - 3][0]
        l45 = by_mult[2]
        l678 = by_mult[1]
        resid = l1 + 3 * l2 + 3 * l3 - 2 * sum(l45) - sum(l678)
        report["relation_residual"] = abs(resid)
        report["relation_ok"] = abs(resid) < tol
    report["holds"] = report["list_ok"] and report["trace_ok"] and report.get("relation_ok", True)
    return report
