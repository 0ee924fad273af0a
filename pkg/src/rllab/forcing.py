"""Zero forcing and rigid-linkage forcing as explicit state machines.

A :class:`ForcingState` records the blue set, the active blue vertices (the
current chain tails) and the force history. States are immutable; applying a
move returns a new state that remembers its predecessor, so a trace can be
unwound step by step.

Two rules are supported:

``z``
    a blue vertex with exactly one white neighbour forces it.
``rl``
    pick a component K of the white vertices whose boundary holds no inactive
    blue vertex; an active vertex whose only white neighbour inside K is w
    forces w, then stops being active while w becomes active.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .errors import Budget, BudgetExceeded, IllegalMoveError, NotRigidError, PreconditionError, as_budget
from .graph import Graph, component_masks, iter_bits, mask_of, neighborhood_mask, popcount, to_set
from .linkage import Linkage, orient

RULES = ("z", "rl")


class Move(NamedTuple):
    component: frozenset
    u: int
    w: int


@dataclass(frozen=True)
class ForcingState:
    graph: Graph = field(repr=False)
    rule: str
    initial_mask: int
    blue_mask: int
    active_mask: int
    chains: tuple[tuple[int, ...], ...]
    forces: tuple[tuple[int, int], ...] = ()
    previous: "ForcingState | None" = field(default=None, compare=False, repr=False)

    @property
    def initial(self) -> frozenset[int]:
        return to_set(self.initial_mask)

    @property
    def blue(self) -> frozenset[int]:
        return to_set(self.blue_mask)

    @property
    def active(self) -> frozenset[int]:
        return to_set(self.active_mask)

    @property
    def white(self) -> frozenset[int]:
        return to_set(self.graph.full_mask & ~self.blue_mask)

    @property
    def chain_tails(self) -> dict[int, int]:
        """Active vertex -> the initial vertex its chain started from."""
        return {c[-1]: c[0] for c in self.chains}

    @property
    def key(self) -> tuple[int, int]:
        return self.blue_mask, self.active_mask

    def undo(self) -> "ForcingState":
        if self.previous is None:
            raise IllegalMoveError("no force to undo")
        return self.previous

    def is_complete(self) -> bool:
        return self.blue_mask == self.graph.full_mask


@dataclass(frozen=True)
class ChainSet:
    chains: Linkage
    start: frozenset[int]
    end: frozenset[int]
    oriented: tuple[tuple[int, ...], ...]


def start_state(g: Graph, b0: Iterable[int], rule: str = "rl") -> ForcingState:
    if rule not in RULES:
        raise PreconditionError(f"unknown forcing rule {rule!r}; use one of {RULES}")
    m = g.mask(b0)
    chains = tuple((v,) for v in iter_bits(m))
    return ForcingState(g, rule, m, m, m, chains)


def _z_moves(g: Graph, blue: int) -> list[tuple[int, int, int]]:
    adj = g.adj
    white = g.full_mask & ~blue
    out = []
    for u in iter_bits(blue):
        nb = adj[u] & white
        if nb and nb & (nb - 1) == 0:
            out.append((0, u, nb.bit_length() - 1))
    return out


def _rl_moves(g: Graph, blue: int, active: int) -> list[tuple[int, int, int]]:
    adj = g.adj
    inactive = blue & ~active
    out = []
    for comp in component_masks(g, g.full_mask & ~blue):
        bd = neighborhood_mask(g, comp) & ~comp
        if bd & inactive:
            continue
        for u in iter_bits(bd & active):
            nb = adj[u] & comp
            if nb & (nb - 1) == 0:
                out.append((comp, u, nb.bit_length() - 1))
    return out


def _raw_moves(s: ForcingState) -> list[tuple[int, int, int]]:
    if s.rule == "z":
        return _z_moves(s.graph, s.blue_mask)
    return _rl_moves(s.graph, s.blue_mask, s.active_mask)


def _component_of(g: Graph, blue: int, w: int) -> int:
    for comp in component_masks(g, g.full_mask & ~blue):
        if comp >> w & 1:
            return comp
    raise AssertionError("forced vertex must be white")


def legal_moves(s: ForcingState) -> list[Move]:
    """Legal next forces under the state's rule, in deterministic order."""
    out = []
    for comp, u, w in _raw_moves(s):
        if s.rule == "z":
            comp = _component_of(s.graph, s.blue_mask, w)
        out.append(Move(to_set(comp), u, w))
    return out


def rl_moves(g: Graph, s: ForcingState) -> list[Move]:
    """Legal RL-forces from ``s``: ordered by component minimum, then u, then w."""
    if s.graph != g:
        raise PreconditionError("state belongs to a different graph")
    moves = _rl_moves(g, s.blue_mask, s.active_mask)
    return [Move(to_set(c), u, w) for c, u, w in moves]


def _advance(s: ForcingState, u: int, w: int) -> ForcingState:
    chains = tuple(c + (w,) if c[-1] == u else c for c in s.chains)
    return ForcingState(
        s.graph, s.rule, s.initial_mask,
        s.blue_mask | (1 << w),
        (s.active_mask & ~(1 << u)) | (1 << w),
        chains,
        s.forces + ((u, w),),
        s,
    )


def apply_force(s: ForcingState, u: int, w: int) -> ForcingState:
    """Apply ``u -> w`` under the state's rule or raise :class:`IllegalMoveError`."""
    for _, mu, mw in _raw_moves(s):
        if mu == u and mw == w:
            return _advance(s, u, w)
    raise IllegalMoveError(f"{u} -> {w} is not a legal {s.rule.upper()}-force here")


def rl_apply(s: ForcingState, move: Move | tuple) -> ForcingState:
    """Apply an RL move given as a :class:`Move` or a ``(u, w)`` pair."""
    if s.rule != "rl":
        raise PreconditionError("rl_apply needs an RL-forcing state")
    if isinstance(move, Move):
        u, w = move.u, move.w
        for comp, mu, mw in _rl_moves(s.graph, s.blue_mask, s.active_mask):
            if (mu, mw) == (u, w) and to_set(comp) == move.component:
                return _advance(s, u, w)
        raise IllegalMoveError(f"{u} -> {w} in {sorted(move.component)} is not a legal RL-force here")
    u, w = move
    return apply_force(s, u, w)


# zero forcing ----------------------------------------------------------------------

def z_closure(g: Graph, b0: Iterable[int]) -> tuple[frozenset[int], list[tuple[int, int]]]:
    """Derived set of ``b0`` and the forces used, smallest forcing vertex first."""
    blue = g.mask(b0)
    forces = []
    while True:
        moves = _z_moves(g, blue)
        if not moves:
            break
        _, u, w = moves[0]
        blue |= 1 << w
        forces.append((u, w))
    return to_set(blue), forces


def _closure_mask(g: Graph, blue: int) -> int:
    adj = g.adj
    full = g.full_mask
    changed = True
    while changed:
        changed = False
        white = full & ~blue
        for u in iter_bits(blue):
            nb = adj[u] & white
            if nb and nb & (nb - 1) == 0:
                blue |= nb
                white &= ~nb
                changed = True
    return blue


def z_process(g: Graph, b0: Iterable[int]) -> ForcingState:
    """Run CCR-Z to completion with the deterministic tie-break of :func:`z_closure`."""
    s = start_state(g, b0, "z")
    while True:
        moves = _z_moves(g, s.blue_mask)
        if not moves:
            return s
        _, u, w = moves[0]
        s = _advance(s, u, w)


def is_zero_forcing_set(g: Graph, b: Iterable[int]) -> bool:
    return _closure_mask(g, g.mask(b)) == g.full_mask


def zero_forcing_witness(g: Graph, limit: int = 20) -> frozenset[int]:
    """A minimum zero forcing set (first in lexicographic order of each size)."""
    if g.n == 0:
        raise PreconditionError("zero forcing number of the empty graph is undefined")
    if g.n > limit:
        raise BudgetExceeded(f"exact zero forcing search is limited to n <= {limit}")
    full = g.full_mask
    for k in range(1, g.n + 1):
        for b in combinations(g.vertices, k):
            if _closure_mask(g, mask_of(b)) == full:
                return frozenset(b)
    raise AssertionError("the full vertex set always forces")


def zero_forcing_number(g: Graph, limit: int = 20) -> int:
    return len(zero_forcing_witness(g, limit))


# exploration -----------------------------------------------------------------------

def _walk(s0: ForcingState, budget: Budget, by_chains: bool = False) -> Iterator[ForcingState]:
    """Every state reachable from ``s0`` (``s0`` included), each once.

    States are identified by (blue, active), which fixes every future move.
    With ``by_chains`` the identity is the oriented chain set instead, so
    histories that produce different chains are kept apart.
    """
    seen = set()
    stack = [s0]
    while stack:
        s = stack.pop()
        key = frozenset(s.chains) if by_chains else s.key
        if key in seen:
            continue
        seen.add(key)
        budget.tick()
        yield s
        moves = _raw_moves(s)
        for _, u, w in reversed(moves):
            stack.append(_advance(s, u, w))


def reachable_states(s0: ForcingState, budget: Budget | int | None = None) -> list[ForcingState]:
    return list(_walk(s0, as_budget(budget)))


def rl_reachable_states(g: Graph, s0: ForcingState, budget: Budget | int | None = None) -> list[ForcingState]:
    if s0.graph != g or s0.rule != "rl":
        raise PreconditionError("expected an RL-forcing state on this graph")
    return reachable_states(s0, budget)


def rl_explore(
    g: Graph,
    b0: Iterable[int] | ForcingState,
    goal: Iterable[int] | None = None,
    budget: Budget | int | None = None,
    rule: str = "rl",
) -> list[ForcingState]:
    """Explore every forcing process from ``b0`` (a vertex set or a state).

    Without ``goal`` the result is all maximal states (no legal move left);
    with ``goal`` it is all reached states whose active set equals ``goal``.
    Results are deduplicated on (blue, active) and sorted by that key.
    """
    s0 = b0 if isinstance(b0, ForcingState) else start_state(g, b0, rule)
    goal_mask = None if goal is None else g.mask(goal)
    out = []
    for s in _walk(s0, as_budget(budget)):
        if goal_mask is None:
            if not _raw_moves(s):
                out.append(s)
        elif s.active_mask == goal_mask:
            out.append(s)
    out.sort(key=lambda s: (popcount(s.blue_mask), sorted(s.blue), sorted(s.active)))
    return out


def rl_forcing_number(g: Graph, budget: Budget | int | None = None) -> int:
    """Least |B0| from which some RL-forcing process turns every vertex blue.

    Computed from the RL rule alone, without consulting zero forcing.
    """
    if g.n == 0:
        raise PreconditionError("RL-forcing number of the empty graph is undefined")
    budget = as_budget(budget)
    full = g.full_mask
    for k in range(1, g.n + 1):
        for b in combinations(g.vertices, k):
            for s in _walk(start_state(g, b, "rl"), budget):
                if s.blue_mask == full:
                    return k
    raise AssertionError("the full vertex set is trivially complete")


# chain sets ---------------------------------------------------------------------------

def extract_chain_set(s: ForcingState) -> ChainSet:
    """Forcing chains of ``s``: one path per initial vertex, ending at the
    currently active vertex (a lone vertex if it never forced)."""
    return ChainSet(Linkage.of(s.chains), s.initial, s.active, s.chains)


def all_chain_sets(g: Graph, rule: str = "rl", spanning_only: bool = False,
                   budget: Budget | int | None = None) -> set[Linkage]:
    """Chain sets over all initial sets and all processes.

    For ``rl`` every prefix of a process counts (a process may stop at any
    time). For ``z`` only processes that colour the whole graph count, which
    is the notion used for spanning chain sets.
    """
    budget = as_budget(budget)
    full = g.full_mask
    out: set[Linkage] = set()
    for k in range(1, g.n + 1):
        for b in combinations(g.vertices, k):
            if rule == "z" and _closure_mask(g, mask_of(b)) != full:
                continue
            for s in _walk(start_state(g, b, rule), budget, by_chains=True):
                if rule == "z" and s.blue_mask != full:
                    continue
                if spanning_only and s.blue_mask != full:
                    continue
                out.add(Linkage.of(s.chains))
    return out


def realize_rigid_linkage(g: Graph, p: Linkage, alpha: Iterable[int], beta: Iterable[int],
                          ) -> ForcingState:
    """An RL-forcing process from ``alpha`` whose chain set is ``p``.

    Each step forces along a path of ``p`` from its current tail u to the next
    path vertex w, and only when w is u's sole neighbour among the effective
    white vertices (white components that still meet ``beta``). If no such
    step exists before ``p`` is traced out, ``p`` was not (alpha, beta)-rigid.
    """
    paths = orient(p, alpha, beta)
    if paths is None:
        raise PreconditionError("p is not an (alpha, beta)-linkage")
    beta_mask = g.mask(beta)
    s = start_state(g, alpha, "rl")
    pos = {q[0]: 0 for q in paths}
    route = {q[0]: q for q in paths}
    full_mask = p.mask
    while s.blue_mask != (s.blue_mask | full_mask):
        effective = 0
        for comp in component_masks(g, g.full_mask & ~s.blue_mask):
            if comp & beta_mask:
                effective |= comp
        step = None
        for a in sorted(route):
            q = route[a]
            i = pos[a]
            if i + 1 >= len(q):
                continue
            u, w = q[i], q[i + 1]
            if g.adj[u] & effective == 1 << w:
                step = (a, u, w)
                break
        if step is None:
            raise NotRigidError("no force along the linkage is available; it is not rigid")
        a, u, w = step
        try:
            s = apply_force(s, u, w)
        except IllegalMoveError as exc:
            raise NotRigidError(f"force {u} -> {w} breaks the RL rule: {exc}") from exc
        pos[a] += 1
    return s
