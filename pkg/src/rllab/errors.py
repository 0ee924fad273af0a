"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so the split between "the input was bad",
"the search ran out of budget" and "a claimed inequality failed" matters.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**8


class RLLabError(Exception):
    """Base class for all package errors."""


class GraphError(RLLabError, ValueError):
    """Malformed graph input (asymmetric adjacency, loops, bad labels, duplicates)."""


class InputError(RLLabError, ValueError):
    """Malformed non-graph input: matrix files, vertex lists, family specs."""


class PreconditionError(RLLabError, ValueError):
    """An operation was called outside its documented precondition."""


class NotRigidError(PreconditionError):
    """A linkage that was required to be rigid is not."""


class IsAPathError(PreconditionError):
    """Raised where a graph that is itself a path is excluded."""


class IllegalMoveError(RLLabError, ValueError):
    """A forcing move was applied that is not currently legal."""


class BudgetExceeded(RLLabError, RuntimeError):
    """A combinatorial search exhausted its node budget."""


class ClusteringAmbiguous(RLLabError, ArithmeticError):
    """Eigenvalue gaps fall in the band where multiplicities are unreliable."""


class PropertyViolation(RLLabError, AssertionError):
    """A bound that must hold for every input failed; always a bug signal."""


def default_budget() -> int:
    """Search-node budget, overridable through ``RLLAB_BUDGET``."""
    raw = os.environ.get("RLLAB_BUDGET")
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise InputError(f"RLLAB_BUDGET must be a positive integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError(f"RLLAB_BUDGET must be positive, got {value}")
    return value


class Budget:
    """Counts search nodes and raises :class:`BudgetExceeded` past the limit."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else int(limit)
        if self.limit <= 0:
            raise InputError("budget must be positive")
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(f"search budget of {self.limit} nodes exhausted")


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
