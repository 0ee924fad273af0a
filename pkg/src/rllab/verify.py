"""Replay the table of known values plus a handful of property checks."""

from __future__ import annotations

import re
import time
from collections.abc import Callable, Sequence
from typing import Any

from .errors import Budget, BudgetExceeded, PropertyViolation, RLLabError, as_budget
from .families import (
    FixtureRecord,
    cycle_matrix,
    fixture_corpus,
    hypercube_matrix,
    parse_family,
    t_matrix,
    two_eigenvalue_bipartite_matrix,
    whirl_matrix,
)
from .forcing import all_chain_sets, rl_forcing_number, zero_forcing_number
from .linkage import (
    all_rigid_linkages,
    rigid_linkage_number,
    rigid_linkage_search,
    rigid_shortest_linkage_number,
)
from .spectral import (
    adjacency_matrix,
    float_matrix,
    sample_matrix,
    spectrum,
    tk_relation_check,
    verify_nullity_bound,
    verify_q_bounds,
)

_ORDER_Q = re.compile(r"^(RL|RSL)\((\d+)\)$")
SPECTRUM_TOL = 1e-9


def family_key(spec: str) -> str:
    """Base family name of a spec, so ``tk:3`` and ``t_k:2`` both give ``tk``."""
    from .families import _ALIASES

    name = spec.split(":", 1)[0].split("*", 1)[0].strip().lower()
    return _ALIASES.get(name, name)


def evaluate(rec: FixtureRecord, budget: Budget | None = None) -> Any:
    g = parse_family(rec.family)
    q = rec.quantity
    m = _ORDER_Q.match(q)
    if m:
        fn = rigid_linkage_number if m.group(1) == "RL" else rigid_shortest_linkage_number
        return fn(g, int(m.group(2)), budget)
    if q == "Z":
        return zero_forcing_number(g)
    if q == "Z_RL":
        return rl_forcing_number(g, budget)
    if q == "vertices":
        return g.n
    if q == "spectrum":
        rep = spectrum(adjacency_matrix(g), SPECTRUM_TOL)
        return [[v, mult] for v, mult in zip(rep.values, rep.multiplicities)]
    if q == "multiplicity_list":
        k = int(rec.family.split(":")[1])
        return list(spectrum(t_matrix(k), SPECTRUM_TOL).m)
    raise ValueError(f"unknown quantity {q!r}")


def matches(rec: FixtureRecord, got: Any) -> bool:
    if rec.quantity == "spectrum":
        exp = rec.expected
        return len(exp) == len(got) and all(
            m1 == m2 and abs(v1 - v2) <= 1e-9 * max(1.0, abs(v1)) for (v1, m1), (v2, m2) in zip(exp, got))
    return got == rec.expected


# property suites ---------------------------------------------------------------------

def _prop_chain_sets() -> tuple[bool, str]:
    bad = []
    for spec in ("paw", "x_fixture", "xx_fixture", "path:4", "cycle:5", "complete:4"):
        g = parse_family(spec)
        if set(all_rigid_linkages(g)) != all_chain_sets(g, "rl"):
            bad.append(spec)
    return not bad, "mismatch on " + ", ".join(bad) if bad else "rigid linkages = RL-chain sets"


def _prop_z_rl() -> tuple[bool, str]:
    bad = []
    for spec in ("paw", "fig5", "cycle:6", "complete_bipartite:2,3", "hk:2"):
        g = parse_family(spec)
        if rl_forcing_number(g) != zero_forcing_number(g):
            bad.append(spec)
    return not bad, "Z_RL != Z on " + ", ".join(bad) if bad else "Z_RL = Z"


def _prop_nullity() -> tuple[bool, str]:
    checked = 0
    for spec in ("fig5", "paw", "cycle:6", "whirl"):
        g = parse_family(spec)
        for t in (1, 2):
            cert = rigid_linkage_search(g, t)
            if not cert.exists:
                continue
            for seed in range(5):
                a = sample_matrix(g, seed)
                verify_nullity_bound(a, cert.witness, cert.alpha, cert.beta)
                checked += 1
        a = adjacency_matrix(g)
        cert = rigid_linkage_search(g, 1)
        for lam in (0, 1, -1, 2):
            verify_nullity_bound(a, cert.witness, cert.alpha, cert.beta, shift=lam)
            checked += 1
    return True, f"{checked} nullity checks"


def _prop_q_tight(label: str, spec: str, mat, ts: Sequence[int], rsl: bool,
                  tight: Sequence[int] | None = None) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        g = parse_family(spec)
        a = float_matrix(mat(), g)
        eq = []
        for t in ts:
            rep = verify_q_bounds(g, a, t, use_rsl=rsl)
            eq.append(rep["equality"])
        want = [True] * len(ts) if tight is None else [t in tight for t in ts]
        ok = eq == want
        return ok, f"{label}: equality pattern {eq}"
    return run


def _prop_tk(k: int) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        rep = tk_relation_check(k, 1e-8)
        return rep["holds"], f"m = {rep['m']}, relation residual {rep.get('relation_residual')}"
    return run


def property_suite() -> list[tuple[str, str, Callable[[], tuple[bool, str]]]]:
    """``(family, name, check)`` triples; checks return ``(ok, detail)``."""
    return [
        ("paw", "rigid linkages are the RL-chain sets", _prop_chain_sets),
        ("fig5", "RL-forcing number equals Z", _prop_z_rl),
        ("fig5", "nullity bound for rigid linkages", _prop_nullity),
        ("whirl", "q-list (7,5,2,1) meets RL(t) for t = 1..4",
         _prop_q_tight("whirl", "whirl", whirl_matrix, range(1, 5), False)),
        ("complete", "K_5 adjacency meets RSL(t) for t = 1..4",
         _prop_q_tight("K_5", "complete:5", lambda: adjacency_matrix(parse_family("complete:5")).to_numpy(),
                       range(1, 5), True)),
        ("complete_bipartite", "K_{3,3} adjacency is tight exactly for t >= 2",
         _prop_q_tight("K_3,3", "complete_bipartite:3,3",
                       lambda: adjacency_matrix(parse_family("complete_bipartite:3,3")).to_numpy(),
                       range(1, 5), True, tight=(2, 3, 4))),
        ("complete_bipartite", "two-eigenvalue K_{3,3} matrix is tight at t = 1",
         _prop_q_tight("K_3,3 two eigenvalues", "complete_bipartite:3,3",
                       lambda: two_eigenvalue_bipartite_matrix(3), (1,), True)),
        ("hypercube", "Q_3 two-eigenvalue matrix meets RSL(t) = 2t",
         _prop_q_tight("Q_3", "hypercube:3", lambda: hypercube_matrix(3), range(1, 5), True)),
        ("cycle", "C_6 signed matrix meets RSL(t)",
         _prop_q_tight("C_6", "cycle:6", lambda: cycle_matrix(6), (1, 2), True)),
        ("cycle", "C_7 adjacency meets RSL(t)",
         _prop_q_tight("C_7", "cycle:7", lambda: cycle_matrix(7), (1, 2), True)),
        ("tk", "T_2 matrix multiplicity list", _prop_tk(2)),
        ("tk", "T_3 matrix multiplicity list and eigenvalue relation", _prop_tk(3)),
    ]


def verify_all(family: str | None = None, corpus: Sequence[FixtureRecord] | None = None,
               properties: bool = True, budget: Budget | int | None = None) -> dict:
    """Replay records (and property checks) whose family matches ``family``.

    The summary lists every item with expected value, computed value, status
    and runtime; ``ok`` is False if anything failed.
    """
    budget = as_budget(budget)
    want = None if family is None else family_key(family)
    items = []
    recs = fixture_corpus() if corpus is None else list(corpus)
    for rec in recs:
        if want is not None and family_key(rec.family) != want:
            continue
        t0 = time.perf_counter()
        entry = {"kind": "record", "family": rec.family, "quantity": rec.quantity,
                 "basis": rec.basis, "note": rec.note, "expected": rec.expected}
        try:
            got = evaluate(rec, budget)
            entry["got"] = got
            entry["status"] = "pass" if matches(rec, got) else "fail"
        except BudgetExceeded as exc:
            entry["got"] = None
            entry["status"] = "budget"
            entry["error"] = str(exc)
        except RLLabError as exc:
            entry["got"] = None
            entry["status"] = "fail"
            entry["error"] = f"{type(exc).__name__}: {exc}"
        entry["seconds"] = round(time.perf_counter() - t0, 4)
        items.append(entry)
    if properties:
        for fam, name, check in property_suite():
            if want is not None and fam != want:
                continue
            t0 = time.perf_counter()
            entry = {"kind": "property", "family": fam, "quantity": name}
            try:
                ok, detail = check()
                entry["status"] = "pass" if ok else "fail"
                entry["detail"] = detail
            except PropertyViolation as exc:
                entry["status"] = "fail"
                entry["detail"] = str(exc)
            except BudgetExceeded as exc:
                entry["status"] = "budget"
                entry["detail"] = str(exc)
            entry["seconds"] = round(time.perf_counter() - t0, 4)
            items.append(entry)
    counts = {s: sum(1 for i in items if i["status"] == s) for s in ("pass", "fail", "budget")}
    return {"ok": counts["fail"] == 0 and counts["budget"] == 0, "counts": counts,
            "failed": [f"{i['family']} {i['quantity']}: {i.get('note', i.get('detail', ''))}"
                       for i in items if i["status"] != "pass"],
            "items": items}
