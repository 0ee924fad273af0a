"""Command-line front end.

Every command prints one JSON report to stdout (and optionally to a file).
Exit codes: 0 verified / ok, 1 a bound that must hold failed, 2 search budget
exhausted or eigenvalue clustering too close to call, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .errors import (
    Budget,
    BudgetExceeded,
    ClusteringAmbiguous,
    GraphError,
    InputError,
    PreconditionError,
    PropertyViolation,
    default_budget,
)
from .families import catalog, fixture_corpus, parse_family, t_matrix
from .forcing import (
    extract_chain_set,
    legal_moves,
    rl_explore,
    rl_forcing_number,
    start_state,
    zero_forcing_witness,
    apply_force,
)
from .graph import Graph, load_graph
from .linkage import (
    Linkage,
    is_rigid,
    is_rigid_any_labeling,
    is_rigid_shortest,
    is_unique_linkage,
    is_vital,
    rigid_linkage_search,
    rigid_shortest_linkage_search,
)
from .spectral import (
    adjacency_matrix,
    cycledet,
    float_matrix,
    load_matrix,
    minor_det,
    sample_matrix,
    spectrum,
    verify_nullity_bound,
    verify_q_bounds,
)
from .structure import has_X_minor, is_two_parallel_paths, treewidth_decomposition
from .verify import verify_all

EXIT_OK, EXIT_VIOLATION, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3

GRAPH_COMMANDS = {"force", "certify", "rl-number", "rsl-number", "z-number", "det-expand",
                  "verify-bounds", "treewidth"}


@dataclass
class RunConfig:
    """Everything needed to reproduce a run; embedded in every report."""

    command: str
    graph_file: str | None = None
    family: str | None = None
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    budget: int | None = None
    output: str | None = None

    def validate(self) -> None:
        if self.command in GRAPH_COMMANDS and (self.graph_file is None) == (self.family is None):
            raise InputError("give exactly one graph source: --graph FILE or --family SPEC")
        if self.budget is not None and self.budget <= 0:
            raise InputError("budget must be positive")

    def load_graph(self) -> Graph:
        if self.family is not None:
            return parse_family(self.family)
        return load_graph(self.graph_file)

    def make_budget(self) -> Budget:
        return Budget(self.budget if self.budget is not None else default_budget())


def _vertices(text: str | None) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"vertex list {text!r} must be comma-separated integers") from exc


def _paths(text: str | None) -> Linkage:
    """Parse ``1-2-3;4-5`` into a linkage."""
    if not text:
        raise InputError("--paths is required, e.g. --paths 1-2-3;4-5")
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            out.append([int(x) for x in chunk.split("-")])
        except ValueError as exc:
            raise InputError(f"bad path {chunk!r}") from exc
    return Linkage.of(out)


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, Linkage):
        return x.to_json()
    return x


# commands ------------------------------------------------------------------------------

def _cmd_force(cfg: RunConfig, g: Graph, budget: Budget) -> tuple[int, dict]:
    p = cfg.params
    rule = p.get("rule", "rl")
    b0 = _vertices(p.get("initial"))
    goal = p.get("goal")
    goal_mask = None if goal is None else g.mask(_vertices(goal))
    s = start_state(g, b0, rule)
    steps = [{"blue": sorted(s.blue), "active": sorted(s.active)}]
    while goal_mask is None or s.active_mask != goal_mask:
        moves = legal_moves(s)
        if not moves:
            break
        mv = moves[0]
        s = apply_force(s, mv.u, mv.w)
        steps.append({"force": [mv.u, mv.w], "blue": sorted(s.blue), "active": sorted(s.active)})
    chains = extract_chain_set(s)
    goal_vs = None if goal is None else _vertices(goal)
    finals = rl_explore(g, b0, goal=goal_vs, budget=budget, rule=rule)
    terminals = [{"blue": sorted(t.blue), "active": sorted(t.active),
                  "forces": [list(f) for f in t.forces], "complete": t.is_complete()} for t in finals]
    report = {
        "rule": rule,
        "initial": sorted(b0),
        "trace": {"forces": [list(f) for f in s.forces], "steps": steps,
                  "chain_set": chains.chains.to_json(), "complete": s.is_complete()},
        "terminal_states" if goal is None else "goal_states": terminals,
        "final_blue_sizes": sorted({len(t["blue"]) for t in terminals}),
        "stalled_state_exists": any(not t["complete"] for t in terminals),
    }
    return EXIT_OK, report


def _cmd_certify(cfg: RunConfig, g: Graph, budget: Budget) -> tuple[int, dict]:
    p = cfg.params
    prop = p.get("property")
    if prop == "two-parallel-paths":
        return EXIT_OK, {"property": prop, "value": is_two_parallel_paths(g)}
    lk = _paths(p.get("paths"))
    alpha, beta = _vertices(p.get("alpha")), _vertices(p.get("beta"))
    have_labels = bool(alpha or beta)
    out: dict[str, Any] = {"property": prop, "paths": lk.to_json()}
    if prop == "rigid":
        if have_labels:
            out["value"] = is_rigid(g, lk, alpha, beta, budget)
        else:
            lab = is_rigid_any_labeling(g, lk, budget)
            out["value"] = lab is not None
            if lab is not None:
                out["alpha"], out["beta"] = sorted(lab[0]), sorted(lab[1])
    elif prop == "unique":
        out["value"] = is_unique_linkage(g, lk, budget)
    elif prop == "vital":
        out["value"] = is_vital(g, lk, budget)
    elif prop == "rigid-shortest":
        if not have_labels:
            raise InputError("rigid-shortest needs --alpha and --beta")
        out["value"] = is_rigid_shortest(g, lk, alpha, beta, budget)
    elif prop == "x-minor":
        if not have_labels:
            raise InputError("x-minor needs --alpha and --beta")
        out["value"] = has_X_minor(g, lk, alpha, beta)
    else:
        raise InputError(f"unknown property {prop!r}")
    if have_labels:
        out["alpha"], out["beta"] = sorted(alpha), sorted(beta)
    return EXIT_OK, out


def _cmd_extremal(cfg: RunConfig, g: Graph, budget: Budget, rsl: bool) -> tuple[int, dict]:
    t = cfg.params.get("t")
    if t is None:
        raise InputError("--t is required")
    search = rigid_shortest_linkage_search if rsl else rigid_linkage_search
    return EXIT_OK, search(g, int(t), budget).to_certificate()


def _cmd_z(cfg: RunConfig, g: Graph, budget: Budget) -> tuple[int, dict]:
    w = zero_forcing_witness(g)
    out = {"query": "Z", "value": len(w), "witness": sorted(w)}
    if cfg.params.get("rl"):
        zrl = rl_forcing_number(g, budget)
        out["Z_RL"] = zrl
        if zrl != len(w):
            raise PropertyViolation(f"Z_RL = {zrl} differs from Z = {len(w)}")
    return EXIT_OK, out


def _cmd_det(cfg: RunConfig, g: Graph, budget: Budget) -> tuple[int, dict]:
    p = cfg.params
    if p.get("matrix"):
        a = load_matrix(p["matrix"], g)
    else:
        a = sample_matrix(g, cfg.seed)
    alpha, beta = _vertices(p.get("alpha")), _vertices(p.get("beta"))
    expansion = cycledet(a, alpha, beta, g)
    direct = minor_det(a, alpha, beta)
    equal = expansion == direct if a.exact else abs(expansion - direct) <= 1e-9 * max(1.0, abs(direct))
    out = {"alpha": sorted(alpha), "beta": sorted(beta), "exact": a.exact,
           "expansion": _jsonable(expansion), "determinant": _jsonable(direct), "equal": equal}
    if not equal:
        raise PropertyViolation(f"expansion {expansion} differs from determinant {direct}")
    return EXIT_OK, out


def _cmd_spectra(cfg: RunConfig) -> tuple[int, dict]:
    p = cfg.params
    tol = float(p.get("tol") or 1e-9)
    if p.get("matrix"):
        a = load_matrix(p["matrix"]).to_numpy()
        source = {"matrix": p["matrix"]}
    elif cfg.family:
        name, _, arg = cfg.family.partition(":")
        if name.lower() in ("tk", "t_k", "t"):
            a = t_matrix(int(arg))
            source = {"family": cfg.family, "matrix": "adjacency with sqrt(2) at the center"}
        else:
            a = adjacency_matrix(parse_family(cfg.family)).to_numpy()
            source = {"family": cfg.family, "matrix": "adjacency"}
    else:
        raise InputError("spectra needs --family or --matrix")
    rep = spectrum(a, tol)
    return EXIT_OK, {"source": source, "tol": tol, **rep.to_json()}


def _cmd_bounds(cfg: RunConfig, g: Graph, budget: Budget) -> tuple[int, dict]:
    p = cfg.params
    t = int(p.get("t") or 1)
    rsl = bool(p.get("rsl"))
    seeds = int(p.get("seeds") or 10)
    tol = float(p.get("tol") or 1e-8)
    cert = (rigid_shortest_linkage_search if rsl else rigid_linkage_search)(g, t, budget)
    rigid_witness = cert.exists and is_rigid(g, cert.witness, cert.alpha, cert.beta, budget)
    runs = []
    for k in range(seeds):
        seed = cfg.seed + k
        a = sample_matrix(g, seed)
        q = verify_q_bounds(g, float_matrix(a.to_numpy(), g), t, use_rsl=rsl, tol=tol, budget=budget)
        entry = {"seed": seed, "q_list": q["q_list"], "sum_q": q["sum_q"], "holds": q["holds"]}
        if rigid_witness:
            n = verify_nullity_bound(a, cert.witness, cert.alpha, cert.beta)
            entry["nullity_slack"] = n["slack"]
        runs.append(entry)
    out = {"t": t, "quantity": "RSL" if rsl else "RL", "value": cert.value,
           "certificate": cert.to_certificate(), "seeds": seeds, "runs": runs,
           "all_pass": all(r["holds"] for r in runs)}
    return EXIT_OK, out


def _cmd_treewidth(cfg: RunConfig, g: Graph) -> tuple[int, dict]:
    limit = int(cfg.params.get("limit") or 10)
    width, td = treewidth_decomposition(g, limit)
    return EXIT_OK, {"value": width, "bags": [sorted(b) for b in td.bags],
                     "tree_edges": [list(e) for e in td.tree.edges]}


def _cmd_families(cfg: RunConfig) -> tuple[int, dict]:
    action = cfg.params.get("action") or "list"
    if action != "list":
        raise InputError(f"unknown families action {action!r}")
    recs = fixture_corpus()
    return EXIT_OK, {
        "families": catalog(),
        "records": [{"family": r.family, "quantity": r.quantity, "expected": r.expected,
                     "basis": r.basis, "note": r.note} for r in recs],
    }


def _cmd_verify_all(cfg: RunConfig, budget: Budget) -> tuple[int, dict]:
    summary = verify_all(cfg.params.get("filter"), budget=budget)
    code = EXIT_OK
    if summary["counts"]["fail"]:
        code = EXIT_VIOLATION
    elif summary["counts"]["budget"]:
        code = EXIT_BUDGET
    return code, summary


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute ``cfg`` and return ``(exit code, report)``; never raises for
    the package's own error types."""
    report: dict[str, Any] = {"config": asdict(cfg), "version": __version__}
    try:
        cfg.validate()
        budget = cfg.make_budget()
        cmd = cfg.command
        g = cfg.load_graph() if cmd in GRAPH_COMMANDS else None
        if cmd == "force":
            code, body = _cmd_force(cfg, g, budget)
        elif cmd == "certify":
            code, body = _cmd_certify(cfg, g, budget)
        elif cmd == "rl-number":
            code, body = _cmd_extremal(cfg, g, budget, rsl=False)
        elif cmd == "rsl-number":
            code, body = _cmd_extremal(cfg, g, budget, rsl=True)
        elif cmd == "z-number":
            code, body = _cmd_z(cfg, g, budget)
        elif cmd == "det-expand":
            code, body = _cmd_det(cfg, g, budget)
        elif cmd == "spectra":
            code, body = _cmd_spectra(cfg)
        elif cmd == "verify-bounds":
            code, body = _cmd_bounds(cfg, g, budget)
        elif cmd == "treewidth":
            code, body = _cmd_treewidth(cfg, g)
        elif cmd == "families":
            code, body = _cmd_families(cfg)
        elif cmd == "verify-all":
            code, body = _cmd_verify_all(cfg, budget)
        else:
            raise InputError(f"unknown command {cmd!r}")
        report.update(_jsonable(body))
    except PropertyViolation as exc:
        code = EXIT_VIOLATION
        report["error"] = {"type": "PropertyViolation", "message": str(exc)}
    except (BudgetExceeded, ClusteringAmbiguous) as exc:
        code = EXIT_BUDGET
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except (GraphError, InputError, PreconditionError, OSError) as exc:
        code = EXIT_INPUT
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
    report["exit_code"] = code
    return code, report


# argument parsing ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rllab", description="Rigid linkages, forcing and eigenvalue bounds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--graph", dest="graph_file", help="graph file (JSON or edge list)")
    src.add_argument("--family", help="named family, e.g. whirl, hypercube:3, cycle:5*path:2")
    common.add_argument("--budget", type=int, help="search node budget (default: RLLAB_BUDGET or 1e8)")
    common.add_argument("--seed", type=int, default=0, help="base seed for sampled matrices")
    common.add_argument("--output", "-o", help="also write the JSON report here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("force", parents=[common], help="run and explore a forcing process")
    p.add_argument("--rule", choices=("z", "rl"), default="rl")
    p.add_argument("--initial", required=True, help="initial blue set, e.g. 1,2,3")
    p.add_argument("--goal", help="explore to states whose active set is this")

    p = sub.add_parser("certify", parents=[common], help="test a linkage property")
    p.add_argument("--property", required=True,
                   choices=("rigid", "unique", "vital", "rigid-shortest", "two-parallel-paths", "x-minor"))
    p.add_argument("--paths", help="linkage as 1-2-3;4-5")
    p.add_argument("--alpha")
    p.add_argument("--beta")

    for name, what in (("rl-number", "RL(t)"), ("rsl-number", "RSL(t)")):
        p = sub.add_parser(name, parents=[common], help=f"compute {what} with a witness")
        p.add_argument("--t", type=int, required=True)

    p = sub.add_parser("z-number", parents=[common], help="zero forcing number with a witness")
    p.add_argument("--rl", action="store_true", help="also compute Z_RL independently")

    p = sub.add_parser("det-expand", parents=[common], help="minor via the linear subgraph expansion")
    p.add_argument("--matrix", help="matrix JSON file; otherwise a seeded sample")
    p.add_argument("--alpha", default="")
    p.add_argument("--beta", default="")

    p = sub.add_parser("spectra", parents=[common], help="eigenvalues with multiplicities")
    p.add_argument("--matrix", help="matrix JSON file")
    p.add_argument("--tol", type=float, default=1e-9)

    p = sub.add_parser("verify-bounds", parents=[common], help="check sum q_i >= RL(t) / RSL(t)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--rsl", action="store_true")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("treewidth", parents=[common], help="exact treewidth with a decomposition")
    p.add_argument("--limit", type=int, default=10)

    p = sub.add_parser("families", parents=[common], help="list named families and known values")
    p.add_argument("action", nargs="?", default="list", choices=("list",))

    p = sub.add_parser("verify-all", parents=[common], help="replay all known values")
    p.add_argument("--filter", help="only this family, e.g. tk")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    skip = {"command", "graph_file", "family", "seed", "budget", "output"}
    params = {k: v for k, v in vars(ns).items() if k not in skip and v is not None}
    return RunConfig(ns.command, ns.graph_file, ns.family, params, ns.seed, ns.budget, ns.output)


def config_from_json(obj: dict) -> RunConfig:
    return RunConfig(**obj)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code is reserved for budgets
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = config_from_args(ns)
    code, report = run(cfg)
    text = json.dumps(report, indent=2)
    print(text)
    if cfg.output:
        try:
            Path(cfg.output).write_text(text + "\n")
        except OSError as exc:
            print(f"could not write {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return code
