"""Command-line front end.

Subcommands: gen, solve, baseline, oracle, probcurve, circuit. Every
command is a pure function of its flags and input files; reruns produce
byte-identical output files (timing goes to stderr, never into files).
Exit codes: 0 success, 2 usage, 3 I/O or parse error, 4 oracle size
guard, 5 infeasible circuit current.

Units on the circuit command are SI (amps, ohms), scientific notation
welcome, e.g. --current 200e-6. CSV files use '.' decimals, LF line
endings, and 17 significant digits for floats.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .engine import (
    ORDER_FIXED,
    ORDER_RANDOM,
    BetaSchedule,
    EngineConfig,
    RunSummary,
    probcurve,
    run_trials,
)
from .graphs import (
    GraphParseError,
    generate_random_graph,
    load_graph,
    save_graph,
)
from .oracle import InstanceTooLargeError, brute_force_max_k_cut, chi_square_uniform
from .pbit import RngStream
from .reduction import (
    REPAIR_FIRST_HOT,
    REPAIR_RANDOM,
    reduce_problem,
    run_baseline_trials,
)
from .vo2 import (
    DriveCurrentError,
    MultiStateCell,
    Vo2Device,
    current_bounds,
    simulate_cycles,
)

_ORDER_BY_FLAG = {"random": ORDER_RANDOM, "fixed": ORDER_FIXED}


def _fmt(x) -> str:
    """Floats at 17 significant digits so reruns are byte-identical."""
    return format(float(x), ".17g")


def _write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(obj, indent=2, sort_keys=True))
        fh.write("\n")


def _write_lines(path, lines) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _schedule_from_args(parser, args) -> BetaSchedule:
    if args.beta_ramp is not None:
        parts = args.beta_ramp.split(":")
        try:
            lo, hi = (float(p) for p in parts)
        except ValueError:
            parser.error(f"--beta-ramp expects B0:B1, got {args.beta_ramp!r}")
        if lo < 0 or hi < 0:
            parser.error("--beta-ramp values must be non-negative")
        return BetaSchedule.linear(lo, hi)
    beta = 1.0 if args.beta is None else args.beta
    if beta < 0:
        parser.error("--beta must be non-negative")
    return BetaSchedule.constant(beta)


def _summary_results(summary: RunSummary) -> dict:
    return {
        "per_trial_best_cuts": [int(c) for c in summary.best_cuts],
        "histogram": [[cut, count] for cut, count in sorted(summary.histogram.items())],
        "mean_best_cut": summary.mean,
        "max_best_cut": summary.max,
        "best_trial": summary.best_trial,
        "best_assignment": summary.best_assignment.states.tolist(),
    }


def _trace_lines(summary: RunSummary, schedule: BetaSchedule, sweeps: int):
    betas = schedule.values(sweeps)
    yield "trial,sweep,beta,cut"
    for trial, result in enumerate(summary.results):
        for t, cut in enumerate(result.cut_trace):
            yield f"{trial},{t + 1},{_fmt(betas[t])},{cut}"


def cmd_gen(parser, args) -> int:
    if args.nodes < 0:
        parser.error("--nodes must be >= 0")
    if not (0.0 <= args.edge_prob <= 1.0):
        parser.error("--edge-prob must lie in [0, 1]")
    if args.seed < 0:
        parser.error("--seed must be >= 0")
    g = generate_random_graph(args.nodes, args.edge_prob, args.seed)
    comment = f"random graph nodes={args.nodes} edge-prob={_fmt(args.edge_prob)} seed={args.seed}"
    save_graph(g, args.out, header_comment=comment)
    print(f"n={g.n} m={g.m}")
    return 0


def _common_solver_checks(parser, args) -> None:
    if args.k < 2:
        parser.error("--k must be >= 2")
    if args.sweeps < 1:
        parser.error("--sweeps must be >= 1")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if args.seed < 0:
        parser.error("--seed must be >= 0")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")


def cmd_solve(parser, args) -> int:
    _common_solver_checks(parser, args)
    schedule = _schedule_from_args(parser, args)
    g = load_graph(args.graph)
    cfg = EngineConfig(
        k=args.k,
        sweeps=args.sweeps,
        trials=args.trials,
        schedule=schedule,
        update_order=_ORDER_BY_FLAG[args.order],
        master_seed=args.seed,
    )
    started = time.perf_counter()
    summary = run_trials(g, cfg, jobs=args.jobs)
    elapsed = time.perf_counter() - started

    doc = {
        "command": "solve",
        "config": {
            "k": cfg.k,
            "sweeps": cfg.sweeps,
            "trials": cfg.trials,
            "seed": cfg.master_seed,
            "order": cfg.update_order,
            "schedule": {
                "kind": schedule.kind,
                "beta_start": schedule.beta_start,
                "beta_end": schedule.beta_end,
            },
        },
        "graph": {"file": str(args.graph), "nodes": g.n, "edges": g.m},
        "results": _summary_results(summary),
    }
    _write_json(f"{args.out}.summary.json", doc)
    _write_lines(f"{args.out}.trace.csv", _trace_lines(summary, schedule, cfg.sweeps))
    print(f"best cut {summary.max} (mean {_fmt(summary.mean)}) over {cfg.trials} trials")
    print(f"wrote {args.out}.summary.json and {args.out}.trace.csv")
    print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    return 0


def cmd_baseline(parser, args) -> int:
    _common_solver_checks(parser, args)
    if args.beta < 0:
        parser.error("--beta must be non-negative")
    if args.penalty_a is not None and args.penalty_a <= 0:
        parser.error("--penalty-a must be positive")
    if args.penalty_b <= 0:
        parser.error("--penalty-b must be positive")
    g = load_graph(args.graph)
    problem = reduce_problem(g, args.k, penalty_a=args.penalty_a, penalty_b=args.penalty_b)
    cfg = EngineConfig(
        k=args.k,
        sweeps=args.sweeps,
        trials=args.trials,
        schedule=BetaSchedule.constant(args.beta),
        update_order=_ORDER_BY_FLAG[args.order],
        master_seed=args.seed,
    )
    started = time.perf_counter()
    summary = run_baseline_trials(problem, cfg, repair=args.repair, jobs=args.jobs)
    elapsed = time.perf_counter() - started

    doc = {
        "command": "baseline",
        "config": {
            "k": cfg.k,
            "sweeps": cfg.sweeps,
            "trials": cfg.trials,
            "seed": cfg.master_seed,
            "order": cfg.update_order,
            "schedule": {
                "kind": cfg.schedule.kind,
                "beta_start": cfg.schedule.beta_start,
                "beta_end": cfg.schedule.beta_end,
            },
        },
        "graph": {"file": str(args.graph), "nodes": g.n, "edges": g.m},
        "reduction": {
            "n_spins": problem.model.n_spins,
            "penalty_a": problem.emap.penalty_a,
            "penalty_b": problem.emap.penalty_b,
            "repair": args.repair,
        },
        "results": _summary_results(summary),
    }
    _write_json(f"{args.out}.summary.json", doc)
    _write_lines(f"{args.out}.trace.csv", _trace_lines(summary, cfg.schedule, cfg.sweeps))
    if args.export_model:
        _write_json(args.export_model, problem.to_json_dict())
    print(
        f"best decoded cut {summary.max} (mean {_fmt(summary.mean)}) "
        f"over {cfg.trials} trials on {problem.model.n_spins} spins"
    )
    print(f"wrote {args.out}.summary.json and {args.out}.trace.csv")
    print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    return 0


def cmd_oracle(parser, args) -> int:
    if args.k < 1:
        parser.error("--k must be >= 1")
    g = load_graph(args.graph)
    best_cut, best = brute_force_max_k_cut(g, args.k)
    print(
        json.dumps(
            {"cut": best_cut, "assignment": best.states.tolist()}, sort_keys=True
        )
    )
    return 0


def cmd_probcurve(parser, args) -> int:
    if args.k < 2:
        parser.error("--k must be >= 2")
    if args.step <= 0:
        parser.error("--step must be positive")
    if args.phi_max < args.phi_min:
        parser.error("--phi-max must be >= --phi-min")
    if args.samples < 1:
        parser.error("--samples must be >= 1")
    if args.beta < 0:
        parser.error("--beta must be non-negative")
    if args.seed < 0:
        parser.error("--seed must be >= 0")
    points = int((args.phi_max - args.phi_min) / args.step + 1e-9) + 1
    grid = [args.phi_min + i * args.step for i in range(points)]
    curve = probcurve(args.k, args.beta, grid, args.samples, RngStream(args.seed))

    alt_headers = ",".join(f"p_alt_{j + 1}_mc" for j in range(args.k - 1))
    lines = [f"phi,p_retain_mc,p_retain_analytic,{alt_headers},p_alt_analytic"]
    for i in range(len(curve.phi)):
        alts = ",".join(_fmt(v) for v in curve.p_alt_mc[i])
        lines.append(
            f"{_fmt(curve.phi[i])},{_fmt(curve.p_retain_mc[i])},"
            f"{_fmt(curve.p_retain_analytic[i])},{alts},{_fmt(curve.p_alt_analytic[i])}"
        )
    _write_lines(args.out, lines)
    print(f"wrote {args.out} ({points} grid points, {args.samples} samples each)")
    return 0


def _resolve_circuit_cell(parser, args) -> MultiStateCell:
    base_device = Vo2Device()
    base_r_series = None
    base_branches = None
    if args.params is not None:
        with open(args.params, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if "device" in doc:
            base_device = Vo2Device.from_dict(doc["device"])
            base_r_series = doc.get("r_series")
            base_branches = doc.get("branches")
        else:
            base_device = Vo2Device.from_dict(doc)

    def pick(flag, fallback, default):
        if flag is not None:
            return flag
        if fallback is not None:
            return fallback
        return default

    branches = int(pick(args.branches, base_branches, 4))
    if branches < 1:
        parser.error("--branches must be >= 1")
    if args.cycles < 1:
        parser.error("--cycles must be >= 1")
    if args.current <= 0:
        parser.error("--current must be positive")
    if args.seed < 0:
        parser.error("--seed must be >= 0")
    device = Vo2Device(
        r_ins=pick(args.r_ins, None, base_device.r_ins),
        r_met=pick(args.r_met, None, base_device.r_met),
        i_trig_nominal=pick(args.i_trig, None, base_device.i_trig_nominal),
        i_hold_nominal=pick(args.i_hold, None, base_device.i_hold_nominal),
        sigma_trig=pick(args.sigma_it, None, base_device.sigma_trig),
    )
    if device.sigma_trig < 0:
        parser.error("--sigma-it must be >= 0")
    r_series = float(pick(args.r_series, base_r_series, 2e3))
    return MultiStateCell.uniform(
        m=branches, i_source=args.current, device=device, r_series=r_series
    )


def cmd_circuit(parser, args) -> int:
    cell = _resolve_circuit_cell(parser, args)
    bounds = current_bounds(cell)
    if not bounds.contains(cell.i_source):
        raise DriveCurrentError(
            f"source current {cell.i_source:.6g} A outside the open window "
            f"({bounds.lower:.6g} A, {bounds.upper:.6g} A)"
        )
    rng = RngStream(args.seed)
    stats = simulate_cycles(cell, args.cycles, rng)
    chi = chi_square_uniform(stats.counts)

    _write_json(
        f"{args.out}.bounds.json",
        {
            "branches": cell.m,
            "lower": bounds.lower,
            "upper": bounds.upper,
            "feasible": bounds.feasible,
            "i_source": cell.i_source,
            "within_bounds": bounds.contains(cell.i_source),
        },
    )
    header = "cycle,selected_branch," + ",".join(
        f"i_trig_{b}" for b in range(cell.m)
    )
    lines = [header]
    for c in range(args.cycles):
        samples = ",".join(_fmt(v) for v in stats.triggers[c])
        lines.append(f"{c},{stats.selections[c]},{samples}")
    _write_lines(f"{args.out}.cycles.csv", lines)
    _write_json(
        f"{args.out}.counts.json",
        {
            "cycles": args.cycles,
            "counts": stats.counts.tolist(),
            "chi_square": {
                "statistic": chi.statistic,
                "dof": chi.dof,
                "critical": chi.critical,
                "passed": chi.passed,
            },
        },
    )
    verdict = "pass" if chi.passed else "fail"
    print(
        f"counts {stats.counts.tolist()}, chi-square {_fmt(chi.statistic)} "
        f"({verdict} at p>0.001)"
    )
    print(f"wrote {args.out}.bounds.json, {args.out}.cycles.csv, {args.out}.counts.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpbit",
        description="K-state p-bit toolkit: Max-K-Cut solvers, oracle, and VO2 circuit model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random graph file")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edge-prob", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="direct K-state p-bit solver")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--beta", type=float, default=None, help="constant beta (default 1)")
    group.add_argument("--beta-ramp", default=None, metavar="B0:B1", help="linear beta ramp")
    p.add_argument("--order", choices=("random", "fixed"), default="random")
    p.add_argument("--jobs", type=int, default=1, help="parallel trial workers")
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("baseline", help="one-hot reduction + 2-state p-bit solver")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--penalty-a", type=float, default=None, help="one-hot weight (default max_degree*B+1)")
    p.add_argument("--penalty-b", type=float, default=1.0, help="edge weight")
    p.add_argument("--repair", choices=(REPAIR_RANDOM, REPAIR_FIRST_HOT), default=REPAIR_RANDOM)
    p.add_argument("--order", choices=("random", "fixed"), default="random")
    p.add_argument("--jobs", type=int, default=1, help="parallel trial workers")
    p.add_argument("--export-model", default=None, metavar="FILE", help="write the reduced Ising model as JSON")
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("oracle", help="exact Max-K-Cut by enumeration")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("probcurve", help="single-node state-probability curves")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--phi-min", type=float, default=-4.0)
    p.add_argument("--phi-max", type=float, default=4.0)
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_probcurve)

    p = sub.add_parser("circuit", help="multi-state VO2 p-bit selection cycles")
    p.add_argument("--branches", type=int, default=None, help="parallel branches (default 4)")
    p.add_argument("--current", type=float, required=True, help="source current in amps")
    p.add_argument("--cycles", type=int, default=2000)
    p.add_argument("--sigma-it", type=float, default=None, help="trigger-current sigma in amps (default 1.5e-6)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r-series", type=float, default=None, help="per-branch series resistance (default 2e3)")
    p.add_argument("--r-ins", type=float, default=None, help="insulating-state resistance (default 20e3)")
    p.add_argument("--r-met", type=float, default=None, help="metallic-state resistance (default 1e3)")
    p.add_argument("--i-trig", type=float, default=None, help="nominal trigger current (default 30e-6)")
    p.add_argument("--i-hold", type=float, default=None, help="nominal hold current (default 50e-6)")
    p.add_argument("--params", default=None, metavar="FILE", help="JSON device table; flags override")
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.set_defaults(func=cmd_circuit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(parser, args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 3
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DriveCurrentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        # bad parameter combinations surfaced by library validation
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
