"""Command line interface: generate, solve, experiment, trace."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .alm import run_alm, trace_to_csv
from .errors import ScpAnnealError
from .harness import (
    METHODS,
    ExperimentConfig,
    config_from_json,
    normalize_costs,
    results_to_csv,
    run_experiment,
    run_method,
)
from .instances import (
    GeneratorConfig,
    cover_cost,
    deserialize_instance,
    generate_instance,
    reported_cost,
    serialize_instance,
    uncovered_elements,
)
from .solvers import BruteForceSolver, SaSolver


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_generate(args) -> int:
    cfg = GeneratorConfig(
        m=args.m, n=args.n, coverage=args.coverage, fill_rule=args.fill_rule
    )
    inst = generate_instance(cfg, seed=args.seed)
    _write(args.out, serialize_instance(inst))
    return 0


def _cmd_solve(args) -> int:
    inst = deserialize_instance(Path(args.instance).read_text())
    cfg = ExperimentConfig(
        num_reads=args.num_reads,
        sweeps_per_read=args.sweeps,
        penalty_margin=args.penalty_margin,
        alm_max_iters=args.alm_max_iters,
    )
    selection, num_vars, num_couplers = run_method(
        args.method, inst, seed=args.seed, cfg=cfg
    )
    uncovered = uncovered_elements(inst, selection)
    print(f"method: {args.method}")
    print(f"selection: {''.join(map(str, selection))}")
    print(f"feasible: {not uncovered}")
    print(f"uncovered: {len(uncovered)}")
    print(f"cover_cost: {cover_cost(inst, selection)!r}")
    print(f"reported_cost: {reported_cost(inst, selection)!r}")
    print(f"model: {num_vars} variables, {num_couplers} couplers")
    return 0


def _cmd_experiment(args) -> int:
    cfg = config_from_json(Path(args.config).read_text())
    records = run_experiment(cfg)
    _write(args.out, results_to_csv(records, timing=args.timing))
    if args.normalize_report:
        normalized = normalize_costs(records, baseline_method=args.baseline)
        seen = {}
        for rec in normalized:
            seen[(rec.method, rec.m, rec.n)] = rec.normalized_cost
        for (method, m, n), value in sorted(seen.items()):
            print(f"{method} m={m} n={n}: normalized {value:.3f}", file=sys.stderr)
    return 0


def _cmd_trace(args) -> int:
    inst = deserialize_instance(Path(args.instance).read_text())
    if args.solver == "brute":
        solver = BruteForceSolver()
    else:
        solver = SaSolver(num_reads=args.num_reads, sweeps_per_read=args.sweeps)
    from .alm import AlmParams

    params = AlmParams(
        mu0=args.mu0, lambda0=args.lambda0, rho=args.rho, max_iters=args.max_iters
    )
    _, trace = run_alm(inst, solver, params, seed=args.seed)
    _write(args.out, trace_to_csv(trace))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scpanneal",
        description="Weighted set cover via annealing on QUBO/HUBO formulations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random instance file")
    p.add_argument("-m", type=int, required=True, help="number of sets")
    p.add_argument("-n", type=int, required=True, help="universe size")
    p.add_argument("-c", "--coverage", type=float, default=3.0)
    p.add_argument("--fill-rule", choices=("paper_mc", "per_element_nc"),
                   default="paper_mc")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve", help="solve one instance with one method")
    p.add_argument("instance", help="instance JSON path")
    p.add_argument("--method", choices=METHODS, default="HUBO_SA")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-reads", type=int, default=1000)
    p.add_argument("--sweeps", type=int, default=100)
    p.add_argument("--penalty-margin", type=float, default=0.1)
    p.add_argument("--alm-max-iters", type=int, default=10)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("experiment", help="run a config file, write results CSV")
    p.add_argument("config", help="experiment config JSON path")
    p.add_argument("-o", "--out", default=None, help="results CSV path")
    p.add_argument("--timing", action="store_true",
                   help="write real wall_ms (breaks byte reproducibility)")
    p.add_argument("--normalize-report", action="store_true",
                   help="print per-cell normalized means to stderr")
    p.add_argument("--baseline", choices=METHODS, default="HUBO_SA")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("trace", help="run the multiplier loop, write its CSV")
    p.add_argument("instance", help="instance JSON path")
    p.add_argument("--solver", choices=("sa", "brute"), default="sa")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-reads", type=int, default=1000)
    p.add_argument("--sweeps", type=int, default=100)
    p.add_argument("--mu0", type=float, default=0.5)
    p.add_argument("--lambda0", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=1.1)
    p.add_argument("--max-iters", type=int, default=10)
    p.add_argument("-o", "--out", default=None, help="trace CSV path")
    p.set_defaults(func=_cmd_trace)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScpAnnealError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
