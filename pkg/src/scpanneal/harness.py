"""Experiment orchestration: size grids, method pipelines, CSV results.

For each m the grid uses n in {ceil(0.5 m), ceil(0.75 m), m}. Within a cell,
every method solves the same generated instances; per-record solver seeds
also hash the method name, so adding a method never perturbs existing rows.
Infeasible or failed runs report the all-sets cost.

The results CSV is byte-reproducible for a fixed config: rows are emitted in
sorted order and the wall_ms column is written as 0 unless real timings are
requested explicitly (which breaks reproducibility, by nature).
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, fields, replace
from typing import Iterable, Sequence

from .alm import AlmParams, run_alm
from .errors import InvalidConfig, MissingBaseline, ScpAnnealError, ZeroBaselineCost
from .formulations import (
    build_alm_objective,
    build_hubo,
    build_slack_qubo,
    decode_hubo_solution,
    decode_slack_solution,
)
from .instances import (
    FillRule,
    GeneratorConfig,
    ScpInstance,
    generate_instance,
    reported_cost,
    uncovered_elements,
)
from .quadratize import project_assignment, quadratize
from .solvers import SaSolver, greedy_cover

METHODS = ("SV_SA", "AL_SA", "HUBO_SA", "HUBO_QUAD_SA", "GREEDY")

RESULTS_HEADER = (
    "method,m,n,instance_id,seed,reported_cost,feasible,uncovered,"
    "num_vars,num_couplers,wall_ms"
)


@dataclass(frozen=True)
class ExperimentConfig:
    m_values: tuple[int, ...] = (50, 75, 100)
    coverage: float = 3.0
    instances_per_cell: int = 3
    methods: tuple[str, ...] = METHODS
    master_seed: int = 0
    num_reads: int = 1000
    sweeps_per_read: int = 100
    penalty_margin: float = 0.1
    alm_mu0: float = 0.5
    alm_lambda0: float = 0.0
    alm_rho: float = 1.1
    alm_max_iters: int = 10
    fill_rule: FillRule = "paper_mc"

    def validate(self) -> None:
        if not self.m_values:
            raise InvalidConfig("m_values must be nonempty")
        if any(m < 2 for m in self.m_values):
            raise InvalidConfig(f"every m must be >= 2, got {self.m_values}")
        if not self.methods:
            raise InvalidConfig("methods must be nonempty")
        unknown = [name for name in self.methods if name not in METHODS]
        if unknown:
            raise InvalidConfig(f"unknown methods {unknown}; choose from {METHODS}")
        if self.instances_per_cell < 1:
            raise InvalidConfig(
                f"instances_per_cell must be >= 1, got {self.instances_per_cell}"
            )
        if not self.coverage > 0:
            raise InvalidConfig(f"coverage must be positive, got {self.coverage}")
        if self.penalty_margin <= 0:
            raise InvalidConfig(
                f"penalty_margin must be positive, got {self.penalty_margin}"
            )

    def alm_params(self) -> AlmParams:
        return AlmParams(
            mu0=self.alm_mu0,
            lambda0=self.alm_lambda0,
            rho=self.alm_rho,
            max_iters=self.alm_max_iters,
        )


def n_values_for(m: int) -> tuple[int, ...]:
    """Universe sizes tested per m: ceil(0.5 m), ceil(0.75 m), m (deduplicated)."""
    values = {math.ceil(0.5 * m), math.ceil(0.75 * m), m}
    return tuple(sorted(values))


@dataclass
class ResultRecord:
    method: str
    m: int
    n: int
    instance_id: int
    seed: int
    reported_cost: float
    feasible: bool
    uncovered: int
    num_vars: int
    num_couplers: int
    wall_ms: float
    error: str | None = None  # kept out of the CSV; see RESULTS_HEADER
    normalized_cost: float | None = None

    def sort_key(self):
        return (self.method, self.m, self.n, self.instance_id)


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from a tuple of ints and strings."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def run_method(
    method: str,
    inst: ScpInstance,
    *,
    seed: int,
    cfg: ExperimentConfig,
) -> tuple[tuple[int, ...], int, int]:
    """Run one pipeline; returns (selection, model variables, model couplers)."""
    sa = SaSolver(num_reads=cfg.num_reads, sweeps_per_read=cfg.sweeps_per_read)
    mu = max(inst.weights) + cfg.penalty_margin

    if method == "SV_SA":
        poly, layout = build_slack_qubo(inst, mu)
        result = sa(poly, seed)
        return (
            decode_slack_solution(layout, result.best_assignment),
            poly.count_variables(),
            poly.count_couplers(),
        )
    if method == "AL_SA":
        probe, _ = build_alm_objective(
            inst, [cfg.alm_lambda0] * inst.n, cfg.alm_mu0
        )
        selection, _ = run_alm(inst, sa, cfg.alm_params(), seed=seed)
        return selection, probe.count_variables(), probe.count_couplers()
    if method == "HUBO_SA":
        poly, layout = build_hubo(inst, mu)
        result = sa(poly, seed)
        return (
            decode_hubo_solution(layout, result.best_assignment),
            poly.count_variables(),
            poly.count_couplers(),
        )
    if method == "HUBO_QUAD_SA":
        hubo, layout = build_hubo(inst, mu)
        reduction = quadratize(hubo)
        result = sa(reduction.qubo, seed)
        y = project_assignment(reduction, result.best_assignment)
        return (
            decode_hubo_solution(layout, y),
            reduction.qubo.count_variables(),
            reduction.qubo.count_couplers(),
        )
    if method == "GREEDY":
        return greedy_cover(inst), inst.m, 0
    raise InvalidConfig(f"unknown method {method!r}")


def run_experiment(
    cfg: ExperimentConfig,
    *,
    instances: Sequence[ScpInstance] | None = None,
) -> list[ResultRecord]:
    """Run the full grid (or the given pinned instances) for every method.

    A failing record is kept with the all-sets cost and its error message so
    aggregate statistics stay computable; everything else proceeds.
    """
    cfg.validate()

    cells: list[tuple[int, int, int, ScpInstance]] = []
    if instances is not None:
        for idx, inst in enumerate(instances):
            cells.append((inst.m, inst.n, idx, inst))
    else:
        for m in cfg.m_values:
            for n in n_values_for(m):
                for rep in range(cfg.instances_per_cell):
                    gen_seed = derive_seed(cfg.master_seed, "instance", m, n, rep)
                    inst = generate_instance(
                        GeneratorConfig(
                            m=m, n=n, coverage=cfg.coverage, fill_rule=cfg.fill_rule
                        ),
                        seed=gen_seed,
                    )
                    cells.append((m, n, rep, inst))

    records: list[ResultRecord] = []
    for method in cfg.methods:
        for m, n, rep, inst in cells:
            seed = derive_seed(cfg.master_seed, "solve", method, m, n, rep)
            start = time.perf_counter()
            try:
                selection, num_vars, num_couplers = run_method(
                    method, inst, seed=seed, cfg=cfg
                )
                uncovered = len(uncovered_elements(inst, selection))
                records.append(ResultRecord(
                    method=method, m=m, n=n, instance_id=rep, seed=seed,
                    reported_cost=reported_cost(inst, selection),
                    feasible=uncovered == 0,
                    uncovered=uncovered,
                    num_vars=num_vars,
                    num_couplers=num_couplers,
                    wall_ms=(time.perf_counter() - start) * 1e3,
                ))
            except ScpAnnealError as exc:
                records.append(ResultRecord(
                    method=method, m=m, n=n, instance_id=rep, seed=seed,
                    reported_cost=inst.total_weight(),
                    feasible=False,
                    uncovered=inst.n,
                    num_vars=0,
                    num_couplers=0,
                    wall_ms=(time.perf_counter() - start) * 1e3,
                    error=f"{type(exc).__name__}: {exc}",
                ))
    records.sort(key=ResultRecord.sort_key)
    return records


def normalize_costs(
    records: Iterable[ResultRecord], baseline_method: str = "HUBO_SA"
) -> list[ResultRecord]:
    """Attach normalized_cost: each record carries its (method, m, n) cell
    mean divided by the baseline's mean in the same cell."""
    records = list(records)
    cell_costs: dict[tuple[str, int, int], list[float]] = {}
    for rec in records:
        cell_costs.setdefault((rec.method, rec.m, rec.n), []).append(
            rec.reported_cost
        )
    means = {key: math.fsum(v) / len(v) for key, v in cell_costs.items()}

    out = []
    for rec in records:
        base = means.get((baseline_method, rec.m, rec.n))
        if base is None:
            raise MissingBaseline(
                f"no {baseline_method} records in cell (m={rec.m}, n={rec.n})"
            )
        if base == 0:
            raise ZeroBaselineCost(
                f"{baseline_method} mean cost is 0 in cell (m={rec.m}, n={rec.n})"
            )
        out.append(replace(
            rec, normalized_cost=means[(rec.method, rec.m, rec.n)] / base
        ))
    return out


def results_to_csv(records: Iterable[ResultRecord], *, timing: bool = False) -> str:
    """Render the results table. With timing=False (default) the wall_ms
    column is written as 0 so identical configs give identical bytes."""
    lines = [RESULTS_HEADER]
    for rec in records:
        wall = f"{rec.wall_ms:.3f}" if timing else "0"
        lines.append(
            f"{rec.method},{rec.m},{rec.n},{rec.instance_id},{rec.seed},"
            f"{rec.reported_cost!r},{int(rec.feasible)},{rec.uncovered},"
            f"{rec.num_vars},{rec.num_couplers},{wall}"
        )
    return "\n".join(lines) + "\n"


def config_from_json(text: str) -> ExperimentConfig:
    """Parse a config document whose keys mirror ExperimentConfig fields."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfig(
            f"config is not valid JSON (line {exc.lineno}): {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise InvalidConfig("config must be a JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(doc) - known
    if unknown:
        raise InvalidConfig(f"unknown config keys {sorted(unknown)}")
    kwargs = dict(doc)
    for key in ("m_values", "methods"):
        if key in kwargs:
            if not isinstance(kwargs[key], list):
                raise InvalidConfig(f"{key} must be an array")
            kwargs[key] = tuple(kwargs[key])
    cfg = ExperimentConfig(**kwargs)
    cfg.validate()
    return cfg
