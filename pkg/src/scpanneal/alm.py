"""Outer loop of the augmented-Lagrangian method for set cover.

Each iteration minimizes the current AL objective with a pluggable solver,
then raises the multiplier of every still-violated coverage constraint by
mu * c_i and grows mu by rho. The loop stops once a feasible cover appears
or after max_iters iterations, whichever is first; mu is updated before the
stopping test, so the trace satisfies mu(i) = mu0 * rho**i at iteration i
(0-based).
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParams
from .formulations import build_alm_objective
from .instances import CoverSelection, ScpInstance, _check_selection, reported_cost
from .solvers import Solver


@dataclass
class AlmParams:
    mu0: float = 0.5
    lambda0: float = 0.0
    rho: float = 1.1
    max_iters: int = 10

    def validate(self) -> None:
        if not self.mu0 > 0:
            raise InvalidParams(f"mu0 must be positive, got {self.mu0}")
        if not self.rho > 1:
            raise InvalidParams(f"rho must exceed 1, got {self.rho}")
        if self.max_iters < 1:
            raise InvalidParams(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass(frozen=True)
class AlmRecord:
    """State of one outer iteration: the multipliers and penalty that were
    minimized, the inner solution, and its quality."""

    iteration: int
    mu: float
    lam: tuple[float, ...]
    assignment: tuple[int, ...]
    uncovered: int
    reported_cost: float

    @property
    def feasible(self) -> bool:
        return self.uncovered == 0


@dataclass
class AlmTrace:
    records: list[AlmRecord] = field(default_factory=list)

    @property
    def best_iteration(self) -> int:
        """Iteration of the best recorded solution: lowest reported cost,
        feasible records strictly preferred, earliest on ties."""
        return min(
            range(len(self.records)),
            key=lambda i: (
                not self.records[i].feasible,
                self.records[i].reported_cost,
                i,
            ),
        )


def constraint_values(inst: ScpInstance, selection: CoverSelection) -> np.ndarray:
    """c_i = 1 - (number of selected sets covering element i); c_i <= 0 iff
    element i is covered."""
    sel = _check_selection(inst, selection)
    return np.array(
        [
            1.0 - sum(sel[j] for j in inst.covering_sets(e))
            for e in range(1, inst.n + 1)
        ]
    )


def run_alm(
    inst: ScpInstance,
    solver: Solver,
    params: AlmParams | None = None,
    *,
    seed: int = 0,
) -> tuple[tuple[int, ...], AlmTrace]:
    """Run the multiplier loop and return (best selection, trace).

    The inner solver sees a fresh stream per iteration, derived from
    (seed, iteration). The best selection across iterations follows the
    trace's best_iteration rule.
    """
    params = params or AlmParams()
    params.validate()

    lam = np.full(inst.n, float(params.lambda0))
    mu = params.mu0
    trace = AlmTrace()

    for iteration in range(params.max_iters):
        poly, _ = build_alm_objective(inst, lam, mu)
        inner_seed = int(
            np.random.SeedSequence([seed, iteration]).generate_state(1, np.uint32)[0]
        )
        result = solver(poly, inner_seed)
        selection = tuple(int(b) for b in result.best_assignment)
        cvals = constraint_values(inst, selection)
        trace.records.append(AlmRecord(
            iteration=iteration,
            mu=mu,
            lam=tuple(lam),
            assignment=selection,
            uncovered=int((cvals > 0).sum()),
            reported_cost=reported_cost(inst, selection),
        ))
        for i in range(inst.n):
            if cvals[i] > 0:
                lam[i] = lam[i] + mu * cvals[i]
        mu = params.rho * mu
        if (cvals <= 0).all():
            break

    best = trace.records[trace.best_iteration]
    return best.assignment, trace


def trace_to_csv(trace: AlmTrace) -> str:
    """Per-iteration CSV: iteration, mu, uncovered, reported_cost, feasible."""
    out = io.StringIO()
    out.write("iteration,mu,uncovered,reported_cost,feasible\n")
    for rec in trace.records:
        out.write(
            f"{rec.iteration},{rec.mu!r},{rec.uncovered},"
            f"{rec.reported_cost!r},{int(rec.feasible)}\n"
        )
    return out.getvalue()
