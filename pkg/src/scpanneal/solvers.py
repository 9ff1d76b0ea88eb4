"""Minimizers for pseudo-Boolean polynomials and the greedy cover baseline.

`brute_force` is the exact oracle (exhaustive, lexicographic tie-break).
`simulated_annealing` runs independently seeded Metropolis restarts and works
on any polynomial degree, so HUBOs need no quadratization. Both report
energies that exactly equal `poly.evaluate` of the returned assignment.
`SaSolver` and `BruteForceSolver` adapt them to the common solver contract
`(poly, seed) -> SolverResult` used by the ALM driver and the harness.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._sa import anneal_reads
from .errors import InvalidParams, TooManyVariables
from .instances import ScpInstance
from .polynomial import PseudoBooleanPoly

Solver = Callable[[PseudoBooleanPoly, int], "SolverResult"]


@dataclass
class SaParams:
    """Annealing controls.

    The geometric temperature schedule runs from t_hi to t_lo over the
    sweeps of each read; when unset they default to max |coefficient| and
    1e-3 * min |coefficient| of the polynomial being solved.
    """

    num_reads: int = 1000
    sweeps_per_read: int = 100
    t_hi: float | None = None
    t_lo: float | None = None
    seed: int = 0

    def validate(self) -> None:
        if self.num_reads < 1:
            raise InvalidParams(f"num_reads must be >= 1, got {self.num_reads}")
        if self.sweeps_per_read < 1:
            raise InvalidParams(
                f"sweeps_per_read must be >= 1, got {self.sweeps_per_read}"
            )
        if (self.t_hi is None) != (self.t_lo is None):
            raise InvalidParams("set both or neither of t_hi and t_lo")
        if self.t_hi is not None:
            if not (self.t_hi >= self.t_lo > 0):
                raise InvalidParams(
                    f"need t_hi >= t_lo > 0, got {self.t_hi}, {self.t_lo}"
                )
        if self.seed < 0:
            raise InvalidParams(f"seed must be nonnegative, got {self.seed}")


@dataclass
class SolverResult:
    """Outcome of one minimization.

    best_energy always equals evaluate(best_assignment) exactly; for sampled
    solvers it is min(read_energies) with ties resolved to the earliest read.
    """

    best_assignment: tuple[int, ...]
    best_energy: float
    read_energies: list[float] = field(default_factory=list)
    elapsed: float = 0.0
    seed_used: int | None = None


def _compiled_terms(poly: PseudoBooleanPoly):
    keys = list(poly.terms)
    coeffs = np.array([poly.terms[k] for k in keys], dtype=np.float64)
    tptr = np.zeros(len(keys) + 1, dtype=np.int32)
    for t, k in enumerate(keys):
        tptr[t + 1] = tptr[t] + len(k)
    tvars = np.empty(tptr[-1], dtype=np.int32)
    for t, k in enumerate(keys):
        tvars[tptr[t]:tptr[t + 1]] = k
    return keys, coeffs, tptr, tvars


def _exact_energies(poly: PseudoBooleanPoly, states: np.ndarray) -> list[float]:
    # correctly rounded per-row sums, matching poly.evaluate bit for bit
    keys, coeffs, _, _ = _compiled_terms(poly)
    rows = states.shape[0]
    addends = np.empty((rows, len(keys) + 1), dtype=np.float64)
    addends[:, 0] = poly.constant
    for t, k in enumerate(keys):
        mask = states[:, k].min(axis=1) if len(k) > 1 else states[:, k[0]]
        addends[:, t + 1] = coeffs[t] * mask
    return [math.fsum(row) for row in addends.tolist()]


def brute_force(poly: PseudoBooleanPoly, *, max_vars: int = 26) -> SolverResult:
    """Exact minimum by enumeration; ties go to the lexicographically
    smallest assignment (variable 0 is the most significant position)."""
    nv = poly.num_vars
    if nv > max_vars:
        raise TooManyVariables(f"{nv} variables exceeds the guard of {max_vars}")
    start = time.perf_counter()
    if nv == 0:
        return SolverResult(
            best_assignment=(),
            best_energy=poly.evaluate(()),
            elapsed=time.perf_counter() - start,
        )

    keys, coeffs, _, _ = _compiled_terms(poly)
    shifts = np.array([nv - 1 - v for v in range(nv)], dtype=np.uint32)
    best_val = math.inf
    best_index = 0
    chunk = 1 << min(nv, 20)
    for lo in range(0, 1 << nv, chunk):
        idx = np.arange(lo, min(lo + chunk, 1 << nv), dtype=np.uint32)
        bits = ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8)
        energies = np.zeros(len(idx), dtype=np.float64)
        for t, k in enumerate(keys):
            mask = bits[:, k].min(axis=1) if len(k) > 1 else bits[:, k[0]]
            energies += coeffs[t] * mask
        pos = int(np.argmin(energies))
        if energies[pos] < best_val:
            best_val = float(energies[pos])
            best_index = lo + pos
    assignment = tuple(int((best_index >> s) & 1) for s in shifts)
    return SolverResult(
        best_assignment=assignment,
        best_energy=poly.evaluate(assignment),
        elapsed=time.perf_counter() - start,
    )


def simulated_annealing(poly: PseudoBooleanPoly, params: SaParams) -> SolverResult:
    """Metropolis single-bit-flip annealing, num_reads independent restarts.

    Read r draws from a stream derived from (seed, r), so results are
    reproducible and independent of any read-level parallelism.
    """
    params.validate()
    if poly.num_vars < 1:
        raise InvalidParams("polynomial has no variables to anneal")
    start = time.perf_counter()

    if not poly.terms:
        assignment = (0,) * poly.num_vars
        energy = poly.evaluate(assignment)
        return SolverResult(
            best_assignment=assignment,
            best_energy=energy,
            read_energies=[energy] * params.num_reads,
            elapsed=time.perf_counter() - start,
            seed_used=params.seed,
        )

    keys, coeffs, tptr, tvars = _compiled_terms(poly)
    by_var: list[list[int]] = [[] for _ in range(poly.num_vars)]
    for t, k in enumerate(keys):
        for v in k:
            by_var[v].append(t)
    vptr = np.zeros(poly.num_vars + 1, dtype=np.int32)
    for v in range(poly.num_vars):
        vptr[v + 1] = vptr[v] + len(by_var[v])
    vterms = np.empty(vptr[-1], dtype=np.int32)
    for v in range(poly.num_vars):
        vterms[vptr[v]:vptr[v + 1]] = by_var[v]

    t_hi = params.t_hi if params.t_hi is not None else float(np.abs(coeffs).max())
    t_lo = params.t_lo if params.t_lo is not None else 1e-3 * float(np.abs(coeffs).min())
    if params.sweeps_per_read == 1:
        temps = np.array([t_hi], dtype=np.float64)
    else:
        temps = np.geomspace(t_hi, t_lo, params.sweeps_per_read)

    read_seeds = np.array(
        [
            np.random.SeedSequence([params.seed, r]).generate_state(1, np.uint32)[0]
            for r in range(params.num_reads)
        ],
        dtype=np.uint32,
    )
    best_states = np.zeros((params.num_reads, poly.num_vars), dtype=np.uint8)
    anneal_reads(poly.num_vars, coeffs, tptr, tvars, vptr, vterms, temps,
                 read_seeds, best_states)

    read_energies = _exact_energies(poly, best_states)
    best_read = min(range(params.num_reads), key=lambda r: (read_energies[r], r))
    return SolverResult(
        best_assignment=tuple(int(b) for b in best_states[best_read]),
        best_energy=read_energies[best_read],
        read_energies=read_energies,
        elapsed=time.perf_counter() - start,
        seed_used=params.seed,
    )


def greedy_cover(inst: ScpInstance) -> tuple[int, ...]:
    """Weighted greedy: repeatedly take the set with the smallest
    weight / newly-covered ratio (ties to the smallest index)."""
    selected = [0] * inst.m
    uncovered = set(range(1, inst.n + 1))
    while uncovered:
        best_j = -1
        best_ratio = math.inf
        for j, s in enumerate(inst.sets):
            if selected[j]:
                continue
            gain = len(uncovered & s)
            if gain == 0:
                continue
            ratio = inst.weights[j] / gain
            if ratio < best_ratio:
                best_ratio = ratio
                best_j = j
        selected[best_j] = 1
        uncovered -= inst.sets[best_j]
    return tuple(selected)


class BruteForceSolver:
    """Solver-contract wrapper for the exact oracle; the seed is ignored."""

    def __init__(self, max_vars: int = 26):
        self.max_vars = max_vars

    def __call__(self, poly: PseudoBooleanPoly, seed: int) -> SolverResult:
        result = brute_force(poly, max_vars=self.max_vars)
        result.seed_used = seed
        return result


class SaSolver:
    """Solver-contract wrapper binding annealing controls, seeded per call."""

    def __init__(self, num_reads: int = 1000, sweeps_per_read: int = 100,
                 t_hi: float | None = None, t_lo: float | None = None):
        self.num_reads = num_reads
        self.sweeps_per_read = sweeps_per_read
        self.t_hi = t_hi
        self.t_lo = t_lo

    def __call__(self, poly: PseudoBooleanPoly, seed: int) -> SolverResult:
        return simulated_annealing(poly, SaParams(
            num_reads=self.num_reads,
            sweeps_per_read=self.sweeps_per_read,
            t_hi=self.t_hi,
            t_lo=self.t_lo,
            seed=seed,
        ))
