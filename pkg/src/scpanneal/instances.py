"""Weighted set cover instances: construction, random generation, evaluation.

An instance is a universe U = {1, ..., n} and m weighted sets S_1..S_m with
union(S_i) = U. Elements and set indices are 1-based at this interface;
selections are positional bit vectors (position j-1 holds the bit for S_j).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import (
    ConfigInfeasible,
    ElementOutOfRange,
    InvariantViolation,
    LengthMismatch,
    ParseError,
)

CoverSelection = Sequence[int]

FillRule = Literal["paper_mc", "per_element_nc"]


@dataclass(frozen=True)
class ScpInstance:
    """A weighted set cover instance.

    Parameters
    ----------
    n : int
        Universe size; elements are labeled 1..n.
    sets : sequence of element collections
        The m sets, each a collection of element labels in 1..n.
    weights : sequence of float
        Positive weight per set.
    """

    n: int
    sets: tuple[frozenset[int], ...]
    weights: tuple[float, ...]
    _covers: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, sets: Iterable[Iterable[int]], weights: Iterable[float]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "sets", tuple(frozenset(int(e) for e in s) for s in sets))
        object.__setattr__(self, "weights", tuple(float(w) for w in weights))
        self._validate()
        # covering sets per element, 0-based set indices, element-major
        covers: list[list[int]] = [[] for _ in range(self.n)]
        for j, s in enumerate(self.sets):
            for e in s:
                covers[e - 1].append(j)
        object.__setattr__(self, "_covers", tuple(tuple(c) for c in covers))

    def _validate(self) -> None:
        if self.m < 2:
            raise InvariantViolation(f"need m >= 2 sets, got {self.m}")
        if self.n < 1:
            raise InvariantViolation(f"need n >= 1 elements, got {self.n}")
        if len(self.weights) != self.m:
            raise InvariantViolation(
                f"{self.m} sets but {len(self.weights)} weights"
            )
        for j, s in enumerate(self.sets):
            if not s:
                raise InvariantViolation(f"set {j + 1} is empty")
            bad = [e for e in s if not 1 <= e <= self.n]
            if bad:
                raise InvariantViolation(
                    f"set {j + 1} contains out-of-universe elements {sorted(bad)}"
                )
        for j, w in enumerate(self.weights):
            if not w > 0 or not math.isfinite(w):
                raise InvariantViolation(f"weight {j + 1} must be positive, got {w}")
        union = frozenset().union(*self.sets)
        if union != frozenset(range(1, self.n + 1)):
            missing = sorted(set(range(1, self.n + 1)) - union)
            raise InvariantViolation(f"elements {missing} are covered by no set")

    @property
    def m(self) -> int:
        return len(self.sets)

    def covering_sets(self, element: int) -> tuple[int, ...]:
        """0-based indices of the sets containing `element` (1-based)."""
        if not 1 <= element <= self.n:
            raise ElementOutOfRange(f"element {element} outside 1..{self.n}")
        return self._covers[element - 1]

    def total_weight(self) -> float:
        return math.fsum(self.weights)


def sigma(inst: ScpInstance, element: int) -> frozenset[int]:
    """The set of 1-based indices j with element in S_j. Never empty."""
    return frozenset(j + 1 for j in inst.covering_sets(element))


def _check_selection(inst: ScpInstance, selection: CoverSelection) -> Sequence[int]:
    if len(selection) != inst.m:
        raise LengthMismatch(
            f"selection has length {len(selection)}, instance has m={inst.m}"
        )
    for b in selection:
        if b not in (0, 1):
            raise InvariantViolation(f"selection entries must be 0/1, got {b!r}")
    return selection


def uncovered_elements(inst: ScpInstance, selection: CoverSelection) -> frozenset[int]:
    """Elements (1-based) covered by no selected set."""
    sel = _check_selection(inst, selection)
    return frozenset(
        i + 1
        for i in range(inst.n)
        if not any(sel[j] for j in inst._covers[i])
    )


def is_feasible(inst: ScpInstance, selection: CoverSelection) -> bool:
    """True iff every element is covered by at least one selected set."""
    sel = _check_selection(inst, selection)
    return all(any(sel[j] for j in inst._covers[i]) for i in range(inst.n))


def cover_cost(inst: ScpInstance, selection: CoverSelection) -> float:
    """Sum of selected weights, regardless of feasibility."""
    sel = _check_selection(inst, selection)
    return math.fsum(w for w, b in zip(inst.weights, sel) if b)


def reported_cost(inst: ScpInstance, selection: CoverSelection) -> float:
    """Cover cost if feasible, else the sum of all weights.

    The fallback corresponds to the trivial all-sets cover and is the
    convention used when a solver returns an invalid cover.
    """
    if is_feasible(inst, selection):
        return cover_cost(inst, selection)
    return inst.total_weight()


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters for the random instance generator.

    coverage is the average number of sets covering an element. Under the
    default "paper_mc" fill rule the generator fills until sum(|S_i|) >= m*c;
    under "per_element_nc" until sum(|S_i|) >= n*c, which matches the coverage
    definition literally.
    """

    m: int
    n: int
    coverage: float
    fill_rule: FillRule = "paper_mc"


def _fill_target(cfg: GeneratorConfig) -> int:
    scale = cfg.m if cfg.fill_rule == "paper_mc" else cfg.n
    return math.ceil(scale * cfg.coverage - 1e-9)


def generate_instance(cfg: GeneratorConfig, seed: int) -> ScpInstance:
    """Generate a random instance satisfying the three placement conditions.

    (i) every element lies in at least two sets, (ii) every set is nonempty,
    (iii) total fill reaches the rule's target. Weights are uniform on (0, 1].
    Deterministic for a given (cfg, seed).
    """
    m, n, c = cfg.m, cfg.n, cfg.coverage
    if m < 2:
        raise ConfigInfeasible(f"need m >= 2 sets, got {m}")
    if n < 1:
        raise ConfigInfeasible(f"need n >= 1 elements, got {n}")
    if not c > 0:
        raise ConfigInfeasible(f"coverage must be positive, got {c}")
    if cfg.fill_rule not in ("paper_mc", "per_element_nc"):
        raise ConfigInfeasible(f"unknown fill rule {cfg.fill_rule!r}")
    target = _fill_target(cfg)
    if target > m * n:
        raise ConfigInfeasible(
            f"fill target {target} exceeds the m*n = {m * n} distinct "
            f"(element, set) pairs available"
        )

    rng = np.random.default_rng(seed)
    sets: list[set[int]] = [set() for _ in range(m)]

    # (i): each element into two distinct random sets
    for e in range(1, n + 1):
        for j in rng.choice(m, size=2, replace=False):
            sets[j].add(e)

    # (ii): one random element into each still-empty set
    for j in range(m):
        if not sets[j]:
            sets[j].add(int(rng.integers(1, n + 1)))

    # (iii): random absent pairs until the fill target is reached
    total = sum(len(s) for s in sets)
    if total < target:
        absent = [(e, j) for j in range(m) for e in range(1, n + 1) if e not in sets[j]]
        order = rng.permutation(len(absent))
        for idx in order[: target - total]:
            e, j = absent[idx]
            sets[j].add(e)

    weights = 1.0 - rng.random(m)  # uniform on (0, 1]
    return ScpInstance(n=n, sets=sets, weights=weights.tolist())


# -- serialization ------------------------------------------------------------
# Instance document: {"m": int, "n": int, "sets": [[int, ...], ...],
# "weights": [float, ...]} with 1-based element labels.


def serialize_instance(inst: ScpInstance) -> str:
    set_lines = ",\n".join(f"    {json.dumps(sorted(s))}" for s in inst.sets)
    lines = [
        "{",
        f'  "m": {inst.m},',
        f'  "n": {inst.n},',
        '  "sets": [',
        set_lines,
        "  ],",
        f'  "weights": {json.dumps(list(inst.weights))}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def deserialize_instance(text: str) -> ScpInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level: expected a JSON object")
    for key in ("m", "n", "sets", "weights"):
        if key not in doc:
            raise ParseError(f"top level: missing key {key!r}")
    if not isinstance(doc["m"], int) or not isinstance(doc["n"], int):
        raise ParseError("keys 'm' and 'n' must be integers")
    if not isinstance(doc["sets"], list) or not isinstance(doc["weights"], list):
        raise ParseError("keys 'sets' and 'weights' must be arrays")
    if len(doc["sets"]) != doc["m"] or len(doc["weights"]) != doc["m"]:
        raise ParseError(
            f"'sets' and 'weights' must both have length m={doc['m']}, "
            f"got {len(doc['sets'])} and {len(doc['weights'])}"
        )
    for j, s in enumerate(doc["sets"]):
        if not isinstance(s, list) or not all(isinstance(e, int) for e in s):
            raise ParseError(f"sets[{j}]: expected an array of integers")
    for j, w in enumerate(doc["weights"]):
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise ParseError(f"weights[{j}]: expected a number")
    return ScpInstance(n=doc["n"], sets=doc["sets"], weights=doc["weights"])
