"""Compilers from set cover instances to unconstrained binary models.

Three formulations are produced, all over 0/1 variables:

* slack QUBO: objective sum(x_j wt_j) plus mu times, per element, the squared
  gap between its selected-set count and 1 + a binary-encoded slack value;
* augmented-Lagrangian QUBO: objective plus multiplier and quadratic penalty
  terms for the coverage inequalities, with the assignment-independent
  constant returned separately;
* HUBO over complemented variables y_j = 1 - x_j, where each element
  contributes mu times the product of the y's of its covering sets.

Set variables always occupy polynomial indices 0..m-1, so decoding is a
projection. Layout maps are keyed 1-based, matching the instance interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidPenalty, LengthMismatch, PenaltyTooSmall
from .instances import ScpInstance
from .polynomial import Assignment, PseudoBooleanPoly


@dataclass(frozen=True)
class SlackLayout:
    """Variable layout of a slack QUBO.

    var_of_set maps 1-based set index to its polynomial variable;
    var_of_slack maps (1-based element, bit position) to the variable holding
    that bit of the element's slack value. widths[i] is the bit count for
    element i+1 (all equal to k unless per-element widths were requested).
    """

    m: int
    k: int
    widths: tuple[int, ...]
    var_of_set: dict[int, int]
    var_of_slack: dict[tuple[int, int], int]
    mu: float

    @property
    def num_vars(self) -> int:
        return self.m + sum(self.widths)


@dataclass(frozen=True)
class HuboLayout:
    """Variable layout of the complemented-variable HUBO."""

    m: int
    var_of_set: dict[int, int]
    mu: float
    constant_used: float


def _require_penalty_above_weights(inst: ScpInstance, mu: float, force: bool) -> None:
    top = max(inst.weights)
    if mu <= top and not force:
        raise PenaltyTooSmall(
            f"penalty {mu} must exceed the largest weight {top}; "
            f"pass force=True to build anyway"
        )


def global_slack_width(m: int) -> int:
    """Bits needed for a slack value in [0, m-1]."""
    return (m - 1).bit_length()


def build_slack_qubo(
    inst: ScpInstance,
    mu: float,
    *,
    force: bool = False,
    per_element_width: bool = False,
) -> tuple[PseudoBooleanPoly, SlackLayout]:
    """Slack-variable QUBO with m + sum(widths) variables.

    Per element i the penalty group is
    (sum_{j in sigma_i} x_j - sum_a 2^a d_{i,a} - 1)^2, expanded with
    x^2 = x. The default width is the global k = floor(log2(m-1)) + 1;
    per_element_width tightens each element to its own coverage range.
    """
    _require_penalty_above_weights(inst, mu, force)
    m, n = inst.m, inst.n
    k = global_slack_width(m)
    if per_element_width:
        widths = tuple(
            max(len(inst.covering_sets(e)) - 1, 1).bit_length()
            for e in range(1, n + 1)
        )
    else:
        widths = (k,) * n

    var_of_set = {j + 1: j for j in range(m)}
    var_of_slack: dict[tuple[int, int], int] = {}
    next_var = m
    for e in range(1, n + 1):
        for a in range(widths[e - 1]):
            var_of_slack[(e, a)] = next_var
            next_var += 1

    poly = PseudoBooleanPoly(next_var)
    for j in range(m):
        poly.add_term((j,), inst.weights[j])

    for e in range(1, n + 1):
        group = [(j, 1.0) for j in inst.covering_sets(e)]
        group += [
            (var_of_slack[(e, a)], -float(2**a)) for a in range(widths[e - 1])
        ]
        # (sum c_t z_t - 1)^2 = sum (c_t^2 - 2 c_t) z_t + 2 sum_{t<u} c_t c_u z_t z_u + 1
        for v, c in group:
            poly.add_term((v,), mu * (c * c - 2.0 * c))
        for (v1, c1), (v2, c2) in _pairs(group):
            poly.add_term((v1, v2), mu * 2.0 * c1 * c2)
        poly.add_term((), mu)

    layout = SlackLayout(
        m=m, k=k, widths=widths, var_of_set=var_of_set,
        var_of_slack=var_of_slack, mu=mu,
    )
    return poly, layout


def _pairs(items):
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]


def decode_slack_solution(layout: SlackLayout, assignment: Assignment) -> tuple[int, ...]:
    """Project onto the set variables; slack bits are discarded."""
    if len(assignment) != layout.num_vars:
        raise LengthMismatch(
            f"assignment has length {len(assignment)}, expected {layout.num_vars}"
        )
    return tuple(int(assignment[j]) for j in range(layout.m))


def build_alm_objective(
    inst: ScpInstance, lam: Sequence[float], mu: float
) -> tuple[PseudoBooleanPoly, float]:
    """Augmented-Lagrangian QUBO over the m set variables.

    Returns (poly, C) with, for every selection x and c_i(x) = 1 - coverage
    count of element i:

        poly(x) + C = sum x_j wt_j + sum lam_i c_i(x) + (mu/2) sum c_i(x)^2

    C collects the assignment-independent part and can be ignored when
    minimizing.
    """
    if not mu > 0:
        raise InvalidPenalty(f"penalty must be positive, got {mu}")
    if len(lam) != inst.n:
        raise LengthMismatch(
            f"lambda has length {len(lam)}, instance has n={inst.n}"
        )
    poly = PseudoBooleanPoly(inst.m)
    for j in range(inst.m):
        poly.add_term((j,), inst.weights[j])
    for e in range(1, inst.n + 1):
        covers = inst.covering_sets(e)
        li = float(lam[e - 1])
        for j in covers:
            poly.add_term((j,), -li - mu / 2.0)
        for a in range(len(covers)):
            for b in range(a + 1, len(covers)):
                poly.add_term((covers[a], covers[b]), mu)
    constant = math.fsum(float(l) + mu / 2.0 for l in lam)
    return poly, constant


def build_hubo(
    inst: ScpInstance, mu: float, *, force: bool = False
) -> tuple[PseudoBooleanPoly, HuboLayout]:
    """HUBO over complemented variables y_j = 1 - x_j.

    poly(y) = sum(wt) - sum wt_j y_j + mu * sum_i prod_{j in sigma_i} y_j,
    so poly at y = 1 - x equals cover_cost(x) + mu * (uncovered count).
    Degree is the largest coverage multiplicity.
    """
    _require_penalty_above_weights(inst, mu, force)
    poly = PseudoBooleanPoly(inst.m)
    total = inst.total_weight()
    poly.add_term((), total)
    for j in range(inst.m):
        poly.add_term((j,), -inst.weights[j])
    for e in range(1, inst.n + 1):
        poly.add_term(inst.covering_sets(e), mu)
    layout = HuboLayout(
        m=inst.m,
        var_of_set={j + 1: j for j in range(inst.m)},
        mu=mu,
        constant_used=total,
    )
    return poly, layout


def decode_hubo_solution(layout: HuboLayout, assignment: Assignment) -> tuple[int, ...]:
    """Complement back to selection space: x_j = 1 - y_j."""
    if len(assignment) != layout.m:
        raise LengthMismatch(
            f"assignment has length {len(assignment)}, expected {layout.m}"
        )
    return tuple(1 - int(b) for b in assignment)
