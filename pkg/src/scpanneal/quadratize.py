"""Degree reduction of HUBOs to QUBOs by pair substitution.

Each step replaces a variable pair (a, b) inside every high-degree monomial
with a fresh auxiliary variable u and adds the penalty gadget

    penalty * (x_a x_b - 2 (x_a + x_b) u + 3 u)

which is 0 when u = x_a x_b and at least `penalty` otherwise. Pairs are
chosen greedily by occurrence count over the degree >= 3 monomials, ties
broken by the lexicographically smallest pair, so results are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidPenalty, LengthMismatch
from .polynomial import Assignment, PseudoBooleanPoly


@dataclass(frozen=True)
class VarSubstitution:
    """One auxiliary variable standing for the product of a pair."""

    aux_var: int
    pair: tuple[int, int]
    penalty: float


@dataclass(frozen=True)
class QuadratizationResult:
    qubo: PseudoBooleanPoly
    substitutions: tuple[VarSubstitution, ...]
    original_vars: int


def suggest_penalty(poly: PseudoBooleanPoly) -> float:
    """A penalty sufficient to preserve minima: 1 + sum |high-degree coeffs|.

    Any inconsistent auxiliary assignment pays at least this much, which
    exceeds the largest possible energy gain from corrupting the reduced
    monomials.
    """
    return 1.0 + math.fsum(
        abs(c) for k, c in poly.terms.items() if len(k) >= 3
    )


def quadratize(
    poly: PseudoBooleanPoly, penalty: float | None = None
) -> QuadratizationResult:
    """Reduce to degree <= 2. Inputs already quadratic pass through unchanged."""
    if penalty is not None and not penalty > 0:
        raise InvalidPenalty(f"penalty must be positive, got {penalty}")
    if poly.degree() <= 2:
        return QuadratizationResult(
            qubo=poly.copy(), substitutions=(), original_vars=poly.num_vars
        )
    if penalty is None:
        penalty = suggest_penalty(poly)

    terms = dict(poly.terms)
    num_vars = poly.num_vars
    gadget_terms: list[tuple[tuple[int, ...], float]] = []
    substitutions: list[VarSubstitution] = []

    while True:
        high = [k for k in terms if len(k) >= 3]
        if not high:
            break
        counts: dict[tuple[int, int], int] = {}
        for key in high:
            for i in range(len(key)):
                for j in range(i + 1, len(key)):
                    pair = (key[i], key[j])
                    counts[pair] = counts.get(pair, 0) + 1
        pair = min(counts, key=lambda p: (-counts[p], p))
        u = num_vars
        num_vars += 1
        substitutions.append(VarSubstitution(aux_var=u, pair=pair, penalty=penalty))

        a, b = pair
        for key in high:
            if a in key and b in key:
                coeff = terms.pop(key)
                new_key = tuple(sorted([v for v in key if v not in (a, b)] + [u]))
                merged = terms.get(new_key, 0.0) + coeff
                if merged == 0.0:
                    terms.pop(new_key, None)
                else:
                    terms[new_key] = merged
        gadget_terms.extend([
            ((a, b), penalty),
            (tuple(sorted((a, u))), -2.0 * penalty),
            (tuple(sorted((b, u))), -2.0 * penalty),
            ((u,), 3.0 * penalty),
        ])

    qubo = PseudoBooleanPoly(num_vars, drop_tol=poly.drop_tol)
    qubo.constant = poly.constant
    for key, coeff in terms.items():
        qubo.add_term(key, coeff)
    for key, coeff in gadget_terms:
        qubo.add_term(key, coeff)
    return QuadratizationResult(
        qubo=qubo, substitutions=tuple(substitutions), original_vars=poly.num_vars
    )


def extend_assignment(
    result: QuadratizationResult, assignment: Assignment
) -> tuple[int, ...]:
    """Complete an original-space assignment with consistent auxiliary bits.

    Every gadget evaluates to 0 on the output, so the QUBO value equals the
    input polynomial's value at `assignment`.
    """
    if len(assignment) != result.original_vars:
        raise LengthMismatch(
            f"assignment has length {len(assignment)}, "
            f"expected {result.original_vars}"
        )
    bits = [int(b) for b in assignment]
    for sub in result.substitutions:
        a, b = sub.pair
        bits.append(bits[a] & bits[b])
    return tuple(bits)


def project_assignment(
    result: QuadratizationResult, assignment: Assignment
) -> tuple[int, ...]:
    """Truncate a full QUBO assignment back to the original variables."""
    expected = result.original_vars + len(result.substitutions)
    if len(assignment) != expected:
        raise LengthMismatch(
            f"assignment has length {len(assignment)}, expected {expected}"
        )
    return tuple(int(b) for b in assignment[: result.original_vars])
