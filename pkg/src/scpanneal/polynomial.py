"""Sparse multilinear polynomials over binary variables.

The shared model representation: a QUBO is a polynomial of degree <= 2, a
HUBO allows monomials of any degree. Terms are keyed by sorted tuples of
distinct variable indices; multilinearity (x*x = x) is built into the keys.
Coefficients that cancel to zero are dropped so term and coupler counts are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegreeTooHigh,
    DuplicateIndexInTerm,
    IndexOutOfRange,
    LengthMismatch,
)

Assignment = Sequence[int]


class PseudoBooleanPoly:
    """A multilinear polynomial constant + sum of coeff * prod(x_v).

    Built by repeated `add_term`, then treated as immutable; evaluation is
    pure. `drop_tol` widens the cancellation test for composed polynomials
    (default: drop exact zeros only).
    """

    __slots__ = ("num_vars", "constant", "terms", "drop_tol")

    def __init__(self, num_vars: int, *, drop_tol: float = 0.0):
        if num_vars < 0:
            raise IndexOutOfRange(f"num_vars must be >= 0, got {num_vars}")
        self.num_vars = int(num_vars)
        self.constant = 0.0
        self.terms: dict[tuple[int, ...], float] = {}
        self.drop_tol = float(drop_tol)

    def add_term(self, variables: Iterable[int], coeff: float) -> "PseudoBooleanPoly":
        """Add coeff * prod(x_v for v in variables); empty set adds a constant."""
        key = tuple(sorted(int(v) for v in variables))
        if len(set(key)) != len(key):
            raise DuplicateIndexInTerm(f"term {key} repeats a variable")
        if key and (key[0] < 0 or key[-1] >= self.num_vars):
            raise IndexOutOfRange(
                f"term {key} outside variable range 0..{self.num_vars - 1}"
            )
        if not key:
            self.constant += coeff
            return self
        new = self.terms.get(key, 0.0) + coeff
        if abs(new) <= self.drop_tol:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new
        return self

    def evaluate(self, assignment: Assignment) -> float:
        """Value at a 0/1 assignment, as the correctly rounded sum of addends."""
        bits = self._check_assignment(assignment)
        addends = [self.constant]
        for key, coeff in self.terms.items():
            prod = 1
            for v in key:
                prod &= bits[v]
                if not prod:
                    break
            if prod:
                addends.append(coeff)
        return math.fsum(addends)

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def count_variables(self) -> int:
        return self.num_vars

    def count_couplers(self) -> int:
        """Number of stored quadratic terms (distinct J_ij couplings)."""
        return sum(1 for k in self.terms if len(k) == 2)

    def to_ising(self) -> "IsingModel":
        """Equivalent spin model under x = (s + 1) / 2."""
        if self.degree() > 2:
            raise DegreeTooHigh(f"degree {self.degree()} polynomial has no Ising form")
        h = np.zeros(self.num_vars)
        couplings: dict[tuple[int, int], float] = {}
        offset = self.constant
        for key, coeff in self.terms.items():
            if len(key) == 1:
                h[key[0]] += coeff / 2
                offset += coeff / 2
            else:
                i, j = key
                couplings[(i, j)] = couplings.get((i, j), 0.0) + coeff / 4
                h[i] += coeff / 4
                h[j] += coeff / 4
                offset += coeff / 4
        couplings = {k: v for k, v in couplings.items() if v != 0.0}
        return IsingModel(couplings=couplings, fields=h, offset=offset)

    def copy(self) -> "PseudoBooleanPoly":
        out = PseudoBooleanPoly(self.num_vars, drop_tol=self.drop_tol)
        out.constant = self.constant
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "PseudoBooleanPoly") -> "PseudoBooleanPoly":
        out = PseudoBooleanPoly(max(self.num_vars, other.num_vars),
                                drop_tol=max(self.drop_tol, other.drop_tol))
        out.constant = self.constant + other.constant
        out.terms = dict(self.terms)
        for key, coeff in other.terms.items():
            new = out.terms.get(key, 0.0) + coeff
            if abs(new) <= out.drop_tol:
                out.terms.pop(key, None)
            else:
                out.terms[key] = new
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoBooleanPoly):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and self.constant == other.constant
                and self.terms == other.terms)

    def __repr__(self) -> str:
        return (f"PseudoBooleanPoly(num_vars={self.num_vars}, "
                f"terms={len(self.terms)}, degree={self.degree()})")

    def dump(self) -> str:
        """Debug listing, one term per line; not a stability contract."""
        lines = [f"{coeff!r}: {' '.join(map(str, key))}"
                 for key, coeff in sorted(self.terms.items())]
        lines.append(f"constant: {self.constant!r}")
        return "\n".join(lines)

    def _check_assignment(self, assignment: Assignment) -> Sequence[int]:
        if len(assignment) != self.num_vars:
            raise LengthMismatch(
                f"assignment has length {len(assignment)}, expected {self.num_vars}"
            )
        return assignment


@dataclass
class IsingModel:
    """Spin model offset + sum J_ij s_i s_j + sum h_i s_i with s in {-1, +1}."""

    couplings: dict[tuple[int, int], float]
    fields: np.ndarray
    offset: float

    def energy(self, spins: Sequence[int]) -> float:
        if len(spins) != len(self.fields):
            raise LengthMismatch(
                f"spin vector has length {len(spins)}, expected {len(self.fields)}"
            )
        addends = [self.offset]
        addends.extend(self.fields[i] * s for i, s in enumerate(spins))
        addends.extend(c * spins[i] * spins[j] for (i, j), c in self.couplings.items())
        return math.fsum(addends)
