"""Reduce a cubic model to quadratic with the pair-substitution gadget.

Uses three identical singleton sets so the single element contributes a
cubic monomial, then shows the auxiliary variable, the gadget rows, and that
the reduced model has the same minimum.
"""

import itertools

from scpanneal import (
    ScpInstance,
    brute_force,
    build_hubo,
    decode_hubo_solution,
    extend_assignment,
    project_assignment,
    quadratize,
    suggest_penalty,
)

inst = ScpInstance(n=1, sets=[{1}, {1}, {1}], weights=(0.2, 0.5, 0.4))
hubo, layout = build_hubo(inst, mu=0.6)
print(f"HUBO: degree {hubo.degree()}, {hubo.num_vars} variables")
print(hubo.dump())

penalty = suggest_penalty(hubo)
print(f"\nsuggested penalty: {penalty}")
result = quadratize(hubo)
for sub in result.substitutions:
    print(f"auxiliary y{sub.aux_var} stands for y{sub.pair[0]} * y{sub.pair[1]} "
          f"(penalty {sub.penalty})")
print(f"reduced model: degree {result.qubo.degree()}, "
      f"{result.qubo.num_vars} variables")

hubo_best = brute_force(hubo)
qubo_best = brute_force(result.qubo)
print(f"\nminimum before reduction: {hubo_best.best_energy:.6f}")
print(f"minimum after reduction:  {qubo_best.best_energy:.6f}")
projected = project_assignment(result, qubo_best.best_assignment)
print(f"projected argmin {projected} decodes to cover "
      f"{decode_hubo_solution(layout, projected)}")

print("\ngadget penalty is zero exactly when the auxiliary bit is consistent:")
for bits in itertools.product((0, 1), repeat=3):
    x1, x2, u = bits
    value = x1 * x2 - 2 * (x1 + x2) * u + 3 * u
    tag = "consistent" if u == x1 * x2 else "violated"
    print(f"  x1={x1} x2={x2} u={u}: {value} ({tag})")

comp = extend_assignment(result, (1, 1, 0))
print(f"\ncompletion of (1, 1, 0): {comp}")
