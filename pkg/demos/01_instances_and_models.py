"""Build a set cover instance and compile it into all three binary models.

Walks the hand-checkable 3-set instance end to end: the incidence structure,
the slack QUBO, the augmented-Lagrangian QUBO, and the complemented-variable
HUBO, each minimized exactly to confirm they agree on the optimal cover.
"""

import itertools

from scpanneal import (
    ScpInstance,
    brute_force,
    build_alm_objective,
    build_hubo,
    build_slack_qubo,
    cover_cost,
    decode_hubo_solution,
    decode_slack_solution,
    is_feasible,
    serialize_instance,
    sigma,
)

inst = ScpInstance(n=2, sets=[{1}, {1, 2}, {2}], weights=(0.5, 0.9, 0.3))
print("instance:", inst)
print("serialized:")
print(serialize_instance(inst))

for element in (1, 2):
    print(f"sets covering element {element}: {sorted(sigma(inst, element))}")

# the optimum by inspection: {S1, S3} at cost 0.8
feasible = [sel for sel in itertools.product((0, 1), repeat=inst.m)
            if is_feasible(inst, sel)]
best = min(feasible, key=lambda sel: cover_cost(inst, sel))
print(f"\nenumerated optimum: {best}, cost {cover_cost(inst, best):.3f}")

mu = max(inst.weights) + 0.1

slack, slack_layout = build_slack_qubo(inst, mu)
print(f"\nslack QUBO: {slack.num_vars} variables "
      f"({inst.m} sets + {slack.num_vars - inst.m} slack bits), "
      f"{slack.count_couplers()} couplers")
result = brute_force(slack)
print(f"  minimum {result.best_energy:.6f} decodes to "
      f"{decode_slack_solution(slack_layout, result.best_assignment)}")

al, constant = build_alm_objective(inst, lam=(0.0, 0.0), mu=0.5)
print(f"\naugmented-Lagrangian QUBO: {al.num_vars} variables, "
      f"{al.count_couplers()} couplers, dropped constant {constant}")
print("  term listing:")
for line in al.dump().splitlines():
    print("   ", line)

hubo, hubo_layout = build_hubo(inst, mu)
result = brute_force(hubo)
print(f"\nHUBO over complemented variables: degree {hubo.degree()}")
print(f"  minimum {result.best_energy:.6f} decodes to "
      f"{decode_hubo_solution(hubo_layout, result.best_assignment)}")
