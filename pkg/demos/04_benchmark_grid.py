"""Run a small benchmark grid and summarize the formulation comparison.

A scaled-down version of the full experiment: every method solves the same
random instances per (m, n) cell, costs are normalized against the direct
HUBO annealer, and the results CSV feeds the scpfigures package, e.g.

    scpfigures results.csv --kind cost_bars --out cost_bars.pdf
    scpfigures results.csv --kind model_size --out model_size.pdf
"""

from collections import defaultdict

from scpanneal import (
    ExperimentConfig,
    normalize_costs,
    results_to_csv,
    run_experiment,
)

cfg = ExperimentConfig(
    m_values=(12, 18),
    coverage=3.0,
    instances_per_cell=2,
    master_seed=42,
    num_reads=200,
    sweeps_per_read=50,
)
records = run_experiment(cfg)
normalized = normalize_costs(records, baseline_method="HUBO_SA")

groups = defaultdict(list)
for rec in normalized:
    groups[(rec.method, rec.m)].append(rec)

print(f"{'method':>14} {'m':>4} {'norm cost':>10} {'feasible':>9} "
      f"{'vars':>6} {'couplers':>9}")
for (method, m), rows in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0])):
    mean_norm = sum(r.normalized_cost for r in rows) / len(rows)
    feas = sum(r.feasible for r in rows)
    vars_ = max(r.num_vars for r in rows)
    coup = max(r.num_couplers for r in rows)
    print(f"{method:>14} {m:>4} {mean_norm:>10.3f} {feas:>6}/{len(rows)} "
          f"{vars_:>6} {coup:>9}")

path = "demo_results.csv"
with open(path, "w") as fh:
    fh.write(results_to_csv(records))
print(f"\nwrote {path} ({len(records)} records); render it with scpfigures")
