"""Weighted set cover through annealing on three penalty formulations.

The library builds slack-variable QUBOs, augmented-Lagrangian QUBOs with an
iterative multiplier loop, and complemented-variable HUBOs (optionally
reduced to QUBOs) from set cover instances, and minimizes them with exact
enumeration or simulated annealing. A benchmark harness and CLI compare the
formulations on random instance grids.
"""

from .alm import AlmParams, AlmRecord, AlmTrace, constraint_values, run_alm, trace_to_csv
from .formulations import (
    HuboLayout,
    SlackLayout,
    build_alm_objective,
    build_hubo,
    build_slack_qubo,
    decode_hubo_solution,
    decode_slack_solution,
    global_slack_width,
)
from .harness import (
    METHODS,
    ExperimentConfig,
    ResultRecord,
    config_from_json,
    n_values_for,
    normalize_costs,
    results_to_csv,
    run_experiment,
    run_method,
)
from .instances import (
    GeneratorConfig,
    ScpInstance,
    cover_cost,
    deserialize_instance,
    generate_instance,
    is_feasible,
    reported_cost,
    serialize_instance,
    sigma,
    uncovered_elements,
)
from .polynomial import IsingModel, PseudoBooleanPoly
from .quadratize import (
    QuadratizationResult,
    VarSubstitution,
    extend_assignment,
    project_assignment,
    quadratize,
    suggest_penalty,
)
from .solvers import (
    BruteForceSolver,
    SaParams,
    SaSolver,
    SolverResult,
    brute_force,
    greedy_cover,
    simulated_annealing,
)

__version__ = "0.1.0"
