"""Figure rendering for set cover annealing benchmark CSVs."""

from .render import (
    EmptyInput,
    FigureSpec,
    KINDS,
    MissingColumns,
    ScpFiguresError,
    best_iteration,
    cost_bar_heights,
    load_table,
    render,
)

__version__ = "0.1.0"
