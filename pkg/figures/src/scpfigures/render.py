"""Render benchmark CSVs into the three standard figure kinds.

Everything here is a pure function of the input table: costs and traces are
consumed as-is, never recomputed. The only arithmetic is presentation-side
normalization of cost bars against a baseline method, whose bars are then
exactly 1.0 in every cell.

Figure kinds
------------
alm_trace   uncovered elements per multiplier iteration, with an "x" marker
            on the best recorded iteration (lowest reported cost, feasible
            rows preferred, earliest on ties).
cost_bars   per-m groups of bars, one bar per (method, n), heights are cell
            mean costs divided by the baseline cell mean; shading encodes n.
model_size  scatter of model variable and coupler counts against m.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import pandas as pd


class ScpFiguresError(Exception):
    """Base class for rendering errors."""


class MissingColumns(ScpFiguresError, ValueError):
    """Input CSV lacks columns the figure kind requires."""


class EmptyInput(ScpFiguresError, ValueError):
    """Input CSV has no data rows."""


REQUIRED_COLUMNS = {
    "alm_trace": ("iteration", "uncovered", "reported_cost", "feasible"),
    "cost_bars": ("method", "m", "n", "reported_cost"),
    "model_size": ("method", "m", "num_vars", "num_couplers"),
}

KINDS = tuple(REQUIRED_COLUMNS)

# canonical ordering for methods appearing in harness output; anything
# unknown is appended alphabetically
METHOD_ORDER = ("SV_SA", "AL_SA", "HUBO_SA", "HUBO_QUAD_SA", "GREEDY")


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    kind: str
    out_path: str
    baseline: str = "HUBO_SA"


def load_table(csv_path: str, kind: str) -> pd.DataFrame:
    if kind not in REQUIRED_COLUMNS:
        raise ScpFiguresError(f"unknown figure kind {kind!r}; choose from {KINDS}")
    table = pd.read_csv(csv_path)
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in table.columns]
    if missing:
        raise MissingColumns(f"{csv_path} lacks columns {missing} needed by {kind}")
    if table.empty:
        raise EmptyInput(f"{csv_path} has no data rows")
    return table


def best_iteration(trace: pd.DataFrame) -> int:
    """Row index of the best recorded solution, by the driver's rule:
    feasible rows strictly preferred, then lowest reported cost, then
    earliest iteration."""
    order = trace.reset_index(drop=True)
    ranked = sorted(
        range(len(order)),
        key=lambda i: (
            int(order.loc[i, "feasible"]) == 0,
            order.loc[i, "reported_cost"],
            i,
        ),
    )
    return ranked[0]


def cost_bar_heights(table: pd.DataFrame, baseline: str) -> pd.DataFrame:
    """One row per (m, method, n) with the normalized bar height."""
    if baseline not in set(table["method"]):
        raise ScpFiguresError(f"baseline method {baseline!r} not present in input")
    means = (
        table.groupby(["m", "n", "method"], as_index=False)["reported_cost"]
        .mean()
        .rename(columns={"reported_cost": "mean_cost"})
    )
    base = means[means["method"] == baseline][["m", "n", "mean_cost"]].rename(
        columns={"mean_cost": "base_cost"}
    )
    joined = means.merge(base, on=["m", "n"], how="left")
    if joined["base_cost"].isna().any():
        cells = joined[joined["base_cost"].isna()][["m", "n"]].drop_duplicates()
        raise ScpFiguresError(
            f"baseline {baseline!r} missing in cells {cells.values.tolist()}"
        )
    joined["height"] = joined["mean_cost"] / joined["base_cost"]
    return joined[["m", "n", "method", "height"]]


def _method_order(methods) -> list[str]:
    known = [m for m in METHOD_ORDER if m in methods]
    extra = sorted(set(methods) - set(METHOD_ORDER))
    return known + extra


def render(spec: FigureSpec) -> str:
    """Write the figure and return its path."""
    table = load_table(spec.csv_path, spec.kind)
    if spec.kind == "alm_trace":
        fig = _render_alm_trace(table)
    elif spec.kind == "cost_bars":
        fig = _render_cost_bars(table, spec.baseline)
    else:
        fig = _render_model_size(table)
    fig.savefig(spec.out_path)
    plt.close(fig)
    return spec.out_path


def _render_alm_trace(trace: pd.DataFrame):
    fig, ax = plt.subplots(figsize=(6, 4))
    iterations = trace["iteration"].tolist()
    uncovered = trace["uncovered"].tolist()
    ax.plot(iterations, uncovered, marker="o", lw=1.5, color="tab:blue")
    best = best_iteration(trace)
    ax.scatter(
        [iterations[best]], [uncovered[best]],
        marker="x", s=140, lw=2.5, color="tab:red", zorder=3,
        label=f"best solution (iteration {iterations[best]})",
    )
    ax.set_xlabel("iteration")
    ax.set_ylabel("uncovered elements")
    ax.set_title("Multiplier loop progress")
    ax.legend()
    fig.tight_layout()
    return fig


def _render_cost_bars(table: pd.DataFrame, baseline: str):
    heights = cost_bar_heights(table, baseline)
    m_values = sorted(heights["m"].unique())
    methods = _method_order(heights["method"].unique())
    cmap = plt.get_cmap("tab10")
    method_color = {meth: cmap(i % 10) for i, meth in enumerate(methods)}

    fig, ax = plt.subplots(figsize=(1.0 + 2.4 * len(m_values), 4.5))
    bar_w = 1.0
    group_gap = 2.0
    xpos = 0.0
    xticks, xlabels = [], []
    seen_labels = set()
    for m in m_values:
        cell = heights[heights["m"] == m]
        n_values = sorted(cell["n"].unique())
        group_start = xpos
        for method in methods:
            for rank, n in enumerate(n_values):
                row = cell[(cell["method"] == method) & (cell["n"] == n)]
                if row.empty:
                    continue
                shade = 0.45 + 0.55 * (rank + 1) / len(n_values)
                label = method if method not in seen_labels else None
                seen_labels.add(method)
                ax.bar(
                    xpos, float(row["height"].iloc[0]), bar_w,
                    color=method_color[method], alpha=shade, label=label,
                )
                xpos += bar_w
            xpos += 0.5 * bar_w
        xticks.append((group_start + xpos - 0.5 * bar_w) / 2)
        xlabels.append(f"m={m}")
        xpos += group_gap
    ax.axhline(1.0, color="black", lw=0.8, ls="--")
    ax.set_xticks(xticks, xlabels)
    ax.set_ylabel(f"mean cost relative to {baseline}")
    ax.set_title("Cover cost by formulation (shade: n, light to dark)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _render_model_size(table: pd.DataFrame):
    methods = _method_order(table["method"].unique())
    cmap = plt.get_cmap("tab10")
    fig, (ax_vars, ax_coup) = plt.subplots(1, 2, figsize=(9, 4), sharex=True)
    for i, method in enumerate(methods):
        rows = table[table["method"] == method]
        ax_vars.scatter(rows["m"], rows["num_vars"], s=18,
                        color=cmap(i % 10), label=method)
        ax_coup.scatter(rows["m"], rows["num_couplers"], s=18,
                        color=cmap(i % 10), label=method)
    ax_vars.set_xlabel("m")
    ax_coup.set_xlabel("m")
    ax_vars.set_ylabel("model variables")
    ax_coup.set_ylabel("model couplers")
    ax_vars.legend(fontsize=8)
    fig.suptitle("Model sizes by formulation")
    fig.tight_layout()
    return fig
