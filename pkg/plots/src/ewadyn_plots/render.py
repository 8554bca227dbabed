"""The four figure kinds, rendered from ewadyn CSVs.

Color legend for period diagrams: period 1 = yellow, 2 = red, 3 = blue,
4 = green, 5 = brown, 6 = cyan, 7 = darkgray, 8 = magenta, and white for
no detected period (encoded 0 in the CSV).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")  # pinned backend: identical inputs -> identical bytes

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import BoundaryNorm, ListedColormap

from .io import SchemaError, as_grid, read_table

PERIOD_COLORS = {
    0: "white",
    1: "yellow",
    2: "red",
    3: "blue",
    4: "green",
    5: "brown",
    6: "cyan",
    7: "darkgray",
    8: "magenta",
}

REGIME_COLORS = {
    "period2": "red",
    "chaos": "cornflowerblue",
    "boundary": "black",
    "invalid": "white",
}

FIGURE_KINDS = ("bifurcation", "cobweb", "period-diagram", "regime-map")

_SAVEFIG = dict(dpi=100, metadata={"Software": "ewadyn-plots"})


@dataclass
class FigureSpec:
    """One rendering job: input CSV(s) -> one PNG."""

    kind: str
    input_path: str
    output_path: str
    curves_path: str | None = None     # boundary overlay (period-diagram)
    potential_path: str | None = None  # potential overlay (cobweb)
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    period_colors: dict = field(default_factory=lambda: dict(PERIOD_COLORS))

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {FIGURE_KINDS}")


def render(spec: FigureSpec) -> str:
    """Render the figure and return the output path."""
    fig = plt.figure(figsize=(8.0, 5.0))
    try:
        if spec.kind == "bifurcation":
            _render_bifurcation(fig, spec)
        elif spec.kind == "cobweb":
            _render_cobweb(fig, spec)
        elif spec.kind == "period-diagram":
            _render_period_diagram(fig, spec)
        else:
            _render_regime_map(fig, spec)
        fig.savefig(spec.output_path, **_SAVEFIG)
    finally:
        plt.close(fig)
    return spec.output_path


def _finish(ax, spec: FigureSpec, xlabel: str, ylabel: str, title: str) -> None:
    ax.set_xlabel(spec.xlabel or xlabel)
    ax.set_ylabel(spec.ylabel or ylabel)
    ax.set_title(spec.title or title)


def _render_bifurcation(fig, spec: FigureSpec) -> None:
    table = read_table(spec.input_path, expect_columns=["a", "x"])
    a = [row[0] for row in table.rows]
    x = [row[1] for row in table.rows]
    ax = fig.add_subplot(111)
    ax.plot(a, x, ",", color="black", markersize=0.5)
    ax.set_ylim(0.0, 1.0)
    sigma = table.params.get("sigma", "?")
    _finish(ax, spec, "intensity of choice a", "long-run state x",
            f"bifurcation diagram (sigma = {sigma}, b = {table.params.get('b', '?')})")


def _render_cobweb(fig, spec: FigureSpec) -> None:
    table = read_table(spec.input_path, expect_columns=["segment_index", "x", "y"])
    xs = [row[1] for row in table.rows]
    ys = [row[2] for row in table.rows]
    ax = fig.add_subplot(111)
    ax.plot([0.0, 1.0], [0.0, 1.0], color="gray", linewidth=0.8)
    ax.plot(xs, ys, color="tab:blue", linewidth=0.9)
    ax.plot(xs[:1], ys[:1], "o", color="tab:blue", markersize=4)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.0)
    if spec.potential_path:
        pot = read_table(spec.potential_path, expect_columns=["x", "phi"])
        px = [row[0] for row in pot.rows]
        phi = [row[1] for row in pot.rows]
        twin = ax.twinx()
        twin.plot(px, phi, color="darkorange", linewidth=1.2)
        twin.set_ylabel("congestion potential")
    _finish(ax, spec, "x_n", "x_{n+1}",
            f"cobweb (a = {table.params.get('a', '?')}, b = {table.params.get('b', '?')}, "
            f"sigma = {table.params.get('sigma', '?')})")


def _render_period_diagram(fig, spec: FigureSpec) -> None:
    table = read_table(spec.input_path, expect_columns=["a", "b", "period"])
    a_vals, b_vals, matrix = as_grid(table, x_col=0, y_col=1, v_col=2)
    data = np.asarray(matrix, dtype=float)
    top = len(spec.period_colors) - 1
    data = np.clip(data, 0, top)
    cmap = ListedColormap([spec.period_colors[k] for k in sorted(spec.period_colors)])
    norm = BoundaryNorm(np.arange(-0.5, top + 1.0), cmap.N)
    ax = fig.add_subplot(111)
    image = ax.imshow(data, origin="lower", aspect="auto", cmap=cmap, norm=norm,
                      interpolation="nearest",
                      extent=(min(a_vals), max(a_vals), min(b_vals), max(b_vals)))
    if spec.curves_path:
        curves = read_table(spec.curves_path)
        for column in ("b1", "b2"):
            if column not in curves.columns:
                raise SchemaError(spec.curves_path, 1,
                                  f"overlay needs column {column!r}, found {','.join(curves.columns)}")
        ia = curves.columns.index("a")
        for column in ("b1", "b2"):
            ic = curves.columns.index(column)
            ax.plot([row[ia] for row in curves.rows], [row[ic] for row in curves.rows],
                    color="black", linewidth=1.2)
        ax.set_xlim(min(a_vals), max(a_vals))
        ax.set_ylim(min(b_vals), max(b_vals))
    bar = fig.colorbar(image, ax=ax, ticks=range(top + 1))
    bar.set_label("attracting period (0 = none)")
    _finish(ax, spec, "intensity of choice a", "equilibrium split b",
            f"attracting periods (sigma = {table.params.get('sigma', '?')})")


def _render_regime_map(fig, spec: FigureSpec) -> None:
    table = read_table(spec.input_path, expect_columns=["sigma", "b", "label"])
    labels = sorted(REGIME_COLORS)
    code = {name: i for i, name in enumerate(labels)}
    for row in table.rows:
        if row[2] not in code:
            raise SchemaError(spec.input_path, 1, f"unknown regime label {row[2]!r}")
    coded = [[row[0], row[1], code[row[2]]] for row in table.rows]
    fake = type(table)(table.command, table.params, table.columns, coded)
    s_vals, b_vals, matrix = as_grid(fake, x_col=0, y_col=1, v_col=2)
    cmap = ListedColormap([REGIME_COLORS[name] for name in labels])
    norm = BoundaryNorm(np.arange(-0.5, len(labels)), cmap.N)
    ax = fig.add_subplot(111)
    ax.imshow(np.asarray(matrix, dtype=float), origin="lower", aspect="auto",
              cmap=cmap, norm=norm, interpolation="nearest",
              extent=(min(s_vals), max(s_vals), min(b_vals), max(b_vals)))
    handles = [plt.Rectangle((0, 0), 1, 1, color=REGIME_COLORS[name]) for name in labels
               if name != "invalid"]
    ax.legend(handles, [name for name in labels if name != "invalid"],
              loc="center", framealpha=0.9)
    _finish(ax, spec, "memory loss sigma", "asymmetry of costs b",
            "large-intensity regimes")
