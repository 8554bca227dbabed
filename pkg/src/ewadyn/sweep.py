"""Data-parallel parameter sweeps: bifurcation scans over a, period diagrams
over the (a, b) plane, analytic regime maps over (sigma, b), and cobweb
traces with the potential landscape.

Cells are independent pure computations.  Parallel runs hand whole rows to
worker processes and gather the results into a pre-sized row-major list
indexed by cell coordinates, so the output is bit-identical whatever the
worker count or completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import stability
from .dynamics import Params, clamp_state, potential, step_x
from .orbits import (
    DEFAULT_MAX_PERIOD,
    DEFAULT_PERIOD_TOL,
    DEFAULT_TRANSIENT,
    DEFAULT_X0,
    detect_period,
    iterate,
)

__all__ = [
    "Axis",
    "DiagramGrid",
    "CobwebTrace",
    "bifurcation_diagram",
    "period_diagram",
    "regime_map",
    "cobweb_trace",
]

INVALID = "invalid"  # label for cells whose b falls outside (0,1)


@dataclass(frozen=True)
class Axis:
    """One swept parameter: `steps` evenly spaced values from lo to hi."""

    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float]:
        if self.steps < 1:
            raise ValueError("axis needs at least one step")
        if self.steps == 1:
            return [self.lo]
        span = self.hi - self.lo
        return [self.lo + span * i / (self.steps - 1) for i in range(self.steps)]


@dataclass
class DiagramGrid:
    """Sweep result: cells in row-major axis order (first axis slowest).

    Each cell is a tuple of its coordinates followed by the payload; the
    cell count equals the product of the axis step counts.  meta echoes
    every parameter that influenced the payloads.
    """

    axes: tuple[Axis, ...]
    cells: tuple[tuple, ...]
    meta: dict = field(default_factory=dict)


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        return max(os.cpu_count() or 1, 1)
    if workers < 1:
        raise ValueError("workers must be positive")
    return workers


def _run_tasks(fn, tasks, workers: int):
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(fn, tasks))


def _bifurcation_column(task) -> tuple[float, ...]:
    a, b, sigma, x0, transient, samples = task
    return iterate(Params(a, b, sigma), x0, transient, samples).samples


def bifurcation_diagram(b: float, sigma: float, a_min: float, a_max: float,
                        a_steps: int, samples_per_a: int,
                        x0: float = DEFAULT_X0, transient: int = DEFAULT_TRANSIENT,
                        workers: int | None = None) -> DiagramGrid:
    """Long-run states against intensity of choice.

    For each a on the grid: iterate from x0, discard the transient, record
    samples_per_a consecutive states.  Cell payloads are the sample tuples.
    """
    if not 0.0 < a_min < a_max:
        raise ValueError("need 0 < a_min < a_max")
    if a_steps < 1 or samples_per_a < 1:
        raise ValueError("a_steps and samples_per_a must be positive")
    axis = Axis("a", a_min, a_max, a_steps)
    a_values = axis.values()
    tasks = [(a, b, sigma, x0, transient, samples_per_a) for a in a_values]
    rows = _run_tasks(_bifurcation_column, tasks, _resolve_workers(workers))
    cells = tuple((a, row) for a, row in zip(a_values, rows))
    meta = {"kind": "bifurcation", "b": b, "sigma": sigma, "x0": x0,
            "transient": transient, "samples_per_a": samples_per_a}
    return DiagramGrid(axes=(axis,), cells=cells, meta=meta)


def _period_row(task) -> list[int]:
    a, b_values, sigma, x0, transient, tol, max_period = task
    row = []
    for b in b_values:
        if 0.0 < b < 1.0:
            report = detect_period(Params(a, b, sigma), x0=x0, transient=transient,
                                   max_period=max_period, tol=tol)
            # the diagram colors attracting orbits; a repelling detection is a
            # chaotic orbit grazing the boundary fixed points, where the
            # absolute periodicity probe fires vacuously (|f(x)-x| tiny
            # because x itself is tiny)
            if report.period is not None and report.label != "repelling":
                row.append(report.period)
            else:
                row.append(0)
        else:
            row.append(0)  # degenerate game, cell not simulable
    return row


def period_diagram(sigma: float, a_min: float = 4.0, a_max: float = 54.0,
                   b_min: float = 0.0, b_max: float = 1.0,
                   a_steps: int = 200, b_steps: int = 200,
                   x0: float = DEFAULT_X0, transient: int = DEFAULT_TRANSIENT,
                   tol: float = DEFAULT_PERIOD_TOL, max_period: int = DEFAULT_MAX_PERIOD,
                   workers: int | None = None) -> DiagramGrid:
    """Attracting-period class over an (a, b) grid.

    Each valid cell runs detect_period; the payload is the period of the
    attracting (or neutral) orbit found, 1..max_period, with 0 for none.
    Repelling detections are counted as none: they arise when a chaotic
    orbit grazes the repelling boundary fixed points and the absolute
    periodicity probe fires vacuously.  Cells with b outside the open unit
    interval are kept for grid shape but never iterated (payload 0).
    """
    if a_steps < 2 or b_steps < 2:
        raise ValueError("period diagram needs at least a 2x2 grid")
    a_axis = Axis("a", a_min, a_max, a_steps)
    b_axis = Axis("b", b_min, b_max, b_steps)
    a_values = a_axis.values()
    b_values = tuple(b_axis.values())
    tasks = [(a, b_values, sigma, x0, transient, tol, max_period) for a in a_values]
    rows = _run_tasks(_period_row, tasks, _resolve_workers(workers))
    cells = []
    for a, row in zip(a_values, rows):
        for b, period in zip(b_values, row):
            cells.append((a, b, period))
    meta = {"kind": "period-diagram", "sigma": sigma, "x0": x0, "transient": transient,
            "tol": tol, "max_period": max_period,
            "legend": "payload: 1..{} = attracting period, 0 = none/invalid".format(max_period)}
    return DiagramGrid(axes=(a_axis, b_axis), cells=tuple(cells), meta=meta)


def regime_map(sigma_steps: int, b_steps: int) -> DiagramGrid:
    """Analytic large-intensity regime label over a (sigma, b) grid.

    Pure classification via stability.regime; nothing is iterated.  Cells
    with b in {0, 1} are labeled 'invalid'.
    """
    if sigma_steps < 2 or b_steps < 2:
        raise ValueError("regime map needs at least a 2x2 grid")
    s_axis = Axis("sigma", 0.0, 1.0, sigma_steps)
    b_axis = Axis("b", 0.0, 1.0, b_steps)
    cells = []
    for s in s_axis.values():
        for b in b_axis.values():
            label = stability.regime(b, s) if 0.0 < b < 1.0 else INVALID
            cells.append((s, b, label))
    meta = {"kind": "regime-map"}
    return DiagramGrid(axes=(s_axis, b_axis), cells=tuple(cells), meta=meta)


@dataclass(frozen=True)
class CobwebTrace:
    """Staircase of one orbit against the diagonal, plus the potential curve."""

    params: Params
    x0: float
    vertices: tuple[tuple[float, float], ...]
    potential_curve: tuple[tuple[float, float], ...]


def cobweb_trace(p: Params, x0: float, steps: int,
                 potential_points: int = 1000) -> CobwebTrace:
    """Cobweb staircase (x,x) -> (x, f(x)) -> (f(x), f(x)) for `steps` updates,
    with the potential landscape sampled for overlay."""
    if not 0.0 < x0 < 1.0:
        raise ValueError(f"initial state must lie in (0,1), got x0={x0}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if potential_points < 2:
        raise ValueError("potential_points must be at least 2")
    x = clamp_state(x0)
    vertices = [(x, x)]
    for _ in range(steps):
        xn = clamp_state(step_x(p, x))
        vertices.append((x, xn))
        vertices.append((xn, xn))
        x = xn
    curve = []
    for i in range(potential_points):
        u = i / (potential_points - 1)
        curve.append((u, potential(p, u)))
    return CobwebTrace(params=p, x0=x0, vertices=tuple(vertices),
                       potential_curve=tuple(curve))
