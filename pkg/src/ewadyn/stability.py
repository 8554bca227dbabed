"""Local stability of the interior equilibrium and where it is lost.

The multiplier at the fixed point has the closed form

    f'(xbar) = 1 - sigma - a * xbar * (1 - xbar),

strictly decreasing in a, so the destabilization threshold a0 (multiplier
-1) is found by bisection in a.  Solving f'(xbar) = -1 jointly with the
fixed-point equation instead gives the flip boundary in the (a, b) plane as
two symmetric branches b1/b2, and for sigma > 0 the branch b1 reaches 0 at
a finite intensity a* beyond which no cost asymmetry can keep the
equilibrium attracting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import Params
from .equilibrium import solve_fixed_point

__all__ = [
    "NEUTRAL_TOL",
    "REGIME_TOL",
    "PERIOD2",
    "CHAOS",
    "BOUNDARY",
    "StabilityReport",
    "BifurcationBoundary",
    "classify",
    "threshold_a0",
    "boundary_curves",
    "universal_threshold_astar",
    "regime",
]

NEUTRAL_TOL = 1e-9  # |multiplier| within this band of 1 is reported neutral
REGIME_TOL = 1e-9

PERIOD2 = "period2"
CHAOS = "chaos"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class StabilityReport:
    """Equilibrium location, its multiplier and the local class."""

    xbar: float
    multiplier: float
    label: str  # attracting | repelling | neutral


@dataclass(frozen=True)
class BifurcationBoundary:
    """Sampled flip boundary in the (a, b) plane at one discount factor.

    x1/x2 are the states with multiplier -1 (x1 + x2 = 1) and b1/b2 the
    asymmetries placing the equilibrium there (b1 + b2 = 1).  b1 <= 1/2 and
    may leave (0,1) beyond the universal threshold a*.
    """

    sigma: float
    flip_min_a: float  # 4*(2-sigma); below it the multiplier cannot reach -1
    a_values: tuple[float, ...]
    x1: tuple[float, ...]
    x2: tuple[float, ...]
    b1: tuple[float, ...]
    b2: tuple[float, ...]


def _check_b(b: float) -> None:
    if not 0.0 < b < 1.0:
        raise ValueError(f"equilibrium split must lie in (0,1), got b={b}")


def fixed_point_multiplier(p: Params, xbar: float) -> float:
    """Closed-form f'(xbar) = 1 - sigma - a*xbar*(1-xbar)."""
    return 1.0 - p.sigma - p.a * xbar * (1.0 - xbar)


def _label(multiplier: float) -> str:
    if abs(multiplier) < 1.0 - NEUTRAL_TOL:
        return "attracting"
    if abs(multiplier) > 1.0 + NEUTRAL_TOL:
        return "repelling"
    return "neutral"


def classify(p: Params) -> StabilityReport:
    """Classify the interior equilibrium from its closed-form multiplier."""
    xbar = solve_fixed_point(p).xbar
    m = fixed_point_multiplier(p, xbar)
    return StabilityReport(xbar=xbar, multiplier=m, label=_label(m))


def threshold_a0(b: float, sigma: float) -> float:
    """The intensity at which the equilibrium turns repelling.

    Unique root of multiplier(a) = -1; below it classify() is attracting,
    above it repelling.  Bisection is valid because the multiplier is
    strictly decreasing in a.
    """
    _check_b(b)
    if not 0.0 <= sigma < 1.0:
        raise ValueError(f"discount factor must lie in [0,1), got sigma={sigma}")
    lo = 1e-6
    # at tiny a the multiplier is near 1-sigma > -1; at the cap it is far below -1
    hi = max(10.0 * (2.0 - sigma) / (b * (1.0 - b)), 100.0)

    def mult(a: float) -> float:
        p = Params(a, b, sigma)
        return fixed_point_multiplier(p, solve_fixed_point(p).xbar)

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if mult(mid) > -1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def boundary_curves(sigma: float, a_grid) -> BifurcationBoundary:
    """Flip-boundary branches b1(a), b2(a) along a grid of intensities.

    Each a must satisfy a >= 4*(2-sigma), the least intensity at which the
    multiplier can reach -1 at any state.
    """
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"discount factor must lie in [0,1], got sigma={sigma}")
    amin = 4.0 * (2.0 - sigma)
    a_values = [float(a) for a in a_grid]
    x1s: list[float] = []
    x2s: list[float] = []
    b1s: list[float] = []
    b2s: list[float] = []
    for a in a_values:
        if a < amin:
            raise ValueError(f"flip boundary needs a >= 4*(2-sigma) = {amin}, got a={a}")
        c = amin / a  # in (0, 1]
        root = math.sqrt(1.0 - c)
        xl = c / (2.0 * (1.0 + root))  # = (1 - sqrt(1-c))/2 without cancellation
        xr = 1.0 - xl
        ratio_log = math.log(xr / xl)  # log((1-x1)/x1)
        b1s.append(xl - (sigma / a) * ratio_log)
        b2s.append(xr + (sigma / a) * ratio_log)
        x1s.append(xl)
        x2s.append(xr)
    return BifurcationBoundary(
        sigma=sigma,
        flip_min_a=amin,
        a_values=tuple(a_values),
        x1=tuple(x1s),
        x2=tuple(x2s),
        b1=tuple(b1s),
        b2=tuple(b2s),
    )


def universal_threshold_astar(sigma: float) -> float | None:
    """Intensity beyond which the equilibrium is repelling for every b in (0,1).

    None for sigma = 0: with perfect memory some b close enough to 0 or 1
    keeps the equilibrium attracting at any intensity.  For sigma > 0,
    solves (1-x)*log((1-x)/x) = (2-sigma)/sigma on (0, 1/2] (the left side
    is a decreasing bijection onto [0, inf)), then a* = (2-sigma)/(x(1-x)).
    """
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"discount factor must lie in [0,1], got sigma={sigma}")
    if sigma == 0.0:
        return None
    target = (2.0 - sigma) / sigma

    def g(x: float) -> float:
        return (1.0 - x) * math.log((1.0 - x) / x)

    lo = 0.25
    while g(lo) < target:
        lo *= 0.5
    hi = 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) > target:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    return (2.0 - sigma) / (x * (1.0 - x))


def regime(b: float, sigma: float) -> str:
    """Large-intensity regime label for (b, sigma).

    period2 when b lies strictly inside ((1-sigma)/(2-sigma), 1/(2-sigma)),
    chaos when strictly outside the closed interval, boundary within
    REGIME_TOL of either endpoint.  At sigma = 1 the interval is all of
    (0,1) and every interior b is period2.
    """
    _check_b(b)
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"discount factor must lie in [0,1], got sigma={sigma}")
    lo = (1.0 - sigma) / (2.0 - sigma)
    hi = 1.0 / (2.0 - sigma)
    if lo + REGIME_TOL < b < hi - REGIME_TOL:
        return PERIOD2
    if b < lo - REGIME_TOL or b > hi + REGIME_TOL:
        return CHAOS
    return BOUNDARY
