"""Interior fixed point of the map (the perturbed equilibrium).

The interior fixed point xbar solves

    x - b - (sigma/a) * log((1-x)/x) = 0,

whose left side is strictly increasing in x, so xbar is unique and lies in
the closed interval spanned by b and 1/2.  Bisection on that bracket is
unconditionally convergent, which is why it is the production solver here
(Newton would gain nothing and can escape the bracket).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import Params, step_x

__all__ = ["EquilibriumResult", "solve_fixed_point", "equilibrium_limits"]

_BRACKET_PAD = 1e-9  # keeps the bracket nondegenerate when b = 1/2 exactly
_BISECTIONS = 200


@dataclass(frozen=True)
class EquilibriumResult:
    """Solved interior fixed point with solver diagnostics."""

    xbar: float
    residual: float  # |f(xbar) - xbar|
    bracket: float   # final bisection interval width


def _fp_gap(p: Params, x: float) -> float:
    return x - p.b - (p.sigma / p.a) * math.log((1.0 - x) / x)


def solve_fixed_point(p: Params) -> EquilibriumResult:
    """Locate the unique interior fixed point of the map."""
    lo = max(min(p.b, 0.5) - _BRACKET_PAD, 1e-300)
    hi = min(max(p.b, 0.5) + _BRACKET_PAD, 1.0 - 1e-16)
    # gap(lo) < 0 < gap(hi) holds by construction of the padded bracket
    for _ in range(_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _fp_gap(p, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    xbar = 0.5 * (lo + hi)
    # the root provably lies between b and 1/2; snap the midpoint into that
    # closed interval so the sandwich property holds exactly, not just to 1 ulp
    inner_lo = min(p.b, 0.5)
    inner_hi = max(p.b, 0.5)
    if xbar < inner_lo:
        xbar = inner_lo
    elif xbar > inner_hi:
        xbar = inner_hi
    return EquilibriumResult(
        xbar=xbar,
        residual=abs(step_x(p, xbar) - xbar),
        bracket=hi - lo,
    )


def equilibrium_limits(b: float, sigma: float, a_grid) -> list[float]:
    """xbar along a strictly ascending grid of intensities, at fixed (b, sigma).

    The returned sequence is monotone: decreasing toward b when b < 1/2,
    increasing toward b when b > 1/2, constant 1/2 when b = 1/2.  Early
    entries approach 1/2 as a -> 0+, late entries approach b as a -> inf.
    """
    grid = [float(a) for a in a_grid]
    if any(a2 <= a1 for a1, a2 in zip(grid, grid[1:])):
        raise ValueError("a_grid must be strictly ascending")
    return [solve_fixed_point(Params(a, b, sigma)).xbar for a in grid]
