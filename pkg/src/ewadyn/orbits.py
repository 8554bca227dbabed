"""Orbits of the map: iteration, attracting-period detection, periodic-orbit
refinement, the alternating-interval certificate for an attracting 2-cycle,
and period-3 chaos certificates.

Period detection follows the diagram recipe: discard a long transient, then
call the state periodic of period n when |f^n(x) - x| < tol and no smaller n
matches.  The default tol is 1e-13; 1e-16 only succeeds once the orbit has
collapsed to a machine-identical cycle and is available via the tol argument
for strict runs.

Chaos certificates work in the conjugate coordinate, where the map F is
smooth with a bounded invariant interval [F(c+), F(c-)]: a period-3 orbit of
F forces Li-Yorke chaos and topological entropy >= log((1+sqrt 5)/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dynamics import (
    CLAMP_HI,
    CLAMP_LO,
    Params,
    clamp_state,
    critical_points_x,
    deriv_x,
    derivs_y,
    step_x,
    step_y,
    to_conjugate,
)
from .equilibrium import solve_fixed_point
from .stability import NEUTRAL_TOL

__all__ = [
    "DEFAULT_X0",
    "DEFAULT_TRANSIENT",
    "DEFAULT_MAX_PERIOD",
    "DEFAULT_PERIOD_TOL",
    "MULTI_SEEDS",
    "ENTROPY_PERIOD3",
    "OrbitTrace",
    "PeriodReport",
    "TrapVerification",
    "ChaosWitness",
    "ChaosCertificate",
    "LyapunovEstimate",
    "iterate",
    "detect_period",
    "detect_period_multiseed",
    "find_periodic_orbit",
    "verify_period2_trap",
    "certify_chaos",
    "lyapunov_estimate",
]

DEFAULT_X0 = 0.2
DEFAULT_TRANSIENT = 20000
DEFAULT_MAX_PERIOD = 8
DEFAULT_PERIOD_TOL = 1e-13
# fallback seeds guard against starting on the countable preimage set of the
# repelling equilibrium (e.g. x0 = 1/2 at b = 1/2)
MULTI_SEEDS = (0.2, 0.5 - 1e-3, 0.8)

# entropy forced by a period-3 orbit of an interval map
ENTROPY_PERIOD3 = math.log(0.5 * (1.0 + math.sqrt(5.0)))

_NEWTON_ITERATIONS = 100
_NEWTON_RESIDUAL = 1e-12
_DIVISOR_TOL = 1e-10
_FLOOR_NEAR_CRITICAL = 1e-14


def _check_x0(x0: float) -> None:
    if not 0.0 < x0 < 1.0:
        raise ValueError(f"initial state must lie in (0,1), got x0={x0}")


def _advance(a: float, b: float, sigma: float, x: float, n: int) -> tuple[float, int]:
    """n clamped map steps from x; returns (state, clamp_events).

    Hot loop for transients: same arithmetic as step_x, with the iterate
    clamped into [CLAMP_LO, CLAMP_HI] after every step.
    """
    log = math.log
    exp = math.exp
    oms = 1.0 - sigma
    lo = CLAMP_LO
    hi = CLAMP_HI
    clamps = 0
    for _ in range(n):
        u = oms * log((1.0 - x) / x) + a * (x - b)
        if u >= 0.0:
            t = exp(-u)
            x = t / (1.0 + t)
        else:
            x = 1.0 / (1.0 + exp(u))
        if x < lo:
            x = lo
            clamps += 1
        elif x > hi:
            x = hi
            clamps += 1
    return x, clamps


@dataclass(frozen=True)
class OrbitTrace:
    """A simulated trajectory, recorded after a discarded transient."""

    params: Params
    x0: float
    transient: int
    samples: tuple[float, ...]
    clamp_events: int


def iterate(p: Params, x0: float, transient: int, samples: int) -> OrbitTrace:
    """Iterate from x0, discard `transient` steps, record the next `samples`."""
    _check_x0(x0)
    if transient < 0 or samples < 0:
        raise ValueError("transient and samples must be nonnegative")
    x = clamp_state(x0)
    x, clamps = _advance(p.a, p.b, p.sigma, x, transient)
    buf: list[float] = []
    for _ in range(samples):
        x, c = _advance(p.a, p.b, p.sigma, x, 1)
        clamps += c
        buf.append(x)
    return OrbitTrace(params=p, x0=x0, transient=transient,
                      samples=tuple(buf), clamp_events=clamps)


@dataclass(frozen=True)
class PeriodReport:
    """Detected (and, when possible, Newton-refined) cycle."""

    period: int | None
    orbit: tuple[float, ...]
    multiplier: float | None  # product of f' over the cycle
    label: str  # attracting | repelling | neutral | undetected


_UNDETECTED = PeriodReport(period=None, orbit=(), multiplier=None, label="undetected")


def _cycle_report(p: Params, x: float, period: int) -> PeriodReport:
    orbit = [x]
    for _ in range(period - 1):
        orbit.append(clamp_state(step_x(p, orbit[-1])))
    mult = 1.0
    for pt in orbit:
        mult *= deriv_x(p, pt)
    if abs(mult) < 1.0 - NEUTRAL_TOL:
        label = "attracting"
    elif abs(mult) > 1.0 + NEUTRAL_TOL:
        label = "repelling"
    else:
        label = "neutral"
    return PeriodReport(period=period, orbit=tuple(orbit), multiplier=mult, label=label)


def detect_period(p: Params, x0: float = DEFAULT_X0, transient: int = DEFAULT_TRANSIENT,
                  max_period: int = DEFAULT_MAX_PERIOD,
                  tol: float = DEFAULT_PERIOD_TOL) -> PeriodReport:
    """Detect the attracting period visited from x0.

    After the transient, reports the smallest n <= max_period with
    |f^n(x) - x| < tol, Newton-refined into the exact cycle; 'undetected'
    (period None) when nothing matches.
    """
    _check_x0(x0)
    if transient < 0:
        raise ValueError("transient must be nonnegative")
    if max_period < 1:
        raise ValueError("max_period must be positive")
    x = clamp_state(x0)
    x, _ = _advance(p.a, p.b, p.sigma, x, transient)
    z = x
    period = None
    for n in range(1, max_period + 1):
        z, _ = _advance(p.a, p.b, p.sigma, z, 1)
        if abs(z - x) < tol:
            period = n
            break
    if period is None:
        return _UNDETECTED
    refined = find_periodic_orbit(p, period, x)
    if refined.period is not None:
        return refined
    return _cycle_report(p, x, period)  # Newton failed; report the raw cycle


def detect_period_multiseed(p: Params, seeds=MULTI_SEEDS, transient: int = DEFAULT_TRANSIENT,
                            max_period: int = DEFAULT_MAX_PERIOD,
                            tol: float = DEFAULT_PERIOD_TOL) -> PeriodReport:
    """detect_period over several seeds; first non-repelling detection wins.

    A repelling detection means the seed sat exactly on an unstable cycle (or
    its preimage set), which is a measure-zero artifact of the seed choice;
    it is reported only when no seed finds anything else.
    """
    fallback = _UNDETECTED
    for x0 in seeds:
        report = detect_period(p, x0=x0, transient=transient,
                               max_period=max_period, tol=tol)
        if report.period is not None:
            if report.label != "repelling":
                return report
            if fallback.period is None:
                fallback = report
    return fallback


def _proper_divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def find_periodic_orbit(p: Params, period: int, seed: float) -> PeriodReport:
    """Newton refinement of a period-`period` point near seed.

    Solves f^T(x) = x with the chain-rule derivative of f^T.  Failure to
    converge in 100 iterations yields an 'undetected' report; convergence
    onto a cycle whose true period properly divides T is reported with the
    true period.
    """
    if period < 1:
        raise ValueError("period must be positive")
    _check_x0(seed)
    x = clamp_state(seed)
    converged = False
    for _ in range(_NEWTON_ITERATIONS):
        val = x
        dprod = 1.0
        for _ in range(period):
            dprod *= deriv_x(p, val)
            val = clamp_state(step_x(p, val))
        g = val - x
        if abs(g) < _NEWTON_RESIDUAL:
            converged = True
            break
        gp = dprod - 1.0
        if gp == 0.0:
            break
        step = g / gp
        xn = x - step
        if not CLAMP_LO <= xn <= CLAMP_HI or xn == x:
            break
        x = xn
    if not converged:
        return _UNDETECTED
    true_period = period
    for d in _proper_divisors(period):
        val = x
        for _ in range(d):
            val = clamp_state(step_x(p, val))
        if abs(val - x) < _DIVISOR_TOL:
            true_period = d
            break
    return _cycle_report(p, x, true_period)


@dataclass(frozen=True)
class TrapVerification:
    """Numeric check of the two alternating intervals exchanged by the
    conjugate map, which pin an attracting 2-cycle at large intensity.

    With phi(z) = (2-sigma)*z - (1-sigma) and b0 = min(b, 1-b), the trap is
    built from x- = -phi(b)/(sigma(2-sigma)), x+ = phi(1-b)/(sigma(2-sigma))
    and half-width K = phi(b0)/(2 sigma (2-sigma)); the checks are
    0 <= F' <= 1-sigma on both intervals, F(I-) inside I+ and F(I+) inside
    I-, and the linear envelopes F+ < F < F- with their 1/(a*x) sharpening
    at the interval endpoints.
    """

    params: Params
    phi_b: float
    phi_1mb: float
    x_minus: float
    x_plus: float
    half_width: float
    i_minus: tuple[float, float]
    i_plus: tuple[float, float]
    derivative_bound_holds: bool
    inclusions_hold: bool
    linear_bounds_hold: bool

    @property
    def trap_holds(self) -> bool:
        return (self.derivative_bound_holds and self.inclusions_hold
                and self.linear_bounds_hold)


def _phi(z: float, sigma: float) -> float:
    return (2.0 - sigma) * z - (1.0 - sigma)


_TRAP_SAMPLES = 1000


def verify_period2_trap(p: Params) -> TrapVerification:
    """Verify the alternating-interval construction at these parameters.

    Requires sigma in (0,1) and min(b, 1-b) > (1-sigma)/(2-sigma); outside
    that the construction is undefined and a ValueError names the failed
    hypothesis.  The checks themselves may fail (booleans False) when the
    intensity is too small -- that is a result, not an error.
    """
    if not 0.0 < p.sigma < 1.0:
        raise ValueError("trap construction needs sigma in (0,1); the half-width is undefined at sigma=0")
    b0 = min(p.b, 1.0 - p.b)
    gate = (1.0 - p.sigma) / (2.0 - p.sigma)
    if not b0 > gate:
        raise ValueError(
            f"trap construction needs min(b,1-b) > (1-sigma)/(2-sigma) = {gate}, got {b0}")
    denom = p.sigma * (2.0 - p.sigma)
    phi_b = _phi(p.b, p.sigma)
    phi_1mb = _phi(1.0 - p.b, p.sigma)
    x_minus = -phi_b / denom
    x_plus = phi_1mb / denom
    half_width = _phi(b0, p.sigma) / (2.0 * denom)
    i_minus = (x_minus - half_width, x_minus + half_width)
    i_plus = (x_plus - half_width, x_plus + half_width)
    oms = 1.0 - p.sigma

    def sample(interval: tuple[float, float]) -> list[float]:
        lo, hi = interval
        return [lo + (hi - lo) * i / _TRAP_SAMPLES for i in range(_TRAP_SAMPLES + 1)]

    pts_minus = sample(i_minus)
    pts_plus = sample(i_plus)

    deriv_ok = all(0.0 <= derivs_y(p, y)[0] <= oms for y in pts_minus + pts_plus)

    def image(points: list[float]) -> tuple[float, float]:
        vals = [step_y(p, y) for y in points]
        return min(vals), max(vals)

    img_minus = image(pts_minus)
    img_plus = image(pts_plus)
    inclusions = (i_plus[0] <= img_minus[0] and img_minus[1] <= i_plus[1]
                  and i_minus[0] <= img_plus[0] and img_plus[1] <= i_minus[1])

    def envelopes_ok(y: float) -> bool:
        # margins like exp(-a|y|) round to zero at large a, so comparisons
        # are non-strict
        f = step_y(p, y)
        f_plus = oms * y - p.b
        f_minus = oms * y + 1.0 - p.b
        if not f_plus <= f <= f_minus:
            return False
        if y < 0.0:
            return f >= f_minus + 1.0 / (p.a * y)
        if y > 0.0:
            return f <= f_plus + 1.0 / (p.a * y)
        return True

    linear_ok = all(envelopes_ok(y) for y in (*i_minus, *i_plus))

    return TrapVerification(
        params=p, phi_b=phi_b, phi_1mb=phi_1mb, x_minus=x_minus, x_plus=x_plus,
        half_width=half_width, i_minus=i_minus, i_plus=i_plus,
        derivative_bound_holds=deriv_ok, inclusions_hold=inclusions,
        linear_bounds_hold=linear_ok)


@dataclass(frozen=True)
class ChaosWitness:
    """A middle-lap point sent to the left critical point whose third image
    overshoots the right critical point.

    Computed on the b <= 1/2 representative; `mirrored` records that b was
    reflected to 1-b first (the two instances are conjugate under y -> -y).
    """

    x0: float
    fx0: float
    f3x0: float
    c_minus: float
    c_plus: float
    mirrored: bool
    ok: bool


@dataclass(frozen=True)
class ChaosCertificate:
    """Evidence that the dynamics is chaotic at these parameters.

    hypothesis_met: b is outside the period-2 interval on the correct side.
    orbit3: a numeric period-3 cycle of the conjugate map (cycle order,
    starting at its smallest point), which forces Li-Yorke chaos and
    topological entropy at least log((1+sqrt 5)/2).
    """

    params: Params
    hypothesis_met: bool
    period3_found: bool
    orbit3: tuple[float, float, float] | None
    witness: ChaosWitness
    entropy_lower_bound: float | None


def _conjugate_critical_points(p: Params) -> tuple[float, float]:
    # zeros of F': t = exp(a*y) solves t^2 + (2 - a/(1-sigma))*t + 1 = 0;
    # the roots are reciprocal, so c- = -c+ and neither depends on b.
    if p.sigma >= 1.0 or p.a <= 4.0 * (1.0 - p.sigma):
        raise ValueError("conjugate map is not bimodal: needs sigma < 1 and a > 4*(1-sigma)")
    big = p.a / (1.0 - p.sigma) - 2.0
    t_hi = 0.5 * (big + math.sqrt(big * big - 4.0))
    c_plus = math.log(t_hi) / p.a
    return -c_plus, c_plus


def _critical_kick_witness(p: Params, c_minus: float, c_plus: float) -> ChaosWitness:
    mirrored = p.b > 0.5
    q = p.mirrored() if mirrored else p
    # critical points are b-independent, so c-/c+ carry over to q
    lo, hi = c_minus, c_plus
    g_lo = step_y(q, lo) - c_minus
    g_hi = step_y(q, hi) - c_minus
    if not (g_lo > 0.0 > g_hi):
        nan = math.nan
        return ChaosWitness(nan, nan, nan, c_minus, c_plus, mirrored, False)
    # F is decreasing on the middle lap, so bisection is monotone
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if step_y(q, mid) - c_minus > 0.0:
            lo = mid
        else:
            hi = mid
    x0 = 0.5 * (lo + hi)
    fx0 = step_y(q, x0)
    f3x0 = step_y(q, step_y(q, fx0))
    return ChaosWitness(x0=x0, fx0=fx0, f3x0=f3x0, c_minus=c_minus, c_plus=c_plus,
                        mirrored=mirrored, ok=f3x0 > c_plus)


_PERIOD3_GRID = 100_000
_PERIOD3_CYCLE_TOL = 1e-9
_PERIOD3_DISTINCT_TOL = 1e-6


def _find_period3(p: Params, c_minus: float, c_plus: float,
                  grid_points: int) -> tuple[float, float, float] | None:
    f3 = lambda y: step_y(p, step_y(p, step_y(p, y)))
    y_lo = step_y(p, c_plus) - 1.0   # below the invariant interval [F(c+), F(c-)]
    y_hi = step_y(p, c_minus) + 1.0
    ybar = to_conjugate(p, solve_fixed_point(p).xbar)

    def refine(lo: float, hi: float, h_lo: float) -> float:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            h_mid = f3(mid) - mid
            if (h_mid > 0.0) == (h_lo > 0.0):
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    prev_y = y_lo
    prev_h = f3(prev_y) - prev_y
    for i in range(1, grid_points + 1):
        y = y_lo + (y_hi - y_lo) * i / grid_points
        h = f3(y) - y
        if h == 0.0:
            root = y
        elif prev_h * h < 0.0:
            root = refine(prev_y, y, prev_h)
        else:
            prev_y, prev_h = y, h
            continue
        prev_y, prev_h = y, h
        y1 = step_y(p, root)
        y2 = step_y(p, y1)
        if abs(step_y(p, y2) - root) > _PERIOD3_CYCLE_TOL:
            continue
        if (abs(y1 - root) < _PERIOD3_DISTINCT_TOL
                or abs(y2 - root) < _PERIOD3_DISTINCT_TOL
                or abs(y2 - y1) < _PERIOD3_DISTINCT_TOL):
            continue  # period 1 (or numerically degenerate), not period 3
        if min(abs(root - ybar), abs(y1 - ybar), abs(y2 - ybar)) < _PERIOD3_DISTINCT_TOL:
            continue
        cycle = (root, y1, y2)
        start = min(range(3), key=lambda k: cycle[k])
        return (cycle[start], cycle[(start + 1) % 3], cycle[(start + 2) % 3])
    return None


def certify_chaos(p: Params, grid_points: int = _PERIOD3_GRID) -> ChaosCertificate:
    """Produce a chaos certificate for these parameters.

    Checks the cost-asymmetry hypothesis (b <= 1/2 with b < (1-sigma)/(2-sigma),
    or b >= 1/2 with b > 1/(2-sigma)), computes the critical-point kick
    witness, and scans the conjugate map for a period-3 orbit; when the
    hypothesis fails the searches still run and the results are
    informational.  Needs the map bimodal (sigma < 1 and a > 4*(1-sigma)).
    """
    c_minus, c_plus = _conjugate_critical_points(p)
    lo_gate = (1.0 - p.sigma) / (2.0 - p.sigma)
    hi_gate = 1.0 / (2.0 - p.sigma)
    hypothesis = (p.b <= 0.5 and p.b < lo_gate) or (p.b >= 0.5 and p.b > hi_gate)
    witness = _critical_kick_witness(p, c_minus, c_plus)
    orbit3 = _find_period3(p, c_minus, c_plus, grid_points)
    found = orbit3 is not None
    return ChaosCertificate(
        params=p,
        hypothesis_met=hypothesis,
        period3_found=found,
        orbit3=orbit3,
        witness=witness,
        entropy_lower_bound=ENTROPY_PERIOD3 if found else None,
    )


@dataclass(frozen=True)
class LyapunovEstimate:
    """Finite-time Lyapunov exponent with a count of floored terms."""

    value: float
    floored_terms: int


def lyapunov_estimate(p: Params, x0: float, transient: int, n: int) -> LyapunovEstimate:
    """Average of log|f'| over n post-transient orbit points.

    Diagnostic only.  Orbit points within 1e-14 of a critical point (or
    with an underflowed derivative) contribute log(1e-14) and are counted
    in floored_terms.
    """
    _check_x0(x0)
    if transient < 0:
        raise ValueError("transient must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")
    x = clamp_state(x0)
    x, _ = _advance(p.a, p.b, p.sigma, x, transient)
    crit = critical_points_x(p)
    floor_term = math.log(_FLOOR_NEAR_CRITICAL)
    total = 0.0
    floored = 0
    for _ in range(n):
        near_critical = crit is not None and (
            abs(x - crit[0]) < _FLOOR_NEAR_CRITICAL or abs(x - crit[1]) < _FLOOR_NEAR_CRITICAL)
        if near_critical:
            total += floor_term
            floored += 1
        else:
            d = abs(deriv_x(p, x))
            if d == 0.0:
                total += floor_term
                floored += 1
            else:
                total += math.log(d)
        x, _ = _advance(p.a, p.b, p.sigma, x, 1)
    return LyapunovEstimate(value=total / n, floored_terms=floored)
