"""Scalar evaluation of the discounted EWA map on two congestible resources.

The population state is the fraction x of agents using resource 1.  One
learning step sends x to

    f(x) = x^(1-sigma) / (x^(1-sigma) + (1-x)^(1-sigma) * exp(a*(x - b)))

where a > 0 is the population intensity of choice, b in (0,1) is the
cost-balancing split (the fraction on resource 1 at the Nash flow) and
sigma in [0,1] discounts past costs (sigma=0 is plain multiplicative
weights, sigma=1 is the memoryless logit response).

Everything is evaluated in logit form,

    f(x) = 1 / (1 + exp(u)),   u = (1-sigma)*log((1-x)/x) + a*(x - b),

so no intermediate exponential overflows for any a up to 1e6.  The same
dynamics in the conjugate coordinate y = log((1-x)/x)/a is the map
F(y) = (1-sigma)*y + 1/(exp(a*y)+1) - b, which is smooth on all of R and
is the preferred chart for derivative and Schwarzian computations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "CLAMP_LO",
    "CLAMP_HI",
    "Params",
    "MwuConfig",
    "WeightPair",
    "clamp_state",
    "step_x",
    "deriv_x",
    "critical_points_x",
    "step_y",
    "derivs_y",
    "schwarzian_y",
    "to_conjugate",
    "from_conjugate",
    "mwu_step",
    "potential",
]

# Orbit iterates are clamped into this interval before any log-ratio is
# taken: underflow to an exact 0 or 1 would freeze the orbit at a repelling
# boundary fixed point that is unreachable in exact arithmetic.
CLAMP_LO = 1e-300
CLAMP_HI = 1.0 - 1e-16


@dataclass(frozen=True)
class Params:
    """Parameters of one map instance.

    a: population intensity of choice, > 0
    b: equilibrium split of the two-resource game, in (0, 1)
    sigma: discount (memory-loss) factor in [0, 1]
    """

    a: float
    b: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"intensity of choice must be positive and finite, got a={self.a}")
        if not 0.0 < self.b < 1.0:
            raise ValueError(f"equilibrium split must lie in (0,1), got b={self.b}")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError(f"discount factor must lie in [0,1], got sigma={self.sigma}")

    def mirrored(self) -> "Params":
        """The instance with the two resources swapped (b -> 1-b)."""
        return Params(self.a, 1.0 - self.b, self.sigma)


def clamp_state(x: float) -> float:
    """Clamp an iterate into [CLAMP_LO, CLAMP_HI]."""
    if x < CLAMP_LO:
        return CLAMP_LO
    if x > CLAMP_HI:
        return CLAMP_HI
    return x


def _logistic(z: float) -> float:
    # 1/(1+exp(-z)); exp is only ever called on a nonpositive argument.
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    t = math.exp(z)
    return t / (1.0 + t)


def step_x(p: Params, x: float) -> float:
    """One EWA step from state x in [0,1].

    For sigma < 1 the endpoints 0 and 1 are exact fixed points; for
    sigma = 1 the map is interior everywhere.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"state must lie in [0,1], got x={x}")
    if x == 0.0 or x == 1.0:
        if p.sigma < 1.0:
            return x
        return _logistic(-p.a * (x - p.b))
    u = (1.0 - p.sigma) * math.log((1.0 - x) / x) + p.a * (x - p.b)
    return _logistic(-u)


def deriv_x(p: Params, x: float) -> float:
    """f'(x) in the product form f*(1-f)*((1-sigma)/(x(1-x)) - a).

    Raises for x in {0,1} when sigma < 1: the boundary derivative is
    infinite there (both endpoints are repelling).
    """
    if x == 0.0 or x == 1.0:
        if p.sigma < 1.0:
            raise ValueError("f' is infinite at the boundary fixed points for sigma < 1")
        fx = step_x(p, x)
        return -p.a * fx * (1.0 - fx)
    if not 0.0 < x < 1.0:
        raise ValueError(f"state must lie in [0,1], got x={x}")
    fx = step_x(p, x)
    return fx * (1.0 - fx) * ((1.0 - p.sigma) / (x * (1.0 - x)) - p.a)


def critical_points_x(p: Params) -> tuple[float, float] | None:
    """The two interior critical points of f, or None when f is monotone.

    f is bimodal iff sigma < 1 and a > 4*(1-sigma), with critical points
    (1 -+ sqrt(1 - 4(1-sigma)/a))/2.  At sigma = 1 the map is strictly
    decreasing and has no interior critical point.
    """
    if p.sigma == 1.0:
        return None
    if p.a <= 4.0 * (1.0 - p.sigma):
        return None
    s = math.sqrt(1.0 - 4.0 * (1.0 - p.sigma) / p.a)
    return (0.5 * (1.0 - s), 0.5 * (1.0 + s))


def step_y(p: Params, y: float) -> float:
    """Conjugate-coordinate step F(y) = (1-sigma)*y + 1/(exp(a*y)+1) - b."""
    return (1.0 - p.sigma) * y + _logistic(-p.a * y) - p.b


def _logistic_weight(w: float) -> float:
    # exp(w)/(1+exp(w))^2; symmetric in w, evaluated without overflow.
    e = math.exp(-abs(w))
    return e / ((1.0 + e) * (1.0 + e))


def derivs_y(p: Params, y: float) -> tuple[float, float, float]:
    """(F', F'', F''') at y.

    With q = exp(a*y)/(1+exp(a*y))^2:
        F'   = 1 - sigma - a*q
        F''  = a^2 * q * tanh(a*y/2)
        F''' = a^3 * q * (6*q - 1)
    """
    w = p.a * y
    q = _logistic_weight(w)
    d1 = 1.0 - p.sigma - p.a * q
    d2 = p.a * p.a * q * math.tanh(0.5 * w)
    d3 = p.a * p.a * p.a * q * (6.0 * q - 1.0)
    return (d1, d2, d3)


def schwarzian_y(p: Params, y: float) -> float:
    """Schwarzian derivative F'''/F' - (3/2)(F''/F')^2 of the conjugate map.

    Negative for every y whenever a > 4*(1-sigma) (the bimodal case);
    blows up at the critical points of F, where F' = 0.
    """
    d1, d2, d3 = derivs_y(p, y)
    r = d2 / d1
    return d3 / d1 - 1.5 * r * r


def to_conjugate(p: Params, x: float) -> float:
    """Chart x in (0,1) -> y = log((1-x)/x) / a."""
    if not 0.0 < x < 1.0:
        raise ValueError(f"conjugate coordinate needs x in (0,1), got x={x}")
    return math.log((1.0 - x) / x) / p.a


def from_conjugate(p: Params, y: float) -> float:
    """Inverse chart y -> x = 1/(1+exp(a*y))."""
    return _logistic(-p.a * y)


def potential(p: Params, x: float) -> float:
    """Convex congestion potential (a^2/2)*((1-b)*x^2 + b*(1-x)^2).

    Strictly convex with its unique minimum at x = b.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"state must lie in [0,1], got x={x}")
    return 0.5 * p.a * p.a * ((1.0 - p.b) * x * x + p.b * (1.0 - x) * (1.0 - x))


@dataclass(frozen=True)
class MwuConfig:
    """Weight-based formulation of the same dynamics, for cross-validation.

    flow: total population mass N, > 0
    eps: common learning rate in (0, 1)
    alpha, beta: linear cost slopes of the resources, alpha + beta = 1
    sigma: discount factor in [0, 1]

    Costs are c1(x) = alpha*flow*x and c2(1-x) = beta*flow*(1-x).  Only the
    combination a = flow*log(1/(1-eps)) and b = beta enters the reduced
    one-dimensional dynamics, which is why the core API takes Params; this
    config exists so the closed-form map can be checked against the raw
    discounted weight updates.
    """

    flow: float
    eps: float
    alpha: float
    beta: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.flow) and self.flow > 0.0):
            raise ValueError(f"total flow must be positive and finite, got {self.flow}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"learning rate must lie in (0,1), got {self.eps}")
        if not (self.alpha > 0.0 and self.beta > 0.0):
            raise ValueError("cost slopes must be positive")
        if abs(self.alpha + self.beta - 1.0) > 1e-12:
            raise ValueError(f"cost slopes must satisfy alpha+beta=1, got {self.alpha + self.beta}")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError(f"discount factor must lie in [0,1], got {self.sigma}")

    @property
    def intensity(self) -> float:
        """Derived intensity of choice a = flow * log(1/(1-eps))."""
        return -self.flow * math.log1p(-self.eps)

    def params(self) -> Params:
        """The Params instance this config reduces to (a = intensity, b = beta)."""
        return Params(self.intensity, self.beta, self.sigma)

    def cost_1(self, x: float) -> float:
        return self.alpha * self.flow * x

    def cost_2(self, share: float) -> float:
        return self.beta * self.flow * share


@dataclass(frozen=True)
class WeightPair:
    """Strategy weights kept in log-domain.

    Weights are renormalized after every update (max log-weight subtracted),
    so only the difference log_w1 - log_w2 carries meaning.
    """

    log_w1: float
    log_w2: float

    @classmethod
    def uniform(cls) -> "WeightPair":
        """Equal weights (1, 1); induced mixture 1/2."""
        return cls(0.0, 0.0)

    @classmethod
    def from_state(cls, x: float) -> "WeightPair":
        """Weights (x, 1-x) whose induced mixture is x."""
        if not 0.0 < x < 1.0:
            raise ValueError(f"mixture must lie in (0,1), got {x}")
        return cls(math.log(x), math.log(1.0 - x))

    @property
    def mixture(self) -> float:
        """Fraction w1/(w1+w2) induced by the weights."""
        return _logistic(self.log_w1 - self.log_w2)


def mwu_step(cfg: MwuConfig, w: WeightPair, x: float) -> tuple[WeightPair, float]:
    """One discounted multiplicative-weights update.

    Applies w_i <- w_i^(1-sigma) * (1-eps)^(cost_i) in log-domain, with the
    costs evaluated at the current split x, then renormalizes.  Returns the
    new weights and the mixture they induce; the mixture reproduces
    step_x(params(), x) up to rounding.
    """
    lam = -math.log1p(-cfg.eps)  # log(1/(1-eps))
    lw1 = (1.0 - cfg.sigma) * w.log_w1 - lam * cfg.cost_1(x)
    lw2 = (1.0 - cfg.sigma) * w.log_w2 - lam * cfg.cost_2(1.0 - x)
    top = lw1 if lw1 >= lw2 else lw2
    nw = WeightPair(lw1 - top, lw2 - top)
    return nw, nw.mixture
