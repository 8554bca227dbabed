"""Discounted EWA learning dynamics in two-resource congestion games.

Simulation and analysis toolkit: perturbed equilibria, stability thresholds,
attracting periodic orbits, period-2 trap and period-3 chaos certificates,
and data-parallel bifurcation/period/regime diagram sweeps with a CLI that
emits self-describing CSV/JSON.
"""

from .dynamics import (
    CLAMP_HI,
    CLAMP_LO,
    MwuConfig,
    Params,
    WeightPair,
    clamp_state,
    critical_points_x,
    deriv_x,
    derivs_y,
    from_conjugate,
    mwu_step,
    potential,
    schwarzian_y,
    step_x,
    step_y,
    to_conjugate,
)
from .equilibrium import EquilibriumResult, equilibrium_limits, solve_fixed_point
from .orbits import (
    ChaosCertificate,
    ChaosWitness,
    LyapunovEstimate,
    OrbitTrace,
    PeriodReport,
    TrapVerification,
    certify_chaos,
    detect_period,
    detect_period_multiseed,
    find_periodic_orbit,
    iterate,
    lyapunov_estimate,
    verify_period2_trap,
)
from .stability import (
    BifurcationBoundary,
    StabilityReport,
    boundary_curves,
    classify,
    regime,
    threshold_a0,
    universal_threshold_astar,
)
from .sweep import (
    Axis,
    CobwebTrace,
    DiagramGrid,
    bifurcation_diagram,
    cobweb_trace,
    period_diagram,
    regime_map,
)

__version__ = "0.1.0"
