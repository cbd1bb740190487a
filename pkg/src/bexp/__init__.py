"""B-exponential map family: evaluation, dynamical analysis, the map-hopping
bit generator, and an ENT-style statistical battery."""

from ._accel import USING_NUMBA
from .maps import (
    CHAOS_THRESHOLD,
    NEAR_ONE_EPS,
    MapParam,
    Regime,
    conjugacy,
    conjugacy_inverse,
    eval_gl,
    eval_gl_derivative,
    eval_numerator,
    eval_tent_generalized,
)
from .dynamics import (
    BifurcationPoint,
    LyapunovEstimate,
    OrbitSample,
    attractor_summary,
    bifurcation_scan,
    is_collapsed,
    lyapunov,
    orbit,
    return_map,
    schwarzian,
    symbolic_transitions,
)
from .beach import (
    BeachConfig,
    BeachState,
    fill_bits,
    new_generator,
    next_block,
    next_blocks,
    restore,
    snapshot,
    zero_trap,
)
from .statsuite import (
    EntReport,
    arithmetic_mean,
    chi_square,
    monte_carlo_pi,
    regularized_gamma_q,
    run_battery,
    serial_correlation,
    shannon_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA", "CHAOS_THRESHOLD", "NEAR_ONE_EPS",
    "MapParam", "Regime",
    "conjugacy", "conjugacy_inverse", "eval_gl", "eval_gl_derivative",
    "eval_numerator", "eval_tent_generalized",
    "BifurcationPoint", "LyapunovEstimate", "OrbitSample",
    "attractor_summary", "bifurcation_scan", "is_collapsed", "lyapunov",
    "orbit", "return_map", "schwarzian", "symbolic_transitions",
    "BeachConfig", "BeachState", "fill_bits", "new_generator", "next_block",
    "next_blocks", "restore", "snapshot", "zero_trap",
    "EntReport", "arithmetic_mean", "chi_square", "monte_carlo_pi",
    "regularized_gamma_q", "run_battery", "serial_correlation",
    "shannon_entropy",
]
