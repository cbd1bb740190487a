"""Pure evaluation of the B-exponential map family.

The family is GL(b, x) = (b - x*b**x - (1-x)*b**(1-x)) / (b - sqrt(b)) on
x in [0, 1], b > 0, together with its x-derivatives, the un-normalized
numerator map G, the sine-squared conjugacy C, and the generalized tent map
GT = C^-1 . GL . C. The expression is 0/0 at b = 1; within NEAR_ONE_EPS of
1 every function switches to its analytic limit (the logistic parabola
4x(1-x) and its derivatives, the tent 1 - 2|x - 1/2|).

All functions are pure and safe for concurrent callers.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from ._kernels import NEAR_ONE_EPS

# Surjectivity/chaos threshold, computed (never a decimal literal) so regime
# classification is bit-exact.
CHAOS_THRESHOLD = math.exp(-4.0)

# Codomain leakage allowance: values past [0,1] by more than this are treated
# as evidence of a broken evaluation rather than rounding.
_ULP_TOL = 4.0 * math.ulp(1.0)


class Regime(Enum):
    SUB_CHAOTIC = "sub-chaotic"   # 0 < b < e^-4: not a self-map of [0,1]
    CHAOTIC = "chaotic"           # b >= e^-4: surjective, unimodal


@dataclass(frozen=True)
class MapParam:
    """Parameter b with its regime classification."""

    b: float
    regime: Regime
    near_singular: bool

    @classmethod
    def from_b(cls, b: float) -> "MapParam":
        b = float(b)
        if not (b > 0.0) or math.isinf(b):
            raise ValueError(f"map parameter must be a positive finite real, got {b!r}")
        regime = Regime.CHAOTIC if b >= CHAOS_THRESHOLD else Regime.SUB_CHAOTIC
        return cls(b=b, regime=regime, near_singular=abs(b - 1.0) < NEAR_ONE_EPS)


def _check_b(b) -> float:
    b = float(b)
    if not (b > 0.0) or math.isinf(b):
        raise ValueError(f"map parameter must be a positive finite real, got {b!r}")
    return b


def _check_unit(x, name: str = "x") -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return x


def eval_gl(b: float, x: float) -> float:
    """Evaluate the map at (b, x).

    The result is clamped onto [0,1] when it overshoots by at most 4 ulp
    (float leakage near the critical point); a larger excursion raises
    FloatingPointError. For b >= e^-4 the map sends [0,1] onto [0,1]; below
    the threshold the true map overshoots 1 near its two humps and this
    function refuses such values — iterate through :mod:`bexp.dynamics` if
    you want the absorbed interval dynamics instead.
    """
    b = _check_b(b)
    x = _check_unit(x)
    v = _kernels.gl_value(b, x)
    if 0.0 <= v <= 1.0:
        return v
    if 1.0 < v <= 1.0 + _ULP_TOL:
        return 1.0
    if -_ULP_TOL <= v < 0.0:
        return 0.0
    raise FloatingPointError(
        f"GL({b!r}, {x!r}) = {v!r} lies outside [0,1] beyond rounding "
        f"tolerance (map is not a self-map for b < {CHAOS_THRESHOLD!r})")


def eval_gl_derivative(b: float, x: float, order: int) -> float:
    """Analytic derivative of given order (1, 2 or 3) at (b, x)."""
    b = _check_b(b)
    x = _check_unit(x)
    if order not in (1, 2, 3):
        raise ValueError(f"derivative order must be 1, 2 or 3, got {order!r}")
    return _kernels.gl_derivative(b, x, order)


def eval_numerator(b: float, x: float) -> float:
    """The numerator map G(b, x) = b - x*b**x - (1-x)*b**(1-x), unclamped."""
    b = _check_b(b)
    x = _check_unit(x)
    return _kernels.numerator_value(b, x)


def conjugacy(x: float) -> float:
    """C(x) = sin^2(pi x / 2)."""
    x = _check_unit(x)
    return math.sin(0.5 * math.pi * x) ** 2


def conjugacy_inverse(y: float) -> float:
    """C^-1(y) = (2/pi) asin(sqrt(y))."""
    y = _check_unit(y, "y")
    return (2.0 / math.pi) * math.asin(math.sqrt(y))


def eval_tent_generalized(b: float, x: float) -> float:
    """Generalized tent map C^-1(GL(b, C(x))); requires b >= e^-4 so the
    inner value stays in asin's domain. Near b=1 returns 1 - 2|x - 1/2|."""
    b = _check_b(b)
    x = _check_unit(x)
    if b < CHAOS_THRESHOLD and abs(b - 1.0) >= NEAR_ONE_EPS:
        raise ValueError(
            f"tent map needs b >= {CHAOS_THRESHOLD!r}; got {b!r} "
            "(inner map value may leave [0,1])")
    return _kernels.tent_value(b, x)


def gl_grid(b: float, xs: np.ndarray) -> np.ndarray:
    """Vectorized eval_gl over an array of x values (same clamp contract)."""
    b = _check_b(b)
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and (xs.min() < 0.0 or xs.max() > 1.0):
        raise ValueError("grid values must lie in [0, 1]")
    out = np.empty_like(xs)
    flat = xs.ravel()
    res = out.ravel()
    for i in range(flat.size):
        res[i] = _kernels.gl_value(b, flat[i])
    bad_hi = res > 1.0
    bad_lo = res < 0.0
    if np.any(res[bad_hi] > 1.0 + _ULP_TOL) or np.any(res[bad_lo] < -_ULP_TOL):
        worst = res[bad_hi | bad_lo]
        raise FloatingPointError(
            f"GL values outside [0,1] beyond rounding tolerance at b={b!r} "
            f"(e.g. {worst[0]!r})")
    res[bad_hi] = 1.0
    res[bad_lo] = 0.0
    return out
