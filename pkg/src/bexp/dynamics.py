"""Orbit-based analysis: iteration, Lyapunov exponents, Schwarzian scans,
bifurcation scans, k-th return maps and symbolic transition coverage.

Iteration convention: each step projects the new iterate back onto [0,1].
For b >= e^-4 this only trims ulp-scale float leakage; below the threshold
(and for the numerator map above phi^2) the true map overshoots 1, and the
projection turns the overshoot into absorption through 1 -> 0 -> 0 — the
same collapse a finite-precision implementation of the raw recurrence
exhibits. All operations are pure and deterministic for fixed inputs.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .maps import CHAOS_THRESHOLD, NEAR_ONE_EPS, _check_b, _check_unit

_MAP_IDS = {
    "gl": _kernels.MAP_GL,
    "numerator": _kernels.MAP_NUMERATOR,
    "gt": _kernels.MAP_TENT,
}


@dataclass(frozen=True)
class OrbitSample:
    b: float
    x0: float
    transient: int
    values: np.ndarray


@dataclass(frozen=True)
class LyapunovEstimate:
    b: float
    exponent: float     # nats per iteration
    iterations: int
    transient: int
    skipped: int        # critical-point terms dropped from the average


@dataclass(frozen=True)
class BifurcationPoint:
    b: float
    attractor_samples: np.ndarray


def _check_x0(x0) -> float:
    x0 = float(x0)
    if not (0.0 < x0 < 1.0):
        raise ValueError(
            f"x0 must lie strictly inside (0, 1), got {x0!r} "
            "(0 and 1 are fixed/absorbing)")
    return x0


def _map_id(map_kind: str, b: float) -> int:
    try:
        mid = _MAP_IDS[map_kind]
    except KeyError:
        raise ValueError(f"unknown map {map_kind!r}; expected one of "
                         f"{sorted(_MAP_IDS)}") from None
    if mid == _kernels.MAP_TENT and b < CHAOS_THRESHOLD \
            and abs(b - 1.0) >= NEAR_ONE_EPS:
        raise ValueError(f"tent map needs b >= {CHAOS_THRESHOLD!r}, got {b!r}")
    return mid


def orbit(map_kind: str, b: float, x0: float, length: int,
          transient: int = 0) -> OrbitSample:
    """Record `length` successive iterates after discarding `transient`."""
    b = _check_b(b)
    x0 = _check_x0(x0)
    if length < 1:
        raise ValueError("length must be >= 1")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    mid = _map_id(map_kind, b)
    values = np.empty(length, dtype=np.float64)
    _kernels.orbit_fill(mid, b, x0, transient, values)
    return OrbitSample(b=b, x0=x0, transient=transient, values=values)


def lyapunov(b: float, x0: float, iterations: int = 10_000,
             transient: int = 1_000) -> LyapunovEstimate:
    """Average of ln|GL'| along a post-transient orbit.

    Iterates landing on the critical point (derivative magnitude below
    1e-300) are skipped and counted; more than 1% skips is an error since
    the average would no longer be trustworthy.
    """
    b = _check_b(b)
    x0 = _check_x0(x0)
    if iterations < 1_000:
        raise ValueError("lyapunov estimates need iterations >= 1000")
    if transient < 0:
        raise ValueError("transient must be >= 0")
    acc, skipped = _kernels.lyapunov_sum(b, x0, iterations, transient)
    if skipped > 0.01 * iterations:
        raise RuntimeError(
            f"{skipped}/{iterations} Lyapunov terms hit the critical point; "
            "estimate would be unreliable")
    lam = acc / (iterations - skipped)
    return LyapunovEstimate(b=b, exponent=lam, iterations=iterations,
                            transient=transient, skipped=skipped)


def schwarzian(b: float, x: float) -> float:
    """f'''/f' - (3/2)(f''/f')^2 from the analytic derivatives."""
    b = _check_b(b)
    x = _check_unit(x)
    f1 = _kernels.gl_derivative(b, x, 1)
    if abs(f1) <= 1e-8:
        raise ValueError(
            f"Schwarzian undefined this close to the critical point "
            f"(|f'({b!r}, {x!r})| = {abs(f1):.2e})")
    f2 = _kernels.gl_derivative(b, x, 2)
    f3 = _kernels.gl_derivative(b, x, 3)
    return f3 / f1 - 1.5 * (f2 / f1) ** 2


def bifurcation_scan(b_start: float, b_end: float, b_steps: int,
                     transient: int = 1_000, keep: int = 200,
                     x0: float = 0.3, map_kind: str = "gl"):
    """Post-transient attractor samples on a uniform parameter grid.

    Returns a list of BifurcationPoint ordered by grid index.
    """
    if not (0.0 < b_start < b_end):
        raise ValueError(f"need 0 < b_start < b_end, got [{b_start!r}, {b_end!r}]")
    if b_steps < 2:
        raise ValueError("b_steps must be >= 2")
    if keep < 1:
        raise ValueError("keep must be >= 1")
    x0 = _check_x0(x0)
    points = []
    for b in np.linspace(b_start, b_end, b_steps):
        mid = _map_id(map_kind, b)
        samples = np.empty(keep, dtype=np.float64)
        _kernels.orbit_fill(mid, float(b), x0, transient, samples)
        points.append(BifurcationPoint(b=float(b), attractor_samples=samples))
    return points


def attractor_summary(point: BifurcationPoint, rounding: float = 1e-3):
    """(distinct rounded values, spread) of a scan point's samples."""
    decimals = max(0, round(-math.log10(rounding)))
    s = point.attractor_samples
    distinct = np.unique(np.round(s, decimals)).size
    return distinct, float(s.max() - s.min())


def is_collapsed(point: BifurcationPoint, max_distinct: int = 16) -> bool:
    """Periodic-window / absorbed-orbit detector: few distinct rounded values."""
    distinct, _ = attractor_summary(point)
    return distinct <= max_distinct


def return_map(b: float, x0: float, k: int, count: int,
               transient: int = 1_000) -> np.ndarray:
    """Pairs (x_n, x_{n+k}) from one post-transient orbit, shape (count, 2)."""
    b = _check_b(b)
    x0 = _check_x0(x0)
    if b < CHAOS_THRESHOLD and abs(b - 1.0) >= NEAR_ONE_EPS:
        raise ValueError(f"return maps need b >= {CHAOS_THRESHOLD!r}, got {b!r}")
    if k < 1:
        raise ValueError("k must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    values = np.empty(count + k, dtype=np.float64)
    _kernels.orbit_fill(_kernels.MAP_GL, b, x0, transient, values)
    out = np.empty((count, 2), dtype=np.float64)
    out[:, 0] = values[:count]
    out[:, 1] = values[k:k + count]
    return out


def symbolic_transitions(b: float, x0: float, length: int) -> np.ndarray:
    """Which of the four symbol transitions occur along an orbit.

    Symbols follow the half-open partition: 0 for x < 0.5, 1 for x >= 0.5.
    Returns a (2, 2) boolean matrix, rows = from-symbol, cols = to-symbol.
    """
    b = _check_b(b)
    x0 = _check_x0(x0)
    if b < CHAOS_THRESHOLD and abs(b - 1.0) >= NEAR_ONE_EPS:
        raise ValueError(f"symbolic dynamics need b >= {CHAOS_THRESHOLD!r}")
    if length < 2:
        raise ValueError("length must be >= 2 to observe a transition")
    values = np.empty(length - 1, dtype=np.float64)
    _kernels.orbit_fill(_kernels.MAP_GL, b, x0, 0, values)
    symbols = np.empty(length, dtype=np.int8)
    symbols[0] = 1 if x0 >= 0.5 else 0
    symbols[1:] = (values >= 0.5).astype(np.int8)
    present = np.zeros((2, 2), dtype=bool)
    for a, c in zip(symbols[:-1], symbols[1:]):
        present[a, c] = True
    return present
