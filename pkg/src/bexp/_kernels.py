"""Scalar hot loops shared by the map, dynamics and generator modules.

Everything here is branch-light float64 arithmetic suitable for numba's
nopython mode; see :mod:`bexp._accel` for how compilation is selected.
Callers are responsible for argument validation — kernels assume b > 0 and
do not range-check x.
"""

import math

from ._accel import njit

# Half-width of the guard band around the removable singularity at b = 1,
# inside which the analytic limit 4x(1-x) is returned instead of the 0/0 form.
NEAR_ONE_EPS = 1e-6

# floor(x * 2**52) of a value in [0,1) fits in 52 bits.
_SCALE_2_52 = 4503599627370496.0


@njit(cache=True)
def gl_value(b, x):
    """Map value; limit branch near b=1, no codomain clamp."""
    if abs(b - 1.0) < NEAR_ONE_EPS:
        return 4.0 * x * (1.0 - x)
    return (b - x * b**x - (1.0 - x) * b**(1.0 - x)) / (b - math.sqrt(b))


@njit(cache=True)
def gl_derivative(b, x, order):
    """Analytic d^order/dx^order of the map, order in {1,2,3}."""
    if abs(b - 1.0) < NEAR_ONE_EPS:
        if order == 1:
            return 4.0 - 8.0 * x
        if order == 2:
            return -8.0
        return 0.0
    ln_b = math.log(b)
    den = b - math.sqrt(b)
    bx = b**x
    b1x = b**(1.0 - x)
    if order == 1:
        return (-bx * (1.0 + x * ln_b)
                + b1x * (1.0 + (1.0 - x) * ln_b)) / den
    if order == 2:
        return (-bx * ln_b * (2.0 + x * ln_b)
                - b1x * ln_b * (2.0 + (1.0 - x) * ln_b)) / den
    return (-bx * ln_b * ln_b * (3.0 + x * ln_b)
            + b1x * ln_b * ln_b * (3.0 + (1.0 - x) * ln_b)) / den


@njit(cache=True)
def numerator_value(b, x):
    """Un-normalized numerator map; range depends on b, never clamped."""
    return b - x * b**x - (1.0 - x) * b**(1.0 - x)


@njit(cache=True)
def tent_value(b, x):
    """Generalized tent map, written out as the closed-form expression."""
    if abs(b - 1.0) < NEAR_ONE_EPS:
        return 1.0 - 2.0 * abs(x - 0.5)
    s = math.sin(0.5 * math.pi * x) ** 2
    inner = (b - s * b**s - (1.0 - s) * b**(1.0 - s)) / (b - math.sqrt(b))
    # float leakage of at most a few ulp for b >= e^-4; asin needs [0,1]
    if inner < 0.0:
        inner = 0.0
    elif inner > 1.0:
        inner = 1.0
    return (2.0 / math.pi) * math.asin(math.sqrt(inner))


MAP_GL = 0
MAP_NUMERATOR = 1
MAP_TENT = 2


@njit(cache=True)
def step_projected(map_id, b, x):
    """One iteration, with the iterate projected back onto [0,1].

    Projection absorbs orbits that leave the interval (possible for the GL
    map below the chaotic threshold and for the numerator map above phi^2);
    inside the chaotic regime it only trims ulp-level float leakage.
    """
    if map_id == MAP_GL:
        v = gl_value(b, x)
    elif map_id == MAP_NUMERATOR:
        v = numerator_value(b, x)
    else:
        v = tent_value(b, x)
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


@njit(cache=True)
def orbit_fill(map_id, b, x0, transient, out):
    x = x0
    for _ in range(transient):
        x = step_projected(map_id, b, x)
    for i in range(out.size):
        x = step_projected(map_id, b, x)
        out[i] = x
    return x


@njit(cache=True)
def lyapunov_sum(b, x0, iterations, transient):
    """Sum of ln|f'| along a post-transient orbit.

    Terms with |f'| < 1e-300 (critical-point hits) are skipped and counted.
    Returns (sum, skipped).
    """
    x = x0
    for _ in range(transient):
        x = step_projected(MAP_GL, b, x)
    acc = 0.0
    skipped = 0
    for _ in range(iterations):
        d = abs(gl_derivative(b, x, 1))
        if d < 1e-300:
            skipped += 1
        else:
            acc += math.log(d)
        x = step_projected(MAP_GL, b, x)
    return acc, skipped


@njit(cache=True)
def zero_trap_value(x, y, eps):
    """Trap semantics: pass x through iff eps <= x <= 1-eps, else substitute
    the driver iterate y when it is itself in band, else the band edge eps."""
    if x >= eps and x <= 1.0 - eps:
        return x
    if y >= eps and y <= 1.0 - eps:
        return y
    return eps


@njit(cache=True)
def beach_block(x, y, r, blimit, eps):
    """One outer-loop hop: driver update, hop to map b, r trapped inner
    iterations, 52-bit extraction, driver floor trap.

    Returns (x, y, v) with v the full 52-bit integer before masking.
    """
    inv_blimit = 1.0 / blimit
    y = 4.0 * y * (1.0 - y)
    if y <= 0.0 or y >= 1.0:
        # driver landed on an exact endpoint (only reachable through an
        # iterate hitting 0.5); restart it from the documented floor
        y = inv_blimit
    b = blimit * y
    for _ in range(r):
        x = gl_value(b, x)
        x = zero_trap_value(x, y, eps)
    v = int(x * _SCALE_2_52)
    if y <= inv_blimit:
        if x >= inv_blimit:
            y = x
        else:
            y = inv_blimit
    return x, y, v


@njit(cache=True)
def beach_fill(x, y, r, blimit, eps, out):
    """Emit out.size raw 52-bit block values; returns final (x, y)."""
    for i in range(out.size):
        x, y, v = beach_block(x, y, r, blimit, eps)
        out[i] = v
    return x, y
