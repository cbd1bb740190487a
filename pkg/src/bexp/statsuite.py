"""ENT-style statistical battery over bit or byte streams.

Five metrics on 1-bit or 8-bit words: plug-in Shannon entropy, chi-square
goodness of fit against the uniform distribution (statistic plus the
percentage of the time a truly random sequence would exceed it), arithmetic
mean, Monte-Carlo estimation of pi from 48-bit point pairs, and circular
lag-1 serial correlation. Pure functions of immutable input buffers.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EntReport:
    word_size: int               # 1 or 8 bits per word
    entropy_per_word: float      # bits
    chi_square_stat: float
    chi_square_pct: float        # upper-tail probability * 100
    mean: float
    pi_estimate: float
    pi_error_pct: float
    serial_correlation: float    # NaN when the word stream is constant
    n_words: int


# -- regularized incomplete gamma ---------------------------------------------
# Series for x < a+1, Lentz continued fraction otherwise; relative accuracy
# ~1e-14 over the degrees of freedom used here (tested against an
# independent implementation).

_GAMMA_ITMAX = 2000
_GAMMA_EPS = 1e-16


def _gammainc_lower_series(a: float, x: float) -> float:
    ap = a
    total = 1.0 / a
    delta = total
    for _ in range(_GAMMA_ITMAX):
        ap += 1.0
        delta *= x / ap
        total += delta
        if abs(delta) < abs(total) * _GAMMA_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gammainc_upper_cf(a: float, x: float) -> float:
    b = x + 1.0 - a
    c = 1e308
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_ITMAX):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < 1e-300:
            d = 1e-300
        c = b + an / c
        if abs(c) < 1e-300:
            c = 1e-300
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_q(a: float, x: float) -> float:
    """Q(a, x) = Gamma(a, x) / Gamma(a), the upper regularized gamma."""
    if a <= 0.0 or x < 0.0:
        raise ValueError(f"need a > 0 and x >= 0, got a={a!r}, x={x!r}")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gammainc_lower_series(a, x)
    return _gammainc_upper_cf(a, x)


def chi_square_exceedance_pct(stat: float, dof: int) -> float:
    """Percentage of the time a chi-square(dof) variate exceeds `stat`."""
    return 100.0 * regularized_gamma_q(0.5 * dof, 0.5 * stat)


# -- word extraction ----------------------------------------------------------

def _as_bytes(data) -> np.ndarray:
    if isinstance(data, np.ndarray) and data.dtype == np.uint8:
        return data
    return np.frombuffer(bytes(data), dtype=np.uint8)


def _as_words(data, word_size: int) -> np.ndarray:
    if word_size not in (1, 8):
        raise ValueError(f"word_size must be 1 or 8, got {word_size!r}")
    raw = _as_bytes(data)
    if word_size == 8:
        return raw
    return np.unpackbits(raw)


# -- metrics ------------------------------------------------------------------

def shannon_entropy(data, word_size: int) -> float:
    """Plug-in entropy of the empirical word distribution, bits per word."""
    words = _as_words(data, word_size)
    if words.size == 0:
        raise ValueError("empty input")
    counts = np.bincount(words, minlength=2 ** word_size)
    p = counts[counts > 0] / words.size
    return float(-np.sum(p * np.log2(p)) + 0.0)  # +0.0 normalizes -0.0


def chi_square(data, word_size: int):
    """(statistic, exceedance percentage) against the uniform distribution."""
    words = _as_words(data, word_size)
    n_symbols = 2 ** word_size
    if words.size < 10 * n_symbols:
        raise ValueError(
            f"need at least {10 * n_symbols} words for word_size={word_size}, "
            f"got {words.size}")
    counts = np.bincount(words, minlength=n_symbols)
    expected = words.size / n_symbols
    stat = float(np.sum((counts - expected) ** 2) / expected)
    return stat, chi_square_exceedance_pct(stat, n_symbols - 1)


def arithmetic_mean(data, word_size: int) -> float:
    words = _as_words(data, word_size)
    if words.size == 0:
        raise ValueError("empty input")
    return float(words.mean())


def monte_carlo_pi(data):
    """(pi estimate, error percentage) from non-overlapping 6-byte groups.

    The first three bytes of each group form X, the next three Y, both
    big-endian 24-bit integers scaled to [0,1); a point scores iff
    X^2 + Y^2 < 1.
    """
    raw = _as_bytes(data)
    n_points = raw.size // 6
    if n_points == 0:
        raise ValueError("need at least 6 bytes")
    g = raw[:n_points * 6].reshape(n_points, 6).astype(np.uint32)
    x = ((g[:, 0] << 16) | (g[:, 1] << 8) | g[:, 2]) / 2.0 ** 24
    y = ((g[:, 3] << 16) | (g[:, 4] << 8) | g[:, 5]) / 2.0 ** 24
    hits = int(np.count_nonzero(x * x + y * y < 1.0))
    estimate = 4.0 * hits / n_points
    return estimate, 100.0 * abs(estimate - math.pi) / math.pi


def serial_correlation(data, word_size: int) -> float:
    """Circular lag-1 Pearson autocorrelation of the word sequence."""
    words = _as_words(data, word_size).astype(np.float64)
    n = words.size
    if n < 3:
        raise ValueError("need at least 3 words")
    s1 = float(words.sum())
    s2 = float(np.dot(words, words))
    scct = float(np.dot(words, np.roll(words, -1)))
    denom = n * s2 - s1 * s1
    if denom == 0.0:
        raise ValueError("serial correlation undefined: constant sequence")
    return (n * scct - s1 * s1) / denom


def run_battery(data) -> tuple:
    """EntReports for 1-bit and 8-bit word sizes over the same byte stream.

    The pi estimate is a byte-stream quantity and is shared by both reports.
    A constant word stream yields NaN serial correlation in its report
    rather than an error, so adversarial inputs still produce a report.
    The minimum length is the smallest input for which every metric of both
    word sizes is defined (the 8-bit chi-square needs 10 * 256 words).
    """
    raw = _as_bytes(data)
    if raw.size < 2560:
        raise ValueError(f"battery needs >= 2560 bytes, got {raw.size}")
    pi_est, pi_err = monte_carlo_pi(raw)
    reports = []
    for word_size in (1, 8):
        stat, pct = chi_square(raw, word_size)
        try:
            scc = serial_correlation(raw, word_size)
        except ValueError:
            scc = math.nan
        reports.append(EntReport(
            word_size=word_size,
            entropy_per_word=shannon_entropy(raw, word_size),
            chi_square_stat=stat,
            chi_square_pct=pct,
            mean=arithmetic_mean(raw, word_size),
            pi_estimate=pi_est,
            pi_error_pct=pi_err,
            serial_correlation=scc,
            n_words=raw.size * 8 // word_size,
        ))
    return tuple(reports)


# -- report serialization -----------------------------------------------------

def report_text(report: EntReport) -> str:
    """Human-readable layout, stable formatting."""
    scc = ("undefined (constant stream)"
           if math.isnan(report.serial_correlation)
           else f"{report.serial_correlation:.6f}")
    return "\n".join([
        f"word size          : {report.word_size} bit",
        f"words              : {report.n_words}",
        f"entropy            : {report.entropy_per_word:.6f} bits per word",
        f"chi-square         : {report.chi_square_stat:.2f} "
        f"(randomly exceeded {report.chi_square_pct:.2f} percent of the time)",
        f"arithmetic mean    : {report.mean:.4f}",
        f"monte carlo pi     : {report.pi_estimate:.9f} "
        f"(error {report.pi_error_pct:.2f} percent)",
        f"serial correlation : {scc}",
    ]) + "\n"


def report_machine(report: EntReport) -> str:
    """Line-oriented metric=value form."""
    return "\n".join([
        f"word_size={report.word_size}",
        f"n_words={report.n_words}",
        f"entropy_per_word={report.entropy_per_word!r}",
        f"chi_square_stat={report.chi_square_stat!r}",
        f"chi_square_pct={report.chi_square_pct!r}",
        f"mean={report.mean!r}",
        f"pi_estimate={report.pi_estimate!r}",
        f"pi_error_pct={report.pi_error_pct!r}",
        f"serial_correlation={report.serial_correlation!r}",
    ]) + "\n"
