"""Sibuya and delayed Sibuya severity distributions on {1, 2, 3, ...}.

A delayed Sibuya variable DSib(theta, alpha) is the index of the first
success in independent trials succeeding with probabilities
theta, alpha/2, alpha/3, ...; the ordinary Sibuya law Sib(alpha) is the
special case theta = alpha (alpha <= 1).  These are the summand
distributions of the compound-Poisson representation used throughout the
package; they are heavy tailed with survival ~ y**(-alpha) whenever
theta < 1 and alpha < 2.

The PMF is evaluated by the incremental product
p(y+1) = p(y) * (y - alpha) / (y + 1), never through factorials, and the
survival function through log-gamma differences so that single evaluations
stay O(1) for arbitrarily large y.  Sampling is exact inversion of the
survival function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .family import BOUNDARY_RTOL, InvalidParametersError

__all__ = [
    "DelayedSibuyaParams",
    "sibuya",
    "dsib_pmf",
    "dsib_pmf_vector",
    "dsib_survival",
    "dsib_apgf",
    "dsib_sample",
]

# Above this y the scalar PMF switches from the exact product loop to the
# equivalent log-gamma form (agreement is covered by tests).
_PRODUCT_LIMIT = 256

# Below this y the log-gamma ratio uses math.lgamma directly; above it the
# cancellation-free Stirling arrangement takes over.
_RATIO_LIMIT = 32

# Beyond this y the survival is a pure power law to double precision
# (Stirling corrections ~ 1/y), so inversion sampling solves for y directly
# instead of searching; also keeps y inside float range for tiny alpha.
_POWER_LAW_LIMIT = 10**100

_LN2 = math.log(2.0)


def _binet(z: float) -> float:
    # Stirling correction J(z) = lgamma(z) - (z-0.5)*log(z) + z - log(2*pi)/2,
    # truncated after the z**-7 term (absolute error < 2e-14 for z >= 31).
    inv = 1.0 / z
    inv2 = inv * inv
    return inv * (
        1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0))
    )


def _log_gamma_ratio(y: float, alpha: float) -> float:
    """log(Gamma(y+1-alpha) / Gamma(y+1)) to ~1e-14 absolute for all y >= 1.

    Differencing math.lgamma directly loses absolute precision once the
    lgamma values grow large (their 1-ulp relative error is an absolute
    error in the log), so for large y the two Stirling main terms are
    combined analytically, leaving only small quantities to round.
    """
    if y < _RATIO_LIMIT:
        return math.lgamma(y + 1.0 - alpha) - math.lgamma(y + 1.0)
    z1 = y + 1.0 - alpha
    z2 = y + 1.0
    return (
        (y + 0.5) * math.log1p(-alpha / z2)
        - alpha * math.log(z1)
        + alpha
        + _binet(z1)
        - _binet(z2)
    )


@dataclass(frozen=True)
class DelayedSibuyaParams:
    """First-trial success probability theta in [0, 1] and tail index alpha.

    alpha must lie in (0, 2] unless theta = 1, where the distribution is a
    point mass at 1 and alpha is ignored.
    """

    theta: float
    alpha: float

    def __post_init__(self) -> None:
        theta = float(self.theta)
        alpha = float(self.alpha)
        if -BOUNDARY_RTOL <= theta < 0.0:
            theta = 0.0
        if 1.0 < theta <= 1.0 + BOUNDARY_RTOL:
            theta = 1.0
        if not 0.0 <= theta <= 1.0:
            raise InvalidParametersError("theta must lie in [0, 1]")
        if 2.0 < alpha <= 2.0 + BOUNDARY_RTOL:
            alpha = 2.0
        if theta != 1.0 and not 0.0 < alpha <= 2.0:
            raise InvalidParametersError("alpha must lie in (0, 2]")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", alpha)


def sibuya(alpha: float) -> DelayedSibuyaParams:
    """Ordinary Sibuya distribution Sib(alpha) = DSib(alpha, alpha), alpha in (0, 1]."""
    if not 0.0 < alpha <= 1.0:
        raise ValueError("Sibuya tail index alpha must lie in (0, 1]")
    return DelayedSibuyaParams(alpha, alpha)


def dsib_pmf(d: DelayedSibuyaParams, y: int) -> float:
    """P(Y = y) for y >= 1.

    p(1) = theta; for y >= 2 the product form
    (1-theta)(1-alpha/2)...(1-alpha/(y-1)) * alpha/y, evaluated through
    log-gamma beyond y = 256 to keep single calls O(1).
    """
    if y < 1 or int(y) != y:
        raise ValueError("y must be a positive integer")
    if y == 1:
        return d.theta
    rest = 1.0 - d.theta
    if rest == 0.0:
        return 0.0
    alpha = d.alpha
    if alpha == 1.0:
        return rest / ((y - 1.0) * y)
    if y <= _PRODUCT_LIMIT:
        prod = rest
        for j in range(2, y):
            prod *= 1.0 - alpha / j
        return prod * (alpha / y)
    # p(y) = (1-theta) * alpha * Gamma(y - alpha) / (Gamma(2 - alpha) * y!)
    log_p = _log_gamma_ratio(y - 1.0, alpha) - math.log(y) - math.lgamma(2.0 - alpha)
    return rest * alpha * math.exp(log_p)


def dsib_pmf_vector(d: DelayedSibuyaParams, max_y: int) -> np.ndarray:
    """PMF on {0, 1, ..., max_y} as an array q with q[0] = 0.

    Uses the incremental product q[y+1] = q[y] * (y - alpha) / (y + 1)
    starting from q[2] = (1 - theta) * alpha / 2.
    """
    if max_y < 0:
        raise ValueError("max_y must be >= 0")
    q = np.zeros(max_y + 1)
    if max_y >= 1:
        q[1] = d.theta
    rest = 1.0 - d.theta
    if rest == 0.0 or max_y < 2:
        return q
    alpha = d.alpha
    if alpha == 1.0:
        ys = np.arange(2, max_y + 1, dtype=np.float64)
        q[2:] = rest / ((ys - 1.0) * ys)
        return q
    q[2] = rest * alpha / 2.0
    if max_y >= 3:
        ys = np.arange(2, max_y, dtype=np.float64)
        q[3:] = q[2] * np.cumprod((ys - alpha) / (ys + 1.0))
    return q


def dsib_survival(d: DelayedSibuyaParams, y: int) -> float:
    """S(y) = P(Y > y) for y >= 0.

    S(y) is the probability that none of the first y trials succeeds:
    (1 - theta) * Gamma(y + 1 - alpha) / (Gamma(2 - alpha) * y!), computed
    through log-gamma differences.
    """
    if y < 0 or int(y) != y:
        raise ValueError("y must be a non-negative integer")
    if y == 0:
        return 1.0
    rest = 1.0 - d.theta
    if rest == 0.0:
        return 0.0
    if y == 1:
        return rest
    alpha = d.alpha
    if alpha == 2.0:
        return 0.0  # support is {1, 2}
    log_s = _log_gamma_ratio(float(y), alpha) - math.lgamma(2.0 - alpha)
    return rest * math.exp(log_s)


def dsib_apgf(d: DelayedSibuyaParams, t: float) -> float:
    """APGF psi(t) = E[(1-t)^Y] for t in [0, 2].

    1 - (1 - zeta)*t - zeta*t**alpha with zeta = (1-theta)/(1-alpha) for
    alpha != 1, and 1 - t + (1-theta)*t*log(t) for alpha = 1 (0*log(0) := 0).
    """
    if not 0.0 <= t <= 2.0:
        raise ValueError("t must lie in [0, 2]")
    if d.theta == 1.0:
        return 1.0 - t
    if d.alpha == 1.0:
        tlogt = t * math.log(t) if t > 0.0 else 0.0
        return 1.0 - t + (1.0 - d.theta) * tlogt
    zeta = (1.0 - d.theta) / (1.0 - d.alpha)
    return 1.0 - (1.0 - zeta) * t - zeta * t**d.alpha


def dsib_sample(d: DelayedSibuyaParams, rng: np.random.Generator) -> int:
    """Draw one variate by exact inversion of the survival function.

    Returns the smallest y with S(y) <= u for u uniform on (0, 1], located
    by exponential search followed by bisection, so each draw costs
    O(log y) survival evaluations.  The caller owns ``rng``; concurrent
    sampling needs independent generators.
    """
    if d.theta == 1.0:
        return 1
    u = 1.0 - rng.random()  # uniform on (0, 1]
    rest = 1.0 - d.theta
    if rest <= u:
        return 1
    alpha = d.alpha
    if alpha == 2.0:
        return 2
    lg2a = math.lgamma(2.0 - alpha)

    def survival(y: int) -> float:
        return rest * math.exp(_log_gamma_ratio(float(y), alpha) - lg2a)

    lo, hi = 1, 2  # S(lo) > u; grow hi until S(hi) <= u
    while survival(hi) > u:
        lo = hi
        hi *= 2
        if hi > _POWER_LAW_LIMIT:
            return _power_law_inverse(rest, u, lg2a, alpha)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if survival(mid) > u:
            lo = mid
        else:
            hi = mid
    return hi


def _power_law_inverse(rest: float, u: float, lg2a: float, alpha: float) -> int:
    # Solve rest * y**(-alpha) / Gamma(2-alpha) = u for y as a big integer:
    # build 2**log2(y) from a 53-bit mantissa and a shift.
    log2_y = (math.log(rest / u) - lg2a) / (alpha * _LN2)
    frac, whole = math.modf(log2_y)
    mantissa = round(2.0**frac * (1 << 53))
    return mantissa << (int(whole) - 53)
