"""Independent brute-force engines used to cross-validate the main routes.

The power-series route recovers the PMF of any family member directly from
the closed-form APGF: substituting t = 1 - s turns psi into the ordinary
generating function E[s^X], whose Taylor coefficients are the
probabilities.  This shares no code with the compound-Poisson recursion in
:mod:`countstable.pmf`, which is the point: the two engines agreeing at
1e-10 is the master acceptance property.

Also here: a chi-square goodness-of-fit test with cell pooling for the
samplers, and empirical factorial moments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .family import StableParams, require_valid_stable
from .pmf import CountPmf

__all__ = [
    "PowerSeries",
    "SeriesError",
    "InsufficientSamplesError",
    "series_exp",
    "series_log",
    "binomial_series",
    "exponent_series",
    "series_pmf",
    "mc_chisquare",
    "empirical_factorial_moment",
]

# Coefficients below this are floating noise; anything more negative in a
# probability expansion signals invalid parameters or series blow-up.
_NEGATIVE_TOL = -1e-10


class SeriesError(ArithmeticError):
    """Raised when a series expansion produces invalid coefficients."""


class InsufficientSamplesError(ValueError):
    """Raised when a Monte Carlo check receives too few samples."""


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Truncated power series sum_k coeffs[k] * s**k, closed at its order."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.float64)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D array")
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1


def series_exp(a: PowerSeries) -> PowerSeries:
    """exp of a truncated series via the differential recurrence b' = a' * b.

    b[0] = exp(a[0]); b[k] = (1/k) * sum_{j=1..k} j * a[j] * b[k-j].
    """
    ca = a.coeffs
    order = ca.size - 1
    b = np.zeros(order + 1)
    try:
        b[0] = math.exp(ca[0])
    except OverflowError:
        raise SeriesError("series_exp overflowed machine range") from None
    ja = np.arange(order + 1, dtype=np.float64) * ca
    for k in range(1, order + 1):
        b[k] = np.dot(ja[1 : k + 1], b[k - 1 :: -1]) / k
    if not np.all(np.isfinite(b)):
        raise SeriesError("series_exp overflowed machine range")
    return PowerSeries(b)


def series_log(b: PowerSeries) -> PowerSeries:
    """log of a truncated series with b[0] > 0 (inverse of series_exp)."""
    cb = b.coeffs
    if cb[0] <= 0.0:
        raise SeriesError("series_log needs a positive constant term")
    order = cb.size - 1
    a = np.zeros(order + 1)
    a[0] = math.log(cb[0])
    for k in range(1, order + 1):
        inner = np.dot(np.arange(1, k) * a[1:k], cb[k - 1 : 0 : -1]) if k > 1 else 0.0
        a[k] = (cb[k] - inner / k) / cb[0]
    return PowerSeries(a)


def binomial_series(alpha: float, order: int) -> PowerSeries:
    """Generalized binomial coefficients binom(alpha, k) for k = 0..order.

    Built by the incremental product c[k] = c[k-1] * (alpha - k + 1) / k,
    never through factorials.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    c = np.ones(order + 1)
    for k in range(1, order + 1):
        c[k] = c[k - 1] * (alpha - k + 1.0) / k
    return PowerSeries(c)


def _t_log_t_series(order: int) -> np.ndarray:
    """Coefficients of (1-s)*log(1-s): -s + sum_{k>=2} s**k / (k*(k-1))."""
    t = np.zeros(order + 1)
    if order >= 1:
        t[1] = -1.0
    if order >= 2:
        ks = np.arange(2, order + 1, dtype=np.float64)
        t[2:] = 1.0 / (ks * (ks - 1.0))
    return t


def exponent_series(p: StableParams, order: int) -> PowerSeries:
    """Series in s of the FCGF at t = 1 - s (the log of E[s^X]).

    -delta*(1-s) contributes (-delta, +delta) to the first two
    coefficients; the power term expands (1-s)**alpha through the
    generalized binomial series, and the log form uses the exact expansion
    of (1-s)*log(1-s).
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    a = np.zeros(order + 1)
    a[0] = -p.delta
    if order >= 1:
        a[1] = p.delta
    if p.log_form:
        a -= p.gamma * _t_log_t_series(order)
    else:
        binom = binomial_series(p.alpha, order).coeffs
        signs = np.where(np.arange(order + 1) % 2 == 0, 1.0, -1.0)
        a -= p.gamma * binom * signs
    return PowerSeries(a)


def series_pmf(p: StableParams, max_k: int) -> CountPmf:
    """PMF on {0, ..., max_k} extracted from the closed-form APGF.

    Independent of the compound-Poisson recursion: composes the exponent
    series with series_exp and reads the probabilities off as Taylor
    coefficients.  Raises :class:`SeriesError` if any coefficient falls
    below -1e-10, which signals invalid parameters rather than noise.
    """
    require_valid_stable(p)
    coeffs = series_exp(exponent_series(p, max_k)).coeffs
    low = float(coeffs.min())
    if low < _NEGATIVE_TOL:
        raise SeriesError(f"series produced a negative probability ({low})")
    probs = np.clip(coeffs, 0.0, None)
    tail = max(0.0, 1.0 - math.fsum(probs))
    return CountPmf(probs, tail)


def mc_chisquare(
    samples, reference: CountPmf, min_expected: float = 5.0
) -> tuple[float, float]:
    """Chi-square goodness-of-fit of samples against a reference PMF.

    Cells are pooled left to right until each expected count reaches
    ``min_expected``; everything beyond the reference support goes into one
    tail cell whose expected mass is the reference tail bound.  Returns
    (statistic, p-value) with degrees of freedom = cells - 1.
    """
    xs = np.asarray(samples, dtype=np.float64)
    n = xs.size
    if n < 10_000:
        raise InsufficientSamplesError(
            f"need at least 10000 samples for the chi-square check, got {n}"
        )
    kmax = reference.probs.size - 1
    in_range = xs[xs <= kmax]
    observed = np.bincount(in_range.astype(np.int64), minlength=kmax + 1).astype(
        np.float64
    )
    observed = np.append(observed, float(n - in_range.size))
    expected = n * np.append(reference.probs, reference.tail_bound)

    obs_cells: list[float] = []
    exp_cells: list[float] = []
    acc_obs = acc_exp = 0.0
    for o, e in zip(observed, expected):
        acc_obs += o
        acc_exp += e
        if acc_exp >= min_expected:
            obs_cells.append(acc_obs)
            exp_cells.append(acc_exp)
            acc_obs = acc_exp = 0.0
    if (acc_obs > 0.0 or acc_exp > 0.0) and obs_cells:
        obs_cells[-1] += acc_obs
        exp_cells[-1] += acc_exp
    if len(obs_cells) < 2:
        return 0.0, 1.0
    stat = math.fsum(
        (o - e) ** 2 / e for o, e in zip(obs_cells, exp_cells)
    )
    dof = len(obs_cells) - 1
    return stat, float(chi2.sf(stat, dof))


def empirical_factorial_moment(samples, order: int) -> float:
    """Average of x(x-1)...(x-order+1) over the samples."""
    if order < 1:
        raise ValueError("order must be >= 1")
    xs = np.asarray(samples, dtype=np.float64)
    acc = np.ones_like(xs)
    for j in range(order):
        acc *= xs - j
    return float(acc.mean())
