"""Shared grids and helpers for the test suite."""

import math

import numpy as np

from countstable import CompoundParams, CountPmf, compound_to_stable

GRID_LAMBDAS = (0.5, 2.0)
GRID_THETAS = (0.0, 0.4, 0.9)
GRID_ALPHAS = (0.3, 0.5, 1.0, 1.5, 2.0)


def compound_grid():
    """The 30-point validation grid of compound parametrizations."""
    return [
        CompoundParams(lam, theta, alpha)
        for lam in GRID_LAMBDAS
        for theta in GRID_THETAS
        for alpha in GRID_ALPHAS
    ]


def stable_grid():
    return [compound_to_stable(c) for c in compound_grid()]


def max_abs_diff(x: CountPmf, y: CountPmf) -> float:
    n = max(len(x), len(y))
    xs = np.zeros(n)
    xs[: len(x)] = x.probs
    ys = np.zeros(n)
    ys[: len(y)] = y.probs
    return float(np.max(np.abs(xs - ys)))


def spread_even(x: CountPmf) -> CountPmf:
    """PMF of 2V from the PMF of V (mass moved to the even integers)."""
    probs = np.zeros(2 * len(x) - 1)
    probs[::2] = x.probs
    return CountPmf(probs, x.tail_bound)


def pmf_mean_se(samples) -> float:
    xs = np.asarray(samples, dtype=np.float64)
    return float(xs.std(ddof=1) / math.sqrt(xs.size))


def dispersion_estimate_and_se(samples) -> tuple[float, float]:
    """Empirical dispersion (factorial-moment form) and a delta-method SE."""
    xs = np.asarray(samples, dtype=np.float64)
    m1 = xs.mean()
    fact2 = xs * (xs - 1.0)
    disp = fact2.mean() - m1 * m1
    # gradient of m_[2] - m1^2 with respect to (m_[2], m1) is (1, -2*m1)
    g = fact2 - 2.0 * m1 * xs
    se = g.std(ddof=1) / math.sqrt(xs.size)
    return float(disp), float(se)
