"""Parameter algebra for the discrete stable count distributions.

A member of the family is identified by a stability index ``alpha`` in
(0, 2] and two real coefficients ``delta`` and ``gamma``.  Working with the
alternate probability generating function psi(t) = E[(1 - t)^X] on
t in [0, 2], the family is

    psi(t) = exp(-delta*t - gamma*t**alpha)       for alpha != 1
    psi(t) = exp(-delta*t - gamma*t*log(t))       for alpha == 1 (log form)

Every member is compound Poisson: a Poisson(lam) number of iid delayed
Sibuya summands (see :mod:`countstable.severity`).  Special cases include
the Poisson distribution (gamma = 0), the Poisson-Sibuya laws (delta = 0,
alpha <= 1) and the Hermite distribution (alpha = 2), the only member with
finite dispersion.

Thinning (keep each of X items independently with probability ``a``),
Poisson shifting (add an independent Poisson(b)) and iid summation all act
on (delta, gamma) in closed form; those maps live here, together with the
validity constraints and the conversions between the three equivalent
parametrizations (stable / compound / Hermite).

All functions are pure and all parameter types are frozen values, so
everything here is safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "StableParams",
    "CompoundParams",
    "HermiteParams",
    "InvalidParametersError",
    "DegenerateError",
    "LeftShiftError",
    "validate_stable",
    "require_valid_stable",
    "apgf_eval",
    "fcgf_eval",
    "compound_to_stable",
    "stable_to_compound",
    "hermite_to_stable",
    "thin_params",
    "shift_params",
    "iid_sum_params",
    "stable_mean",
    "stable_dispersion",
]

# Relative slack on boundary inequalities, so that boundary-exact
# constructions (theta = 0 or theta = 1) validate cleanly.
BOUNDARY_RTOL = 1e-12


class InvalidParametersError(ValueError):
    """Raised when distribution parameters violate their constraints."""


class DegenerateError(ValueError):
    """Raised when an operation is undefined for a degenerate distribution."""


class LeftShiftError(ValueError):
    """Raised when a left Poisson shift does not exist within the family."""


def _ge(lhs: float, rhs: float) -> bool:
    """lhs >= rhs up to a relative slack of BOUNDARY_RTOL."""
    return lhs >= rhs - BOUNDARY_RTOL * max(1.0, abs(lhs), abs(rhs))


def _le(lhs: float, rhs: float) -> bool:
    return _ge(rhs, lhs)


@dataclass(frozen=True)
class StableParams:
    """Canonical (alpha, delta, gamma) parametrization of the family.

    Construction is permissive: use :func:`validate_stable` to obtain the
    list of violated constraints, which is empty for a valid member.
    ``log_form`` is derived and is true exactly when ``alpha == 1``, in
    which case the exponent uses the t*log(t) term.
    """

    alpha: float
    delta: float
    gamma: float
    log_form: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "log_form", self.alpha == 1.0)


@dataclass(frozen=True)
class CompoundParams:
    """Compound-Poisson parametrization: Poisson(lam) many DSib(theta, alpha).

    ``zeta`` is the derived mixing coefficient (1 - theta) / (1 - alpha)
    for alpha != 1 and ``None`` in the log form.  theta = 1 is the Poisson
    degenerate case (severity is a point mass at 1) and leaves alpha
    unconstrained in (0, 2].
    """

    lam: float
    theta: float
    alpha: float
    zeta: float | None = field(init=False)

    def __post_init__(self) -> None:
        lam = float(self.lam)
        theta = float(self.theta)
        alpha = float(self.alpha)
        # Absorb float dust from boundary-exact conversions.
        if -BOUNDARY_RTOL <= lam < 0.0:
            lam = 0.0
        if -BOUNDARY_RTOL <= theta < 0.0:
            theta = 0.0
        if 1.0 < theta <= 1.0 + BOUNDARY_RTOL:
            theta = 1.0
        if lam < 0.0:
            raise InvalidParametersError("lam must be >= 0")
        if not 0.0 <= theta <= 1.0:
            raise InvalidParametersError("theta must lie in [0, 1]")
        if not 0.0 < alpha <= 2.0 + BOUNDARY_RTOL:
            raise InvalidParametersError("alpha must lie in (0, 2]")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", min(alpha, 2.0))
        zeta = None if alpha == 1.0 else (1.0 - theta) / (1.0 - alpha)
        object.__setattr__(self, "zeta", zeta)


@dataclass(frozen=True)
class HermiteParams:
    """Hermite distribution with mean mu and dispersion sigma2, mu >= sigma2 >= 0."""

    mu: float
    sigma2: float

    def __post_init__(self) -> None:
        mu = float(self.mu)
        sigma2 = float(self.sigma2)
        if -BOUNDARY_RTOL <= sigma2 < 0.0:
            sigma2 = 0.0
        if sigma2 < 0.0:
            raise InvalidParametersError("sigma2 must be >= 0")
        if not _ge(mu, sigma2):
            raise InvalidParametersError("mu must be >= sigma2")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "sigma2", sigma2)


def validate_stable(p: StableParams) -> list[str]:
    """Return the list of violated constraints for ``p`` (empty if valid).

    The constraints split on the branch of the exponent:
    alpha < 1 needs gamma >= 0, alpha >= 1 needs gamma <= 0, and in every
    branch delta is bounded below so that the first-trial probability of
    the implied severity distribution is a genuine probability.  Boundary
    inequalities are checked with a relative slack of ``BOUNDARY_RTOL``.
    """
    violations: list[str] = []
    if not 0.0 < p.alpha <= 2.0 + BOUNDARY_RTOL:
        violations.append("alpha must be in (0, 2]")
        return violations
    if p.log_form:
        if not _le(p.gamma, 0.0):
            violations.append("gamma must be <= 0 for alpha = 1")
        if not _ge(p.delta, -p.gamma):
            violations.append("delta must be >= -gamma for alpha = 1")
        if not _ge(p.delta, 0.0):
            violations.append("delta must be >= 0 for alpha = 1 (compound rate)")
        return violations
    if p.alpha < 1.0:
        if not _ge(p.gamma, 0.0):
            violations.append("gamma must be >= 0 for alpha < 1")
    else:
        if not _le(p.gamma, 0.0):
            violations.append("gamma must be <= 0 for alpha > 1")
    if not _ge(p.delta, -p.alpha * p.gamma):
        violations.append("delta must be >= -alpha*gamma")
    if not _ge(p.delta + p.gamma, 0.0):
        violations.append("delta + gamma must be >= 0 (compound rate)")
    return violations


def require_valid_stable(p: StableParams) -> None:
    """Raise :class:`InvalidParametersError` if ``p`` fails validation."""
    violations = validate_stable(p)
    if violations:
        raise InvalidParametersError("; ".join(violations))


def fcgf_eval(p: StableParams, t: float) -> float:
    """Factorial cumulant generating function C(t) = log psi(t), t in [0, 2]."""
    if not 0.0 <= t <= 2.0:
        raise ValueError("t must lie in [0, 2]")
    require_valid_stable(p)
    if p.log_form:
        tlogt = t * math.log(t) if t > 0.0 else 0.0  # 0*log(0) := 0
        return -p.delta * t - p.gamma * tlogt
    return -p.delta * t - p.gamma * t**p.alpha


def apgf_eval(p: StableParams, t: float) -> float:
    """Alternate probability generating function psi(t) = E[(1-t)^X], t in [0, 2]."""
    return math.exp(fcgf_eval(p, t))


def compound_to_stable(c: CompoundParams) -> StableParams:
    """Map (lam, theta, alpha) to the canonical (alpha, delta, gamma).

    theta = 1 collapses to the Poisson case (gamma = 0) for any alpha.
    """
    if c.theta == 1.0:
        return StableParams(c.alpha, c.lam, 0.0)
    if c.alpha == 1.0:
        return StableParams(1.0, c.lam, -c.lam * (1.0 - c.theta))
    zeta = c.zeta
    assert zeta is not None
    return StableParams(c.alpha, c.lam * (1.0 - zeta), c.lam * zeta)


def stable_to_compound(p: StableParams) -> CompoundParams:
    """Invert :func:`compound_to_stable`.

    Raises :class:`DegenerateError` for the point mass at 0 (lam = 0),
    where no canonical theta exists.
    """
    require_valid_stable(p)
    if p.log_form:
        lam = p.delta
        if lam <= 0.0:
            raise DegenerateError("point mass at 0 has no compound form")
        return CompoundParams(lam, 1.0 + p.gamma / lam, 1.0)
    lam = p.delta + p.gamma
    if lam <= 0.0:
        raise DegenerateError("point mass at 0 has no compound form")
    return CompoundParams(lam, (p.delta + p.alpha * p.gamma) / lam, p.alpha)


def hermite_to_stable(h: HermiteParams) -> StableParams:
    """Hermite(mu, sigma2) as the alpha = 2 member (delta = mu, gamma = -sigma2/2)."""
    return StableParams(2.0, h.mu, -h.sigma2 / 2.0)


def thin_params(p: StableParams, a: float) -> StableParams:
    """Parameters of the thinned variable a o X for a in [0, 1].

    The APGF of the thinned variable is psi(a*t), which stays inside the
    family: (delta, gamma) -> (a*delta, a**alpha * gamma), and in the log
    form (delta, gamma) -> (a*(delta + gamma*log(a)), a*gamma).  a = 0
    gives the point mass at 0.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError("thinning probability a must lie in [0, 1]")
    require_valid_stable(p)
    if a == 0.0:
        return StableParams(p.alpha, 0.0, 0.0)
    if a == 1.0:
        return p
    if p.log_form:
        return StableParams(1.0, a * (p.delta + p.gamma * math.log(a)), a * p.gamma)
    return StableParams(p.alpha, a * p.delta, a**p.alpha * p.gamma)


def shift_params(p: StableParams, b: float) -> StableParams:
    """Parameters of the Poisson-shifted variable X (+) b.

    (delta, gamma) -> (delta + b, gamma).  Negative b is the left shift,
    which exists within the family only while the shifted delta still
    satisfies its lower bound; otherwise :class:`LeftShiftError` is raised.
    """
    require_valid_stable(p)
    shifted = StableParams(p.alpha, p.delta + b, p.gamma)
    if b < 0.0:
        violations = validate_stable(shifted)
        if violations:
            raise LeftShiftError(
                f"left shift by {-b} leaves the family: " + "; ".join(violations)
            )
    return shifted


def iid_sum_params(p: StableParams, n: int) -> StableParams:
    """Parameters of the sum of n iid copies: (delta, gamma) -> (n*delta, n*gamma)."""
    if n < 1 or int(n) != n:
        raise ValueError("n must be a positive integer")
    require_valid_stable(p)
    return StableParams(p.alpha, n * p.delta, n * p.gamma)


def stable_mean(p: StableParams) -> float:
    """Mean of the distribution; +inf when the tail index alpha <= 1 and gamma != 0."""
    require_valid_stable(p)
    if p.gamma == 0.0 or p.alpha > 1.0:
        return p.delta
    return math.inf


def stable_dispersion(p: StableParams) -> float:
    """Dispersion Var(X) - E[X]; finite only for Poisson (0) and alpha = 2 (-2*gamma)."""
    require_valid_stable(p)
    if p.gamma == 0.0:
        return 0.0
    if p.alpha == 2.0:
        return -2.0 * p.gamma
    return math.inf
