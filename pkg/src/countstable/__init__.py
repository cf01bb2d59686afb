"""Discrete stable count distributions.

Exact PMFs, parameter algebra for thinning / Poisson shifting / iid
summation, heavy-tailed samplers, and verification of the defining
stability identity, for the family that contains the Poisson,
Poisson-Sibuya, Poisson-delayed-Sibuya and Hermite distributions.
"""

from .family import (
    BOUNDARY_RTOL,
    CompoundParams,
    DegenerateError,
    HermiteParams,
    InvalidParametersError,
    LeftShiftError,
    StableParams,
    apgf_eval,
    compound_to_stable,
    fcgf_eval,
    hermite_to_stable,
    iid_sum_params,
    require_valid_stable,
    shift_params,
    stable_dispersion,
    stable_mean,
    stable_to_compound,
    thin_params,
    validate_stable,
)
from .oracle import (
    InsufficientSamplesError,
    PowerSeries,
    SeriesError,
    binomial_series,
    empirical_factorial_moment,
    exponent_series,
    mc_chisquare,
    series_exp,
    series_log,
    series_pmf,
)
from .pmf import (
    CountPmf,
    convolve,
    half_abs_diff,
    hermite_sample,
    panjer_pmf,
    panjer_pmf_auto,
    point_mass,
    poisson_pmf,
    poisson_shift_pmf,
    stable_sample,
    thin_pmf,
    tv_distance,
)
from .severity import (
    DelayedSibuyaParams,
    dsib_apgf,
    dsib_pmf,
    dsib_pmf_vector,
    dsib_sample,
    dsib_survival,
    sibuya,
)
from .stability import (
    Classification,
    StabilityReport,
    classify,
    coefficients,
    verify_param_level,
    verify_pmf_level,
)

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY_RTOL",
    "Classification",
    "CompoundParams",
    "CountPmf",
    "DegenerateError",
    "DelayedSibuyaParams",
    "HermiteParams",
    "InsufficientSamplesError",
    "InvalidParametersError",
    "LeftShiftError",
    "PowerSeries",
    "SeriesError",
    "StabilityReport",
    "StableParams",
    "apgf_eval",
    "binomial_series",
    "classify",
    "coefficients",
    "compound_to_stable",
    "convolve",
    "dsib_apgf",
    "dsib_pmf",
    "dsib_pmf_vector",
    "dsib_sample",
    "dsib_survival",
    "empirical_factorial_moment",
    "exponent_series",
    "fcgf_eval",
    "half_abs_diff",
    "hermite_sample",
    "hermite_to_stable",
    "iid_sum_params",
    "mc_chisquare",
    "panjer_pmf",
    "panjer_pmf_auto",
    "point_mass",
    "poisson_pmf",
    "poisson_shift_pmf",
    "require_valid_stable",
    "series_exp",
    "series_log",
    "series_pmf",
    "shift_params",
    "sibuya",
    "stable_dispersion",
    "stable_mean",
    "stable_sample",
    "stable_to_compound",
    "thin_params",
    "thin_pmf",
    "tv_distance",
    "validate_stable",
    "verify_param_level",
    "verify_pmf_level",
]
