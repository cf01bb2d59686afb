"""
Tour of the discrete stable parameter family
============================================

One family of count distributions, three equivalent coordinate systems:
the canonical (alpha, delta, gamma) triple behind the generating function,
the compound-Poisson view (lambda, theta, alpha), and for alpha = 2 the
Hermite (mu, sigma2) view.
"""

from countstable import (
    CompoundParams,
    HermiteParams,
    StableParams,
    apgf_eval,
    compound_to_stable,
    hermite_to_stable,
    stable_dispersion,
    stable_mean,
    stable_to_compound,
    validate_stable,
)

# A Hermite distribution with mean 2 and dispersion 2, entered three ways.
from_hermite = hermite_to_stable(HermiteParams(mu=2.0, sigma2=2.0))
from_compound = compound_to_stable(CompoundParams(lam=1.0, theta=0.0, alpha=2.0))
direct = StableParams(alpha=2.0, delta=2.0, gamma=-1.0)
print("same member three ways:")
print(" ", from_hermite)
print(" ", from_compound)
print(" ", direct)

# Validation returns the violated constraints instead of raising.
print("\nvalid boundary case:", validate_stable(StableParams(0.5, -0.25, 0.5)))
print("invalid sign combo: ", validate_stable(StableParams(1.5, 1.0, 0.2)))

# The alternate probability generating function E[(1-t)^X] on [0, 2].
print("\nAPGF of the Hermite member on a few points:")
for t in (0.0, 0.5, 1.0, 2.0):
    print(f"  psi({t}) = {apgf_eval(direct, t):.6f}")

# Moments: finite only for gamma = 0 (Poisson) or alpha = 2 (Hermite).
print("\nmean / dispersion:")
for p in (direct, StableParams(1.0, 3.0, 0.0), StableParams(0.5, 0.0, 1.0)):
    print(f"  {p.alpha=} {p.delta=} {p.gamma=}: "
          f"mean={stable_mean(p)}, dispersion={stable_dispersion(p)}")

# Round trip between parametrizations.
c = stable_to_compound(direct)
print("\ncompound view of the Hermite member:", c)
print("and back:", compound_to_stable(c))
