"""
Thinning and Poisson shifting, two levels down
==============================================

Thinning keeps each counted item independently with probability a; the
Poisson shift adds independent Poisson(b) noise.  Both act in closed form
on the family's parameters, and both have exact PMF-level realizations.
The identities tie the two levels together.
"""

from countstable import (
    HermiteParams,
    convolve,
    hermite_to_stable,
    panjer_pmf,
    poisson_pmf,
    poisson_shift_pmf,
    shift_params,
    stable_to_compound,
    thin_params,
    thin_pmf,
    tv_distance,
)

herm = hermite_to_stable(HermiteParams(mu=2.0, sigma2=2.0))
pmf = panjer_pmf(stable_to_compound(herm), 80)

# Parameter level: Herm(mu, sigma2) thins to Herm(a*mu, a^2*sigma2).
thinned = thin_params(herm, 0.5)
print("thinned Hermite params:", thinned)
print("shifted Hermite params:", shift_params(herm, 1.5))

# PMF level: the same operations on the probability vectors.
print("\nthinning semigroup, TV(thin(thin(x,0.7),0.4), thin(x,0.28)):",
      tv_distance(thin_pmf(thin_pmf(pmf, 0.7), 0.4), thin_pmf(pmf, 0.28)))

# Thinning a Poisson stays Poisson; shifting a Poisson stays Poisson.
print("TV(0.3 o Poisson(5), Poisson(1.5)):",
      tv_distance(thin_pmf(poisson_pmf(5.0, 120), 0.3), poisson_pmf(1.5, 120)))
print("TV(Poisson(1) (+) 0.7, Poisson(1.7)):",
      tv_distance(poisson_shift_pmf(poisson_pmf(1.0, 80), 0.7), poisson_pmf(1.7, 80)))

# The distributive law a o (X (+) b) = (a o X) (+) a*b.
lhs = thin_pmf(poisson_shift_pmf(pmf, 0.8), 0.6)
rhs = poisson_shift_pmf(thin_pmf(pmf, 0.6), 0.48)
print("distributive law TV:", tv_distance(lhs, rhs))

# Sums realize as convolutions: Herm + Herm = Herm with added parameters.
h1 = panjer_pmf(stable_to_compound(hermite_to_stable(HermiteParams(2.0, 2.0))), 70)
h2 = panjer_pmf(stable_to_compound(hermite_to_stable(HermiteParams(3.0, 1.0))), 70)
total = panjer_pmf(stable_to_compound(hermite_to_stable(HermiteParams(5.0, 3.0))), 140)
print("Hermite additivity TV:", tv_distance(convolve(h1, h2), total))
