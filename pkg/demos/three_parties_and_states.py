"""
Three parties and their states
==============================

With three parties the equal-angle optimum has a closed form, x^2 = (sqrt5 - 1)/2
and lambda = sqrt5 - 2. Here we recover it and inspect the optimal state.
We then set it beside a state for which every probability on the right-hand
side vanishes.
"""

import math

import numpy as np

from jordanbell import (
    MeasurementSet,
    b3_prime_spectrum,
    exact_violation,
    ghz_check,
    maximize_equal_angle,
    psi3,
    psi3_prime,
    stationarity_report,
    violation_of,
    zx_projectors_exact,
)
from jordanbell.states import X3_STAR, psi3_fidelity_with_top_eigenvector, psi3_prime_signs

# Equal-angle optimum from the cubic.
r = maximize_equal_angle(3)
print(f"x* = {r.xs[0]:.12f}   x*^2 = {r.xs[0] ** 2:.12f}   (sqrt5-1)/2 = {(math.sqrt(5) - 1) / 2:.12f}")
print(f"lambda* = {r.lambda_max:.12f}   sqrt5-2 = {math.sqrt(5) - 2:.12f}")

# The optimum is a stationary point of the top eigenvalue in all three angles,
# not only along the diagonal.
rep = stationarity_report(r.xs, r.lambda_max)
print("finite-difference gradient:", rep.gradient)

# The optimal state is permutation symmetric and is the top eigenvector.
meas = MeasurementSet.tilted([X3_STAR] * 3)
print("\n<psi3|B_3|psi3> =", violation_of(psi3(), meas))
print("fidelity with top eigenvector =", psi3_fidelity_with_top_eigenvector())
for i, a in enumerate(psi3().amplitudes):
    print(f"  |{i:03b}>  {a.real:+.6f}")

# Unlike GHZ, its single-qubit marginals are not maximally mixed.
print("marginal distance from I/2:", np.round(ghz_check(psi3()).distances, 4))

# With sigma_z / sigma_x settings, psi3' zeroes every right-hand-side probability.
zx = MeasurementSet.zx(3)
print("\nviolation of psi3' (float):", violation_of(psi3_prime(), zx))
print("violation of psi3' (exact):", exact_violation(psi3_prime_signs(), zx_projectors_exact(3)))
print("but the best state for those settings does better:", np.round(b3_prime_spectrum(), 6))
