"""
The two-party bound
===================

Two parties each pick between sigma_z and a tilted projector whose overlap
with |0> is x. The largest eigenvalue of the resulting 4x4 Bell operator is
the largest quantum violation, and we maximize it over both overlaps.
"""

import math

import numpy as np

from jordanbell import bell_operator, char_poly_n2, max_real_root, maximize_full
from jordanbell.bell_core import lambda_max_n2, reduced_matrix_n2

# The full operator at x_a = x_b = 1/sqrt(2), i.e. sigma_z and sigma_x.
x = 1 / math.sqrt(2)
b2 = bell_operator((x, x))
print("spectrum of B_2 at x = 1/sqrt(2):", np.round(np.linalg.eigvalsh(b2.matrix), 6))

# The same top eigenvalue from the 4x4 block in the Jordan basis, from its
# quartic, and from the closed form.
print("block          :", max(np.linalg.eigvals(reduced_matrix_n2(x, x)).real))
print("quartic root   :", max_real_root(char_poly_n2(x, x)))
print("closed form    :", lambda_max_n2(x, x))
print("(sqrt(2) - 1)/2:", (math.sqrt(2) - 1) / 2)

# A coarse landscape over (x_a, x_b) shows a single ridge peaking on the diagonal.
grid = np.linspace(0, 1, 11)
land = np.array([[lambda_max_n2(a, b) for b in grid] for a in grid])
print("\nlambda_max on an 11x11 grid (rows x_a, columns x_b):")
print(np.array2string(land, precision=3, suppress_small=True, max_line_width=120))

# A multistart simplex search on the full operator finds the same optimum.
r = maximize_full(2, restarts=8, seed=0)
print(f"\nfull search: x = {r.xs[0]:.9f}, {r.xs[1]:.9f}  lambda_max = {r.lambda_max:.12f}")
