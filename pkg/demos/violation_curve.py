"""
Violation versus number of parties
==================================

For equal overlaps the top eigenvalue is the largest root of a cubic, so the
optimum is cheap to find for many parties. The curve rises and flattens.
Up to seven parties we confirm it with an unrestricted search over all n
angles.
"""

import sys

from jordanbell import maximize_full, violation_curve

rows = violation_curve(2, 16)
print(" n        x*    lambda*")
for n, x, lam in rows:
    print(f"{n:2d}  {x:.6f}   {lam:.6f}")

increments = [b[2] - a[2] for a, b in zip(rows, rows[1:])]
print("\nsuccessive gains:", " ".join(f"{d:.4f}" for d in increments))

# Two-column data for an external plotting tool, "n lambda*" per line.
with open("violation_curve.dat", "w") as fh:
    for n, _, lam in rows:
        fh.write(f"{n} {lam:.6f}\n")
print("wrote violation_curve.dat")

# Cross-check against the full 2^n operator. Pass --quick to stop at n = 4.
n_top = 4 if "--quick" in sys.argv else 7
print("\n n   full search   cubic        difference")
for n, _, lam in rows[: n_top - 1]:
    full = maximize_full(n, restarts=32, seed=0)
    print(f"{n:2d}  {full.lambda_max:.10f}  {lam:.10f}  {abs(full.lambda_max - lam):.1e}")
