"""
The classical side and a nonlocal game
======================================

Every deterministic local strategy scores at most zero on the inequality, and
mixtures can do no better. The three-party version becomes a game that a
classical team wins four times out of five.
"""

from collections import Counter

import numpy as np

from jordanbell import MeasurementSet, classical_value, proof_check, psi3, simulate_game
from jordanbell.lhv import functional_table, game_classical_value, game_quantum_value, optimal_classical_strategies
from jordanbell.states import X3_STAR, violation_of

# Score distribution over all 4^n deterministic strategies.
for n in range(2, 7):
    counts = Counter(functional_table(n).tolist())
    print(f"n={n}: max {classical_value(n)}   scores {dict(sorted(counts.items()))}")

# Whenever the left-hand event happens, some right-hand event happens too.
rep = proof_check(5)
print("\nn=5 coverage multiplicities:", rep.multiplicity_histogram)
print("coverage per right-hand term:", rep.term_coverage)

# The game: classical value by enumeration.
best = optimal_classical_strategies()
print(f"\nclassical win probability {game_classical_value()} reached by {len(best)} of 64 strategies")
print("one of them:", best[0])

# Quantum value from the violation and from a round-by-round simulation.
meas = MeasurementSet.tilted([X3_STAR] * 3)
delta = violation_of(psi3(), meas)
print(f"quantum win probability {game_quantum_value(delta):.6f} (formula)")
print(f"quantum win probability {simulate_game(psi3().amplitudes, meas.projectors):.6f} (simulation)")

# Random states and settings never beat the optimum.
rng = np.random.default_rng(0)
trials = []
for _ in range(200):
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    amps /= np.linalg.norm(amps)
    pairs = []
    for _ in range(3):
        pair = []
        for _ in range(2):
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            pair.append(np.outer(v, v.conj()))
        pairs.append(tuple(pair))
    trials.append(simulate_game(amps, pairs))
print(f"best of 200 random quantum strategies: {max(trials):.4f}")
