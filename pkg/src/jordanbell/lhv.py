"""Classical (local hidden variable) side of the inequality family, plus the
three-party nonlocal game.

Outcome convention throughout: +1 <-> reply bit 0, -1 <-> reply bit 1.
Settings are numbered 1 and 2.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


class ProofViolationError(RuntimeError):
    """An LHS sequence that no RHS probability covers."""


@dataclass(frozen=True)
class Term:
    """One probability in the inequality, with its sign on the LHS - RHS side.

    ``events[l] = (setting, outcome)`` for party l.
    """

    coef: int
    events: tuple


def inequality_terms(n: int) -> list:
    """Terms of the n-party inequality as LHS - RHS.

    The first term is the LHS probability (coef +1). Then come the all
    setting-2 probability and the n single-flip probabilities (coef -1).
    """
    if n < 2:
        raise ValueError("need at least two parties")
    terms = [Term(+1, tuple((1, +1) for _ in range(n))), Term(-1, tuple((2, +1) for _ in range(n)))]
    for l in range(n):
        events = [(1, +1)] * n
        events[l] = (2, -1)
        terms.append(Term(-1, tuple(events)))
    return terms


@dataclass(frozen=True)
class DeterministicStrategy:
    """Predetermined outcomes: ``outcomes[l] = (o_{l,1}, o_{l,2})`` in {+1, -1}^2."""

    outcomes: tuple

    def __post_init__(self):
        for pair in self.outcomes:
            if len(pair) != 2 or any(o not in (1, -1) for o in pair):
                raise ValueError(f"bad outcome pair {pair!r}")

    @property
    def n(self) -> int:
        return len(self.outcomes)

    def outcome(self, party: int, setting: int) -> int:
        return self.outcomes[party][setting - 1]


def all_strategies(n: int):
    """All 4**n deterministic strategies, each exactly once."""
    pairs = list(itertools.product((1, -1), repeat=2))
    for combo in itertools.product(pairs, repeat=n):
        yield DeterministicStrategy(combo)


def bell_functional(strategy: DeterministicStrategy) -> int:
    """LHS - RHS of the inequality with every probability in {0, 1}."""
    total = 0
    for term in inequality_terms(strategy.n):
        if all(strategy.outcome(l, s) == o for l, (s, o) in enumerate(term.events)):
            total += term.coef
    return total


def functional_table(n: int) -> np.ndarray:
    """Vectorized ``bell_functional`` over all strategies, in ``all_strategies`` order."""
    # digit per party: bit 1 -> setting-1 outcome is -1, bit 0 -> setting-2 outcome is -1
    codes = np.arange(4**n, dtype=np.int64)
    o1_plus = np.empty((codes.size, n), dtype=bool)
    o2_plus = np.empty((codes.size, n), dtype=bool)
    for l in range(n):
        digit = (codes >> (2 * (n - 1 - l))) & 3
        o1_plus[:, l] = (digit & 2) == 0
        o2_plus[:, l] = (digit & 1) == 0
    plus_count = o1_plus.sum(axis=1)
    value = (plus_count == n).astype(np.int64)
    value -= o2_plus.all(axis=1)
    for l in range(n):
        others_plus = (plus_count - o1_plus[:, l]) == n - 1
        value -= others_plus & ~o2_plus[:, l]
    return value


def classical_value(n: int) -> int:
    """Maximum of the functional over all 4**n deterministic strategies."""
    if not 2 <= n <= 10:
        raise ValueError(f"n must be in [2, 10], got {n}")
    return int(functional_table(n).max())


def mixed_functional(weights: Sequence[float], n: int) -> float:
    """Functional of a convex mixture of deterministic strategies (weights over the 4**n table)."""
    w = np.asarray(weights, dtype=float)
    return float(w @ functional_table(n))


@dataclass(frozen=True)
class ProofReport:
    n: int
    sequences: int
    multiplicity_histogram: dict
    term_coverage: tuple
    all_plus_first_term_only: bool


def proof_check(n: int) -> ProofReport:
    """Check that every LHS outcome sequence is counted by some RHS probability.

    Sequences are the 2n outcomes (a_11..a_n1; a_12..a_n2) with the first
    half fixed to +1. ``term_coverage[k]`` counts the sequences covered by
    the k-th RHS term.

    Raises
    ------
    ProofViolationError
        If any such sequence has zero coverage.
    """
    if not 2 <= n <= 12:
        raise ValueError(f"n must be in [2, 12], got {n}")
    rhs = [t for t in inequality_terms(n) if t.coef < 0]
    hist = Counter()
    coverage = [0] * len(rhs)
    first_only = False
    for second in itertools.product((1, -1), repeat=n):
        seq = {(l, 1): 1 for l in range(n)}
        seq.update({(l, 2): second[l] for l in range(n)})
        hits = [k for k, t in enumerate(rhs) if all(seq[(l, s)] == o for l, (s, o) in enumerate(t.events))]
        if not hits:
            raise ProofViolationError(f"sequence {second} is not covered by any RHS term")
        for k in hits:
            coverage[k] += 1
        hist[len(hits)] += 1
        if all(v == 1 for v in second):
            first_only = hits == [0]
    return ProofReport(
        n=n,
        sequences=2**n,
        multiplicity_histogram=dict(sorted(hist.items())),
        term_coverage=tuple(coverage),
        all_plus_first_term_only=first_only,
    )


# -- three-party nonlocal game ----------------------------------------------

INSTRUCTIONS = ((0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1))


def game_wins(instruction: Sequence[int], replies: Sequence[int]) -> bool:
    """Referee's win predicate for the five allowed instruction triples."""
    instruction = tuple(instruction)
    replies = tuple(replies)
    if instruction == (0, 0, 0):
        return replies == (0, 0, 0)
    if instruction == (1, 1, 1):
        return replies != (0, 0, 0)
    if sum(instruction) == 1:
        k = instruction.index(1)
        lose = replies[k] == 1 and all(replies[j] == 0 for j in range(3) if j != k)
        return not lose
    raise ValueError(f"instruction {instruction} is not one the referee sends")


def game_win_probability(strategy) -> Fraction:
    """Win probability of a deterministic strategy.

    ``strategy[l] = (reply to bit 0, reply to bit 1)`` for party l.
    """
    wins = sum(game_wins(ins, [strategy[l][b] for l, b in enumerate(ins)]) for ins in INSTRUCTIONS)
    return Fraction(wins, len(INSTRUCTIONS))


def game_strategies():
    """All 64 deterministic reply strategies."""
    funcs = list(itertools.product((0, 1), repeat=2))
    return list(itertools.product(funcs, repeat=3))


def game_classical_value() -> Fraction:
    return max(game_win_probability(s) for s in game_strategies())


def optimal_classical_strategies() -> list:
    best = game_classical_value()
    return [s for s in game_strategies() if game_win_probability(s) == best]


def game_quantum_value(delta: float) -> float:
    """Win probability 4/5 + delta/5, with delta = LHS - RHS of the three-party inequality."""
    return 0.8 + delta / 5.0


def simulate_game(amplitudes, projectors) -> float:
    """Quantum win probability by direct simulation of the five rounds.

    ``projectors[l] = (P1, P2)`` are 2x2 projectors onto outcome +1 of party
    l's two settings. Instruction bit b selects setting b+1; outcome +1 is
    reported as 0.
    """
    psi = np.asarray(amplitudes, dtype=complex).reshape(2, 2, 2)
    total = 0.0
    for ins in INSTRUCTIONS:
        # outcome projectors per party: index 0 -> +1 (reply 0), 1 -> -1 (reply 1)
        per_party = []
        for l, bit in enumerate(ins):
            p = np.asarray(projectors[l][bit], dtype=complex)
            per_party.append((p, np.eye(2) - p))
        for replies in itertools.product((0, 1), repeat=3):
            if not game_wins(ins, replies):
                continue
            a, b, c = (per_party[l][r] for l, r in enumerate(replies))
            phi = np.einsum("ia,jb,kc,abc->ijk", a, b, c, psi)
            total += float(np.vdot(phi, phi).real)
    return total / len(INSTRUCTIONS)
