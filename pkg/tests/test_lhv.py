from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jordanbell import lhv
from jordanbell.lhv import (
    DeterministicStrategy,
    ProofViolationError,
    all_strategies,
    bell_functional,
    classical_value,
    functional_table,
    game_classical_value,
    game_quantum_value,
    game_strategies,
    game_win_probability,
    game_wins,
    inequality_terms,
    mixed_functional,
    optimal_classical_strategies,
    proof_check,
    simulate_game,
)


def strat(*pairs):
    return DeterministicStrategy(tuple(pairs))


# -- functional ---------------------------------------------------------------


def test_functional_all_plus():
    assert bell_functional(strat((1, 1), (1, 1))) == 0


def test_functional_only_lhs_fires_then_covered():
    # a1 = b1 = +1, a2 = -1, b2 = +1: LHS fires and one single-flip term covers it
    assert bell_functional(strat((1, -1), (1, 1))) == 0


def test_functional_two_rhs_terms():
    # a1 = b1 = +1, a2 = b2 = -1: LHS fires, both single-flip terms fire
    assert bell_functional(strat((1, -1), (1, -1))) == -1
    # every setting -1 except setting 2 at +1: only the all-2 term fires
    assert bell_functional(strat((-1, 1), (-1, 1))) == -1


@pytest.mark.parametrize("n", range(2, 6))
def test_functional_most_negative(n):
    # setting 1 all +1 and setting 2 all -1 fires the LHS and every single flip
    worst = strat(*[(1, -1)] * n)
    assert bell_functional(worst) == 1 - n
    assert min(bell_functional(s) for s in all_strategies(n)) == 1 - n


def test_inequality_terms_shape():
    terms = inequality_terms(4)
    assert len(terms) == 6
    assert [t.coef for t in terms] == [1, -1, -1, -1, -1, -1]
    with pytest.raises(ValueError):
        inequality_terms(1)


def test_strategy_validation():
    with pytest.raises(ValueError):
        DeterministicStrategy(((1, 0),))


@pytest.mark.parametrize("n", range(2, 7))
def test_all_strategies_distinct_and_complete(n):
    seen = [s.outcomes for s in all_strategies(n)]
    assert len(seen) == 4**n
    assert len(set(seen)) == 4**n


@pytest.mark.parametrize("n", range(2, 7))
def test_vectorized_table_matches_loop(n):
    loop = np.array([bell_functional(s) for s in all_strategies(n)])
    assert np.array_equal(functional_table(n), loop)


@pytest.mark.parametrize("n", range(2, 11))
def test_classical_value_zero(n):
    assert classical_value(n) == 0


def test_classical_value_range():
    with pytest.raises(ValueError):
        classical_value(11)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_mixtures_respect_bound(seed):
    r = np.random.default_rng(seed)
    w = r.dirichlet(np.ones(4**3))
    value = mixed_functional(w, 3)
    assert value <= 1e-12
    assert value >= functional_table(3).min() - 1e-12


# -- proof coverage -----------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 13))
def test_proof_check_passes(n):
    rep = proof_check(n)
    assert rep.sequences == 2**n
    assert sum(rep.multiplicity_histogram.values()) == 2**n
    assert 0 not in rep.multiplicity_histogram
    assert rep.all_plus_first_term_only
    # the all-2 term covers exactly one sequence; single flips cover half each
    assert rep.term_coverage[0] == 1
    assert all(c == 2 ** (n - 1) for c in rep.term_coverage[1:])


def test_proof_check_raises_on_missing_term(monkeypatch):
    real = lhv.inequality_terms

    def without_all_two(n):
        return [t for t in real(n) if not (t.coef < 0 and all(s == 2 for s, _ in t.events))]

    monkeypatch.setattr(lhv, "inequality_terms", without_all_two)
    with pytest.raises(ProofViolationError):
        proof_check(3)


def test_proof_check_range():
    with pytest.raises(ValueError):
        proof_check(13)


# -- nonlocal game ------------------------------------------------------------


def test_game_rules():
    assert game_wins((0, 0, 0), (0, 0, 0))
    assert not game_wins((0, 0, 0), (0, 1, 0))
    assert not game_wins((1, 1, 1), (0, 0, 0))
    assert game_wins((1, 1, 1), (1, 0, 0))
    assert not game_wins((1, 0, 0), (1, 0, 0))
    assert game_wins((1, 0, 0), (1, 1, 0))
    assert game_wins((0, 1, 0), (1, 0, 0))
    with pytest.raises(ValueError):
        game_wins((1, 1, 0), (0, 0, 0))


def test_game_classical_value():
    assert len(game_strategies()) == 64
    assert game_classical_value() == Fraction(4, 5)
    best = optimal_classical_strategies()
    assert best[0] == ((0, 0), (0, 0), (0, 0))
    assert all(game_win_probability(s) == Fraction(4, 5) for s in best)
    assert not any(game_win_probability(s) == 1 for s in game_strategies())


def test_game_quantum_formula():
    assert game_quantum_value(np.sqrt(5) - 2) == pytest.approx(0.847214, abs=1e-6)
    assert game_quantum_value(0.0) == pytest.approx(0.8)


def _functional_from_strategy(strategy):
    # game reply to instruction bit b is reply bit; outcome +1 <-> reply 0
    outcomes = tuple((1 - 2 * f[0], 1 - 2 * f[1]) for f in strategy)
    return bell_functional(DeterministicStrategy(outcomes))


def test_game_win_probability_tracks_functional():
    for s in game_strategies():
        assert game_win_probability(s) == Fraction(4, 5) + Fraction(_functional_from_strategy(s), 5)


def _random_projector(r):
    v = r.normal(size=2) + 1j * r.normal(size=2)
    v /= np.linalg.norm(v)
    return np.outer(v, v.conj())


def test_simulation_matches_formula_random():
    from jordanbell.states import MeasurementSet, PureState, violation_of

    r = np.random.default_rng(99)
    for _ in range(20):
        amps = r.normal(size=8) + 1j * r.normal(size=8)
        state = PureState(amps)
        meas = MeasurementSet(tuple((_random_projector(r), _random_projector(r)) for _ in range(3)))
        sim = simulate_game(state.amplitudes, meas.projectors)
        assert sim == pytest.approx(game_quantum_value(violation_of(state, meas)), abs=1e-12)


def test_simulation_deterministic_strategy():
    # computational-basis projectors on |000> reproduce the all-zero deterministic strategy
    p0 = np.diag([1.0, 0.0])
    psi = np.zeros(8)
    psi[0] = 1
    assert simulate_game(psi, [(p0, p0)] * 3) == pytest.approx(0.8)
