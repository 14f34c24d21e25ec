import itertools
from fractions import Fraction

import numpy as np
import pytest

from secretbit.game import (STRATEGIES, AliceStrategy, GameSets, alice_answer, random_alice_strategies,
                            random_alice_strategy, score_round)

T1, T2, T3, T4 = STRATEGIES


def test_bijection_fixed():
    assert [s.coefficients for s in STRATEGIES] == [(0, 0), (0, 1), (1, 1), (1, 0)]
    for s in STRATEGIES:
        assert AliceStrategy.from_coefficients(*s.coefficients) is s


@pytest.mark.parametrize("strategy, x, expected", [(T1, 1, 0), (T2, 1, 1), (T3, 0, 1)])
def test_alice_answer_examples(strategy, x, expected):
    assert alice_answer(strategy, x) == expected


def test_families_match_definitions():
    families = {T1: lambda x: 0, T2: lambda x: x, T3: lambda x: 1 ^ x, T4: lambda x: 1}
    for s, f in families.items():
        assert s.memory() == (f(0), f(1))


def test_strategies_are_all_boolean_functions():
    tables = {s.memory() for s in STRATEGIES}
    assert tables == set(itertools.product((0, 1), repeat=2))


def test_complement_negates_every_answer():
    for s in STRATEGIES:
        c = s.complement()
        assert all(alice_answer(c, x) == 1 - alice_answer(s, x) for x in (0, 1))
        assert c.complement() is s


@pytest.mark.parametrize("strategy, answers, xi", [(T1, (0, 0), 1), (T2, (0, 0), 0), (T4, (0, 0), -1)])
def test_score_round_examples(strategy, answers, xi):
    rec = score_round(strategy, answers)
    assert rec.xi_bob == xi
    assert rec.xi_alice == -xi


def test_score_round_exhaustive_invariants():
    sets = GameSets()
    for s, answers in itertools.product(sets.alice_strategies, sets.bob_answers):
        rec = score_round(s, answers)
        assert set(rec.single_points_bob) <= {Fraction(1, 2), Fraction(-1, 2)}
        assert rec.xi_bob == sum(rec.single_points_bob)
        assert rec.xi_bob + rec.xi_alice == 0
        assert rec.xi_bob in sets.scores
        assert isinstance(rec.xi_bob, Fraction)


def test_invalid_bits_rejected():
    with pytest.raises(ValueError):
        alice_answer(T1, 2)
    with pytest.raises(ValueError):
        score_round(T1, (0, 3))
    with pytest.raises(ValueError):
        AliceStrategy(5)


def test_random_strategy_frequencies():
    rng = np.random.default_rng(2016)
    taus = random_alice_strategies(rng, 400_000)
    freqs = np.bincount(taus, minlength=5)[1:] / len(taus)
    assert np.all(np.abs(freqs - 0.25) <= 0.005)
    assert set(np.unique(taus)) == {1, 2, 3, 4}


def test_random_strategy_regression():
    rng = np.random.default_rng(12345)
    seq = [int(random_alice_strategy(rng)) for _ in range(12)]
    assert seq == [3, 1, 4, 2, 1, 4, 3, 3, 4, 2, 4, 2]


def test_random_strategy_deterministic():
    a = [random_alice_strategy(np.random.default_rng(7)) for _ in range(3)]
    b = [random_alice_strategy(np.random.default_rng(7)) for _ in range(3)]
    assert a == b
