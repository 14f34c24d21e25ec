"""Secret-bit guessing game: Alice's strategy families and the scoring ledger.

Alice holds two classical bits M_0, M_1 produced by one of four one-bit Boolean
functions u(x) = a0 XOR a1*x.  Bob answers one bit per memory slot and wins
half a point for every correct answer (loses half a point otherwise).  The game
is zero-sum, so Alice's score is always the negative of Bob's.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from enum import IntEnum

import numpy as np

HALF = Fraction(1, 2)

SCORES = (-1, 0, 1)


class AliceStrategy(IntEnum):
    """The four strategy families, indexed 1..4.

    The coefficient pairs (a0, a1) are fixed: 1 -> (0,0), 2 -> (0,1),
    3 -> (1,1), 4 -> (1,0), i.e. u = 0, u = x, u = 1 XOR x, u = 1.
    """

    TAU1 = 1
    TAU2 = 2
    TAU3 = 3
    TAU4 = 4

    @property
    def coefficients(self) -> tuple[int, int]:
        return _COEFFICIENTS[self]

    @property
    def a0(self) -> int:
        return _COEFFICIENTS[self][0]

    @property
    def a1(self) -> int:
        return _COEFFICIENTS[self][1]

    @property
    def tau(self) -> int:
        return int(self)

    @classmethod
    def from_coefficients(cls, a0: int, a1: int) -> AliceStrategy:
        _check_bit(a0)
        _check_bit(a1)
        return _FROM_COEFFICIENTS[(a0, a1)]

    def complement(self) -> AliceStrategy:
        """Strategy whose answers are the negation of this one at every x."""
        return AliceStrategy.from_coefficients(1 - self.a0, self.a1)

    def memory(self) -> tuple[int, int]:
        """The secret bits (M_0, M_1) this strategy stores."""
        return alice_answer(self, 0), alice_answer(self, 1)


_COEFFICIENTS = {
    AliceStrategy.TAU1: (0, 0),
    AliceStrategy.TAU2: (0, 1),
    AliceStrategy.TAU3: (1, 1),
    AliceStrategy.TAU4: (1, 0),
}
_FROM_COEFFICIENTS = {v: k for k, v in _COEFFICIENTS.items()}

STRATEGIES = tuple(AliceStrategy)


@dataclass(frozen=True)
class GameSets:
    """Strategy and score sets of the game (fixed, exhaustive)."""

    alice_strategies: tuple[AliceStrategy, ...] = STRATEGIES
    bob_answers: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))
    scores: tuple[int, ...] = SCORES


@dataclass(frozen=True)
class RoundRecord:
    strategy: AliceStrategy
    bob_answers: tuple[int, int]
    single_points_bob: tuple[Fraction, Fraction]
    xi_bob: Fraction
    xi_alice: Fraction


def _check_bit(b) -> None:
    if b not in (0, 1):
        raise ValueError(f"not a bit: {b!r}")


def alice_answer(strategy: AliceStrategy, x: int) -> int:
    """Evaluate u_Alice(x) = a0 XOR a1*x."""
    _check_bit(x)
    a0, a1 = AliceStrategy(strategy).coefficients
    return a0 ^ (a1 & x)


def score_round(strategy: AliceStrategy, bob_answers: tuple[int, int]) -> RoundRecord:
    """Score one game; single points are exact halves."""
    strategy = AliceStrategy(strategy)
    points = []
    for x, answer in enumerate(bob_answers):
        _check_bit(answer)
        points.append(HALF if answer == alice_answer(strategy, x) else -HALF)
    if len(points) != 2:
        raise ValueError("Bob must give exactly two answers")
    xi_bob = points[0] + points[1]
    return RoundRecord(
        strategy=strategy,
        bob_answers=(int(bob_answers[0]), int(bob_answers[1])),
        single_points_bob=(points[0], points[1]),
        xi_bob=xi_bob,
        xi_alice=-xi_bob,
    )


def random_alice_strategy(rng: np.random.Generator) -> AliceStrategy:
    """Draw a strategy family uniformly at random."""
    return STRATEGIES[int(rng.integers(0, 4))]


def random_alice_strategies(rng: np.random.Generator, n: int) -> np.ndarray:
    """Vectorised draw: array of ``n`` tau indices in 1..4."""
    return rng.integers(0, 4, size=n) + 1
