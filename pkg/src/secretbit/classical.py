"""Bob's classical probabilistic reasoner.

Two stochastic gates R_0, R_1 act on a classical bit that starts at 0.  Each
gate is the identity with probability Pr(r_j -> 0) and NOT otherwise; R_1 only
fires when x = 1.  The result is u_Bob(x) = r0 XOR r1*x.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .preference import PreferenceBias, gate_probabilities

INITIAL_BIT = 0


@dataclass(frozen=True)
class AnswerDistribution:
    """Pr(u_Bob = 0 | x) for x = 0 and x = 1."""

    p_u0_given_x: tuple[float, float]

    def prob(self, u: int, x: int) -> float:
        p0 = self.p_u0_given_x[x]
        return p0 if u == 0 else 1.0 - p0


@dataclass(frozen=True)
class StochasticGate:
    matrix: np.ndarray

    @classmethod
    def from_bias(cls, bias: PreferenceBias, j: int) -> StochasticGate:
        g = gate_probabilities(bias, j)
        m = np.array([[g.p_keep, g.p_flip], [g.p_flip, g.p_keep]])
        m.setflags(write=False)
        return cls(m)

    def apply(self, dist: np.ndarray) -> np.ndarray:
        # symmetric matrix, so row/column convention does not matter
        return self.matrix @ dist


def classical_distribution(bias: PreferenceBias, x: int) -> float:
    """Exact Pr(u_Bob = 0 | x) by composing the stochastic matrices.

    Equals 1/2 + alpha_0 at x=0 and 1/2 + 2*alpha_0*alpha_1 at x=1.
    """
    if x not in (0, 1):
        raise ValueError(f"x must be a bit, got {x!r}")
    dist = np.zeros(2)
    dist[INITIAL_BIT] = 1.0
    dist = StochasticGate.from_bias(bias, 0).apply(dist)
    if x == 1:
        dist = StochasticGate.from_bias(bias, 1).apply(dist)
    return float(dist[0])


def classical_answer_distribution(bias: PreferenceBias) -> AnswerDistribution:
    return AnswerDistribution((classical_distribution(bias, 0), classical_distribution(bias, 1)))


def _switch(bit: int, p_keep: float, r: float) -> int:
    # identity when r < Pr(r_j -> 0), NOT otherwise
    return bit if r < p_keep else 1 - bit


def sample_answer_classical(bias: PreferenceBias, x: int, rng: np.random.Generator) -> int:
    """Run the gates once with fresh uniforms and return Bob's answer."""
    if x not in (0, 1):
        raise ValueError(f"x must be a bit, got {x!r}")
    bit = _switch(INITIAL_BIT, gate_probabilities(bias, 0).p_keep, rng.random())
    if x == 1:
        bit = _switch(bit, gate_probabilities(bias, 1).p_keep, rng.random())
    return bit


def sample_answers_classical(p_keep0: np.ndarray, p_keep1: np.ndarray, x: int,
                             rng: np.random.Generator) -> np.ndarray:
    """Vectorised sampler over games with per-game keep probabilities."""
    n = len(p_keep0)
    r = rng.random((n, 2))
    bit = (r[:, 0] >= p_keep0).astype(np.int8)
    if x == 1:
        bit ^= (r[:, 1] >= p_keep1).astype(np.int8)
    return bit
