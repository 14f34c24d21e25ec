"""Bob's quantum reasoner: two single-qubit unitaries and a Born-rule readout.

Each gate keeps/flips |0>,|1> with the same probabilities as its classical
counterpart but also carries a phase phi_j.  The phase difference
Delta = (phi_1 - phi_0)/pi is chosen from the sign of alpha_0*alpha_1.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .classical import AnswerDistribution
from .preference import PreferenceBias, gate_probabilities

# exact e^{i pi Delta} and cos(pi Delta) for the three admissible Deltas
_PHASE_FACTOR = {0.0: 1.0 + 0j, 0.5: 1j, 1.0: -1.0 + 0j}
_COS = {0.0: 1.0, 0.5: 0.0, 1.0: -1.0}


def _unit_phase(phi_over_pi: float) -> complex:
    if phi_over_pi in _PHASE_FACTOR:
        return _PHASE_FACTOR[phi_over_pi]
    return cmath.exp(1j * math.pi * phi_over_pi)


@dataclass(frozen=True)
class PhaseRule:
    """Gate phases, stored in units of pi.  phi0 is fixed to 0."""

    delta: float

    @property
    def phi0(self) -> float:
        return 0.0

    @property
    def phi1(self) -> float:
        return math.pi * self.delta

    def phase(self, j: int) -> float:
        """Phase of gate j in units of pi."""
        return 0.0 if j == 0 else self.delta

    @property
    def cos(self) -> float:
        if self.delta in _COS:
            return _COS[self.delta]
        return math.cos(math.pi * self.delta)


def phase_delta(bias: PreferenceBias) -> PhaseRule:
    prod = bias.alpha0 * bias.alpha1
    if prod > 0:
        return PhaseRule(0.0)
    if prod < 0:
        return PhaseRule(1.0)
    return PhaseRule(0.5)


@dataclass(frozen=True)
class QubitState:
    amp0: complex
    amp1: complex

    @classmethod
    def zero(cls) -> QubitState:
        return cls(1.0 + 0j, 0j)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1], dtype=complex)

    def norm_residual(self) -> float:
        return abs(abs(self.amp0) ** 2 + abs(self.amp1) ** 2 - 1.0)

    def probability(self, outcome: int) -> float:
        """Born probability of measuring ``outcome`` in the computational basis."""
        amp = self.amp0 if outcome == 0 else self.amp1
        return abs(amp) ** 2


@dataclass(frozen=True)
class UnitaryGate:
    matrix: np.ndarray

    def apply(self, state: QubitState) -> QubitState:
        v = self.matrix @ state.vector
        return QubitState(complex(v[0]), complex(v[1]))

    def unitarity_residual(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m @ m.conj().T - np.eye(2))))


def build_unitary(bias: PreferenceBias, j: int, phase: PhaseRule) -> UnitaryGate:
    """[[sqrt(p), e^{i phi} sqrt(1-p)], [e^{-i phi} sqrt(1-p), -sqrt(p)]], p = 1/2 + alpha_j."""
    g = gate_probabilities(bias, j)
    keep, flip = math.sqrt(g.p_keep), math.sqrt(g.p_flip)
    e = _unit_phase(phase.phase(j))
    m = np.array([[keep, e * flip], [e.conjugate() * flip, -keep]], dtype=complex)
    m.setflags(write=False)
    return UnitaryGate(m)


def evolve(bias: PreferenceBias, x: int, phase: PhaseRule | None = None) -> QubitState:
    """Final state of the channel: |0>, then R_0, then R_1 iff x = 1."""
    if x not in (0, 1):
        raise ValueError(f"x must be a bit, got {x!r}")
    if phase is None:
        phase = phase_delta(bias)
    state = build_unitary(bias, 0, phase).apply(QubitState.zero())
    if x == 1:
        state = build_unitary(bias, 1, phase).apply(state)
    return state


def gamma(bias: PreferenceBias) -> float:
    """Interference amplitude 2*sqrt((1/4 - alpha_0^2)(1/4 - alpha_1^2))."""
    m0, m1 = abs(bias.alpha0), abs(bias.alpha1)
    # factored so that 1/4 - a^2 keeps full precision near |a| = 1/2
    return 2.0 * math.sqrt((0.5 - m0) * (0.5 + m0) * (0.5 - m1) * (0.5 + m1))


def quantum_distribution(bias: PreferenceBias, x: int, phase: PhaseRule | None = None) -> float:
    """Born probability Pr(u_Bob = 0 | x) from statevector evolution."""
    return evolve(bias, x, phase).probability(0)


def quantum_distribution_closed(bias: PreferenceBias, x: int, phase: PhaseRule | None = None) -> float:
    """Closed form: 1/2 + alpha_0 at x=0; 1/2 + 2 alpha_0 alpha_1 + Gamma cos(pi Delta) at x=1."""
    if phase is None:
        phase = phase_delta(bias)
    if x == 0:
        return 0.5 + bias.alpha0
    return 0.5 + 2.0 * bias.alpha0 * bias.alpha1 + gamma(bias) * phase.cos


def quantum_answer_distribution(bias: PreferenceBias, phase: PhaseRule | None = None) -> AnswerDistribution:
    if phase is None:
        phase = phase_delta(bias)
    return AnswerDistribution((quantum_distribution(bias, 0, phase),
                               quantum_distribution(bias, 1, phase)))


def sample_answer_quantum(bias: PreferenceBias, x: int, rng: np.random.Generator,
                          phase: PhaseRule | None = None) -> int:
    """Measure the final state once."""
    p0 = quantum_distribution(bias, x, phase)
    return 0 if rng.random() < p0 else 1


def sample_answers_quantum(p0: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Vectorised Born sampling with per-game Pr(outcome 0)."""
    return (rng.random(len(p0)) >= p0).astype(np.int8)
