"""Expected scores: per-strategy averages, totals over Alice's strategies, and
brute-force oracles that never touch the closed forms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .classical import AnswerDistribution, classical_answer_distribution
from .game import STRATEGIES, AliceStrategy, alice_answer, score_round
from .preference import HintQuality, PreferenceBias, bias_for_quality, gate_probabilities
from .quantum import PhaseRule, evolve, gamma, phase_delta, quantum_answer_distribution


class Reasoner(str, Enum):
    CLASSICAL = "classical"
    QUANTUM = "quantum"

    @classmethod
    def parse(cls, value) -> Reasoner:
        return value if isinstance(value, cls) else cls(str(value).strip().lower())


@dataclass(frozen=True)
class PerTauScore:
    tau: AliceStrategy
    xi_bar: float


@dataclass(frozen=True)
class PayoffSummary:
    xi_total: float
    components: tuple[PerTauScore, ...]
    reasoner: Reasoner
    quality: HintQuality


def answer_distribution(bias: PreferenceBias, reasoner: Reasoner | str,
                        phase: PhaseRule | None = None) -> AnswerDistribution:
    if Reasoner.parse(reasoner) is Reasoner.CLASSICAL:
        return classical_answer_distribution(bias)
    return quantum_answer_distribution(bias, phase)


def per_tau_score(strategy: AliceStrategy, dist: AnswerDistribution) -> PerTauScore:
    """Expected score against one strategy: sum over x of (Pr(correct) - Pr(wrong))/2."""
    strategy = AliceStrategy(strategy)
    xi = 0.0
    for x in (0, 1):
        target = alice_answer(strategy, x)
        xi += 0.5 * (dist.prob(target, x) - dist.prob(1 - target, x))
    return PerTauScore(strategy, xi)


def _total_payoff(mag0: float, mag1: float, quality, reasoner: Reasoner) -> PayoffSummary:
    quality = HintQuality.parse(quality)
    components = []
    for strategy in STRATEGIES:
        bias = bias_for_quality(strategy, mag0, mag1, quality)
        components.append(per_tau_score(strategy, answer_distribution(bias, reasoner)))
    xi_total = sum(c.xi_bar for c in components) / 4.0
    return PayoffSummary(xi_total, tuple(components), reasoner, quality)


def total_payoff_classical(mag0: float, mag1: float, quality=HintQuality.WELL) -> PayoffSummary:
    """Average over the four strategies, each paired with its own quantified bias."""
    return _total_payoff(mag0, mag1, quality, Reasoner.CLASSICAL)


def total_payoff_quantum(mag0: float, mag1: float, quality=HintQuality.WELL) -> PayoffSummary:
    return _total_payoff(mag0, mag1, quality, Reasoner.QUANTUM)


def total_payoff(mag0: float, mag1: float, quality, reasoner) -> PayoffSummary:
    return _total_payoff(mag0, mag1, quality, Reasoner.parse(reasoner))


# Closed forms

_TAU_SIGNS = {  # (sign of alpha_0 term, sign of 2 alpha_0 alpha_1 term, sign of Gamma cos term)
    AliceStrategy.TAU1: (1, 1, 1),
    AliceStrategy.TAU2: (1, -1, -1),
    AliceStrategy.TAU3: (-1, 1, 1),
    AliceStrategy.TAU4: (-1, -1, -1),
}


def per_tau_score_classical_forms(strategy: AliceStrategy, bias: PreferenceBias) -> PerTauScore:
    s0, s01, _ = _TAU_SIGNS[AliceStrategy(strategy)]
    a0, a1 = bias.alpha0, bias.alpha1
    return PerTauScore(AliceStrategy(strategy), s0 * a0 + s01 * 2.0 * a0 * a1)


def per_tau_score_quantum_forms(strategy: AliceStrategy, bias: PreferenceBias,
                                phase: PhaseRule | None = None) -> PerTauScore:
    if phase is None:
        phase = phase_delta(bias)
    strategy = AliceStrategy(strategy)
    classical = per_tau_score_classical_forms(strategy, bias).xi_bar
    sg = _TAU_SIGNS[strategy][2]
    return PerTauScore(strategy, classical + sg * gamma(bias) * phase.cos)


def envelope_classical(mag0: float, mag1: float, quality=HintQuality.WELL) -> float:
    """|a0| + 2|a0||a1| for good hints, its negative for the worst hints."""
    quality = HintQuality.parse(quality)
    best = abs(mag0) + 2.0 * abs(mag0) * abs(mag1)
    if quality is HintQuality.WELL:
        return best
    if quality is HintQuality.ILL:
        return -best
    return 0.0


def envelope_quantum(mag0: float, mag1: float, quality=HintQuality.WELL) -> float:
    """Classical envelope shifted by +/- Gamma; no gain when either magnitude is zero."""
    quality = HintQuality.parse(quality)
    if quality is HintQuality.UNBIASED:
        return 0.0
    g = gamma(PreferenceBias(mag0, mag1)) if mag0 * mag1 != 0 else 0.0
    if quality is HintQuality.WELL:
        return envelope_classical(mag0, mag1, quality) + g
    return envelope_classical(mag0, mag1, quality) - g


def analytic_payoff(mag0: float, mag1: float, quality, reasoner) -> float:
    if Reasoner.parse(reasoner) is Reasoner.CLASSICAL:
        return envelope_classical(mag0, mag1, quality)
    return envelope_quantum(mag0, mag1, quality)


# Oracles

def _gate_outcome_answer(r0: int, r1: int, x: int) -> int:
    bit = 0
    if r0:
        bit = 1 - bit
    if x == 1 and r1:
        bit = 1 - bit
    return bit


def _classical_answer_probs(bias: PreferenceBias, x: int) -> list[float]:
    """Pr(answer = u | x) by enumerating every gate-outcome pair (r0, r1)."""
    probs = [0.0, 0.0]
    g0, g1 = gate_probabilities(bias, 0), gate_probabilities(bias, 1)
    for r0, r1 in itertools.product((0, 1), repeat=2):
        if x == 0 and r1:
            continue  # R_1 never fires
        p = g0.p_flip if r0 else g0.p_keep
        if x == 1:
            p *= g1.p_flip if r1 else g1.p_keep
        probs[_gate_outcome_answer(r0, r1, x)] += p
    return probs


def _quantum_answer_probs(bias: PreferenceBias, x: int, phase: PhaseRule) -> list[float]:
    state = evolve(bias, x, phase)
    return [state.probability(0), state.probability(1)]


def oracle_expected_score(strategy: AliceStrategy, reasoner, bias: PreferenceBias,
                          phase: PhaseRule | None = None) -> float:
    """Expected xi_Bob by enumerating every answer pair and scoring it with the game rules."""
    reasoner = Reasoner.parse(reasoner)
    if reasoner is Reasoner.CLASSICAL:
        per_x = [_classical_answer_probs(bias, x) for x in (0, 1)]
    else:
        phase = phase_delta(bias) if phase is None else phase
        per_x = [_quantum_answer_probs(bias, x, phase) for x in (0, 1)]
    expected = 0.0
    for u0, u1 in itertools.product((0, 1), repeat=2):
        p = per_x[0][u0] * per_x[1][u1]
        expected += p * float(score_round(strategy, (u0, u1)).xi_bob)
    return expected


def oracle_total_payoff(mag0: float, mag1: float, quality, reasoner) -> float:
    total = 0.0
    for strategy in STRATEGIES:
        bias = bias_for_quality(strategy, mag0, mag1, quality)
        total += oracle_expected_score(strategy, reasoner, bias)
    return total / 4.0
