"""Secret-bit guessing game with classical and quantum reasoners."""
# ruff: noqa: F401
from .classical import (AnswerDistribution, StochasticGate, classical_answer_distribution,
                        classical_distribution, sample_answer_classical)
from .game import (AliceStrategy, GameSets, RoundRecord, STRATEGIES, alice_answer,
                   random_alice_strategy, score_round)
from .payoff import (PayoffSummary, PerTauScore, Reasoner, oracle_expected_score, per_tau_score,
                     per_tau_score_classical_forms, per_tau_score_quantum_forms,
                     total_payoff_classical, total_payoff_quantum)
from .preference import (GateProbabilities, HintQuality, PreferenceBias, gate_probabilities,
                         ill_quantified_bias, well_quantified_bias)
from .quantum import (PhaseRule, QubitState, UnitaryGate, build_unitary, gamma, phase_delta,
                      quantum_answer_distribution, quantum_distribution, sample_answer_quantum)

__version__ = "0.1.0"
