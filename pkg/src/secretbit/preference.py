"""Quantified preferences: the bias vector and its well/ill-quantified forms.

Bob's hint is already quantified as a pair of probabilities
Pr(r_j -> k) = 1/2 + (-1)^k alpha_j, one per gate j.  The bias pair
(alpha_0, alpha_1) lives in [-1/2, 1/2]^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .game import AliceStrategy


class HintQuality(str, Enum):
    WELL = "well"
    ILL = "ill"
    UNBIASED = "unbiased"

    @classmethod
    def parse(cls, value) -> HintQuality:
        if isinstance(value, cls):
            return value
        aliases = {"well_quantified": cls.WELL, "ill_quantified": cls.ILL}
        value = str(value).strip().lower()
        if value in aliases:
            return aliases[value]
        return cls(value)


def _check_alpha(value: float, name: str) -> float:
    value = float(value)
    if math.isnan(value) or abs(value) > 0.5:
        raise ValueError(f"{name}={value!r} outside [-1/2, 1/2]")
    return value


def _check_magnitude(value: float, name: str) -> float:
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 0.5:
        raise ValueError(f"{name}={value!r} outside [0, 1/2]")
    return value


@dataclass(frozen=True)
class PreferenceBias:
    alpha0: float
    alpha1: float

    def __post_init__(self):
        object.__setattr__(self, "alpha0", _check_alpha(self.alpha0, "alpha0"))
        object.__setattr__(self, "alpha1", _check_alpha(self.alpha1, "alpha1"))

    def __getitem__(self, j: int) -> float:
        if j == 0:
            return self.alpha0
        if j == 1:
            return self.alpha1
        raise IndexError(f"gate index must be 0 or 1, got {j!r}")

    def __neg__(self) -> PreferenceBias:
        return PreferenceBias(-self.alpha0, -self.alpha1)

    @property
    def is_unbiased(self) -> bool:
        return self.alpha0 == 0.0 and self.alpha1 == 0.0

    def quality_for(self, strategy: AliceStrategy) -> HintQuality | None:
        """Classify this bias against a strategy, or None for a mixed pattern."""
        if self.is_unbiased:
            return HintQuality.UNBIASED
        m0, m1 = abs(self.alpha0), abs(self.alpha1)
        if self == well_quantified_bias(strategy, m0, m1):
            return HintQuality.WELL
        if self == ill_quantified_bias(strategy, m0, m1):
            return HintQuality.ILL
        return None


@dataclass(frozen=True)
class GateProbabilities:
    p_keep: float  # Pr(r_j -> 0): gate acts as identity
    p_flip: float  # Pr(r_j -> 1): gate acts as NOT


def gate_probabilities(bias: PreferenceBias, j: int) -> GateProbabilities:
    alpha = _check_alpha(bias[j], f"alpha{j}")
    return GateProbabilities(p_keep=0.5 + alpha, p_flip=0.5 - alpha)


def _signed(bit: int, magnitude: float) -> float:
    # +magnitude favours r_j -> 0, -magnitude favours r_j -> 1
    return magnitude if bit == 0 else -magnitude


def well_quantified_bias(strategy: AliceStrategy, mag0: float, mag1: float) -> PreferenceBias:
    """Bias whose preferred coefficients (r0, r1) equal the strategy's (a0, a1).

    tau1 -> (+,+), tau2 -> (+,-), tau3 -> (-,-), tau4 -> (-,+).
    """
    mag0 = _check_magnitude(mag0, "mag0")
    mag1 = _check_magnitude(mag1, "mag1")
    a0, a1 = AliceStrategy(strategy).coefficients
    return PreferenceBias(_signed(a0, mag0), _signed(a1, mag1))


def ill_quantified_bias(strategy: AliceStrategy, mag0: float, mag1: float) -> PreferenceBias:
    """Worst-case misleading bias for a strategy.

    The bias points at the complement strategy (every answer negated), which
    flips the sign of alpha_0 and keeps alpha_1.  Negating both components
    instead lands on a strategy that agrees with Alice at x=1 and is not the
    worst case.
    """
    return well_quantified_bias(AliceStrategy(strategy).complement(), mag0, mag1)


def bias_for_quality(strategy: AliceStrategy, mag0: float, mag1: float,
                     quality: HintQuality | str) -> PreferenceBias:
    quality = HintQuality.parse(quality)
    if quality is HintQuality.WELL:
        return well_quantified_bias(strategy, mag0, mag1)
    if quality is HintQuality.ILL:
        return ill_quantified_bias(strategy, mag0, mag1)
    return PreferenceBias(0.0, 0.0)
