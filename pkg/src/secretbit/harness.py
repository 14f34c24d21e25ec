"""Monte Carlo experiment runner.

Every grid cell (mag0, mag1, reasoner, quality) owns a random stream derived
from the master seed and the cell coordinates, so cells can be evaluated in
any order, or in parallel, and still give identical output.
"""
from __future__ import annotations

import configparser
import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .classical import (classical_distribution, sample_answer_classical,
                        sample_answers_classical)
from .game import STRATEGIES, AliceStrategy, RoundRecord, random_alice_strategies, score_round
from .payoff import (Reasoner, analytic_payoff, oracle_expected_score, per_tau_score_classical_forms,
                     per_tau_score_quantum_forms, total_payoff)
from .preference import HintQuality, PreferenceBias, bias_for_quality, gate_probabilities
from .quantum import (PhaseRule, build_unitary, evolve, gamma, quantum_distribution,
                      quantum_distribution_closed, sample_answer_quantum, sample_answers_quantum)

log = logging.getLogger(__name__)

DEFAULT_N_GAMES = 10_000
DEFAULT_SEED = 20160317
DEFAULT_GRID_STEP = 0.05
SIGMA_GATE = 5.0

CSV_HEADER = ("mag0", "mag1", "quality", "reasoner", "n_games", "xi_mean", "xi_stderr", "xi_analytic")

_REASONER_CODE = {Reasoner.CLASSICAL: 0, Reasoner.QUANTUM: 1}
_QUALITY_CODE = {HintQuality.WELL: 0, HintQuality.ILL: 1, HintQuality.UNBIASED: 2}


class ConfigError(ValueError):
    pass


def fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if value == 0.0:
            value = 0.0  # drop the sign of -0.0
        return f"{value:.12g}"
    return str(value)


def _steps(step: float) -> int:
    if not step > 0:
        raise ConfigError(f"grid step must be positive, got {step!r}")
    k = 0.5 / step
    if abs(k - round(k)) > 1e-9:
        raise ConfigError(f"grid step {step!r} does not divide 1/2")
    return int(round(k))


def magnitude_axis(step: float = DEFAULT_GRID_STEP, endpoints: bool = False) -> tuple[float, ...]:
    """Magnitudes k*step; interior points only unless ``endpoints``."""
    k = _steps(step)
    ks = range(0, k + 1) if endpoints else range(1, k)
    return tuple(round(i * step, 12) for i in ks)


def square_grid(step: float = DEFAULT_GRID_STEP) -> tuple[tuple[float, float], ...]:
    axis = magnitude_axis(step)
    return tuple((m0, m1) for m0 in axis for m1 in axis)


def diagonal_grid(step: float = DEFAULT_GRID_STEP) -> tuple[tuple[float, float], ...]:
    return tuple((m, m) for m in magnitude_axis(step, endpoints=True))


def _parse_list(value, parse) -> tuple:
    if isinstance(value, str):
        value = [v for v in value.replace(";", ",").split(",") if v.strip()]
    out = []
    for v in value:
        p = parse(v)
        if p not in out:
            out.append(p)
    if not out:
        raise ConfigError("empty list")
    return tuple(out)


@dataclass(frozen=True)
class ExperimentConfig:
    n_games: int = DEFAULT_N_GAMES
    grid_step: float = DEFAULT_GRID_STEP
    grid: tuple[tuple[float, float], ...] | None = None
    reasoners: tuple[Reasoner, ...] = (Reasoner.CLASSICAL, Reasoner.QUANTUM)
    qualities: tuple[HintQuality, ...] = (HintQuality.WELL,)
    seed: int = DEFAULT_SEED
    out: str | None = None
    workers: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "reasoners", _parse_list(self.reasoners, Reasoner.parse))
            object.__setattr__(self, "qualities", _parse_list(self.qualities, HintQuality.parse))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if int(self.n_games) != self.n_games or self.n_games < 1:
            raise ConfigError(f"n_games must be a positive integer, got {self.n_games!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        _steps(self.grid_step)
        for m0, m1 in self.cells_grid():
            if not (0 <= m0 <= 0.5 and 0 <= m1 <= 0.5):
                raise ConfigError(f"magnitudes ({m0}, {m1}) outside [0, 1/2]")

    def cells_grid(self) -> tuple[tuple[float, float], ...]:
        return self.grid if self.grid is not None else square_grid(self.grid_step)

    def cells(self) -> list[tuple[float, float, Reasoner, HintQuality]]:
        """Cells in output order: grid coordinates, then reasoner, then quality."""
        cells = [(m0, m1, r, q) for (m0, m1) in self.cells_grid()
                 for r in self.reasoners for q in self.qualities]
        return sorted(cells, key=lambda c: (c[0], c[1], c[2].value, c[3].value))


_CONFIG_KEYS = {
    "n_games": int, "seed": int, "grid_step": float, "workers": int,
    "reasoner": str, "reasoners": str, "quality": str, "qualities": str, "out": str,
}


def read_config_file(path: str | Path) -> dict:
    """Parse ``key = value`` lines (``#`` comments allowed) into config overrides."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string("[experiment]\n" + Path(path).read_text())
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    values = {}
    for key, raw in parser["experiment"].items():
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_KEYS[key](raw)
        except ValueError:
            raise ConfigError(f"{path}: bad value for {key}: {raw!r}") from None
    for single, plural in (("reasoner", "reasoners"), ("quality", "qualities")):
        if single in values:
            values[plural] = values.pop(single)
    return values


def build_config(file_values: dict | None = None, **overrides) -> ExperimentConfig:
    """File values first; non-None keyword overrides win."""
    values = dict(file_values or {})
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def cell_seed_sequence(seed: int, mag0: float, mag1: float, reasoner: Reasoner,
                       quality: HintQuality) -> np.random.SeedSequence:
    """Master seed mixed with the cell's coordinates (magnitudes in units of 1e-9)."""
    key = (int(round(mag0 * 1e9)), int(round(mag1 * 1e9)),
           _REASONER_CODE[reasoner], _QUALITY_CODE[quality])
    return np.random.SeedSequence(entropy=int(seed), spawn_key=key)


def cell_rng(seed: int, mag0: float, mag1: float, reasoner: Reasoner,
             quality: HintQuality) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(cell_seed_sequence(seed, mag0, mag1, reasoner, quality)))


@dataclass(frozen=True)
class GridCellResult:
    mag0: float
    mag1: float
    quality: HintQuality
    reasoner: Reasoner
    n_games: int
    xi_mean: float
    xi_stderr: float
    xi_analytic: float
    bob_total: int = 0
    alice_total: int = 0

    @property
    def deviation(self) -> float:
        return abs(self.xi_mean - self.xi_analytic)

    @property
    def consistent(self) -> bool:
        return self.deviation <= SIGMA_GATE * self.xi_stderr + 1e-12

    def row(self) -> tuple[str, ...]:
        return tuple(fmt(v) for v in (self.mag0, self.mag1, self.quality.value, self.reasoner.value,
                                      self.n_games, self.xi_mean, self.xi_stderr, self.xi_analytic))


def _strategy_tables(mag0, mag1, reasoner, quality):
    """Per-strategy sampling parameters, indexed by tau (row 0 unused)."""
    keep0 = np.zeros(5)
    keep1 = np.zeros(5)
    born = np.zeros((5, 2))
    coeffs = np.zeros((5, 2), dtype=np.int8)
    for s in STRATEGIES:
        bias = bias_for_quality(s, mag0, mag1, quality)
        keep0[s] = gate_probabilities(bias, 0).p_keep
        keep1[s] = gate_probabilities(bias, 1).p_keep
        if reasoner is Reasoner.QUANTUM:
            born[s] = quantum_distribution(bias, 0), quantum_distribution(bias, 1)
        coeffs[s] = s.coefficients
    return keep0, keep1, born, coeffs


def run_cell(mag0: float, mag1: float, reasoner, quality, n_games: int,
             rng: np.random.Generator) -> GridCellResult:
    """Play ``n_games`` rounds against uniformly random strategies.

    Scores are tallied in integer half-points, so the zero-sum ledger is exact.
    """
    reasoner = Reasoner.parse(reasoner)
    quality = HintQuality.parse(quality)
    if n_games < 1:
        raise ConfigError("n_games must be >= 1")
    keep0, keep1, born, coeffs = _strategy_tables(mag0, mag1, reasoner, quality)

    taus = random_alice_strategies(rng, n_games)
    bob_halves = np.zeros(n_games, dtype=np.int64)
    alice_halves = np.zeros(n_games, dtype=np.int64)
    for x in (0, 1):
        if reasoner is Reasoner.CLASSICAL:
            answers = sample_answers_classical(keep0[taus], keep1[taus], x, rng)
        else:
            answers = sample_answers_quantum(born[taus, x], rng)
        target = coeffs[taus, 0] ^ (coeffs[taus, 1] & x)
        correct = answers == target
        bob_halves += np.where(correct, 1, -1)
        alice_halves += np.where(correct, -1, 1)

    xi_bob = bob_halves // 2  # halves sum to -2, 0 or 2
    mean = float(xi_bob.mean())
    stderr = float(xi_bob.std(ddof=1) / math.sqrt(n_games)) if n_games > 1 else 0.0
    return GridCellResult(
        mag0=mag0, mag1=mag1, quality=quality, reasoner=reasoner, n_games=n_games,
        xi_mean=mean, xi_stderr=stderr,
        xi_analytic=analytic_payoff(mag0, mag1, quality, reasoner),
        bob_total=int(bob_halves.sum()), alice_total=int(alice_halves.sum()),
    )


def _run_cell_task(args) -> GridCellResult:
    mag0, mag1, reasoner, quality, n_games, seed = args
    return run_cell(mag0, mag1, reasoner, quality, n_games,
                    cell_rng(seed, mag0, mag1, reasoner, quality))


def run_grid(cfg: ExperimentConfig) -> list[GridCellResult]:
    tasks = [(m0, m1, r, q, cfg.n_games, cfg.seed) for (m0, m1, r, q) in cfg.cells()]
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_cell_task, tasks, chunksize=8))
    else:
        results = [_run_cell_task(t) for t in tasks]
    for res in results:
        if not res.consistent:
            log.warning("cell (%s, %s, %s, %s): |mean - analytic| = %.4g exceeds %g stderr (%.4g)",
                        res.mag0, res.mag1, res.reasoner.value, res.quality.value,
                        res.deviation, SIGMA_GATE, res.xi_stderr)
    return results


# Scalar path: one RoundRecord at a time

def sample_answer(bias: PreferenceBias, x: int, reasoner, rng: np.random.Generator) -> int:
    if Reasoner.parse(reasoner) is Reasoner.CLASSICAL:
        return sample_answer_classical(bias, x, rng)
    return sample_answer_quantum(bias, x, rng)


def play_round(strategy: AliceStrategy, bias: PreferenceBias, reasoner,
               rng: np.random.Generator) -> RoundRecord:
    answers = (sample_answer(bias, 0, reasoner, rng), sample_answer(bias, 1, reasoner, rng))
    return score_round(strategy, answers)


def simulate_rounds(mag0: float, mag1: float, reasoner, quality, n_games: int,
                    rng: np.random.Generator) -> Iterator[RoundRecord]:
    """Yield rounds one by one; Alice redraws her strategy every game."""
    for _ in range(n_games):
        strategy = STRATEGIES[int(rng.integers(0, 4))]
        bias = bias_for_quality(strategy, mag0, mag1, quality)
        yield play_round(strategy, bias, reasoner, rng)


# Tables

def write_table(header: Sequence[str], rows: Iterable[Sequence[str]], out: str | Path | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text


def results_table(results: Sequence[GridCellResult]) -> tuple[tuple[str, ...], list[tuple[str, ...]]]:
    return CSV_HEADER, [r.row() for r in results]


ANALYTIC_HEADER = ("mag0", "mag1", "quality", "reasoner", "xi_analytic", "xi_exact", "gamma")


def analytic_table(cfg: ExperimentConfig):
    """Closed-form envelopes next to the value assembled from the exact answer distributions."""
    rows = []
    for m0, m1, r, q in cfg.cells():
        g = gamma(PreferenceBias(m0, m1))
        rows.append(tuple(fmt(v) for v in (m0, m1, q.value, r.value, analytic_payoff(m0, m1, q, r),
                                           total_payoff(m0, m1, q, r).xi_total, g)))
    return ANALYTIC_HEADER, rows


SURFACE_HEADER = ("tau", "alpha0", "alpha1", "reasoner", "xi_tau", "region")


def _region(strategy: AliceStrategy, a0: float, a1: float) -> str:
    if a0 == 0 or a1 == 0:
        return ""
    pattern = (0 if a0 > 0 else 1, 0 if a1 > 0 else 1)
    if pattern == strategy.coefficients:
        return "good"
    if pattern == strategy.complement().coefficients:
        return "bad"
    return ""


def surface_table(reasoners: Sequence[Reasoner], step: float = DEFAULT_GRID_STEP):
    """Per-strategy score over the full bias square [-1/2, 1/2]^2."""
    axis = sorted({-m for m in magnitude_axis(step, True)} | set(magnitude_axis(step, True)))
    axis = [0.0 if a == 0 else a for a in axis]
    rows = []
    for r in reasoners:
        for s in STRATEGIES:
            for a0 in axis:
                for a1 in axis:
                    bias = PreferenceBias(a0, a1)
                    if r is Reasoner.CLASSICAL:
                        xi = per_tau_score_classical_forms(s, bias).xi_bar
                    else:
                        xi = per_tau_score_quantum_forms(s, bias).xi_bar
                    rows.append((str(s.tau), fmt(a0), fmt(a1), r.value, fmt(xi), _region(s, a0, a1)))
    return SURFACE_HEADER, rows


FIGURES = {
    "grid": "grid", "fig5": "grid",
    "diagonal": "diagonal", "fig6": "diagonal", "fig7": "diagonal", "fig6/7-diagonal": "diagonal",
    "surfaces": "surfaces", "fig8/9-surfaces": "surfaces",
    "fig8": "surfaces-classical", "fig9": "surfaces-quantum",
}


def run_figure(figure_id: str, cfg: ExperimentConfig):
    """Return (header, rows) for a named dataset."""
    try:
        kind = FIGURES[figure_id.lower()]
    except KeyError:
        raise ConfigError(f"unknown figure id {figure_id!r}; choose from {sorted(FIGURES)}") from None
    if kind == "grid":
        return results_table(run_grid(cfg))
    if kind == "diagonal":
        return results_table(run_grid(replace(cfg, grid=diagonal_grid(cfg.grid_step))))
    if kind == "surfaces-classical":
        return surface_table((Reasoner.CLASSICAL,), cfg.grid_step)
    if kind == "surfaces-quantum":
        return surface_table((Reasoner.QUANTUM,), cfg.grid_step)
    return surface_table(cfg.reasoners, cfg.grid_step)


# Verification sweep

ORACLE_TOL = 1e-10
EXACT_TOL = 1e-12


@dataclass
class OracleReport:
    residuals: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)

    def record(self, name: str, value: float, tol: float) -> None:
        self.residuals[name] = max(self.residuals.get(name, 0.0), float(value))
        self.tolerances[name] = tol

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.residuals.items() if not v <= self.tolerances[k]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        return [f"{'PASS' if v <= self.tolerances[k] else 'FAIL'} {k}: max residual {v:.3e} "
                f"(tol {self.tolerances[k]:.0e})" for k, v in self.residuals.items()]


def oracle_check(n_draws: int = 10_000, seed: int = DEFAULT_SEED,
                 step: float = DEFAULT_GRID_STEP) -> OracleReport:
    """Compare every closed form against enumeration and statevector evolution."""
    rep = OracleReport()
    rng = np.random.default_rng(seed)
    deltas = (PhaseRule(0.0), PhaseRule(0.5), PhaseRule(1.0))
    for _ in range(n_draws):
        s = STRATEGIES[int(rng.integers(0, 4))]
        bias = PreferenceBias(*rng.uniform(-0.5, 0.5, size=2))
        rep.record("classical per-tau score vs enumeration",
                   abs(per_tau_score_classical_forms(s, bias).xi_bar
                       - oracle_expected_score(s, Reasoner.CLASSICAL, bias)), ORACLE_TOL)
        phase = deltas[int(rng.integers(0, 3))]
        rep.record("quantum per-tau score vs statevector",
                   abs(per_tau_score_quantum_forms(s, bias, phase).xi_bar
                       - oracle_expected_score(s, Reasoner.QUANTUM, bias, phase)), ORACLE_TOL)
        rep.record("quantum per-tau score (phase rule) vs statevector",
                   abs(per_tau_score_quantum_forms(s, bias).xi_bar
                       - oracle_expected_score(s, Reasoner.QUANTUM, bias)), ORACLE_TOL)

    axis = sorted({-m for m in magnitude_axis(step, True)} | set(magnitude_axis(step, True)))
    for a0 in axis:
        for a1 in axis:
            bias = PreferenceBias(a0, a1)
            rep.record("classical composition vs closed form",
                       max(abs(classical_distribution(bias, 0) - (0.5 + a0)),
                           abs(classical_distribution(bias, 1) - (0.5 + 2 * a0 * a1))), EXACT_TOL)
            for phase in deltas:
                for j in (0, 1):
                    rep.record("unitarity", build_unitary(bias, j, phase).unitarity_residual(), EXACT_TOL)
                for x in (0, 1):
                    state = evolve(bias, x, phase)
                    rep.record("statevector normalisation", state.norm_residual(), EXACT_TOL)
                    rep.record("statevector vs closed form",
                               abs(state.probability(0) - quantum_distribution_closed(bias, x, phase)),
                               EXACT_TOL)

    for m0, m1 in square_grid(step) + diagonal_grid(step):
        for q in HintQuality:
            for r in Reasoner:
                rep.record("total payoff vs envelope",
                           abs(total_payoff(m0, m1, q, r).xi_total - analytic_payoff(m0, m1, q, r)),
                           EXACT_TOL)
    return rep
