"""Exit criteria, one test per criterion.  A PASS/FAIL line per criterion is
printed in the terminal summary."""
import math
import time

import pytest

from conftest import ACCEPTANCE_LINES
from secretbit.cli import main
from secretbit.classical import classical_distribution
from secretbit.game import STRATEGIES
from secretbit.harness import (DEFAULT_SEED, ExperimentConfig, cell_rng, magnitude_axis,
                               oracle_check, run_grid, simulate_rounds, square_grid)
from secretbit.payoff import (Reasoner, per_tau_score_classical_forms, per_tau_score_quantum_forms,
                              total_payoff_classical, total_payoff_quantum)
from secretbit.preference import HintQuality, PreferenceBias
from secretbit.quantum import PhaseRule, build_unitary, evolve, gamma

N_GAMES = 10_000
MC_TOL = 0.05
EXACT = 1e-12
ORACLE = 1e-10


def record(n, title, ok, detail):
    ACCEPTANCE_LINES[f"{n:02d}"] = f"[{'PASS' if ok else 'FAIL'}] {n}. {title}: {detail}"
    assert ok, detail


def eq13(m0, m1):
    return m0 + 2 * m0 * m1


def eq15(m0, m1):
    return 2 * math.sqrt((0.25 - m0 ** 2) * (0.25 - m1 ** 2))


@pytest.fixture(scope="module")
def well_grid():
    t0 = time.perf_counter()
    res = run_grid(ExperimentConfig(n_games=N_GAMES, qualities=("well",)))
    return res, time.perf_counter() - t0


@pytest.fixture(scope="module")
def ill_grid():
    return run_grid(ExperimentConfig(n_games=N_GAMES, qualities=("ill",)))


def test_1_closed_form_reproduction():
    t0 = time.perf_counter()
    worst = 0.0
    for m0, m1 in square_grid():
        c = total_payoff_classical(m0, m1).xi_total
        q = total_payoff_quantum(m0, m1).xi_total
        worst = max(worst, abs(c - eq13(m0, m1)), abs(q - (eq13(m0, m1) + eq15(m0, m1))))
    elapsed = time.perf_counter() - t0
    spots = [
        abs(total_payoff_classical(0.05, 0.05).xi_total - 0.055),
        abs(total_payoff_quantum(0.05, 0.05).xi_total - 0.55),
        abs(total_payoff_classical(0.5, 0.5).xi_total - 1.0),
        abs(total_payoff_quantum(0.5, 0.5).xi_total - 1.0),
    ]
    ok = worst <= EXACT and max(spots) <= EXACT and elapsed < 1.0
    record(1, "closed forms on 9x9 grid", ok,
           f"max residual {worst:.2e}, spot residual {max(spots):.2e}, {elapsed * 1e3:.1f} ms")


def test_2_monte_carlo_grid(well_grid):
    results, elapsed = well_grid
    assert len(results) == 81 * 2
    worst = max(r.deviation for r in results)
    ok = worst <= MC_TOL and elapsed < 60 and all(r.n_games == N_GAMES for r in results)
    record(2, "Monte Carlo grid, N=1e4 per cell", ok,
           f"max |mean - analytic| {worst:.4f} (tol {MC_TOL}), {elapsed:.2f} s")


def test_3_quantum_gain(well_grid):
    results, _ = well_grid
    by_cell = {(r.mag0, r.mag1, r.reasoner): r for r in results}
    worst_z, worst_analytic = 0.0, 0.0
    for m0, m1 in square_grid():
        q, c = by_cell[(m0, m1, Reasoner.QUANTUM)], by_cell[(m0, m1, Reasoner.CLASSICAL)]
        g = eq15(m0, m1)
        se = math.hypot(q.xi_stderr, c.xi_stderr)
        worst_z = max(worst_z, abs((q.xi_mean - c.xi_mean) - g) / se)
        worst_analytic = max(worst_analytic, abs(
            total_payoff_quantum(m0, m1).xi_total - total_payoff_classical(m0, m1).xi_total - g),
            abs(gamma(PreferenceBias(m0, m1)) - g))
    ok = worst_z <= 5.0 and worst_analytic <= EXACT
    record(3, "quantum gain equals Gamma", ok,
           f"simulated max {worst_z:.2f} combined stderr (tol 5), analytic residual {worst_analytic:.2e}")


def test_4_appendix_envelopes(ill_grid):
    worst = max(r.deviation for r in ill_grid)
    env_residual = 0.0
    for m0, m1 in square_grid():
        env_residual = max(env_residual,
                           abs(total_payoff_classical(m0, m1, "ill").xi_total + eq13(m0, m1)),
                           abs(total_payoff_quantum(m0, m1, "ill").xi_total + eq13(m0, m1) + eq15(m0, m1)))
    cell = {(r.mag0, r.mag1, r.reasoner): r for r in ill_grid}
    q, c = cell[(0.05, 0.05, Reasoner.QUANTUM)], cell[(0.05, 0.05, Reasoner.CLASSICAL)]
    ok = (worst <= MC_TOL and env_residual <= EXACT and abs(q.xi_mean + 0.55) <= MC_TOL
          and q.xi_mean < c.xi_mean and q.xi_analytic < c.xi_analytic)
    record(4, "ill-quantified envelopes", ok,
           f"max |mean - analytic| {worst:.4f}; quantum ill at (0.05,0.05) = {q.xi_mean:.4f} "
           f"vs classical {c.xi_mean:.4f}; envelope residual {env_residual:.2e}")


def test_5_oracle_equivalence():
    rep = oracle_check(n_draws=10_000, seed=DEFAULT_SEED)
    # composing the two gates gives 1/2 + 2 a0 a1; the single-product form does not match
    b = PreferenceBias(0.3, 0.3)
    composed = classical_distribution(b, 1)
    factor_two = abs(composed - (0.5 + 2 * 0.09)) <= EXACT and abs(composed - (0.5 + 0.09)) > 0.05
    ok = rep.passed and factor_two
    worst = max(rep.residuals.values())
    record(5, "oracle equivalence (1e4 draws)", ok,
           f"max residual {worst:.2e} (tol {ORACLE}); composition 1/2+2a0a1 = {composed:.4f}"
           + ("" if rep.passed else f"; failures {rep.failures}"))


def test_6_structural_invariants(well_grid, ill_grid):
    axis = sorted({-m for m in magnitude_axis(0.025, True)} | set(magnitude_axis(0.025, True)))
    unitarity = norm = 0.0
    for a0 in axis:
        for a1 in axis:
            b = PreferenceBias(a0, a1)
            for d in (0.0, 0.5, 1.0):
                for j in (0, 1):
                    unitarity = max(unitarity, build_unitary(b, j, PhaseRule(d)).unitarity_residual())
                for x in (0, 1):
                    norm = max(norm, evolve(b, x, PhaseRule(d)).norm_residual())
    ledger_ok = all(r.bob_total + r.alice_total == 0 for r in well_grid[0] + ill_grid)
    rounds_ok = True
    for r, q in ((Reasoner.CLASSICAL, "well"), (Reasoner.QUANTUM, "ill")):
        rng = cell_rng(DEFAULT_SEED, 0.2, 0.3, r, HintQuality(q))
        rounds_ok &= all(rec.xi_alice + rec.xi_bob == 0 and rec.xi_bob in (-1, 0, 1)
                         for rec in simulate_rounds(0.2, 0.3, r, q, 2000, rng))
    zero = PreferenceBias(0.0, 0.0)
    zero_ok = all(per_tau_score_classical_forms(s, zero).xi_bar == 0.0
                  and per_tau_score_quantum_forms(s, zero).xi_bar == 0.0 for s in STRATEGIES)
    ok = unitarity <= EXACT and norm <= EXACT and ledger_ok and rounds_ok and zero_ok
    record(6, "structural invariants", ok,
           f"unitarity {unitarity:.1e}, norm drift {norm:.1e}, zero-sum exact {ledger_ok and rounds_ok}, "
           f"zero-bias scores exactly 0 {zero_ok}")


def test_7_determinism(tmp_path):
    outs = []
    for name, extra in (("a.csv", []), ("b.csv", []), ("c.csv", ["--workers", "2"])):
        path = tmp_path / name
        assert main(["simulate", "--n-games", "2000", "--seed", "77", "--quality", "well,ill,unbiased",
                     "--out", str(path)] + extra) == 0
        outs.append(path.read_bytes())
    other = tmp_path / "d.csv"
    main(["simulate", "--n-games", "2000", "--seed", "78", "--quality", "well,ill,unbiased", "--out", str(other)])
    ok = outs[0] == outs[1] == outs[2] and other.read_bytes() != outs[0]
    record(7, "determinism", ok, f"identical bytes across 3 runs ({len(outs[0])} bytes), different seed differs")
