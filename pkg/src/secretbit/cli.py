"""Command-line front end.

    secretbit analytic     [flags]      closed-form payoff table
    secretbit simulate     [flags]      Monte Carlo over the grid
    secretbit figure ID    [flags]      named datasets (grid, diagonal, surfaces, ...)
    secretbit oracle-check [flags]      closed forms vs brute force / statevector

Exit status: 0 ok, 1 tolerance failure, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .harness import (FIGURES, ConfigError, analytic_table, build_config, oracle_check,
                      read_config_file, results_table, run_figure, run_grid, write_table)

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG = 0, 1, 2


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value file; flags override its values")
    p.add_argument("--n-games", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--grid-step", type=float)
    p.add_argument("--reasoner", help="comma list of classical,quantum")
    p.add_argument("--quality", help="comma list of well,ill,unbiased")
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--workers", type=int, help="parallel worker processes")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="secretbit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("analytic", help="closed-form tables"))
    _add_common(sub.add_parser("simulate", help="Monte Carlo per config"))
    fig = sub.add_parser("figure", help="emit a named figure dataset")
    fig.add_argument("figure_id", metavar="ID", help=", ".join(sorted(FIGURES)))
    _add_common(fig)
    oc = sub.add_parser("oracle-check", help="verification sweep")
    _add_common(oc)
    oc.add_argument("--draws", type=int, default=10_000, help="random parameter draws")
    return parser


def _config(args):
    file_values = read_config_file(args.config) if args.config else {}
    return build_config(file_values, n_games=args.n_games, seed=args.seed, grid_step=args.grid_step,
                        reasoners=args.reasoner, qualities=args.quality, out=args.out,
                        workers=args.workers)


def _emit(header, rows, out) -> None:
    text = write_table(header, rows, out)
    if out is None:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = _config(args)
        if args.command == "analytic":
            _emit(*analytic_table(cfg), cfg.out)
        elif args.command == "simulate":
            results = run_grid(cfg)
            _emit(*results_table(results), cfg.out)
            if not all(r.consistent for r in results):
                return EXIT_TOLERANCE
        elif args.command == "figure":
            _emit(*run_figure(args.figure_id, cfg), cfg.out)
        else:
            report = oracle_check(n_draws=args.draws, seed=cfg.seed, step=cfg.grid_step)
            text = "\n".join(report.lines()) + "\n"
            if cfg.out:
                with open(cfg.out, "w") as fh:
                    fh.write(text)
            sys.stdout.write(text)
            if not report.passed:
                return EXIT_TOLERANCE
    except ConfigError as exc:
        print(f"secretbit: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
