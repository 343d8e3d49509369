"""Command line interface.

    kirwan strata        [--scenario NAME | --config FILE] [--format F]
    kirwan semistable    [...] [--mod-t K]
    kirwan blowup        [...]
    kirwan intersection  [...]
    kirwan report        [...] [--check duality,odd,consistency]

Exit codes: 0 success, 1 a requested check failed, 2 usage error,
3 configuration error, 4 a series was not a polynomial, 5 unsupported
fibration geometry, 6 a center quotient needs a configured override.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .blowdown import NeedsOverride
from .blowup import FiberNotClosed
from .lattice import NotClosed
from .report import CHECKS, RENDERERS, run_pipeline
from .scenario import NotInvariant, ParseError, Scenario, enriques_scenario, load_scenario
from .series import NotPolynomial

BUILTIN_SCENARIOS = {
    "enriques44": enriques_scenario,
}

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_NOT_POLYNOMIAL = 4
EXIT_FIBER = 5
EXIT_OVERRIDE = 6


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kirwan",
        description="Exact Poincare series of GIT quotients for torus actions "
                    "extended by finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("strata", "list unstable strata (orbit classes of beta)"),
        ("semistable", "equivariant Poincare series of the semistable locus"),
        ("blowup", "Betti numbers of the Kirwan partial desingularization"),
        ("intersection", "intersection Betti numbers of the GIT quotient"),
        ("report", "full pipeline report"),
    ):
        p = sub.add_parser(name, help=help_text)
        group = p.add_mutually_exclusive_group()
        group.add_argument("--scenario", choices=sorted(BUILTIN_SCENARIOS),
                           help="builtin scenario name")
        group.add_argument("--config", type=Path, help="scenario JSON file")
        p.add_argument("--format", choices=sorted(RENDERERS), default="table")
        p.add_argument("--mod-t", type=int, default=None, metavar="K",
                       help="also print series coefficients mod t^K")
        if name == "report":
            p.add_argument("--check", default="",
                           help="comma list from: " + ",".join(sorted(CHECKS)))
    return parser


def _load(args) -> Scenario:
    if args.config is not None:
        return load_scenario(args.config.read_text())
    name = args.scenario or "enriques44"
    return BUILTIN_SCENARIOS[name]()


def _poly_line(p, mod_t, series=None) -> str:
    out = str(p)
    if mod_t is not None and series is not None:
        out += f"\nmod t^{mod_t}: {series.truncate(mod_t - 1)}"
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        scenario = _load(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, NotInvariant, NotClosed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "strata":
            from .stratification import enumerate_beta
            for b in enumerate_beta(scenario):
                beta = "(" + ", ".join(str(c) for c in b.beta) + ")"
                print(f"beta={beta} n={b.n_beta} codim={b.codim} "
                      f"orbit={b.orbit_size} stab_order={b.stabilizer.finite_order}")
            return 0
        if args.command == "semistable":
            from .stratification import semistable_series
            series = semistable_series(scenario)
            mod_t = args.mod_t
            if mod_t is None:
                mod_t = 2 * (scenario.projective_dimension
                             - scenario.group.torus_rank) + 1
            print(series.reduce())
            print(f"mod t^{mod_t}: {series.truncate(mod_t - 1)}")
            return 0
        if args.command == "blowup":
            from .blowup import kirwan_blowup_series
            print(kirwan_blowup_series(scenario).exact_polynomial())
            return 0
        if args.command == "intersection":
            from .blowdown import intersection_series
            print(intersection_series(scenario))
            return 0
        # report
        result = run_pipeline(scenario)
        print(RENDERERS[args.format](result, args.mod_t), end="")
        failed = False
        requested = [c for c in args.check.split(",") if c]
        for name in requested:
            if name not in CHECKS:
                print(f"error: unknown check {name!r}", file=sys.stderr)
                return EXIT_USAGE
            ok, description = CHECKS[name](result)
            status = "ok" if ok else "FAILED"
            print(f"check {name}: {status} ({description})")
            failed = failed or not ok
        return EXIT_CHECK_FAILED if failed else 0
    except NeedsOverride as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERRIDE
    except FiberNotClosed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIBER
    except NotPolynomial as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_POLYNOMIAL


if __name__ == "__main__":
    sys.exit(main())
