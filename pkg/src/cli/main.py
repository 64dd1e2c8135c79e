"""
specdesign command-line front end.

Usage:
    specdesign build --scenario s51-case1 --k1 1 --k2 2 --x0 0.7 --out build/s51
    specdesign verify build/s51
    specdesign --grid=-5:5:201 export build/s51 Vminus
    specdesign reproduce s52
    specdesign invert --config set.json
"""
from pathlib import Path
from typing import List, Optional
import argparse
import json
import logging
import sys

import numpy as np
from pydantic import ValidationError

from ..core.config import Settings, parse_grid
from ..core.errors import ConstraintViolated, SpecDesignError, VanishingWronskian
from ..core.logging import configure_logging
from ..model import NonvanishingVerdict, check_nonvanishing, potential_from_set, wronskian
from ..scenarios import GridSpec, ScenarioConfig, ScenarioService
from .artifacts import dumps, load_build, load_config, load_report, rat_to_json, write_build
from .export import export_table, resolve_quantity, summary_table, symbol_for, to_csv

logger = logging.getLogger("specdesign.cli")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specdesign",
        description="Build and verify matrix intertwining operators between Schrodinger Hamiltonians")
    parser.add_argument("--tol", type=float, help="Relative threshold for the W nonvanishing check")
    parser.add_argument("--seed", type=int, help="Seed for randomized batteries")
    parser.add_argument("--grid", help="Sampling grid xmin:xmax:n")
    parser.add_argument("--env-file", help="dotenv file with SPECDESIGN_* settings")
    parser.add_argument("--verbose", "-v", action="store_true", help="Log at INFO level")
    parser.add_argument("--json-logs", action="store_true", help="Render logs as JSON lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_input(p: argparse.ArgumentParser):
        source = p.add_mutually_exclusive_group(required=True)
        source.add_argument("--config", type=Path, help="Scenario config JSON")
        source.add_argument("--scenario", help="Named preset, e.g. s51-case1")
        for name in ("k1", "k2", "k", "x0", "alpha"):
            p.add_argument(f"--{name}", type=_complex, help=f"Preset override for {name}")

    build = sub.add_parser("build", help="Build the operator and write artifacts")
    scenario_input(build)
    build.add_argument("--out", type=Path, required=True, help="Output directory")

    verify = sub.add_parser("verify", help="Re-run verification from build artifacts")
    verify.add_argument("build_dir", type=Path)

    export = sub.add_parser("export", help="Sample a built quantity to CSV")
    export.add_argument("build_dir", type=Path)
    export.add_argument("quantity", help="Vminus, Vplus, U0, X0, W or state:<name>")
    export.add_argument("--out", type=Path, help="CSV file; stdout when omitted")

    reproduce = sub.add_parser("reproduce", help="Run every acceptance check of a bundled scenario")
    reproduce.add_argument("scenario_id", help="s51, s52 or s53")

    invert = sub.add_parser("invert", help="Recover V+ from a transformation set")
    scenario_input(invert)
    return parser


def _settings(args: argparse.Namespace) -> Settings:
    grid = parse_grid(args.grid) if args.grid else None
    level = "INFO" if args.verbose else None
    return Settings.from_env(args.env_file, seed=args.seed, tol=args.tol, grid=grid, log_level=level)


def _grid_override(args: argparse.Namespace) -> Optional[GridSpec]:
    if not args.grid:
        return None
    xmin, xmax, samples = parse_grid(args.grid)
    return GridSpec(xmin=xmin, xmax=xmax, samples=samples)


def _scenario_config(service: ScenarioService, args: argparse.Namespace) -> ScenarioConfig:
    grid = _grid_override(args)
    if args.config is not None:
        config = load_config(args.config)
        return config if grid is None else config.model_copy(update={"grid": grid})
    overrides = {name: getattr(args, name) for name in ("k1", "k2", "k", "x0", "alpha")}
    return service.preset(args.scenario, grid, **overrides)


def cmd_build(service: ScenarioService, args: argparse.Namespace) -> int:
    config = _scenario_config(service, args)
    run = service.build(config)
    report = service.verify(run)
    write_build(args.out, run, report)
    for check in report.failures():
        logger.warning(f"Check failed: {check.name} residual={check.residual:.3g} at {check.location}")
    print(f"{config.id}: {'PASS' if report.overall else 'FAIL'} ({len(report.checks)} checks) -> {args.out}")
    return 0 if report.overall else 4


def cmd_verify(service: ScenarioService, args: argparse.Namespace) -> int:
    run = load_build(args.build_dir, service.settings.tol)
    report = service.verify(run)
    changed = report.changed_checks(load_report(args.build_dir))
    if changed:
        logger.warning(f"Checks changed since build: {', '.join(changed)}")
    sys.stdout.write(report.to_json())
    return 0 if report.overall else 4


def cmd_export(service: ScenarioService, args: argparse.Namespace) -> int:
    run = load_build(args.build_dir, service.settings.tol)
    scenario = service.get_provider(run.config.id)
    value = resolve_quantity(run, scenario, args.quantity)
    grid = _grid_override(args) or run.config.grid
    text = to_csv(export_table(value, grid.points(), symbol_for(args.quantity)))
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
        logger.info(f"Wrote {args.quantity} on {grid.samples} samples to {args.out}")
    return 0


def cmd_reproduce(service: ScenarioService, args: argparse.Namespace) -> int:
    report = service.reproduce(args.scenario_id, np.random.default_rng(service.settings.seed))
    table = summary_table(report)
    print(table.to_string(index=False))
    failed = len(report.failures())
    print(f"\n{args.scenario_id}: {len(report.checks) - failed}/{len(report.checks)} checks passed")
    return 0 if report.overall else 4


def cmd_invert(service: ScenarioService, args: argparse.Namespace) -> int:
    config = _scenario_config(service, args)
    tset = service.get_provider(config.id).transformation_set(config)
    w = wronskian(tset)
    admissibility = check_nonvanishing(w, (config.grid.xmin, config.grid.xmax), config.grid.samples,
                                       service.settings.tol)
    if admissibility.verdict is NonvanishingVerdict.FAIL:
        raise VanishingWronskian(f"W vanishes near x={admissibility.argmin:.6g}; V+ has a pole there")
    hamiltonian = potential_from_set(tset)
    sys.stdout.write(dumps({"Vplus": rat_to_json(hamiltonian.potential),
                            "admissibility": admissibility.to_dict()}))
    return 0


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "export": cmd_export,
    "reproduce": cmd_reproduce,
    "invert": cmd_invert,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings(args)
        configure_logging(settings.log_level, args.json_logs)
        service = ScenarioService(settings)
        return COMMANDS[args.command](service, args)
    except ValidationError as e:
        error: SpecDesignError = ConstraintViolated(str(e))
    except json.JSONDecodeError as e:
        error = ConstraintViolated(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
    except SpecDesignError as e:
        error = e
    logger.error(f"{args.command} failed: {type(error).__name__}: {error}")
    print(f"specdesign {args.command}: {type(error).__name__}: {error}", file=sys.stderr)
    return error.exit_code


if __name__ == "__main__":
    sys.exit(main())
