"""Command-line entry point."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from pydantic import ValidationError

from qu5it import __version__
from qu5it.config import settings
from qu5it.errors import DomainError, ResourceLimitError
from qu5it.models import ExperimentConfig
from qu5it.runner.commands import (
    CommandResult,
    cmd_bench,
    cmd_evolve,
    cmd_resources,
    cmd_signprob,
    cmd_spectrum,
    cmd_verify,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", type=Path, default=None, help="JSON experiment config; flags override its fields.")
    parser.add_argument("--out", default=None, help="Output directory.")
    parser.add_argument("--stem", default=None, help="Output file stem.")
    parser.add_argument("--format", dest="formats", nargs="+", choices=["csv", "json"], default=None)
    parser.add_argument("--jobs", type=int, default=None, help="Concurrent independent jobs.")


def _add_model(parser: argparse.ArgumentParser):
    parser.add_argument("--omega", type=int, default=None, help="Number of modes (even).")
    parser.add_argument("--preset", default=None, help="Coupling set, set-0 .. set-4.")
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--v", type=float, default=None, help="Monopole coupling V.")
    parser.add_argument("--g", type=float, default=None, help="Pairing coupling g.")


def _add_state(parser: argparse.ArgumentParser):
    parser.add_argument("--state", choices=["A", "B"], default=None, help="Tensor-product initial state.")
    parser.add_argument("--digits", type=int, nargs="+", default=None, help="Explicit basis digits.")
    parser.add_argument("--prep-angles", type=float, nargs=4, default=None,
                        help="Single-qu5it preparation angles applied on every qu5it.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qu5it", description="SO(5) Agassi-model qu5it simulator.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help=f"Logging level (default {settings.log_level}).")
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum = sub.add_parser("spectrum", help="Low-lying energy densities per particle-number sector.")
    _add_common(spectrum)
    spectrum.add_argument("--omega", dest="omegas", type=int, nargs="+", default=None)
    spectrum.add_argument("--preset", dest="presets", nargs="+", default=None)
    spectrum.add_argument("--N", dest="particle_numbers", type=int, nargs="+", default=None)
    spectrum.add_argument("-k", type=int, default=None, help="Levels per sector.")

    evolve = sub.add_parser("evolve", help="Exact, Trotter and shot-sampled observable time series.")
    _add_common(evolve)
    _add_model(evolve)
    _add_state(evolve)
    evolve.add_argument("--t-max", type=float, default=None)
    evolve.add_argument("--points", type=int, default=None)
    evolve.add_argument("--n-trot", type=int, nargs="+", default=None)
    evolve.add_argument("--backend", choices=["native", "controlled"], default=None)
    evolve.add_argument("--shots", type=int, default=None)
    evolve.add_argument("--seed", type=int, default=None)
    evolve.add_argument("--emit-circuit", default=None, help="Write the largest-n_trot circuit IR to this path.")

    resources = sub.add_parser("resources", help="Per-step gate counts of qu5it and qubit-mapping circuits.")
    _add_common(resources)
    resources.add_argument("--omega", dest="omegas", type=int, nargs="+", default=None)
    resources.add_argument("--omega-max", type=int, default=None, help="Shorthand for --omega 2 4 ... OMEGA_MAX.")

    signprob = sub.add_parser("signprob", help="Probability and spin densities of an evolved state.")
    _add_common(signprob)
    _add_model(signprob)
    _add_state(signprob)
    signprob.add_argument("--t", dest="t_max", type=float, default=None)

    verify = sub.add_parser("verify", help="Run the invariant suite.")
    _add_common(verify)
    verify.add_argument("--tolerance", type=float, default=1e-13, help="Tolerance of the algebra checks.")
    verify.add_argument("--mutate-g-sign", action="store_true", help="Flip sigma(14) on the qu5it side.")

    bench = sub.add_parser("bench", help="Timing grid of Trotter circuit compilation and execution.")
    _add_common(bench)
    bench.add_argument("--omega", dest="omegas", type=int, nargs="+", default=None)
    bench.add_argument("--n-trot", type=int, nargs="+", default=None)
    bench.add_argument("--backend", choices=["native", "controlled"], default=None)
    bench.add_argument("--repeats", type=int, default=None)
    return parser


def _set(target: Dict[str, Any], path: str, value: Any):
    if value is None:
        return
    *parents, leaf = path.split(".")
    for key in parents:
        target = target.setdefault(key, {})
    target[leaf] = value


def overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Nested config fields set explicitly on the command line."""
    given = {k: v for k, v in vars(args).items() if v is not None}
    out: Dict[str, Any] = {}
    _set(out, "output.directory", given.get("out"))
    _set(out, "output.stem", given.get("stem"))
    _set(out, "output.formats", given.get("formats"))
    _set(out, "output.emit_circuit", given.get("emit_circuit"))
    _set(out, "jobs", given.get("jobs"))

    if args.command in ("evolve", "signprob"):
        _set(out, "model.omega", given.get("omega"))
        if "preset" in given:
            out.setdefault("model", {}).update(preset=given["preset"], couplings=None)
        if any(k in given for k in ("epsilon", "v", "g")):
            couplings = {"epsilon": given.get("epsilon", 1.0), "v": given.get("v", 0.0), "g": given.get("g", 0.0)}
            _set(out, "model.couplings", couplings)
        if "digits" in given:
            _set(out, "initial_state", {"label": None, "digits": given["digits"]})
        elif "prep_angles" in given:
            _set(out, "initial_state", {"label": None, "prep_angles": given["prep_angles"]})
        elif "state" in given:
            _set(out, "initial_state", {"label": given["state"]})
        for name in ("t_max", "points", "n_trot", "backend", "shots", "seed"):
            _set(out, f"evolution.{name}", given.get(name))
    elif args.command == "spectrum":
        for name in ("omegas", "presets", "particle_numbers", "k"):
            _set(out, f"spectrum.{name}", given.get(name))
    elif args.command == "resources":
        if "omega_max" in given:
            _set(out, "resources.omegas", list(range(2, given["omega_max"] + 1, 2)))
        _set(out, "resources.omegas", given.get("omegas"))
    elif args.command == "bench":
        for name in ("omegas", "n_trot", "repeats"):
            _set(out, f"bench.{name}", given.get(name))
        _set(out, "evolution.backend", given.get("backend"))
    return out


def _merge(base: Dict[str, Any], extra: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict) and key != "initial_state":
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[Path], extra: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Config file fields, then command-line overrides, then model defaults."""
    document: Dict[str, Any] = {}
    if path is not None:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
        logger.debug(f"loaded config {path}")
    return ExperimentConfig.model_validate(_merge(document, extra or {}))


def _dispatch(args: argparse.Namespace, config: ExperimentConfig) -> CommandResult:
    handlers: Dict[str, Callable[[ExperimentConfig], CommandResult]] = {
        "spectrum": cmd_spectrum,
        "evolve": cmd_evolve,
        "resources": cmd_resources,
        "signprob": cmd_signprob,
        "bench": cmd_bench,
    }
    if args.command == "verify":
        return cmd_verify(config, args.tolerance, args.mutate_g_sign)
    return handlers[args.command](config)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=(args.log_level or settings.log_level).upper()
    )
    try:
        config = load_config(args.config, overrides(args))
        result = _dispatch(args, config)
    except ValidationError as e:
        print(f"❌ Invalid configuration:\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"❌ {e}\n   Reduce omega or raise the matching QU5IT_MAX_* setting.", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, FileNotFoundError, json.JSONDecodeError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    if result.report:
        print(result.report, end="")
    for path in result.paths:
        print(f"   {path}")
    return result.exit_code
