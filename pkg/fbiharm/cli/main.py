"""Command line entry point: run, scenarios, geom."""

import argparse
import logging
import sys
from typing import Sequence

import numpy as np
from dotenv import load_dotenv

from ..errors import FbiharmError
from ..geometry import curvature_pack
from ..hypersurface import frame_at
from ..maps import map_jets
from ..scenarios import build_scenario, list_scenarios
from .config import load_config
from .report import dump_document, emit_report
from .runner import run_check

logger = logging.getLogger(__name__)


def _parse_point(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"point must be comma-separated reals, got {text!r}") from exc


def _parse_param(text: str) -> tuple[str, float | int]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"parameter must look like key=value, got {text!r}")
    number = float(raw)
    return key, int(number) if number.is_integer() and "." not in raw else number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fbiharm", description="f-biharmonic verification engine")
    sub = parser.add_subparsers(dest="command", required=True)

    run_cmd = sub.add_parser("run", help="Run the checks of a config document")
    run_cmd.add_argument("--config", type=str, required=True, help="Run config (YAML)")
    run_cmd.add_argument("--out", type=str, default=None, help="Report path (overrides config 'output')")
    run_cmd.add_argument("--jet-order", type=int, default=None, help="Jet truncation order")
    run_cmd.add_argument("--seed", type=int, default=None, help="Sampling seed")
    run_cmd.add_argument("--workers", type=int, default=None, help="Threads for sample points")
    run_cmd.add_argument("--cross-validate", action="store_true", help="Append the finite-difference cross check")
    run_cmd.add_argument("--verbose", action="store_true")

    sub.add_parser("scenarios", help="List the scenario catalogue")

    geom_cmd = sub.add_parser("geom", help="Dump curvature and frame data at one point")
    geom_cmd.add_argument("--scenario", type=str, required=True)
    geom_cmd.add_argument("--point", type=_parse_point, required=True, help='e.g. "1.0,0.2,0.3"')
    geom_cmd.add_argument("--param", type=_parse_param, action="append", default=[], help="key=value")
    geom_cmd.add_argument("--verbose", action="store_true")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    # CLI flags > config document > engine defaults
    updates = {}
    if args.jet_order is not None:
        updates["jet_order"] = args.jet_order
    if args.seed is not None:
        updates["sampling"] = {**config.sampling.model_dump(), "seed": args.seed}
    if args.workers is not None:
        updates["workers"] = args.workers
    if args.verbose:
        updates["verbose"] = True
    config = config.with_overrides(**updates)
    if args.cross_validate:
        config = config.with_checks("cross_validate")
    if config.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    print(f"🚀 {config.scenario}: {len(config.checks)} check(s), {config.sampling.count} point(s)")
    report = run_check(config)
    for name, summary in report.checks.items():
        if summary.error:
            print(f"⚠️ {name}: {summary.error}")
        elif summary.passed:
            print(f"✅ {name}: max residual {summary.max_residual:.3e} ({summary.expectation})")
        else:
            print(f"❌ {name}: max residual {summary.max_residual:.3e} ({summary.expectation})")

    out = args.out or config.output
    if out:
        emit_report(report, out)
        print(f"📄 report written to {out}")
    return 0 if report.passed else 1


def _cmd_scenarios(args: argparse.Namespace) -> int:
    print(dump_document({"scenarios": list_scenarios()}), end="")
    return 0


def _cmd_geom(args: argparse.Namespace) -> int:
    scenario = build_scenario(args.scenario, dict(args.param))
    point = np.asarray(args.point, dtype=float)
    smooth_map = scenario.map
    bundle = map_jets(smooth_map, point)
    document = {
        "scenario": scenario.to_dict(),
        "point": point.tolist(),
        "image": bundle.image.tolist(),
        "source": curvature_pack(smooth_map.source, point).to_dict(),
        "target": bundle.target_curvature.to_dict(),
        "tension": bundle.tension.value.tolist(),
    }
    if smooth_map.is_hypersurface:
        document["frame"] = frame_at(smooth_map, point, bundle=bundle).to_dict()
    print(dump_document(document), end="")
    return 0


_COMMANDS = {"run": _cmd_run, "scenarios": _cmd_scenarios, "geom": _cmd_geom}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit status."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args)
    except (FbiharmError, OSError) as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
