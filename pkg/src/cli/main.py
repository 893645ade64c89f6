"""
sim: command-line front end of the UAV coalition simulator.

Exit codes: 0 success, 1 validation or input failure, 2 usage error.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
import pydantic

from engine.baselines import compare_baselines
from engine.export import ArtifactWriter, manifest_header, write_trace
from engine.simulator import simulate
from learning.comparison import run_comparison
from learning.config import ALGORITHM_NAMES, Algorithm, LearnerConfig
from scenario.errors import ScenarioError
from scenario.loader import read_scenario_dict, scenario_from_dict
from scenario.models import Scenario
from utils.config import DEFAULT_SCENARIO, LOG_LEVEL
from utils.errors import SimulationError
from utils.logging_config import setup_logging

from .overrides import OverrideError, apply_scenario_overrides, split_overrides
from .plots import PLOT_KINDS, emit_plot, plot_convergence, save_svg

logger = logging.getLogger(__name__)

DEFAULT_SEEDS = 20


class UsageError(Exception):
    """Bad command-line input detected after argparse accepted it."""


def algo_list(text: str) -> List[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in ALGORITHM_NAMES]
    if not names or unknown:
        raise argparse.ArgumentTypeError(
            f"invalid algorithm list {text!r} (choose from {', '.join(ALGORITHM_NAMES)})")
    return names


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return value


def _learner_epilog() -> str:
    defaults = ", ".join(f"{name}={field.default.value if isinstance(field.default, Algorithm) else field.default}"
                         for name, field in LearnerConfig.model_fields.items())
    return f"learner keys (--set learner.KEY=VALUE), defaults: {defaults}"


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override a scenario key (dotted path) or learner.KEY; repeatable")
    common.add_argument("--force", action="store_true", help="overwrite an existing manifest in the output directory")
    common.add_argument("--log-level", default=LOG_LEVEL, help="logging level for diagnostics on stderr")

    parser = argparse.ArgumentParser(prog="sim", description="Deterministic UAV coalition simulator.",
                                     formatter_class=fmt, epilog=_learner_epilog())
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                           formatter_class=fmt, epilog=_learner_epilog())
        return p

    p = command("validate", "check a scenario file and print a summary")
    p.add_argument("scenario", nargs="?", default=DEFAULT_SCENARIO, help="scenario file or bundled name")

    p = command("run", "run one simulation and export its trace")
    p.add_argument("scenario", nargs="?", default=DEFAULT_SCENARIO, help="scenario file or bundled name")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, default=Algorithm.BEST_RESPONSE.value,
                   help="learning dynamics")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: the scenario's seed)")
    p.add_argument("--out", required=True, help="output directory")

    p = command("sweep", "run one algorithm over a bank of seeds")
    p.add_argument("scenario", nargs="?", default=DEFAULT_SCENARIO, help="scenario file or bundled name")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, default=Algorithm.BEST_RESPONSE.value,
                   help="learning dynamics")
    p.add_argument("--seeds", type=positive_int, default=DEFAULT_SEEDS, help="number of seeds")
    p.add_argument("--workers", type=positive_int, default=1, help="parallel processes")
    p.add_argument("--out", required=True, help="output directory")

    p = command("compare", "compare algorithms over a bank of seeds")
    p.add_argument("scenario", nargs="?", default=DEFAULT_SCENARIO, help="scenario file or bundled name")
    p.add_argument("--algos", type=algo_list, default="best-response,q-learning",
                   help=f"comma-separated subset of {','.join(ALGORITHM_NAMES)}")
    p.add_argument("--seeds", type=positive_int, default=DEFAULT_SEEDS, help="number of seeds")
    p.add_argument("--workers", type=positive_int, default=1, help="parallel processes")
    p.add_argument("--out", required=True, help="output directory")

    p = command("baseline", "score the coalition game against coverage-only and overhead-only baselines")
    p.add_argument("scenario", nargs="?", default=DEFAULT_SCENARIO, help="scenario file or bundled name")
    p.add_argument("--algo", choices=ALGORITHM_NAMES, default=Algorithm.BEST_RESPONSE.value,
                   help="learning dynamics")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default: the scenario's seed)")
    p.add_argument("--out", required=True, help="output directory")

    p = command("plot", "render an SVG from a trace or comparison artifact")
    p.add_argument("input", help="artifact file or output directory")
    p.add_argument("--kind", choices=PLOT_KINDS, default="objective", help="figure to draw")
    p.add_argument("--out", required=True, help="SVG file to write")

    return parser


def load_inputs(path: str, overrides: Sequence[str], algo: Optional[str] = None) -> Tuple[Scenario, LearnerConfig]:
    """
    Read a scenario, apply --set overrides, validate both scenario and learner settings.

    Raises:
        UsageError: Malformed --set or invalid learner value
        ScenarioError: Unreadable or invalid scenario
    """
    try:
        learner, scenario_overrides = split_overrides(overrides)
    except OverrideError as e:
        raise UsageError(str(e)) from e
    doc = read_scenario_dict(path)
    try:
        apply_scenario_overrides(doc, scenario_overrides)
    except OverrideError as e:
        raise UsageError(str(e)) from e
    scenario = scenario_from_dict(doc)
    if algo is not None:
        learner["algo"] = algo
    try:
        config = LearnerConfig.model_validate(learner)
    except pydantic.ValidationError as e:
        first = e.errors()[0]
        raise UsageError(f"learner.{'.'.join(str(p) for p in first['loc'])}: {first['msg']}") from e
    return scenario, config


def cmd_validate(args: argparse.Namespace) -> int:
    scenario, _ = load_inputs(args.scenario, args.overrides)
    rows, cols = scenario.grid_shape
    print(f"{args.scenario}: valid, {len(scenario.uavs)} UAVs, grid {rows}x{cols}, "
          f"{len(scenario.directives)} directives, max_steps {scenario.max_steps}")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    scenario, config = load_inputs(args.scenario, args.overrides, args.algo)
    seed = scenario.seed if args.seed is None else args.seed
    trace, _ = simulate(scenario, config, seed)
    write_trace(trace, scenario, config, seed, args.out, force=args.force)
    return 0


def _comparison(args: argparse.Namespace, algos: List[str]) -> int:
    scenario, config = load_inputs(args.scenario, args.overrides)
    with ArtifactWriter(args.out, force=args.force) as writer:
        result = run_comparison(scenario, algos, args.seeds, config, workers=args.workers)
        writer.csv("comparison.csv", result.rows)
        writer.csv("comparison_summary.csv", result.summary)
        writer.csv("histories.csv", result.histories)
        writer.file("convergence.svg", lambda path: save_svg(plot_convergence(result.histories), path))
        writer.commit(manifest_header(scenario, f"{scenario.seed}+{args.seeds}", config, algos=",".join(algos)))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    return _comparison(args, [args.algo])


def cmd_compare(args: argparse.Namespace) -> int:
    return _comparison(args, args.algos)


def cmd_baseline(args: argparse.Namespace) -> int:
    scenario, config = load_inputs(args.scenario, args.overrides, args.algo)
    seed = scenario.seed if args.seed is None else args.seed
    with ArtifactWriter(args.out, force=args.force) as writer:
        results = compare_baselines(scenario, config, seed)
        rows = [
            {"mode": r.name, "objective": r.evaluated.objective, "coverage": r.evaluated.coverage,
             "overhead": r.evaluated.overhead, "optimized_objective": r.optimized.objective}
            for r in results
        ]
        writer.csv("baselines.csv", pd.DataFrame(rows))
        writer.commit(manifest_header(scenario, seed, config))
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    emit_plot(args.input, args.kind, args.out)
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "run": cmd_run,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "baseline": cmd_baseline,
    "plot": cmd_plot,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        logger.error(str(e))
        parser.print_usage(sys.stderr)
        return 2
    except ScenarioError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 1
    except SimulationError as e:
        logger.error(str(e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
