"""
Seed-bank comparison of learning algorithms on one scenario.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from scenario.models import Scenario

from .config import Algorithm, LearnerConfig

logger = logging.getLogger(__name__)

COMPARISON_COLUMNS = [
    "algo", "seed", "converged_at", "final_objective", "final_coverage", "final_overhead", "iterations_run",
]
SUMMARY_COLUMNS = [
    "algo", "n_seeds", "converged_at_median", "converged_at_iqr", "n_censored",
    "final_objective_median", "final_objective_iqr",
]
HISTORY_COLUMNS = ["algo", "seed", "iteration", "objective"]


class ComparisonResult(NamedTuple):
    rows: pd.DataFrame
    summary: pd.DataFrame
    histories: pd.DataFrame


def _run_cell(scenario: Scenario, config: LearnerConfig, seed: int) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    # imported here: the engine depends on this package
    from engine.simulator import simulate

    trace, state = simulate(scenario, config, seed)
    final = state.game.objective()
    algo = config.algo.value
    row = {
        "algo": algo,
        "seed": seed,
        "converged_at": trace.converged_at,
        "final_objective": final.objective,
        "final_coverage": final.coverage,
        "final_overhead": final.overhead,
        "iterations_run": trace.steps,
    }
    history = [
        {"algo": algo, "seed": seed, "iteration": i, "objective": value}
        for i, value in enumerate(trace.history)
    ]
    return row, history


def _iqr(values: np.ndarray) -> float:
    q75, q25 = np.percentile(values, [75, 25])
    return float(q75 - q25)


def summarize(rows: pd.DataFrame) -> pd.DataFrame:
    """
    Median and IQR per algorithm.

    Runs that never converged count as converged at their last iteration.
    """
    out = []
    for algo in sorted(rows["algo"].unique()):
        group = rows[rows["algo"] == algo]
        censored = group["converged_at"].isna()
        converged = group["converged_at"].astype("Float64").fillna(group["iterations_run"]).to_numpy(dtype=float)
        objective = group["final_objective"].to_numpy(dtype=float)
        out.append({
            "algo": algo,
            "n_seeds": len(group),
            "converged_at_median": float(np.median(converged)),
            "converged_at_iqr": _iqr(converged),
            "n_censored": int(censored.sum()),
            "final_objective_median": float(np.median(objective)),
            "final_objective_iqr": _iqr(objective),
        })
    return pd.DataFrame(out, columns=SUMMARY_COLUMNS)


def run_comparison(scenario: Scenario, algos: Sequence[Union[Algorithm, str]], n_seeds: int,
                   config: Optional[LearnerConfig] = None, workers: int = 1) -> ComparisonResult:
    """
    Run every algorithm on seeds scenario.seed, scenario.seed + 1, ...

    Args:
        scenario: Shared immutable scenario
        algos: Algorithms to compare
        n_seeds: Seeds per algorithm (>= 1)
        config: Base learner settings; algo is overridden per cell
        workers: Processes for independent cells (1 runs in-process)

    Returns:
        ComparisonResult with per-run rows, the per-algorithm summary and the
        objective histories, all sorted by (algo, seed)
    """
    if n_seeds < 1:
        raise ValueError("n_seeds must be at least 1")
    base = config or LearnerConfig()
    cells = [
        (base.model_copy(update={"algo": Algorithm(a)}), (scenario.seed + k) % 2**64)
        for a in dict.fromkeys(algos) for k in range(n_seeds)
    ]
    logger.info(f"Comparing {len(cells) // n_seeds} algorithms over {n_seeds} seeds ({len(cells)} runs)")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, scenario, cfg, seed) for cfg, seed in cells]
            results = [f.result() for f in futures]
    else:
        results = [_run_cell(scenario, cfg, seed) for cfg, seed in cells]

    rows = pd.DataFrame([r for r, _ in results], columns=COMPARISON_COLUMNS)
    rows["converged_at"] = rows["converged_at"].astype("Int64")
    rows = rows.sort_values(["algo", "seed"], kind="mergesort").reset_index(drop=True)

    histories = pd.DataFrame([h for _, hist in results for h in hist], columns=HISTORY_COLUMNS)
    histories = histories.sort_values(["algo", "seed", "iteration"], kind="mergesort").reset_index(drop=True)

    summary = summarize(rows)
    for rec in summary.itertuples():
        logger.info(f"{rec.algo}: median converged_at {rec.converged_at_median:g}, "
                    f"median objective {rec.final_objective_median:.6f}")
    return ComparisonResult(rows, summary, histories)
