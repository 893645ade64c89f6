#!/usr/bin/env python3
"""
Full-size acceptance experiments for the UAV coalition simulator.

Each experiment logs what it measured and whether its threshold held:

1. Best-response moves strictly raise the global objective (50 random scenarios)
2. Best response settles well before Q-learning on the fire scenario (20 seeds)
3. The coalition game beats both single-index baselines
4. Best response against exhaustive search on 5-UAV instances
5. Relay matchings have no blocking pair (200 instances)
6. The channel game reaches a verified equilibrium (64 geometries)
7. `sim run` is byte-identical across repeats
8. Random partition operations keep every invariant; 3 memberships are reachable

Usage: python scripts/run_acceptance.py [--only 2,3] [--workers 4]
"""

import argparse
import itertools
import sys
import tempfile
from pathlib import Path
from typing import Callable, Dict, List

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cli.main import main as sim_main
from coalition.emergency import check_emergency
from coalition.errors import CoalitionError, NoFreeTransceiver
from coalition.operations import initial_partition, join, leave, merge, random_partition, split, switch_primary
from coalition.partition import SwarmView
from engine.baselines import compare_baselines
from games.actions import GameState
from games.channels import channel_equilibrium, is_nash
from games.objective import ObjectiveEvaluator
from games.oracle import best_partition
from games.switching import BestResponse, is_switch_stable, switch_step
from learning.comparison import run_comparison
from learning.config import Algorithm, LearnerConfig
from radio.matching import blocking_pairs, relay_matching
from scenario.defaults import fire_scenario, random_scenario
from scenario.loader import write_scenario
from scenario.models import GameWeights, ImportanceField, Scenario, UavSpec
from utils.logging_config import setup_logging

setup_logging()
import logging
logger = logging.getLogger(__name__)


def _game(scenario: Scenario, allow_moves: bool = True, max_coalitions=None, partition_rng=None) -> GameState:
    """Game state at the scenario's start positions; singletons unless a partition RNG is given."""
    positions = {u.id: (float(u.start_pos[0]), float(u.start_pos[1])) for u in scenario.uavs}
    fields = list(scenario.fields)
    view = SwarmView(scenario.specs, positions, fields, 0, None)
    if partition_rng is None:
        partition = initial_partition(scenario.specs, view)
    else:
        partition = random_partition(scenario.specs, max_coalitions, partition_rng, view)
    return GameState(partition, positions, fields, ObjectiveEvaluator.for_scenario(scenario, fields),
                     scenario.area, scenario.allow_overlap, allow_moves, max_coalitions)


def _settle(state: GameState, max_rounds: int = 500) -> int:
    """Best-response rounds in id order until nobody moves; returns the violations seen."""
    violations = 0
    for _ in range(max_rounds):
        moved = False
        for agent in sorted(state.positions):
            before = state.objective().objective
            if switch_step(agent, state, BestResponse()).accepted:
                moved = True
                violations += state.objective().objective <= before
        if not moved:
            break
    return violations


def potential_monotonicity(workers: int) -> bool:
    rng = np.random.default_rng(1)
    violations = 0
    for k in range(50):
        scenario = random_scenario(int(rng.integers(5, 21)), int(rng.integers(2**31)))
        violations += _settle(_game(scenario), max_rounds=20)
        logger.debug(f"Scenario {k}: {violations} violations so far")
    logger.info(f"Potential monotonicity: {violations} violations over 50 scenarios")
    return violations == 0


def convergence_speed(workers: int) -> bool:
    result = run_comparison(fire_scenario(), [Algorithm.BEST_RESPONSE, Algorithm.Q_LEARNING], 20,
                            LearnerConfig(), workers=workers)
    rows = result.rows
    # a run that never converged counts at its full length
    settled = rows["converged_at"].astype("float").fillna(rows["iterations_run"].astype("float"))
    br = settled[rows["algo"] == "best-response"].to_numpy()
    ql = settled[rows["algo"] == "q-learning"].to_numpy()
    ratio = float(np.median(br) / np.median(ql))
    ordered = int(np.sum(br < ql))
    censored = rows["converged_at"].isna().groupby(rows["algo"]).sum()
    logger.info(f"Convergence speed: median ratio {ratio:.3f} (<= 0.2), best response first in {ordered}/20 seeds, "
                f"never converged: best-response {int(censored.get('best-response', 0))}, "
                f"q-learning {int(censored.get('q-learning', 0))}")
    return ratio <= 0.2 and ordered >= 18


def multi_index(workers: int) -> bool:
    results = {r.name: r.evaluated.objective for r in compare_baselines(fire_scenario(), LearnerConfig())}
    game = results["game"]
    worse = min(results["coverage-only"], results["overhead-only"])
    better = max(results["coverage-only"], results["overhead-only"])
    margin = (game - worse) / abs(worse) if worse else float("inf")
    logger.info(f"Multi-index: game {game:.6f}, coverage-only {results['coverage-only']:.6f}, "
                f"overhead-only {results['overhead-only']:.6f}, margin {margin:.1%}")
    return game > better and margin >= 0.05


def small_oracle(workers: int) -> bool:
    rng = np.random.default_rng(4)
    # two clusters out of each other's range, one backhaul UAV in each
    anchors = [(3_000.0, 3_000.0)] * 3 + [(7_000.0, 7_000.0)] * 2
    jitter = rng.uniform(-300.0, 300.0, (5, 2))
    uavs = [
        UavSpec(id=i, start_pos=(ax + dx, ay + dy), ground_link_quality=q)
        for i, ((ax, ay), (dx, dy), q) in enumerate(zip(anchors, jitter, [0.9, 0.0, 0.0, 0.8, 0.0]))
    ]
    scenario = Scenario(uavs=uavs, fields=[ImportanceField(center=(5_000.0, 5_000.0))], allow_overlap=False)
    best = best_partition(_game(scenario, allow_moves=False, max_coalitions=2), max_coalitions=2)
    optimum = best.best.objective
    finals, stable = [], 0
    for _ in range(50):
        state = _game(scenario, allow_moves=False, max_coalitions=2, partition_rng=rng)
        _settle(state)
        stable += is_switch_stable(state)
        finals.append(state.objective().objective)
    mean = float(np.mean(finals))
    floor = optimum - 0.1 * abs(optimum)
    logger.info(f"Oracle: optimum {optimum:.6f} over {best.assignments_checked} assignments, "
                f"mean {mean:.6f} (>= {floor:.6f}), {stable}/50 switch-stable")
    return mean >= floor and stable == 50


def matching_stability(workers: int) -> bool:
    rng = np.random.default_rng(77)
    weights = GameWeights()
    blocking = 0
    for _ in range(200):
        n_prop, n_relay = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        ids = list(range(n_prop + n_relay))
        positions = {i: (float(rng.uniform(0, 6_000)), float(rng.uniform(0, 6_000))) for i in ids}
        specs = {i: UavSpec(id=i, start_pos=positions[i], comm_range_m=float(rng.uniform(1_500, 4_000)))
                 for i in ids}
        relays = {r: int(rng.integers(0, 4)) for r in ids[n_prop:]}
        matching = relay_matching(ids[:n_prop], relays, positions, specs, weights)
        blocking += len(blocking_pairs(matching, ids[:n_prop], relays, positions, specs, weights))
    logger.info(f"Matching stability: {blocking} blocking pairs over 200 instances")
    return blocking == 0


def channel_nash(workers: int) -> bool:
    xs = [500.0, 2_500.0, 4_500.0, 6_500.0]
    placements = list(itertools.combinations(itertools.product(xs, xs), 2))[:64]
    verified, rounds = 0, []
    for a, b in placements:
        positions = {0: a, 1: b, 2: (9_000.0, 9_000.0)}
        specs = {u: UavSpec(id=u, start_pos=p) for u, p in positions.items()}
        p = initial_partition(specs, SwarmView(specs, positions, [], 0, None))
        rounds.append(channel_equilibrium(p, positions, 2))
        verified += is_nash(p, positions, 2)
    logger.info(f"Channel equilibrium: {verified}/64 verified, at most {max(rounds)} rounds")
    return verified == 64


def determinism(workers: int) -> bool:
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        path = str(write_scenario(fire_scenario(max_steps=40), root / "fire.scn"))
        for name in ("a", "b"):
            if sim_main(["run", path, "--algo", "log-linear", "--out", str(root / name)]) != 0:
                return False

        def stable_lines(directory: Path) -> List[str]:
            return [line for line in (directory / "manifest.txt").read_text().splitlines()
                    if not line.startswith("generated_at:")]

        same = all((root / "a" / f).read_bytes() == (root / "b" / f).read_bytes()
                   for f in ("metrics.csv", "events.csv", "final_state.json"))
        same = same and stable_lines(root / "a") == stable_lines(root / "b")
    logger.info(f"Determinism: artifacts {'identical' if same else 'differ'}")
    return same


def structural_invariants(workers: int) -> bool:
    rng = np.random.default_rng(8)
    weights = GameWeights()
    specs = {i: UavSpec(id=i, start_pos=(float(rng.uniform(0, 6_000)), float(rng.uniform(0, 6_000))),
                        transceivers=int(rng.integers(1, 4)), ground_link_quality=float(rng.choice([0.0, 0.7])))
             for i in range(12)}
    view = SwarmView(specs, {i: s.start_pos for i, s in specs.items()}, [], 0, [])
    p = initial_partition(specs, view)
    applied = 0
    for _ in range(10_000):
        cids = sorted(p.coalitions)
        u = int(rng.integers(len(specs)))
        cid = int(rng.choice(cids))
        op = int(rng.integers(6))
        try:
            if op == 0 and len(cids) > 1:
                merge(p, cid, int(rng.choice([c for c in cids if c != cid])), view)
            elif op == 1:
                members = sorted(p.coalitions[cid].members)
                split(p, cid, members[:int(rng.integers(1, len(members) + 1))], view)
            elif op == 2:
                join(p, u, cid, view)
            elif op == 3:
                leave(p, u, cid, view)
            elif op == 4:
                switch_primary(p, u, None, view)
            else:
                check = check_emergency(p, cid, 0.1, view, weights)
                if check.merge_with is not None:
                    merge(p, cid, check.merge_with, view)
            applied += 1
        except CoalitionError:
            pass
        p.validate()

    roomy = {i: UavSpec(id=i, start_pos=(1_000.0 * i, 1_000.0), transceivers=3) for i in range(4)}
    roomy_view = SwarmView(roomy, {i: s.start_pos for i, s in roomy.items()}, [], 0, None)
    q = initial_partition(roomy, roomy_view)
    join(q, 0, 1, roomy_view)
    join(q, 0, 2, roomy_view)
    try:
        join(q, 0, 3, roomy_view)
        bounded = False
    except NoFreeTransceiver:
        bounded = True
    logger.info(f"Structural invariants: {applied} operations applied, none broke the partition; "
                f"UAV 0 holds {len(q.membership[0])} memberships")
    return len(q.membership[0]) == 3 and bounded


EXPERIMENTS: Dict[int, Callable[[int], bool]] = {
    1: potential_monotonicity,
    2: convergence_speed,
    3: multi_index,
    4: small_oracle,
    5: matching_stability,
    6: channel_nash,
    7: determinism,
    8: structural_invariants,
}


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the full-size acceptance experiments")
    parser.add_argument("--only", default=",".join(map(str, EXPERIMENTS)),
                        help="Comma-separated experiment numbers (default: all)")
    parser.add_argument("--workers", type=int, default=1, help="Processes for the algorithm comparison")
    args = parser.parse_args()

    selected = [int(k) for k in args.only.split(",") if k.strip()]
    failed = []
    for k in selected:
        logger.info(f"Experiment {k}: {EXPERIMENTS[k].__name__}")
        if not EXPERIMENTS[k](args.workers):
            failed.append(k)
            logger.error(f"Experiment {k} missed its threshold")
    if failed:
        logger.error(f"Failed: {failed}")
        return 1
    logger.info(f"All {len(selected)} experiments passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
