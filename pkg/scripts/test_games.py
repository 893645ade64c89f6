"""
Test the coverage/overhead objective, switch rules, channel game and oracle.
"""

import numpy as np
import pytest

from coalition.operations import found, merge
from coalition.partition import PartitionState
from conftest import game_for, positions_of, small_scenario, uav, view_for
from games.actions import STAY, ActionKind, GameAction, apply_action, candidate_actions
from games.channels import (
    channel_best_response, channel_equilibrium, channel_potential, channel_round, is_nash
)
from games.objective import coverage_grid, global_objective, transmission_overhead, weighted_coverage
from games.oracle import best_partition
from games.switching import BestResponse, LogLinear, boltzmann_probabilities, is_switch_stable, marginal_utility, switch_step
from scenario.models import GameWeights

WEIGHTS = GameWeights()


def _partition(scenario, groups):
    view = view_for(scenario)
    p = PartitionState(transceivers={u.id: u.transceivers for u in scenario.uavs})
    for g in groups:
        found(p, g, view)
    return p


def test_weighted_coverage_values():
    """Test empty, full and double-counted coverage."""
    grid = coverage_grid(small_scenario([uav(0, 100.0, 100.0)]))
    assert weighted_coverage([], [], grid) == 0.0
    assert weighted_coverage([(5_000.0, 5_000.0)], [8_000.0], grid) == pytest.approx(1.0)
    one = weighted_coverage([(5_000.0, 5_000.0)], [1_500.0], grid)
    two = weighted_coverage([(5_000.0, 5_000.0), (5_000.0, 5_000.0)], [1_500.0, 1_500.0], grid)
    assert 0.0 < one < 1.0
    assert one == two


def test_coverage_matches_cell_oracle():
    """Test coverage against a per-cell boolean recount."""
    grid = coverage_grid(small_scenario([uav(0, 100.0, 100.0)]))
    rng = np.random.default_rng(9)
    points = [tuple(rng.uniform(0, 10_000, 2)) for _ in range(4)]
    covered = np.zeros_like(grid.weights, dtype=bool)
    for x, y in points:
        covered |= np.hypot(grid.cx - x, grid.cy - y) <= 1_500.0
    expected = grid.weights[covered].sum() / grid.weights.sum()
    assert weighted_coverage(points, [1_500.0] * 4, grid) == pytest.approx(expected)


def test_coverage_grows_with_uavs_and_ignores_order():
    """Test adding a UAV never lowers coverage and reordering the UAVs leaves it unchanged."""
    grid = coverage_grid(small_scenario([uav(0, 100.0, 100.0)]))
    rng = np.random.default_rng(21)
    for _ in range(20):
        n = int(rng.integers(1, 8))
        points = [(float(x), float(y)) for x, y in rng.uniform(0, 10_000, (n, 2))]
        radii = [float(r) for r in rng.uniform(500, 2_500, n)]
        values = [weighted_coverage(points[:k], radii[:k], grid) for k in range(n + 1)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        order = rng.permutation(n)
        shuffled = weighted_coverage([points[i] for i in order], [radii[i] for i in order], grid)
        assert shuffled == pytest.approx(values[-1])
        reversed_ = weighted_coverage(points[::-1], radii[::-1], grid)
        assert reversed_ == pytest.approx(values[-1])


def test_evaluator_coverage_ignores_uav_labels():
    """Test relabeling the same positions and radii gives the same coverage."""
    specs = [uav(i, 1_000.0 + 1_500.0 * i, 4_000.0 + 500.0 * i, coverage_radius_m=800.0 + 200.0 * i)
             for i in range(4)]
    relabeled = [uav(3 - s.id, *s.start_pos, coverage_radius_m=s.coverage_radius_m) for s in specs]
    first = game_for(small_scenario(specs))
    second = game_for(small_scenario(relabeled))
    assert second.evaluator.coverage(range(4), second.positions) == pytest.approx(
        first.evaluator.coverage(range(4), first.positions))


def test_overhead_of_singletons_is_zero():
    scenario = small_scenario([uav(i, 1_000.0 * (i + 1), 1_000.0) for i in range(4)])
    p = _partition(scenario, [[i] for i in range(4)])
    assert transmission_overhead(p, positions_of(scenario), scenario.specs, WEIGHTS) == 0.0


def test_overhead_at_reference_distance():
    """Test one direct hop at overhead_ref_m costs exactly 1."""
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9), uav(1, 2_000.0, 1_000.0)])
    p = _partition(scenario, [[0, 1]])
    assert transmission_overhead(p, positions_of(scenario), scenario.specs, WEIGHTS) == pytest.approx(1.0)


def test_overhead_of_star():
    """Test four members at equal distance d around the leader cost 4 (d / ref)^2."""
    d = 1_500.0
    scenario = small_scenario([
        uav(0, 5_000.0, 5_000.0, ground_link_quality=0.9),
        uav(1, 5_000.0 + d, 5_000.0),
        uav(2, 5_000.0 - d, 5_000.0),
        uav(3, 5_000.0, 5_000.0 + d),
        uav(4, 5_000.0, 5_000.0 - d),
    ])
    p = _partition(scenario, [[0, 1, 2, 3, 4]])
    assert transmission_overhead(p, positions_of(scenario), scenario.specs, WEIGHTS) == pytest.approx(4 * 1.5 ** 2)


def test_unreachable_member_costs_penalty():
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9), uav(1, 9_000.0, 9_000.0)])
    p = _partition(scenario, [[0, 1]])
    assert transmission_overhead(p, positions_of(scenario), scenario.specs, WEIGHTS) == WEIGHTS.p_unreach


def test_degenerate_weights():
    """Test objective with one of the two terms switched off."""
    scenario = small_scenario([uav(0, 5_000.0, 5_000.0, ground_link_quality=0.9), uav(1, 6_000.0, 5_000.0)])
    grid = coverage_grid(scenario)
    positions = positions_of(scenario)
    joined = _partition(scenario, [[0, 1]])

    coverage_only = GameWeights(w_cov=1.0, w_ovh=0.0)
    result = global_objective(joined, positions, grid, coverage_only, scenario.specs)
    assert result.overhead > 0.0
    assert result.objective == pytest.approx(result.coverage)

    overhead_only = GameWeights(w_cov=0.0, w_ovh=1.0)
    singles = _partition(scenario, [[0], [1]])
    assert global_objective(singles, positions, grid, overhead_only, scenario.specs).objective == 0.0


def test_coverage_requires_backhaul():
    """Test only UAVs that deliver to a backhaul leader count toward coverage."""
    scenario = small_scenario([uav(0, 5_000.0, 5_000.0)])
    grid = coverage_grid(scenario)
    p = _partition(scenario, [[0]])
    assert global_objective(p, positions_of(scenario), grid, WEIGHTS, scenario.specs).coverage == 0.0
    loose = global_objective(p, positions_of(scenario), grid, WEIGHTS, scenario.specs, require_backhaul=False)
    assert loose.coverage > 0.0


def test_marginal_utility_of_stay_is_zero():
    state = game_for(small_scenario([uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9)]))
    assert marginal_utility(0, STAY, state) == 0.0


def test_move_toward_field_pays():
    """Test moving a lone UAV toward the field center raises the objective."""
    state = game_for(small_scenario([uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9)]))
    before = dict(state.positions)
    assert marginal_utility(0, GameAction(ActionKind.MOVE, 2), state) > 0.0
    assert state.positions == before


def test_switch_into_unreachable_coalition_costs():
    """Test joining a coalition whose leader is out of reach is penalized."""
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9), uav(1, 9_000.0, 9_000.0)])
    state = game_for(scenario)
    utility = marginal_utility(1, GameAction(ActionKind.SWITCH_PRIMARY, 0), state)
    assert utility == pytest.approx(-WEIGHTS.w_ovh * WEIGHTS.p_unreach)


def test_candidate_actions_ordering():
    """Test Stay leads and infeasible actions are absent."""
    scenario = small_scenario([uav(0, 0.0, 0.0), uav(1, 100.0, 0.0)])
    state = game_for(scenario)
    actions = candidate_actions(0, state)
    assert actions[0] == STAY
    moves = [a.target for a in actions if a.kind is ActionKind.MOVE]
    # corner start: S, SW and W clamp onto the current position
    assert moves == [1, 2, 3, 4, 8]
    assert GameAction(ActionKind.NEW_COALITION) not in actions
    assert GameAction(ActionKind.JOIN_SECONDARY, 1) in actions


def test_switch_step_with_only_stay():
    """Test a lone immobile UAV never changes anything."""
    state = game_for(small_scenario([uav(0, 5_000.0, 5_000.0, max_move_m=0.0)]))
    assert candidate_actions(0, state) == [STAY]
    for rule in (BestResponse(), LogLinear(1.0)):
        outcome = switch_step(0, state, rule, np.random.default_rng(0))
        assert not outcome.accepted
    assert state.positions == {0: (5_000.0, 5_000.0)}


def test_best_response_steps_strictly_improve():
    """Test every accepted best response raises the objective until nobody moves."""
    scenario = small_scenario([
        uav(0, 2_000.0, 2_000.0, ground_link_quality=0.9),
        uav(1, 3_000.0, 2_500.0),
        uav(2, 4_500.0, 3_000.0, ground_link_quality=0.4),
        uav(3, 7_000.0, 6_000.0),
    ])
    state = game_for(scenario, allow_moves=False)
    current = state.objective().objective
    for _ in range(20):
        accepted = 0
        for agent in range(4):
            outcome = switch_step(agent, state, BestResponse())
            if outcome.accepted:
                assert outcome.objective.objective > current
                assert state.objective().objective == pytest.approx(outcome.objective.objective)
                accepted += 1
            current = state.objective().objective
        if not accepted:
            break
    assert is_switch_stable(state)
    before = state.partition.member_sets()
    assert not switch_step(0, state, BestResponse()).accepted
    assert state.partition.member_sets() == before


def test_log_linear_needs_rng():
    state = game_for(small_scenario([uav(0, 1_000.0, 1_000.0)]))
    with pytest.raises(ValueError):
        switch_step(0, state, LogLinear(0.5))


def test_boltzmann_probabilities():
    probs = boltzmann_probabilities([0.0, 1.0, -2.0], 0.5)
    assert probs.sum() == pytest.approx(1.0)
    assert probs.argmax() == 1
    cold = boltzmann_probabilities([0.0, 1e-3], 1e-9)
    assert cold[1] == pytest.approx(1.0)


def test_apply_action_leaves_no_empty_coalition():
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0), uav(1, 1_500.0, 1_000.0)])
    state = game_for(scenario)
    apply_action(1, GameAction(ActionKind.SWITCH_PRIMARY, 0), state)
    assert state.partition.member_sets() == [(0, 1)]
    state.partition.validate()


def test_single_coalition_takes_channel_zero():
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0)])
    p = _partition(scenario, [[0]])
    assert channel_best_response(0, p, positions_of(scenario), 3) == 0


def test_two_coalitions_separate_channels():
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0), uav(1, 2_000.0, 1_000.0)])
    p = _partition(scenario, [[0], [1]])
    positions = positions_of(scenario)
    channel_equilibrium(p, positions, 2)
    assert p.coalitions[0].channel != p.coalitions[1].channel
    assert is_nash(p, positions, 2)
    assert channel_potential(p, positions) == 0.0


def test_collinear_ends_share_a_channel():
    """Test three collinear coalitions on two channels: the far pair shares."""
    scenario = small_scenario([uav(i, 1_000.0 + 1_000.0 * i, 1_000.0) for i in range(3)])
    p = _partition(scenario, [[0], [1], [2]])
    positions = positions_of(scenario)
    rounds = channel_equilibrium(p, positions, 2)
    assert rounds == 2
    assert p.coalitions[0].channel == p.coalitions[2].channel
    assert p.coalitions[1].channel != p.coalitions[0].channel
    assert is_nash(p, positions, 2)


def test_channel_potential_never_rises():
    """Test each best-response round lowers or keeps the interference potential."""
    rng = np.random.default_rng(21)
    uavs = [uav(i, float(rng.uniform(0, 10_000)), float(rng.uniform(0, 10_000))) for i in range(12)]
    scenario = small_scenario(uavs)
    p = _partition(scenario, [[i] for i in range(12)])
    positions = positions_of(scenario)
    potential = channel_potential(p, positions)
    for _ in range(20):
        changed = channel_round(p, positions, 3)
        new = channel_potential(p, positions)
        assert new <= potential
        if changed:
            assert new < potential
        potential = new
        if not changed:
            break
    assert is_nash(p, positions, 3)


def test_merged_coalition_keeps_channel():
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0), uav(1, 1_500.0, 1_000.0)])
    p = _partition(scenario, [[0], [1]])
    p.coalitions[0].channel = 2
    cid = merge(p, 0, 1, view_for(scenario))
    assert p.coalitions[cid].channel == 2


def test_oracle_bounds_best_response():
    """Test exhaustive search is never beaten by best-response dynamics."""
    scenario = small_scenario([
        uav(0, 3_000.0, 3_000.0, ground_link_quality=0.9),
        uav(1, 4_500.0, 3_500.0),
        uav(2, 6_000.0, 5_000.0, ground_link_quality=0.3),
    ], allow_overlap=False)
    state = game_for(scenario, allow_moves=False)
    singletons = state.objective().objective
    oracle = best_partition(state, max_coalitions=3)
    assert oracle.assignments_checked > 0
    assert oracle.best.objective >= singletons
    for _ in range(10):
        if not any(switch_step(a, state, BestResponse()).accepted for a in range(3)):
            break
    assert state.objective().objective <= oracle.best.objective + 1e-12
