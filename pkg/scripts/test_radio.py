"""
Test link quality, relay routing, relay matching and traffic accounting.
"""

import itertools

import numpy as np
import pytest

from coalition.operations import found
from coalition.partition import PartitionState
from conftest import small_scenario, uav, view_for
from radio.links import link_quality, make_link
from radio.matching import blocking_pairs, relay_matching
from radio.routing import Unreachable, coalition_graph, hop_cost, leader_routes, relay_path
from radio.traffic import MessageClass, account_traffic
from scenario.models import GameWeights

WEIGHTS = GameWeights()


def test_link_quality_values():
    """Test unity at zero distance, one half at the reference distance, zero out of range."""
    a, b = uav(0, 0.0, 0.0), uav(1, 1_000.0, 0.0)
    assert link_quality(a, (0.0, 0.0), b, (0.0, 0.0), 1_000.0, 2.0) == 1.0
    assert link_quality(a, (0.0, 0.0), b, (1_000.0, 0.0), 1_000.0, 2.0) == pytest.approx(0.5)
    assert link_quality(a, (0.0, 0.0), b, (3_001.0, 0.0), 1_000.0, 2.0) == 0.0


def test_link_quality_uses_shorter_range():
    """Test the weaker radio of the pair bounds the link."""
    strong, weak = uav(0, 0.0, 0.0, comm_range_m=5_000.0), uav(1, 0.0, 0.0, comm_range_m=1_000.0)
    assert link_quality(strong, (0.0, 0.0), weak, (2_000.0, 0.0), 1_000.0, 2.0) == 0.0


def test_link_quality_symmetric():
    """Test quality does not depend on endpoint order."""
    rng = np.random.default_rng(3)
    for _ in range(50):
        pa, pb = tuple(rng.uniform(0, 4_000, 2)), tuple(rng.uniform(0, 4_000, 2))
        a, b = uav(0, *pa), uav(1, *pb)
        assert link_quality(a, pa, b, pb, 1_000.0, 2.5) == link_quality(b, pb, a, pa, 1_000.0, 2.5)


def test_make_link():
    """Test the Link record carries distance and quality."""
    a, b = uav(0, 0.0, 0.0), uav(1, 0.0, 1_000.0)
    link = make_link(a, (0.0, 0.0), b, (0.0, 1_000.0), 1_000.0, 2.0)
    assert (link.a, link.b) == (0, 1)
    assert link.distance_m == pytest.approx(1_000.0)
    assert link.quality == pytest.approx(0.5)


def test_relay_path_identity():
    """Test a leader routes to itself for free."""
    scenario = small_scenario([uav(0, 100.0, 100.0)])
    path = relay_path(0, 0, {0}, {0: (100.0, 100.0)}, scenario.specs, WEIGHTS)
    assert path.hops == []
    assert path.cost == 0.0


def test_relay_path_two_hops():
    """Test three collinear UAVs at 0.8 comm range route through the middle one."""
    spacing = 0.8 * 3_000.0
    specs = {i: uav(i, 100.0 + i * spacing, 100.0) for i in range(3)}
    positions = {i: (100.0 + i * spacing, 100.0) for i in range(3)}
    path = relay_path(0, 2, {0, 1, 2}, positions, specs, WEIGHTS)
    assert path.hops == [1, 2]
    assert path.cost == pytest.approx(2 * (spacing / 1_000.0) ** 2)


def test_relay_path_unreachable():
    """Test an isolated member raises Unreachable with both ids."""
    specs = {0: uav(0, 0.0, 0.0), 1: uav(1, 9_000.0, 0.0)}
    positions = {0: (0.0, 0.0), 1: (9_000.0, 0.0)}
    with pytest.raises(Unreachable) as err:
        relay_path(1, 0, {0, 1}, positions, specs, WEIGHTS)
    assert (err.value.member, err.value.leader) == (1, 0)


def _brute_force_cost(graph, source, target):
    best = None
    for path in itertools.chain.from_iterable(
            itertools.permutations([n for n in graph.nodes if n not in (source, target)], k)
            for k in range(len(graph.nodes) - 1)):
        nodes = [source, *path, target]
        if all(graph.has_edge(a, b) for a, b in zip(nodes, nodes[1:])):
            cost = sum(graph[a][b]["weight"] for a, b in zip(nodes, nodes[1:]))
            best = cost if best is None else min(best, cost)
    return best


def test_leader_routes_match_path_enumeration():
    """Test route costs equal the cheapest simple path on small random graphs."""
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(3, 7))
        positions = {i: (float(rng.uniform(0, 6_000)), float(rng.uniform(0, 6_000))) for i in range(n)}
        specs = {i: uav(i, *positions[i]) for i in range(n)}
        graph = coalition_graph(range(n), positions, specs, WEIGHTS)
        routes = leader_routes(0, range(n), positions, specs, WEIGHTS)
        for m in range(1, n):
            expected = _brute_force_cost(graph, m, 0)
            if expected is None:
                assert m not in routes
            else:
                assert routes[m][0] == pytest.approx(expected)


def test_hop_cost_formula():
    """Test hop cost at the reference distance is 1."""
    assert hop_cost(1_000.0, WEIGHTS) == pytest.approx(1.0)
    assert hop_cost(2_000.0, WEIGHTS) == pytest.approx(4.0)


def test_matching_single_pair():
    """Test one proposer and one in-range relay are matched."""
    specs = {0: uav(0, 0.0, 0.0), 1: uav(1, 1_000.0, 0.0, relay_quota=1, ground_link_quality=0.5)}
    positions = {0: (0.0, 0.0), 1: (1_000.0, 0.0)}
    matching = relay_matching([0], {1: 1}, positions, specs, WEIGHTS)
    assert matching.assignments == {0: 1}
    assert matching.quotas == {1: 0}


def test_matching_prefers_better_link():
    """Test a quota-1 relay keeps the proposer with the better link."""
    specs = {
        0: uav(0, 2_000.0, 0.0),
        1: uav(1, 500.0, 0.0),
        2: uav(2, 0.0, 0.0, relay_quota=1, ground_link_quality=0.5),
    }
    positions = {u: tuple(s.start_pos) for u, s in specs.items()}
    matching = relay_matching([0, 1], {2: 1}, positions, specs, WEIGHTS)
    assert matching.assignments == {1: 2}
    assert blocking_pairs(matching, [0, 1], {2: 1}, positions, specs, WEIGHTS) == []


def test_matching_rejects_overlap():
    """Test proposers and relays must be disjoint."""
    specs = {0: uav(0, 0.0, 0.0)}
    with pytest.raises(ValueError):
        relay_matching([0], {0: 1}, {0: (0.0, 0.0)}, specs, WEIGHTS)


def test_matching_stable_on_random_instances():
    """Test deferred acceptance leaves no blocking pair."""
    rng = np.random.default_rng(5)
    for _ in range(40):
        n_prop, n_relay = int(rng.integers(1, 7)), int(rng.integers(1, 4))
        ids = list(range(n_prop + n_relay))
        positions = {i: (float(rng.uniform(0, 5_000)), float(rng.uniform(0, 5_000))) for i in ids}
        specs = {i: uav(i, *positions[i]) for i in ids}
        proposers = ids[:n_prop]
        relays = {r: int(rng.integers(0, 3)) for r in ids[n_prop:]}
        matching = relay_matching(proposers, relays, positions, specs, WEIGHTS)
        assert blocking_pairs(matching, proposers, relays, positions, specs, WEIGHTS) == []
        for r, quota in relays.items():
            assert list(matching.assignments.values()).count(r) <= quota


def test_matching_ignores_input_order():
    """Test shuffled proposers and reordered relays give the same matching."""
    rng = np.random.default_rng(11)
    for _ in range(30):
        n_prop, n_relay = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        ids = list(range(n_prop + n_relay))
        positions = {i: (float(rng.uniform(0, 5_000)), float(rng.uniform(0, 5_000))) for i in ids}
        specs = {i: uav(i, *positions[i]) for i in ids}
        proposers = ids[:n_prop]
        relays = {r: int(rng.integers(1, 3)) for r in ids[n_prop:]}
        expected = relay_matching(proposers, relays, positions, specs, WEIGHTS)
        for order in (list(reversed(proposers)), list(rng.permutation(proposers))):
            reordered = dict(reversed(list(relays.items())))
            got = relay_matching([int(u) for u in order], reordered, positions, specs, WEIGHTS)
            assert got.assignments == expected.assignments
            assert got.quotas == expected.quotas


def test_traffic_single_isolated_uav():
    """Test a lone UAV sends nothing."""
    scenario = small_scenario([uav(0, 100.0, 100.0)])
    view = view_for(scenario)
    p = PartitionState(transceivers={0: 2})
    found(p, [0], view)
    tally = account_traffic(p, view.positions, scenario.specs, WEIGHTS)
    assert (tally.safety, tally.fusion, tally.inter, tally.relayed) == (0, 0, 0, 0)


def test_traffic_two_member_coalition():
    """Test two linked UAVs: one safety message each way and one fusion hop."""
    scenario = small_scenario([uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9), uav(1, 2_000.0, 1_000.0)])
    view = view_for(scenario)
    p = PartitionState(transceivers={0: 2, 1: 2})
    found(p, [0, 1], view)
    tally = account_traffic(p, view.positions, scenario.specs, WEIGHTS)
    assert tally.safety == 2
    assert tally.fusion == 1
    assert tally.inter == 0
    assert tally.by_class() == {
        MessageClass.SAFETY_BROADCAST: 2,
        MessageClass.INTRA_COALITION_FUSION: 1,
        MessageClass.INTER_COALITION_SHARE: 0,
    }


def test_traffic_counts_adjacent_coalitions_and_relays():
    """Test inter-coalition pairs and relayed members are tallied."""
    scenario = small_scenario([
        uav(0, 1_000.0, 1_000.0, ground_link_quality=0.9),
        uav(1, 6_000.0, 1_000.0),
        uav(2, 3_500.0, 1_000.0, ground_link_quality=0.5, relay_quota=2),
    ])
    view = view_for(scenario)
    p = PartitionState(transceivers={0: 2, 1: 2, 2: 2})
    found(p, [0, 1], view)
    found(p, [2], view)
    matching = relay_matching([1], {2: 2}, view.positions, scenario.specs, WEIGHTS)
    assert matching.assignments == {1: 2}
    tally = account_traffic(p, view.positions, scenario.specs, WEIGHTS, matching)
    assert tally.safety == 4
    assert tally.inter == 1
    assert tally.fusion == 1
    assert tally.relayed == 1
