"""
Relay selection as a many-to-one matching game.

Members (proposers) seek one relay drone each; relays accept up to their quota.
Capacitated deferred acceptance yields the proposer-optimal stable matching.
"""

import logging
from collections import deque
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel

from scenario.models import GameWeights, Point, UavSpec

from .links import distance, link_quality
from .routing import hop_cost

logger = logging.getLogger(__name__)


class RelayMatching(BaseModel):
    """Matching outcome: member -> relay, and each relay's unused capacity."""
    assignments: Dict[int, int]
    quotas: Dict[int, int]


def _proposer_preferences(
    proposers: List[int], relays: List[int], positions: Dict[int, Point],
    specs: Dict[int, UavSpec], weights: GameWeights
) -> Dict[int, List[int]]:
    prefs = {}
    for p in proposers:
        acceptable = [
            (hop_cost(distance(positions[p], positions[r]), weights), r)
            for r in relays
            if link_quality(specs[p], positions[p], specs[r], positions[r],
                            weights.overhead_ref_m, weights.path_loss_exp) > 0.0
        ]
        prefs[p] = [r for _, r in sorted(acceptable)]
    return prefs


def _relay_rankings(
    proposers: List[int], relays: List[int], positions: Dict[int, Point],
    specs: Dict[int, UavSpec], weights: GameWeights
) -> Dict[int, Dict[int, Tuple[float, int]]]:
    # lower key = more preferred
    rankings = {}
    for r in relays:
        rankings[r] = {}
        for p in proposers:
            q = link_quality(specs[p], positions[p], specs[r], positions[r],
                             weights.overhead_ref_m, weights.path_loss_exp)
            if q > 0.0:
                rankings[r][p] = (-q, p)
    return rankings


def relay_matching(
    proposers: Iterable[int],
    relays: Dict[int, int],
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    weights: GameWeights
) -> RelayMatching:
    """
    Capacitated deferred acceptance, proposer-optimal.

    Proposers rank in-range relays by ascending hop cost; relays rank in-range
    proposers by descending link quality. Ties break by ascending id.

    Args:
        proposers: Member ids needing a relay
        relays: Relay id -> quota
        positions: Current positions
        specs: UAV specs
        weights: Provide the hop-cost and link-quality normalizers

    Returns:
        Stable RelayMatching; proposers left without capacity stay unmatched
    """
    proposer_ids = sorted(set(proposers))
    relay_ids = sorted(relays)
    if set(proposer_ids) & set(relay_ids):
        raise ValueError("proposers and relays must be disjoint")

    prefs = _proposer_preferences(proposer_ids, relay_ids, positions, specs, weights)
    rankings = _relay_rankings(proposer_ids, relay_ids, positions, specs, weights)
    held: Dict[int, List[int]] = {r: [] for r in relay_ids}
    next_choice = {p: 0 for p in proposer_ids}
    free = deque(proposer_ids)

    while free:
        p = free.popleft()
        if next_choice[p] >= len(prefs[p]):
            continue  # exhausted list
        r = prefs[p][next_choice[p]]
        next_choice[p] += 1

        rank = rankings[r]
        current = held[r]
        if len(current) < relays[r]:
            current.append(p)
            continue
        if not current:
            # zero quota
            free.append(p)
            continue
        worst = max(current, key=lambda m: rank[m])
        if rank[p] < rank[worst]:
            current.remove(worst)
            current.append(p)
            free.append(worst)
        else:
            free.append(p)

    assignments = {p: r for r in relay_ids for p in held[r]}
    remaining = {r: relays[r] - len(held[r]) for r in relay_ids}
    logger.debug(f"Relay matching: {len(assignments)}/{len(proposer_ids)} proposers matched")
    return RelayMatching(assignments=dict(sorted(assignments.items())), quotas=remaining)


def blocking_pairs(
    matching: RelayMatching,
    proposers: Iterable[int],
    relays: Dict[int, int],
    positions: Dict[int, Point],
    specs: Dict[int, UavSpec],
    weights: GameWeights
) -> List[Tuple[int, int]]:
    """
    Exhaustive stability check.

    Returns:
        Every (proposer, relay) pair that strictly prefer each other to the current matching
    """
    proposer_ids = sorted(set(proposers))
    relay_ids = sorted(relays)
    prefs = _proposer_preferences(proposer_ids, relay_ids, positions, specs, weights)
    rankings = _relay_rankings(proposer_ids, relay_ids, positions, specs, weights)
    held: Dict[int, List[int]] = {r: [] for r in relay_ids}
    for p, r in matching.assignments.items():
        held[r].append(p)

    pairs = []
    for p in proposer_ids:
        current: Optional[int] = matching.assignments.get(p)
        order = prefs[p]
        for r in order:
            if r == current:
                break  # later entries are worse than the current relay
            if relays[r] == 0:
                continue
            if len(held[r]) < relays[r] or any(rankings[r][p] < rankings[r][m] for m in held[r]):
                pairs.append((p, r))
    return pairs
