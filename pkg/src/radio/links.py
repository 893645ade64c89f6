"""
Air-to-air link model.

Link physics are abstracted to a distance-driven quality scalar.
"""

import math
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from scenario.models import Point, UavSpec


class Link(BaseModel):
    """A scored air-to-air link between two UAVs."""
    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    distance_m: float
    quality: float


def distance(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def in_range(spec_a: UavSpec, pos_a: Point, spec_b: UavSpec, pos_b: Point) -> bool:
    """Both endpoints must reach each other."""
    return distance(pos_a, pos_b) <= min(spec_a.comm_range_m, spec_b.comm_range_m)


def link_quality(
    spec_a: UavSpec,
    pos_a: Point,
    spec_b: UavSpec,
    pos_b: Point,
    q_ref_m: float,
    path_loss_exp: float
) -> float:
    """
    Quality 1 / (1 + (d / q_ref)^alpha) in [0, 1]; 0 beyond either comm range.

    Args:
        spec_a, pos_a: First endpoint
        spec_b, pos_b: Second endpoint
        q_ref_m: Distance at which quality drops to 1/2
        path_loss_exp: Exponent alpha

    Returns:
        Link quality, symmetric in the endpoints
    """
    d = distance(pos_a, pos_b)
    if d > min(spec_a.comm_range_m, spec_b.comm_range_m):
        return 0.0
    q = 1.0 / (1.0 + (d / q_ref_m) ** path_loss_exp)
    return min(max(q, 0.0), 1.0)


def make_link(
    spec_a: UavSpec, pos_a: Point, spec_b: UavSpec, pos_b: Point, q_ref_m: float, path_loss_exp: float
) -> Link:
    return Link(
        a=spec_a.id,
        b=spec_b.id,
        distance_m=distance(pos_a, pos_b),
        quality=link_quality(spec_a, pos_a, spec_b, pos_b, q_ref_m, path_loss_exp),
    )


def range_matrix(ids: List[int], positions: Dict[int, Point], specs: Dict[int, UavSpec]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pairwise distances and in-range flags for the given UAVs.

    Returns:
        (distances, linked) square arrays indexed like ids; the diagonal is not linked
    """
    xy = np.array([positions[u] for u in ids], dtype=float).reshape(len(ids), 2)
    ranges = np.array([specs[u].comm_range_m for u in ids], dtype=float)
    diff = xy[:, None, :] - xy[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    linked = dist <= np.minimum(ranges[:, None], ranges[None, :])
    np.fill_diagonal(linked, False)
    return dist, linked
