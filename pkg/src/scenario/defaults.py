"""
Default roster and scenario factories.

The bundled fire.scn is the JSON rendering of fire_scenario().
"""

from typing import Any, List

import numpy as np

from .models import AreaBounds, DirectiveKind, ImportanceField, Scenario, TaskDirective, UavSpec

GRID_COLS = 5
GRID_ROWS = 4

# quarter of the roster carries backhaul hardware: id -> (ground_link_quality, relay_quota)
BACKHAUL_UAVS = {
    2: (0.9, 3),
    6: (0.8, 3),
    9: (0.85, 3),
    13: (0.7, 3),
    15: (0.6, 3),
}


# second incident, command-control restructuring, incident cleared
FIRE_DIRECTIVES = [
    TaskDirective(step=10, kind=DirectiveKind.ADD_FIELD,
                  payload={"field": {"center": [8_000.0, 2_000.0], "sigma_m": 1_200.0, "peak": 0.6}}),
    TaskDirective(step=25, kind=DirectiveKind.FORCE_MERGE, payload={"coalition_of": 6, "other_of": 13}),
    TaskDirective(step=40, kind=DirectiveKind.FORCE_SPLIT, payload={"coalition_of": 5, "members": [5, 10]}),
    TaskDirective(step=80, kind=DirectiveKind.REMOVE_FIELD, payload={"index": 1}),
]


def create_uav(index: int) -> UavSpec:
    """Factory function to create the default roster's UAVs by index.

    Args:
        index: UAV index (0-19), laid out row by row on a 5x4 launch grid

    Returns:
        Configured UavSpec
    """
    col, row = index % GRID_COLS, index // GRID_COLS
    quality, quota = BACKHAUL_UAVS.get(index, (0.0, 0))
    return UavSpec(
        id=index,
        start_pos=(1_000.0 + 2_000.0 * col, 1_250.0 + 2_500.0 * row),
        coverage_radius_m=1_500.0,
        comm_range_m=3_000.0,
        transceivers=2,
        ground_link_quality=quality,
        relay_quota=quota,
        max_move_m=250.0,
    )


def default_roster() -> List[UavSpec]:
    return [create_uav(i) for i in range(GRID_COLS * GRID_ROWS)]


def fire_scenario(**overrides: Any) -> Scenario:
    """
    The disaster-coverage case: one fire at the area center, 20 UAVs, scripted directives.

    A shorter `max_steps` override drops the scripted directives past the new horizon
    unless `directives` is given too.
    """
    data = dict(
        area=AreaBounds(),
        cell_size_m=250.0,
        max_steps=200,
        seed=2024,
        channels=3,
        fields=[ImportanceField(center=(5_000.0, 5_000.0), sigma_m=2_500.0, peak=1.0)],
        uavs=default_roster(),
        directives=list(FIRE_DIRECTIVES),
    )
    data.update(overrides)
    if "directives" not in overrides:
        data["directives"] = [d for d in FIRE_DIRECTIVES if d.step <= data["max_steps"]]
    return Scenario(**data)


def random_scenario(n_uavs: int, seed: int, **overrides: Any) -> Scenario:
    """
    Random scenario for property tests and sweeps.

    Positions are uniform over the area, about a quarter of the UAVs get backhaul,
    and one importance field is placed uniformly at random.
    """
    rng = np.random.default_rng(seed)
    area = overrides.pop("area", AreaBounds())
    uavs = []
    for i in range(n_uavs):
        has_backhaul = i == 0 or rng.random() < 0.25
        uavs.append(UavSpec(
            id=i,
            start_pos=(
                float(area.x_min + rng.uniform(0.0, area.width)),
                float(area.y_min + rng.uniform(0.0, area.height)),
            ),
            transceivers=int(rng.integers(1, 4)),
            ground_link_quality=float(rng.uniform(0.3, 1.0)) if has_backhaul else 0.0,
            relay_quota=int(rng.integers(1, 3)) if has_backhaul else 0,
        ))
    center = (float(area.x_min + rng.uniform(0.0, area.width)), float(area.y_min + rng.uniform(0.0, area.height)))
    data = dict(
        area=area,
        seed=seed,
        fields=[ImportanceField(center=center, sigma_m=float(rng.uniform(1_500.0, 3_500.0)))],
        uavs=uavs,
    )
    data.update(overrides)
    return Scenario(**data)
