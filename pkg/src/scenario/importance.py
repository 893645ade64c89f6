"""
Radial importance fields and their discretization onto the cell grid.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from .models import ImportanceField, Point, Scenario


def _field_values(field: ImportanceField, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    d2 = (xs - field.center[0]) ** 2 + (ys - field.center[1]) ** 2
    return field.peak * np.exp(-d2 / (2.0 * field.sigma_m ** 2))


def importance_at(fields: Sequence[ImportanceField], p: Point) -> float:
    """
    Importance weight of a point: the maximum over fields of a Gaussian bump.

    Args:
        fields: Active importance fields
        p: Point in meters

    Returns:
        Weight >= 0; 0.0 when no field is active
    """
    if not fields:
        return 0.0
    x = np.asarray(p[0], dtype=float)
    y = np.asarray(p[1], dtype=float)
    return float(max(_field_values(f, x, y) for f in fields))


def importance_values(fields: Sequence[ImportanceField], xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Importance at arbitrary coordinate arrays; zeros when no field is active."""
    values = np.zeros(np.shape(xs), dtype=float)
    for f in fields:
        np.maximum(values, _field_values(f, xs, ys), out=values)
    return values


def cell_centers(scenario: Scenario) -> Tuple[np.ndarray, np.ndarray]:
    """Cell-center coordinates as two (rows, cols) arrays."""
    rows, cols = scenario.grid_shape
    half = scenario.cell_size_m / 2.0
    xs = scenario.area.x_min + half + scenario.cell_size_m * np.arange(cols)
    ys = scenario.area.y_min + half + scenario.cell_size_m * np.arange(rows)
    return np.meshgrid(xs, ys)


def importance_grid(scenario: Scenario, fields: Optional[Sequence[ImportanceField]] = None) -> np.ndarray:
    """
    Evaluate the importance field at every cell center.

    Args:
        scenario: Provides area and cell size
        fields: Field set to evaluate (default: the scenario's own)

    Returns:
        (rows, cols) array with rows = floor(height / cell), cols = floor(width / cell)
    """
    active = scenario.fields if fields is None else fields
    cx, cy = cell_centers(scenario)
    return importance_values(active, cx, cy)
