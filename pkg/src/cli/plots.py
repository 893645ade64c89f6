"""
SVG figures: convergence curves, final layout, objective over time.

Text is kept as SVG <text> and ids are salted with a constant so identical
inputs render identical files.
"""

import json
import logging
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402
import pydantic  # noqa: E402
from matplotlib.patches import Circle, Polygon  # noqa: E402
from scipy.spatial import ConvexHull, QhullError  # noqa: E402

from engine.trace import METRICS_COLUMNS, FinalState  # noqa: E402
from learning.comparison import HISTORY_COLUMNS  # noqa: E402
from scenario.errors import ParseError  # noqa: E402

logger = logging.getLogger(__name__)

plt.rcParams["svg.hashsalt"] = "uavsim"
plt.rcParams["svg.fonttype"] = "none"

PLOT_KINDS = ("convergence", "layout", "objective")

# input file looked up when a directory is given
DEFAULT_INPUT = {
    "convergence": "histories.csv",
    "layout": "final_state.json",
    "objective": "metrics.csv",
}

PathLike = Union[str, Path]


def _resolve_input(path: PathLike, kind: str) -> Path:
    source = Path(path)
    if source.is_dir():
        source = source / DEFAULT_INPUT[kind]
    if not source.is_file():
        raise ParseError(f"plot input not found: {source}")
    return source


def _read_table(path: Path, required: list) -> pd.DataFrame:
    try:
        df = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: malformed CSV: {e}") from e
    missing = [c for c in required if c not in df.columns]
    if missing:
        raise ParseError(f"{path}: missing columns {missing}")
    try:
        df[required[1:]] = df[required[1:]].apply(pd.to_numeric)
    except (ValueError, TypeError) as e:
        raise ParseError(f"{path}: non-numeric values: {e}") from e
    return df


def _read_final(path: Path) -> FinalState:
    try:
        return FinalState.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: malformed JSON at line {e.lineno}: {e.msg}") from e
    except pydantic.ValidationError as e:
        raise ParseError(f"{path}: not a final-state document: {e.errors()[0]['msg']}") from e


def _no_data(ax: plt.Axes) -> None:
    ax.text(0.5, 0.5, "no data", transform=ax.transAxes, ha="center", va="center", gid="no-data")


def plot_convergence(histories: pd.DataFrame) -> plt.Figure:
    """Median objective per iteration across seeds, one curve per algorithm."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if histories.empty:
        _no_data(ax)
    else:
        for algo in sorted(histories["algo"].astype(str).unique()):
            group = histories[histories["algo"].astype(str) == algo]
            curve = group.groupby("iteration", sort=True)["objective"].median()
            ax.plot(curve.index.to_numpy(), curve.to_numpy(), label=algo, gid=f"curve-{algo}")
        ax.legend(loc="lower right")
    ax.set_xlabel("iteration")
    ax.set_ylabel("global objective (median over seeds)")
    ax.set_title("Convergence")
    ax.grid(True, alpha=0.3)
    return fig


def plot_objective(metrics: pd.DataFrame) -> plt.Figure:
    """Coverage and objective (top), transmission overhead (bottom) per step."""
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    if metrics.empty:
        _no_data(top)
        _no_data(bottom)
    else:
        steps = metrics["step"].to_numpy()
        top.plot(steps, metrics["coverage"].to_numpy(), label="coverage", gid="series-coverage")
        top.plot(steps, metrics["objective"].to_numpy(), label="objective", gid="series-objective")
        top.legend(loc="lower right")
        bottom.plot(steps, metrics["overhead"].to_numpy(), color="tab:red", label="overhead",
                    gid="series-overhead")
        bottom.legend(loc="upper right")
    top.set_ylabel("coverage / objective")
    bottom.set_ylabel("transmission overhead")
    bottom.set_xlabel("step")
    top.set_title("Multi-index objective")
    for ax in (top, bottom):
        ax.grid(True, alpha=0.3)
    return fig


def _hull(points: np.ndarray) -> np.ndarray:
    unique = np.unique(points, axis=0)
    if len(unique) < 3:
        return unique
    try:
        return unique[ConvexHull(unique).vertices]
    except QhullError:
        # collinear members
        return unique


def plot_layout(final: FinalState) -> plt.Figure:
    """UAV positions, coverage disks, one hull per coalition and leader markers."""
    fig, ax = plt.subplots(figsize=(7, 7))
    x0, y0, width, height = final.area
    ax.set_xlim(x0, x0 + width)
    ax.set_ylim(y0, y0 + height)
    ax.set_aspect("equal")
    if not final.uavs:
        _no_data(ax)
    else:
        pos = {u.id: u.position for u in final.uavs}
        cmap = plt.get_cmap("tab20")
        for u in final.uavs:
            ax.add_patch(Circle(u.position, u.coverage_radius_m, fill=True, alpha=0.08, color="tab:blue",
                                gid=f"disk-{u.id}"))
        for i, c in enumerate(final.coalitions):
            points = np.array([pos[m] for m in c.members], dtype=float)
            ax.add_patch(Polygon(_hull(points), closed=True, fill=False, lw=1.5, color=cmap(i % 20),
                                 gid=f"hull-{c.id}"))
            gx, gy = pos[c.ground_leader]
            tx, ty = pos[c.task_leader]
            ax.plot([gx], [gy], marker="^", ms=9, color=cmap(i % 20), gid=f"ground-leader-{c.id}")
            ax.plot([tx], [ty], marker="*", ms=11, color=cmap(i % 20), gid=f"task-leader-{c.id}")
        xy = np.array([u.position for u in final.uavs], dtype=float)
        ax.scatter(xy[:, 0], xy[:, 1], s=12, color="black", zorder=3, gid="uavs")
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_title(f"Coalition layout at step {final.step}")
    return fig


def emit_plot(path: PathLike, kind: str, out: PathLike) -> Path:
    """
    Render one figure to a self-contained SVG.

    Args:
        path: Input file, or a run/comparison directory holding the default input for kind
        kind: convergence (histories.csv), layout (final_state.json) or objective (metrics.csv)
        out: SVG path to write

    Returns:
        The written path

    Raises:
        ParseError: Missing or malformed input
    """
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; expected one of {', '.join(PLOT_KINDS)}")
    source = _resolve_input(path, kind)
    if kind == "convergence":
        fig = plot_convergence(_read_table(source, HISTORY_COLUMNS[:1] + HISTORY_COLUMNS[2:]))
    elif kind == "objective":
        fig = plot_objective(_read_table(source, ["step"] + METRICS_COLUMNS[1:4]))
    else:
        fig = plot_layout(_read_final(source))
    return save_svg(fig, out)


def save_svg(fig: plt.Figure, out: PathLike) -> Path:
    target = Path(out)
    try:
        fig.savefig(target, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    logger.info(f"Wrote {target}")
    return target
