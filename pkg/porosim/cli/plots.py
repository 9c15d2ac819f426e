"""
SVG figures of trajectories and their free boundary.
"""

# Python Libraries
from __future__ import annotations
import logging
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

# Local Libraries
from porosim.analysis.free_boundary import FreeBoundarySet
from porosim.constants.analysis import PointLabel
from porosim.constants.plots.plot_constants import (
    CONTOUR_COLORMAP,
    FIGURE_SETTINGS_DICT,
    FREE_BOUNDARY_COLOR,
    MAX_PLOTTED_SLICES,
    SINGULAR_POINT_COLOR,
    SLICE_PALETTE,
    SVG_HASH_SALT,
    SVG_SAVE_SETTINGS_DICT,
)
from porosim.geometry.field import ScalarField

logger: logging.Logger = logging.getLogger(__name__)


def plotted_slices(n_slices: int) -> list[int]:
    """Evenly spread slice indices, always including the first and the last."""
    count = min(n_slices, MAX_PLOTTED_SLICES)
    return sorted({int(round(i)) for i in np.linspace(0, n_slices - 1, count)})


def _singular_points(fb: FreeBoundarySet) -> np.ndarray:
    rows = [
        fb.point(j, k)
        for j, k in fb.indices()
        if fb.labels[j][k] == PointLabel.SINGULAR
    ]
    return np.asarray(rows).reshape(-1, fb.dim + 1)


def _save(figure: plt.Figure, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
        figure.savefig(path, **SVG_SAVE_SETTINGS_DICT)
    plt.close(figure)
    logger.info("Wrote %s", path)
    return path


def plot_trajectory(
    u: ScalarField, fb: FreeBoundarySet | None, path: str | Path, title: str = ""
) -> Path:
    """
    Profiles of selected slices with the free boundary.

    1D trajectories show u(x) per slice next to the free boundary in the (x, t)
    plane; 2D trajectories show filled contours of the last slice with the
    free boundary points of that slice. Singular points are marked.
    """
    if u.grid.dim == 1:
        figure = _plot_1d(u, fb)
    else:
        figure = _plot_2d(u, fb)
    if title:
        figure.suptitle(title)
    return _save(figure, Path(path))


def _plot_1d(u: ScalarField, fb: FreeBoundarySet | None) -> plt.Figure:
    figure, (profile_axes, boundary_axes) = plt.subplots(1, 2, **FIGURE_SETTINGS_DICT)
    x = u.grid.axes()[0]
    for color_index, time_index in enumerate(plotted_slices(u.time_grid.n_steps + 1)):
        profile_axes.plot(
            x,
            u.values[time_index],
            color=SLICE_PALETTE[color_index % len(SLICE_PALETTE)],
            label=f"t = {u.times[time_index]:.3g}",
        )
    profile_axes.set_xlabel("x")
    profile_axes.set_ylabel(u.name)
    profile_axes.legend(fontsize="small")

    if fb is not None and not fb.is_empty:
        points = fb.space_time_points()
        boundary_axes.scatter(points[:, 0], points[:, 1], s=2, color=FREE_BOUNDARY_COLOR)
        singular = _singular_points(fb)
        if len(singular):
            boundary_axes.scatter(
                singular[:, 0], singular[:, 1], s=20, marker="x", color=SINGULAR_POINT_COLOR
            )
    boundary_axes.set_xlim(x[0], x[-1])
    boundary_axes.set_ylim(u.times[0], u.times[-1])
    boundary_axes.set_xlabel("x")
    boundary_axes.set_ylabel("t")
    figure.tight_layout()
    return figure


def _plot_2d(u: ScalarField, fb: FreeBoundarySet | None) -> plt.Figure:
    figure, axes = plt.subplots(1, 1, **FIGURE_SETTINGS_DICT)
    x, y = u.grid.coordinates()
    contours = axes.contourf(x, y, u.values[-1], levels=12, cmap=CONTOUR_COLORMAP)
    figure.colorbar(contours, ax=axes, label=u.name)
    if fb is not None and len(fb.points[-1]):
        last = fb.points[-1]
        axes.scatter(last[:, 0], last[:, 1], s=2, color=FREE_BOUNDARY_COLOR)
        singular = _singular_points(fb)
        singular = singular[np.isclose(singular[:, -1], fb.times[-1])]
        if len(singular):
            axes.scatter(
                singular[:, 0], singular[:, 1], s=20, marker="x", color=SINGULAR_POINT_COLOR
            )
    axes.set_aspect("equal")
    axes.set_xlabel("x")
    axes.set_ylabel("y")
    axes.set_title(f"t = {u.times[-1]:.3g}")
    figure.tight_layout()
    return figure
