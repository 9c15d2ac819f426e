"""
Free boundary extraction and summary measures.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-08-14
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field
import logging
from typing import Mapping

import numpy as np
from scipy.spatial import cKDTree

# Local Libraries
from porosim.constants.analysis import PointLabel
from porosim.constants.analysis.analysis_constants import FREE_BOUNDARY_MERGE_FACTOR
from porosim.geometry.field import ScalarField
from porosim.solvers.diagnostics import positivity_eps

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FreeBoundarySet:
    """
    Interface points between {u > eps} and {u <= eps}, one array of shape
    (points, dim) per time slice, with one label per point.
    """

    dim: int
    h: tuple[float, ...]
    times: np.ndarray
    points: list[np.ndarray]
    eps: float
    labels: list[list[PointLabel]] = field(default=None)

    def __post_init__(self) -> None:
        if self.labels is None:
            object.__setattr__(
                self,
                "labels",
                [[PointLabel.UNRESOLVED] * len(points) for points in self.points],
            )

    @property
    def count(self) -> int:
        return sum(len(points) for points in self.points)

    @property
    def is_empty(self) -> bool:
        return self.count == 0

    def point(self, time_index: int, point_index: int) -> tuple[float, ...]:
        """Space-time point (x[, y], t)."""
        return (
            *(float(c) for c in self.points[time_index][point_index]),
            float(self.times[time_index]),
        )

    def indices(self) -> list[tuple[int, int]]:
        return [
            (time_index, point_index)
            for time_index, points in enumerate(self.points)
            for point_index in range(len(points))
        ]

    def space_time_points(self) -> np.ndarray:
        rows = [self.point(j, k) for j, k in self.indices()]
        return np.asarray(rows).reshape(-1, self.dim + 1)

    def with_labels(self, labels: Mapping[tuple[int, int], PointLabel]) -> FreeBoundarySet:
        """Copy with the given labels replacing the current ones."""
        updated = [list(slice_labels) for slice_labels in self.labels]
        for (time_index, point_index), label in labels.items():
            updated[time_index][point_index] = label
        return FreeBoundarySet(self.dim, self.h, self.times, self.points, self.eps, updated)


def _edge_crossing(
    values: np.ndarray,
    positive: np.ndarray,
    positive_node: np.ndarray,
    zero_node: np.ndarray,
    axis: int,
    direction: int,
    h: float,
    eps: float,
) -> float:
    """
    Distance from the positive node to the interface along the edge.

    Near a free boundary u grows quadratically, so sqrt(u) is close to linear
    and its zero is extrapolated from the positive node and the next node
    beyond it. Without such a node the level eps is interpolated linearly.
    """
    u_positive = values[tuple(positive_node)]
    beyond = positive_node.copy()
    beyond[axis] += direction
    if 0 <= beyond[axis] < values.shape[axis] and positive[tuple(beyond)]:
        u_beyond = values[tuple(beyond)]
        if u_beyond > u_positive:
            root_positive, root_beyond = np.sqrt(u_positive), np.sqrt(u_beyond)
            return float(np.clip(root_positive * h / (root_beyond - root_positive), 0.0, h))
    u_zero = values[tuple(zero_node)]
    theta = (eps - u_zero) / (u_positive - u_zero)
    return float(np.clip((1.0 - theta) * h, 0.0, h))


def _merge_close(points: np.ndarray, radius: float) -> np.ndarray:
    if len(points) < 2:
        return points
    keep = np.ones(len(points), dtype=bool)
    for first, second in sorted(cKDTree(points).query_pairs(radius)):
        if keep[first] and keep[second]:
            keep[second] = False
    return points[keep]


def extract_free_boundary(u: ScalarField, eps: float | None = None) -> FreeBoundarySet:
    """
    Locates the free boundary on every grid edge whose end nodes lie on
    different sides of eps.

    Args:
        u (ScalarField):
            Trajectory.
        eps (float | None):
            Positivity threshold, 1e-12 max(1, max u) by default.

    Returns:
        FreeBoundarySet:
            Points per slice, sorted lexicographically, labels UNRESOLVED.
    """
    eps = positivity_eps(u) if eps is None else eps
    grid = u.grid
    axes = grid.axes()
    merge_radius = FREE_BOUNDARY_MERGE_FACTOR * min(grid.h)

    slices = []
    for values in u.values:
        positive = values > eps
        found = []
        for axis in range(grid.dim):
            lower = [slice(None)] * grid.dim
            upper = [slice(None)] * grid.dim
            lower[axis] = slice(None, -1)
            upper[axis] = slice(1, None)
            crossings = np.argwhere(positive[tuple(lower)] != positive[tuple(upper)])
            for lower_node in crossings:
                upper_node = lower_node.copy()
                upper_node[axis] += 1
                if positive[tuple(upper_node)]:
                    positive_node, zero_node, direction = upper_node, lower_node, 1
                else:
                    positive_node, zero_node, direction = lower_node, upper_node, -1
                distance = _edge_crossing(
                    values,
                    positive,
                    positive_node,
                    zero_node,
                    axis,
                    direction,
                    grid.h[axis],
                    eps,
                )
                location = [axes[a][positive_node[a]] for a in range(grid.dim)]
                location[axis] -= direction * distance
                found.append(location)

        points = np.asarray(found, dtype=float).reshape(-1, grid.dim)
        if len(points):
            points = points[np.lexsort(points.T[::-1])]
            points = _merge_close(points, merge_radius)
        slices.append(points)

    fb = FreeBoundarySet(grid.dim, grid.h, u.times.copy(), slices, eps)
    logger.info("Free boundary of '%s': %d points in %d slices", u.name, fb.count, len(slices))
    return fb


def free_boundary_measure(u: ScalarField, fb: FreeBoundarySet) -> float:
    """
    Number of space-time nodes within one cell of the free boundary times the
    space-time cell volume prod(h) dt.
    """
    positions = u.grid.positions().reshape(-1, u.grid.dim)
    reach = max(u.grid.h) * (1.0 + 1e-9)
    count = 0
    for points in fb.points:
        if len(points) == 0:
            continue
        distance, _ = cKDTree(points).query(positions, distance_upper_bound=reach)
        count += int(np.count_nonzero(np.isfinite(distance)))
    return count * float(np.prod(u.grid.h)) * u.time_grid.dt


def fit_circle(points: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Algebraic least-squares circle through 2D points.

    Solves x^2 + y^2 = 2 a x + 2 b y + c in the least-squares sense.

    Returns:
        tuple[np.ndarray, float]:
            Centre (a, b) and radius sqrt(c + a^2 + b^2).
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] < 3:
        raise ValueError("A circle fit needs at least three 2D points.")
    design = np.column_stack([2.0 * points, np.ones(len(points))])
    target = np.sum(points**2, axis=1)
    (a, b, c), *_ = np.linalg.lstsq(design, target, rcond=None)
    return np.array([a, b]), float(np.sqrt(c + a**2 + b**2))
