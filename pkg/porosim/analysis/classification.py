"""
Regular/singular labelling of free boundary points and the structure of the
singular set.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-06
"""

# Python Libraries
from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass, field
import logging
import math
from typing import Mapping, Sequence

import numpy as np
from scipy.spatial import cKDTree

# Local Libraries
from porosim.analysis.blowup import BlowupFit
from porosim.analysis.free_boundary import FreeBoundarySet
from porosim.analysis.weiss import (
    BaseWeissEvaluator,
    FieldWeissEvaluator,
    WeissQuadrature,
    WeissValue,
    compute_A_n,
    weiss_sweep,
)
from porosim.constants.analysis import PointLabel
from porosim.constants.analysis.analysis_constants import (
    CLASSIFICATION_DEFAULTS_DICT,
    ISOLATION_CELLS,
    KERNEL_EIGEN_THRESHOLD,
)
from porosim.errors import PreconditionError
from porosim.geometry.field import ScalarField

logger: logging.Logger = logging.getLogger(__name__)


def default_tau_sequence(
    u: ScalarField,
    z_star: Sequence[float],
    n_tau: int = CLASSIFICATION_DEFAULTS_DICT["n_tau"],
    min_tau_cells: int = CLASSIFICATION_DEFAULTS_DICT["min_tau_cells"],
) -> list[float]:
    """
    tau_max 2^-k for k < n_tau, keeping values of at least min_tau_cells cells.

    tau_max is the largest scale whose Weiss region fits into the sampled
    domain.

    Raises:
        PreconditionError:
            If no admissible tau remains.
    """
    grid = u.grid
    space = min(
        min(x - lo, hi - x) for x, lo, hi in zip(z_star[:-1], grid.origin, grid.upper)
    )
    elapsed = z_star[-1] - u.time_grid.t0
    tau_max = (1.0 - 1e-9) * min(space, math.sqrt(max(elapsed, 0.0) / 4.0))
    smallest = min_tau_cells * max(grid.h)
    taus = [tau_max * 2.0**-k for k in range(n_tau)]
    taus = [tau for tau in taus if tau >= smallest and tau > 0]
    if not taus:
        raise PreconditionError(
            f"No Weiss scale of at least {smallest:g} fits around {tuple(z_star)} "
            f"(largest {tau_max:g})."
        )
    return taus


def label_from_ratio(
    ratio: float, threshold: float = CLASSIFICATION_DEFAULTS_DICT["threshold"]
) -> PointLabel:
    if abs(ratio - 1.0) < threshold:
        return PointLabel.REGULAR
    if abs(ratio - 2.0) < threshold:
        return PointLabel.SINGULAR
    return PointLabel.UNRESOLVED


def classify_point(
    u: ScalarField,
    f: ScalarField,
    z_star: Sequence[float],
    tau_values: Sequence[float] | None = None,
    threshold: float = CLASSIFICATION_DEFAULTS_DICT["threshold"],
    quadrature: WeissQuadrature | None = None,
    evaluator: BaseWeissEvaluator | None = None,
) -> tuple[PointLabel, WeissValue]:
    """
    Labels a free boundary point by its extrapolated Weiss limit.

    Args:
        u (ScalarField):
            Trajectory.
        f (ScalarField):
            Force density in the statement convention.
        z_star (Sequence[float]):
            Free boundary point (x[, y], t).
        tau_values (Sequence[float] | None):
            Strictly decreasing scales; `default_tau_sequence` when None.
        threshold (float):
            Half width of the bands around 1 and 2 accepted for the ratio.
        quadrature (WeissQuadrature | None):
            Quadrature for W and A_n.
        evaluator (BaseWeissEvaluator | None):
            Prebuilt evaluator shared between points.

    Returns:
        tuple[PointLabel, WeissValue]:
            REGULAR for ratios near 1, SINGULAR near 2, UNRESOLVED otherwise.
    """
    quadrature = quadrature or WeissQuadrature(u.grid.dim)
    evaluator = evaluator or FieldWeissEvaluator(u, f)
    if tau_values is None:
        tau_values = default_tau_sequence(u, z_star)
    value = weiss_sweep(
        evaluator, z_star, tau_values, quadrature, compute_A_n(u.grid.dim, quadrature)
    )
    label = label_from_ratio(value.ratio, threshold)
    logger.debug("%s: W ratio %.4f -> %s", value.point, value.ratio, label.name)
    return label, value


@dataclass(frozen=True)
class SingularPointRecord:
    time_index: int
    point_index: int
    point: tuple[float, ...]
    kernel_dim: int
    rank: int
    isolated: bool


@dataclass(frozen=True)
class SingularStructureReport:
    """
    Singular points of a free boundary with the rank of their blow-up matrix M
    and kernel_dim = n - rank.

    rank_strata groups by rank M, the count of eigenvalues above the threshold;
    the isolation check applies to rank n. kernel_strata groups the same records
    by dim Kern M.
    """

    n_points: int
    records: list[SingularPointRecord] = field(default_factory=list)
    per_slice_counts: dict[int, int] = field(default_factory=dict)

    @property
    def is_empty(self) -> bool:
        return not self.records

    def _grouped(self, key: str) -> dict[int, list[SingularPointRecord]]:
        groups: dict[int, list[SingularPointRecord]] = defaultdict(list)
        for record in self.records:
            groups[getattr(record, key)].append(record)
        return dict(groups)

    @property
    def rank_strata(self) -> dict[int, list[SingularPointRecord]]:
        return self._grouped("rank")

    @property
    def kernel_strata(self) -> dict[int, list[SingularPointRecord]]:
        return self._grouped("kernel_dim")


def matrix_rank(M: np.ndarray, threshold: float = KERNEL_EIGEN_THRESHOLD) -> int:
    """Number of eigenvalues with |mu| >= threshold max |mu|."""
    eigenvalues = np.abs(np.linalg.eigvalsh(np.asarray(M, dtype=float)))
    largest = float(eigenvalues.max())
    if largest == 0.0:
        return 0
    return int(np.count_nonzero(eigenvalues >= threshold * largest))


def singular_structure(
    fb: FreeBoundarySet,
    fits: Mapping[tuple[int, int], BlowupFit],
    isolation_cells: int = ISOLATION_CELLS,
) -> SingularStructureReport:
    """
    Groups the SINGULAR points of fb by the rank of their fitted M and checks
    that points of the top stratum S(n) have no other singular point within
    isolation_cells cells.

    Args:
        fb (FreeBoundarySet):
            Labelled free boundary.
        fits (Mapping[tuple[int, int], BlowupFit]):
            Blow-up fit per (slice, point) index.
        isolation_cells (int):
            Isolation radius in cells.

    Returns:
        SingularStructureReport:
            Empty records when fb has no singular point.
    """
    radius = isolation_cells * max(fb.h)
    records = []
    per_slice_counts: dict[int, int] = {}
    for time_index, (points, labels) in enumerate(zip(fb.points, fb.labels)):
        singular = [k for k, label in enumerate(labels) if label == PointLabel.SINGULAR]
        if not singular:
            continue
        per_slice_counts[time_index] = len(singular)
        tree = cKDTree(points[singular])
        for position, point_index in enumerate(singular):
            fit = fits.get((time_index, point_index))
            if fit is None or not np.all(np.isfinite(fit.M)):
                logger.warning(
                    "Singular point %s has no polynomial fit; left out of the strata.",
                    fb.point(time_index, point_index),
                )
                continue
            rank = matrix_rank(fit.M)
            neighbours = tree.query_ball_point(points[point_index], radius)
            records.append(
                SingularPointRecord(
                    time_index=time_index,
                    point_index=point_index,
                    point=fb.point(time_index, point_index),
                    kernel_dim=fb.dim - rank,
                    rank=rank,
                    isolated=len([n for n in neighbours if n != position]) == 0,
                )
            )
    return SingularStructureReport(
        n_points=fb.count, records=records, per_slice_counts=per_slice_counts
    )
