"""
Spot check of the non-degeneracy and Hoelder continuity of a force density.
Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-28
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass
import logging

import numpy as np

# Local Libraries
from porosim.constants.forcing.forcing_constants import ADMISSIBILITY_DEFAULTS_DICT
from porosim.geometry.field import ScalarField

logger: logging.Logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdmissibilityResult:
    delta0: float
    holder_const: float
    ok: bool
    n_pairs: int
    exhaustive: bool


def _sample_points(f: ScalarField) -> tuple[np.ndarray, np.ndarray]:
    grid = f.grid
    positions = np.broadcast_to(
        grid.positions()[np.newaxis], (f.time_grid.n_steps + 1, *grid.shape, grid.dim)
    )
    times = np.broadcast_to(
        f.times.reshape((-1,) + (1,) * grid.dim), (f.time_grid.n_steps + 1, *grid.shape)
    )
    points = np.concatenate([positions, times[..., np.newaxis]], axis=-1)
    return points.reshape(-1, grid.dim + 1), f.values.reshape(-1)


def _neighbour_pairs(f: ScalarField) -> tuple[np.ndarray, np.ndarray]:
    flat = np.arange(f.values.size).reshape(f.values.shape)
    first, second = [], []
    for axis in range(flat.ndim):
        lower = [slice(None)] * flat.ndim
        upper = [slice(None)] * flat.ndim
        lower[axis] = slice(None, -1)
        upper[axis] = slice(1, None)
        first.append(flat[tuple(lower)].reshape(-1))
        second.append(flat[tuple(upper)].reshape(-1))
    return np.concatenate(first), np.concatenate(second)


def holder_quotients(
    points: np.ndarray, values: np.ndarray, i: np.ndarray, j: np.ndarray, alpha: float
) -> np.ndarray:
    """
    |f(z_i) - f(z_j)| / (|x_i - x_j|^2 + |t_i - t_j|^2)^(alpha / 2) per pair.
    """
    distance = np.sum((points[i] - points[j]) ** 2, axis=-1) ** (alpha / 2.0)
    return np.abs(values[i] - values[j]) / distance


def check_admissible(
    f: ScalarField,
    alpha: float,
    max_pairs: int = ADMISSIBILITY_DEFAULTS_DICT["max_pairs"],
    seed: int = ADMISSIBILITY_DEFAULTS_DICT["seed"],
) -> AdmissibilityResult:
    """
    Estimates delta0 = min f and the Hoelder constant of f on sampled pairs.

    Every pair of samples is visited when there are at most `max_pairs` of them.
    Otherwise the first points are stratified over the samples, the partners are
    drawn uniformly with a seeded generator, and all pairs of grid neighbours in
    space and time are added.

    Args:
        f (ScalarField):
            Force density in the convention of the normalized statement.
        alpha (float):
            Hoelder exponent in (0, 1).
        max_pairs (int):
            Pair budget.
        seed (int):
            Seed of the pair sample.

    Returns:
        AdmissibilityResult:
            delta0, the Hoelder constant estimate and ok = delta0 > 0 with a
            finite constant.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}.")
    points, values = _sample_points(f)
    n_samples = values.size
    delta0 = float(values.min())

    total_pairs = n_samples * (n_samples - 1) // 2
    exhaustive = total_pairs <= max_pairs
    if exhaustive:
        i, j = np.triu_indices(n_samples, k=1)
    else:
        rng = np.random.default_rng(seed)
        strata = (np.arange(max_pairs) + rng.random(max_pairs)) / max_pairs
        i = np.minimum((strata * n_samples).astype(int), n_samples - 1)
        j = rng.integers(0, n_samples, size=max_pairs)
        keep = i != j
        i_nb, j_nb = _neighbour_pairs(f)
        i = np.concatenate([i[keep], i_nb])
        j = np.concatenate([j[keep], j_nb])

    quotients = holder_quotients(points, values, i, j, alpha)
    holder_const = float(quotients.max()) if quotients.size else 0.0
    ok = delta0 > 0 and bool(np.isfinite(holder_const))
    logger.debug(
        "Admissibility of '%s': delta0=%.3e, holder=%.3e over %d pairs (%s)",
        f.name,
        delta0,
        holder_const,
        i.size,
        "exhaustive" if exhaustive else "sampled",
    )
    return AdmissibilityResult(delta0, holder_const, ok, int(i.size), exhaustive)
