"""
Weiss energy of a trajectory at a free boundary point,

    W(tau) = tau^-4 int_{t*-4tau^2}^{t*-tau^2} int_{|x-x*|<tau}
             (|grad u|^2 + 2 f u + u^2 / (t - t*)) G(x - x*, t* - t) dx dt,

with G the heat kernel (4 pi s)^(-n/2) exp(-|y|^2 / (4 s)).

The integral is evaluated in the scaled variables x = x* + tau xi,
t = t* - tau^2 sigma, sigma in [1, 4], |xi| < 1, with composite Simpson rules
(polar coordinates in 2D).

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-10-13
"""

# Python Libraries
from __future__ import annotations
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
import logging
import math
from typing import Sequence

import numpy as np
from scipy.integrate import simpson

# Local Libraries
from porosim.constants.analysis.analysis_constants import (
    EXTRAPOLATION_DEFAULTS_DICT,
    WEISS_QUADRATURE_DEFAULTS_DICT,
)
from porosim.errors import CylinderError, ExtrapolationError, PreconditionError
from porosim.geometry.field import ScalarField

logger: logging.Logger = logging.getLogger(__name__)


def heat_kernel(y: np.ndarray, s: np.ndarray | float) -> np.ndarray:
    """G(y, s) for points y of shape (..., n) and s > 0."""
    y = np.asarray(y, dtype=float)
    s = np.asarray(s, dtype=float)
    n = y.shape[-1]
    return (4.0 * math.pi * s) ** (-n / 2.0) * np.exp(-np.sum(y**2, axis=-1) / (4.0 * s))


@dataclass(frozen=True)
class WeissQuadrature:
    """
    Simpson nodes of the scaled Weiss integral.

    In 1D xi runs over [-1, 1] with 2 n_radial - 1 nodes; in 2D the disc is
    covered by n_radial radii in [0, 1] and n_theta + 1 angles in [0, 2 pi].
    """

    dim: int
    n_sigma: int = WEISS_QUADRATURE_DEFAULTS_DICT["n_sigma"]
    n_radial: int = WEISS_QUADRATURE_DEFAULTS_DICT["n_radial"]
    n_theta: int = WEISS_QUADRATURE_DEFAULTS_DICT["n_theta"]

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ValueError(f"The Weiss quadrature is defined for n = 1, 2, got {self.dim}.")
        if self.n_sigma < 3 or self.n_sigma % 2 == 0:
            raise ValueError("n_sigma must be odd and at least 3.")
        if self.n_radial < 3 or self.n_radial % 2 == 0:
            raise ValueError("n_radial must be odd and at least 3.")
        if self.n_theta < 4 or self.n_theta % 2:
            raise ValueError("n_theta must be even and at least 4.")

    def refined(self) -> WeissQuadrature:
        """Quadrature with every node spacing halved."""
        return WeissQuadrature(
            self.dim, 2 * self.n_sigma - 1, 2 * self.n_radial - 1, 2 * self.n_theta
        )

    @property
    def sigma(self) -> np.ndarray:
        return np.linspace(1.0, 4.0, self.n_sigma)

    def spatial_nodes(self) -> np.ndarray:
        """Scaled positions xi of shape (*spatial_shape, dim)."""
        if self.dim == 1:
            return np.linspace(-1.0, 1.0, 2 * self.n_radial - 1)[:, np.newaxis]
        radius = np.linspace(0.0, 1.0, self.n_radial)[:, np.newaxis]
        theta = np.linspace(0.0, 2.0 * math.pi, self.n_theta + 1)[np.newaxis, :]
        return np.stack([radius * np.cos(theta), radius * np.sin(theta)], axis=-1)

    def integrate(self, values: np.ndarray) -> float:
        """Integral of values sampled on (sigma, *spatial_shape)."""
        if self.dim == 1:
            xi = np.linspace(-1.0, 1.0, 2 * self.n_radial - 1)
            spatial = simpson(values, x=xi, axis=1)
        else:
            radius = np.linspace(0.0, 1.0, self.n_radial)
            theta = np.linspace(0.0, 2.0 * math.pi, self.n_theta + 1)
            angular = simpson(values, x=theta, axis=2)
            spatial = simpson(angular * radius, x=radius, axis=1)
        return float(simpson(spatial, x=self.sigma))


class BaseWeissEvaluator(ABC):
    """
    Source of u, grad u and f at arbitrary space-time points.

    Points have shape (..., dim + 1) with the time coordinate first.
    """

    dim: int

    @abstractmethod
    def u(self, points: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def grad(self, points: np.ndarray) -> np.ndarray:
        """Spatial gradient, shape (..., dim)."""
        pass

    @abstractmethod
    def f(self, points: np.ndarray) -> np.ndarray:
        pass

    def check_region(self, z_star: Sequence[float], tau: float) -> None:
        """Raises CylinderError when the integration region is not sampled."""
        pass

    def energy(
        self, z_star: Sequence[float], tau: float, quadrature: WeissQuadrature
    ) -> float:
        if not tau > 0:
            raise PreconditionError(f"tau must be positive, got {tau}.")
        self.check_region(z_star, tau)
        sigma = quadrature.sigma.reshape((-1,) + (1,) * self.dim)
        xi = quadrature.spatial_nodes()
        x = np.asarray(z_star[:-1], dtype=float) + tau * xi
        t = z_star[-1] - tau**2 * sigma
        points = np.concatenate(
            [
                np.broadcast_to(t[..., np.newaxis], (*t.shape[:1], *xi.shape[:-1], 1)),
                np.broadcast_to(x, (sigma.shape[0], *x.shape)),
            ],
            axis=-1,
        )
        u = self.u(points)
        gradient = self.grad(points)
        integrand = (
            np.sum(gradient**2, axis=-1)
            + 2.0 * self.f(points) * u
            - u**2 / (tau**2 * sigma)
        ) * heat_kernel(tau * xi, tau**2 * sigma)
        # dx dt = tau^(n + 2) dxi dsigma
        return tau ** (self.dim - 2) * quadrature.integrate(integrand)


class FieldWeissEvaluator(BaseWeissEvaluator):
    """
    Linear interpolation of a sampled trajectory, its np.gradient derivatives
    and a sampled force density in the statement convention.
    """

    def __init__(self, u: ScalarField, f: ScalarField) -> None:
        u.require_same_support(f)
        self.dim = u.grid.dim
        self._field = u
        self._u = u.interpolator()
        self._f = f.interpolator()
        space_axes = tuple(range(1, self.dim + 1))
        gradients = np.gradient(u.values, *u.grid.h, axis=space_axes, edge_order=2)
        if self.dim == 1:
            gradients = [gradients]
        self._grad = [u.interpolator(gradient) for gradient in gradients]

    def u(self, points: np.ndarray) -> np.ndarray:
        return self._u(points)

    def grad(self, points: np.ndarray) -> np.ndarray:
        return np.stack([component(points) for component in self._grad], axis=-1)

    def f(self, points: np.ndarray) -> np.ndarray:
        return self._f(points)

    def check_region(self, z_star: Sequence[float], tau: float) -> None:
        grid, time_grid = self._field.grid, self._field.time_grid
        space_tol = 1e-9 * min(grid.h)
        time_tol = 1e-9 * time_grid.dt
        for axis, (x, lo, hi) in enumerate(zip(z_star[:-1], grid.origin, grid.upper)):
            if x - tau < lo - space_tol or x + tau > hi + space_tol:
                raise CylinderError(
                    f"Weiss region of tau = {tau:g} leaves the domain along axis {axis}."
                )
        if (
            z_star[-1] - 4.0 * tau**2 < time_grid.t0 - time_tol
            or z_star[-1] - tau**2 > time_grid.t_end + time_tol
        ):
            raise CylinderError(
                f"Weiss window ({z_star[-1] - 4.0 * tau**2:g}, {z_star[-1] - tau**2:g}) "
                f"leaves [{time_grid.t0:g}, {time_grid.t_end:g}]."
            )


class HalfSpaceWeissEvaluator(BaseWeissEvaluator):
    """Closed form 1/2 ((x - x*) . e)_+^2 with f = 1."""

    def __init__(self, e: Sequence[float], center: Sequence[float] | None = None) -> None:
        e = np.asarray(e, dtype=float)
        if abs(np.linalg.norm(e) - 1.0) > 1e-12:
            raise PreconditionError(f"e must be a unit vector, got {tuple(e)}.")
        self.dim = e.size
        self._e = e
        self._center = np.zeros(self.dim) if center is None else np.asarray(center, float)

    def _projection(self, points: np.ndarray) -> np.ndarray:
        return np.maximum((points[..., 1:] - self._center) @ self._e, 0.0)

    def u(self, points: np.ndarray) -> np.ndarray:
        return 0.5 * self._projection(points) ** 2

    def grad(self, points: np.ndarray) -> np.ndarray:
        return self._projection(points)[..., np.newaxis] * self._e

    def f(self, points: np.ndarray) -> np.ndarray:
        return np.ones(points.shape[:-1])


def weiss_energy(
    u: ScalarField,
    f: ScalarField,
    z_star: Sequence[float],
    tau: float,
    quadrature: WeissQuadrature | None = None,
    evaluator: BaseWeissEvaluator | None = None,
) -> float:
    """
    W(tau) at a free boundary point.

    The Simpson nodes sit on the same scaled lattice for every tau, so the
    quadrature error is an offset that does not change with tau. The tau
    dependence left is the first-order term richardson_extrapolate removes,
    and that order is the same for the Simpson rule as for the trapezoid rule.

    Args:
        u (ScalarField):
            Trajectory.
        f (ScalarField):
            Force density in the statement convention, on u's grid.
        z_star (Sequence[float]):
            Point (x[, y], t).
        tau (float):
            Scale of the integration region.
        quadrature (WeissQuadrature | None):
            Quadrature, the defaults for u's dimension when None.
        evaluator (BaseWeissEvaluator | None):
            Prebuilt evaluator of (u, f), reused across a tau sweep.

    Returns:
        float:
            W(tau).

    Raises:
        CylinderError:
            If the region (t* - 4 tau^2, t* - tau^2) x {|x - x*| < tau} is not
            inside the sampled domain.
    """
    evaluator = evaluator or FieldWeissEvaluator(u, f)
    quadrature = quadrature or WeissQuadrature(u.grid.dim)
    return evaluator.energy(z_star, tau, quadrature)


def richardson_extrapolate(
    tau_values: Sequence[float], values: Sequence[float]
) -> tuple[float, float]:
    """
    Limit tau -> 0 of values assumed linear in tau. The quadrature error of
    weiss_energy does not depend on tau and passes through unchanged.

    Each consecutive pair (tau_a, W_a), (tau_b, W_b) gives the estimate
    (tau_a W_b - tau_b W_a) / (tau_a - tau_b).

    Returns:
        tuple[float, float]:
            The last estimate and the change from the previous one (or from
            the last value when only one estimate exists, NaN for a single
            value).
    """
    if len(tau_values) != len(values) or not values:
        raise ValueError("tau_values and values must be non-empty and aligned.")
    if len(values) == 1:
        return float(values[0]), math.nan
    estimates = [
        (tau_a * w_b - tau_b * w_a) / (tau_a - tau_b)
        for tau_a, tau_b, w_a, w_b in zip(tau_values, tau_values[1:], values, values[1:])
    ]
    previous = estimates[-2] if len(estimates) > 1 else values[-1]
    return float(estimates[-1]), float(abs(estimates[-1] - previous))


@dataclass(frozen=True)
class WeissValue:
    point: tuple[float, ...]
    tau_values: list[float]
    W_values: list[float]
    extrapolated_limit: float
    A_n: float
    ratio: float
    extrapolation_residual: float


def weiss_sweep(
    evaluator: BaseWeissEvaluator,
    z_star: Sequence[float],
    tau_values: Sequence[float],
    quadrature: WeissQuadrature,
    A_n: float,
) -> WeissValue:
    """W over a strictly decreasing tau sequence and its extrapolated limit."""
    tau_values = [float(tau) for tau in tau_values]
    if any(b >= a for a, b in zip(tau_values, tau_values[1:])):
        raise PreconditionError("tau values must be strictly decreasing.")
    values = [evaluator.energy(z_star, tau, quadrature) for tau in tau_values]
    limit, residual = richardson_extrapolate(tau_values, values)
    return WeissValue(
        point=tuple(float(c) for c in z_star),
        tau_values=tau_values,
        W_values=values,
        extrapolated_limit=limit,
        A_n=A_n,
        ratio=limit / A_n,
        extrapolation_residual=residual,
    )


@lru_cache(maxsize=None)
def _half_space_constant(
    n: int, n_sigma: int, n_radial: int, n_theta: int, e: tuple[float, ...]
) -> float:
    quadrature = WeissQuadrature(n, n_sigma, n_radial, n_theta)
    evaluator = HalfSpaceWeissEvaluator(e)
    tau_values = [0.5, 0.25, 0.125]
    z_star = (0.0,) * n + (0.0,)
    values = [evaluator.energy(z_star, tau, quadrature) for tau in tau_values]
    limit, residual = richardson_extrapolate(tau_values, values)
    if not residual <= EXTRAPOLATION_DEFAULTS_DICT["rtol"] * abs(limit):
        raise ExtrapolationError(
            f"Weiss energy of the half-space profile did not settle (change {residual:.3e}).",
            tau_values=tau_values,
            values=values,
        )
    return limit


def compute_A_n(
    n: int,
    quadrature: WeissQuadrature | None = None,
    e: Sequence[float] | None = None,
) -> float:
    """
    A_n, the Weiss limit of the half-space profile 1/2 ((x . e)_+)^2 with f = 1.

    Args:
        n (int):
            Space dimension, 1 or 2.
        quadrature (WeissQuadrature | None):
            Quadrature settings, the defaults when None.
        e (Sequence[float] | None):
            Normal of the half space, the first axis when None.

    Returns:
        float:
            The extrapolated constant.

    Raises:
        ExtrapolationError:
            If the tau sequence does not settle within the relative tolerance.
    """
    quadrature = quadrature or WeissQuadrature(n)
    if quadrature.dim != n:
        raise ValueError(f"Quadrature of dimension {quadrature.dim} used for n = {n}.")
    e = tuple(float(c) for c in (np.eye(n)[0] if e is None else e))
    value = _half_space_constant(
        n, quadrature.n_sigma, quadrature.n_radial, quadrature.n_theta, e
    )
    logger.debug("A_%d = %.8f", n, value)
    return value
