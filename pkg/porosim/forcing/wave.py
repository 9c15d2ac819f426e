"""
Travelling electromagnetic field wave and the Lorentz force it exerts on the
charged head groups of the membrane.

Positions are 3-vectors; 1D and 2D membrane coordinates are embedded as
(x, 0, 0) and (x, y, 0).

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-21
"""

# Python Libraries
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


def _vector(value: Sequence[float] | np.ndarray, name: str) -> np.ndarray:
    vector = np.asarray(value, dtype=float).reshape(-1)
    if vector.size > 3:
        raise ValueError(f"{name} has {vector.size} components, at most 3 allowed.")
    vector = np.pad(vector, (0, 3 - vector.size))
    vector.setflags(write=False)
    return vector


def embed_positions(positions: np.ndarray) -> np.ndarray:
    """
    Pads membrane coordinates (..., dim) with zeros to (..., 3).
    """
    positions = np.asarray(positions, dtype=float)
    if positions.ndim == 0:
        positions = positions.reshape(1)
    pad = [(0, 0)] * (positions.ndim - 1) + [(0, 3 - positions.shape[-1])]
    return np.pad(positions, pad)


@dataclass(frozen=True, eq=False)
class WaveForcingParams:
    """
    Parameters of B(x, t) = B_hat cos(k . x - |k| v t) + B_dc and of the Lorentz
    force F = q E0 + q (v_vec x B) - gamma v_vec.

    Attributes:
        B_hat (np.ndarray):
            Flux density amplitude in T.
        k_vec (np.ndarray):
            Wave vector in 1/m, non-zero.
        v (float):
            Propagation speed in m/s along k_vec / |k_vec|.
        B_dc (np.ndarray):
            Background flux density in T.
        E0 (np.ndarray):
            Background electric field in V/m, zero by default.
        q (float):
            Total charge of the carriers in C, negative for lipid head groups.
        gamma (float):
            Friction coefficient in kg/s.
        f_osc (float):
            Oscillation frequency in Hz.
    """

    B_hat: np.ndarray
    k_vec: np.ndarray
    v: float
    B_dc: np.ndarray = field(default_factory=lambda: np.zeros(3))
    E0: np.ndarray = field(default_factory=lambda: np.zeros(3))
    q: float = 0.0
    gamma: float = 0.0
    f_osc: float = 0.0

    def __post_init__(self) -> None:
        for name in ("B_hat", "k_vec", "B_dc", "E0"):
            object.__setattr__(self, name, _vector(getattr(self, name), name))
        if not np.linalg.norm(self.k_vec) > 0:
            raise ValueError("The wave vector k_vec must be non-zero.")
        if not self.v >= 0:
            raise ValueError(f"Wave speed v must be non-negative, got {self.v}.")
        if not self.gamma >= 0:
            raise ValueError(f"Friction gamma must be non-negative, got {self.gamma}.")
        if not self.f_osc >= 0:
            raise ValueError(f"Frequency f_osc must be non-negative, got {self.f_osc}.")

    @property
    def k(self) -> float:
        return float(np.linalg.norm(self.k_vec))

    @property
    def direction(self) -> np.ndarray:
        return self.k_vec / self.k

    @property
    def velocity(self) -> np.ndarray:
        """Wave propagation velocity vector v * k_vec / |k_vec|."""
        return self.v * self.direction

    @property
    def omega(self) -> float:
        return 2.0 * np.pi * self.f_osc

    def phase(self, x: np.ndarray, t: np.ndarray | float) -> np.ndarray:
        return embed_positions(x) @ self.k_vec - self.k * self.v * np.asarray(t)


def b_field(x: np.ndarray, t: np.ndarray | float, p: WaveForcingParams) -> np.ndarray:
    """
    Magnetic flux density of the travelling wave.

    Args:
        x (np.ndarray):
            Positions (..., dim) with dim <= 3.
        t (np.ndarray | float):
            Times broadcastable against x[..., 0].
        p (WaveForcingParams):
            Wave parameters.

    Returns:
        np.ndarray:
            B(x, t) in T, shape (..., 3).
    """
    return np.cos(p.phase(x, t))[..., np.newaxis] * p.B_hat + p.B_dc


def e_field(x: np.ndarray, t: np.ndarray | float, p: WaveForcingParams) -> np.ndarray:
    """Induced electric field v_vec x B(x, t) in V/m."""
    return np.cross(p.velocity, b_field(x, t, p))


def lorentz_force(p: WaveForcingParams, x: np.ndarray, t: np.ndarray | float) -> np.ndarray:
    """
    Lorentz force with propagation friction, q E0 + q (v_vec x B) - gamma v_vec.

    Returns:
        np.ndarray:
            Force in N, shape (..., 3).
    """
    return p.q * p.E0 + p.q * e_field(x, t, p) - p.gamma * p.velocity
