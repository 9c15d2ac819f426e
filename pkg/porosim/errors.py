"""
Exception hierarchy of porosim.

Every error raised on purpose by the package derives from PorosimError, so the
command line front end can map failures onto its exit codes. Errors that reject
malformed input additionally derive from ValueError.

Developer: Dominik I. Braun
Contact: dome.braun@fau.de
Last Update: 2025-07-03
"""

from __future__ import annotations
from typing import Sequence


class PorosimError(Exception):
    """Base class of all porosim errors."""

    def details(self) -> dict[str, object]:
        """
        Machine-readable key/value pairs describing the failure.

        Returns:
            dict[str, object]:
                Attributes that the CLI prints on its error line.
        """
        return {}


class GridError(PorosimError, ValueError):
    """Invalid grid, time grid or field construction."""


class CylinderError(PorosimError, ValueError):
    """A parabolic cylinder leaves the sampled domain or holds no samples."""


class ResamplingError(PorosimError, ValueError):
    """A tabulated field would need extrapolation onto the requested grid."""


class FieldFormatError(PorosimError, ValueError):
    """Malformed field CSV."""

    def __init__(self, message: str, line_number: int | None = None) -> None:
        super().__init__(
            message if line_number is None else f"line {line_number}: {message}"
        )
        self.line_number = line_number

    def details(self) -> dict[str, object]:
        return {"line": self.line_number}


class ConfigError(PorosimError, ValueError):
    """Invalid run configuration. Raised before any computation starts."""


class ConvergenceError(PorosimError):
    """The projected relaxation did not reach its tolerance."""

    def __init__(
        self,
        message: str,
        residual: float,
        iterations: int,
        time_index: int | None = None,
    ) -> None:
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.time_index = time_index

    def details(self) -> dict[str, object]:
        return {
            "time_index": self.time_index,
            "residual": f"{self.residual:.3e}",
            "iterations": self.iterations,
        }


class InstabilityError(PorosimError):
    """The damped wave trajectory blew up."""

    def __init__(self, message: str, cfl_bound: float, time_index: int) -> None:
        super().__init__(message)
        self.cfl_bound = cfl_bound
        self.time_index = time_index

    def details(self) -> dict[str, object]:
        return {"time_index": self.time_index, "cfl_bound": f"{self.cfl_bound:.6g}"}


class ExtrapolationError(PorosimError):
    """The tau -> 0 extrapolation of the Weiss energy did not settle."""

    def __init__(
        self, message: str, tau_values: Sequence[float], values: Sequence[float]
    ) -> None:
        super().__init__(message)
        self.tau_values = list(tau_values)
        self.values = list(values)

    def details(self) -> dict[str, object]:
        return {
            "tau": ";".join(f"{t:.6g}" for t in self.tau_values),
            "W": ";".join(f"{w:.6g}" for w in self.values),
        }


class BlowupWindowError(PorosimError, ValueError):
    """The rescaled blow-up window does not fit into the sampled domain."""

    def __init__(self, message: str, max_lambda: float) -> None:
        super().__init__(message)
        self.max_lambda = max_lambda

    def details(self) -> dict[str, object]:
        return {"max_lambda": f"{self.max_lambda:.6g}"}


class PreconditionError(PorosimError, ValueError):
    """Input that violates the precondition of a diagnostic or reference profile."""


class OracleError(PorosimError):
    """A reference computation found no admissible answer."""
