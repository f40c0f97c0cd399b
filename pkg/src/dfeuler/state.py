"""Gas model, uniform grids, and conversions between conserved and primitive
Euler variables.

Fields are stored structure-of-arrays: component axis first, grid axes after,
padded with ``NG`` ghost layers per side.  1-D fields hold (rho, rho*u, E),
2-D fields (rho, rho*u, rho*v, E); the primitive counterparts are (rho, u, p)
and (rho, u, v, p).  All functions are pure and broadcast over trailing axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Ghost layer count.  The corrected flux at a boundary interface needs
# finite-volume fluxes two interfaces out, whose interpolation stencils reach
# five cells past the boundary; five layers make every physical-interface
# computation stencil-complete.
NG = 5


class ConfigError(ValueError):
    """Invalid run configuration."""


class StateError(ValueError):
    """Physically meaningless state (zero density) in a conversion."""


class SolverError(RuntimeError):
    """Fatal solver failure; carries a diagnostic payload."""

    def __init__(self, msg, payload=None):
        super().__init__(msg)
        self.payload = payload or {}


class PositivityError(SolverError):
    """Nonpositive density or pressure where the conservative solver needs
    an admissible state."""


@dataclass(frozen=True)
class GasModel:
    """Ideal gas, E = p/(gamma-1) + rho*|vel|^2/2."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")


@dataclass(frozen=True)
class Grid:
    """Uniform Cartesian grid; ny = 0 selects 1-D.

    Cell centers are x_j = xmin + (j - 1/2) dx for j = 1..nx (same along y).
    """

    nx: int
    xmin: float
    xmax: float
    ny: int = 0
    ymin: float = 0.0
    ymax: float = 0.0

    @property
    def ndim(self) -> int:
        return 2 if self.ny else 1

    @property
    def ncomp(self) -> int:
        return 4 if self.ny else 3

    @property
    def dx(self) -> float:
        return (self.xmax - self.xmin) / self.nx

    @property
    def dy(self) -> float:
        return (self.ymax - self.ymin) / self.ny

    def centers_x(self):
        return self.xmin + (np.arange(self.nx) + 0.5) * self.dx

    def centers_y(self):
        return self.ymin + (np.arange(self.ny) + 0.5) * self.dy

    @property
    def interior(self):
        """Index tuple selecting physical cells of a padded field."""
        if self.ndim == 1:
            return (slice(None), slice(NG, NG + self.nx))
        return (slice(None), slice(NG, NG + self.nx), slice(NG, NG + self.ny))

    def alloc(self):
        """Zero padded field with the grid's component count."""
        if self.ndim == 1:
            return np.zeros((3, self.nx + 2 * NG))
        return np.zeros((4, self.nx + 2 * NG, self.ny + 2 * NG))


def cons_to_prim(U, gas: GasModel):
    """(rho, m.., E) -> (rho, vel.., p); p = (gamma-1)(E - |m|^2 / (2 rho)).

    Raises StateError on exactly-zero density (reports offending indices).
    Negative rho or p pass through: the evolved primitive solution is allowed
    to be inadmissible and is only consumed by the smoothness indicator.
    """
    rho = U[0]
    if np.any(rho == 0.0):
        idx = np.argwhere(rho == 0.0)[:5]
        raise StateError(f"zero density at cell index(es) {idx.tolist()}")
    V = np.empty_like(U)
    V[0] = rho
    V[1:-1] = U[1:-1] / rho
    ke = 0.5 * np.sum(U[1:-1] * U[1:-1], axis=0) / rho
    V[-1] = (gas.gamma - 1.0) * (U[-1] - ke)
    return V


def prim_to_cons(V, gas: GasModel):
    """(rho, vel.., p) -> (rho, m.., E); tolerates inadmissible input."""
    rho = V[0]
    U = np.empty_like(V)
    U[0] = rho
    U[1:-1] = rho * V[1:-1]
    U[-1] = V[-1] / (gas.gamma - 1.0) + 0.5 * rho * np.sum(V[1:-1] * V[1:-1], axis=0)
    return U


def pressure(U, gas: GasModel):
    """Pressure from a conserved state."""
    m2 = U[1] * U[1]
    if U.shape[0] == 4:
        m2 = m2 + U[2] * U[2]
    return (gas.gamma - 1.0) * (U[-1] - 0.5 * m2 / U[0])


def swap_uv(A):
    """Swap the two momentum/velocity components of a 4-component field.

    Applying the x-direction machinery to swapped fields and swapping the
    result back yields the y-direction quantities.
    """
    return A[[0, 2, 1, 3]]


def flux_normal(U, gas: GasModel):
    """Physical flux along the first momentum component.

    1-D: (rho u, rho u^2 + p, u (E + p)); in 2-D the transverse momentum
    row rho*u*v is inserted before the energy row.
    """
    un = U[1] / U[0]
    p = pressure(U, gas)
    F = np.empty_like(U)
    F[0] = U[1]
    F[1] = U[1] * un + p
    if U.shape[0] == 4:
        F[2] = U[2] * un
    F[-1] = (U[-1] + p) * un
    return F


def phys_flux_x(U, gas: GasModel):
    return flux_normal(U, gas)


def phys_flux_y(U, gas: GasModel):
    return swap_uv(flux_normal(swap_uv(U), gas))


def sound_speed(rho, p, gas: GasModel, clamp=False):
    """c = sqrt(gamma p / rho).

    clamp=True zeroes a negative radicand; use only when estimating speeds
    from the (possibly inadmissible) evolved primitive solution.  In the
    conservative solver a negative pressure is a fatal positivity error and
    must be caught before calling this.
    """
    rad = gas.gamma * p / rho
    if clamp:
        rad = np.maximum(rad, 0.0)
    return np.sqrt(rad)
