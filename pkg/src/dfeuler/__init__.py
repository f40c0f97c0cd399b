"""Adaptive dual-formulation solver suite for the compressible Euler equations."""

from .state import (
    NG,
    ConfigError,
    GasModel,
    Grid,
    PositivityError,
    SolverError,
    StateError,
    cons_to_prim,
    phys_flux_x,
    phys_flux_y,
    pressure,
    prim_to_cons,
    sound_speed,
)

__all__ = [
    "NG",
    "ConfigError",
    "GasModel",
    "Grid",
    "PositivityError",
    "SolverError",
    "StateError",
    "cons_to_prim",
    "phys_flux_x",
    "phys_flux_y",
    "pressure",
    "prim_to_cons",
    "sound_speed",
]
