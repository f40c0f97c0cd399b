"""Time integration: ghost fills, CFL step control, the three-stage
strong-stability-preserving Runge-Kutta update, and the adaptive run loop
that co-evolves the conservative and primitive solutions.

Protocol per step: the conservative solution always advances with the
region map frozen across the three stages.  On detection steps (the first
step, then every detect_every-th), the primitive solution is re-seeded from
the conservative one, advanced through the same RK step with the same dt,
and the discrepancy between the two updated solutions reclassifies every
interface; the primitive update is then discarded.  The very first step
runs with every interface tagged rough-non-contact, which is exactly the
non-adaptive scheme applied throughout.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .conservative import ROUGH, SMOOTH, SweepDiagnostics, rhs_conservative
from .indicator import AdaptionCoefficients, RegionMaps, build_regions, uniform_regions
from .primitive import rhs_primitive
from .state import NG, GasModel, Grid, SolverError, cons_to_prim, pressure, prim_to_cons, sound_speed
from .stencils import SbmParams, WenoParams

_TAG_BY_NAME = {"S": SMOOTH, "RNC": ROUGH}


@dataclass(frozen=True)
class BoundarySpec:
    """Boundary kind per side: free, reflect, periodic, or dirichlet.

    Dirichlet sides carry a fixed primitive state.  Periodic must pair up
    within a direction.  ylo/yhi stay None in 1-D.
    """

    xlo: str = "free"
    xhi: str = "free"
    ylo: str | None = None
    yhi: str | None = None
    xlo_state: tuple | None = None
    xhi_state: tuple | None = None
    ylo_state: tuple | None = None
    yhi_state: tuple | None = None

    def __post_init__(self):
        for lo, hi in ((self.xlo, self.xhi), (self.ylo, self.yhi)):
            if (lo == "periodic") != (hi == "periodic"):
                raise ValueError("periodic boundaries must pair up per direction")


def _fill_axis(F, axis, n, lo, hi, lo_state, hi_state, normal_comp, gas, primitive):
    """In-place ghost fill along one axis of a padded field."""
    M = np.moveaxis(F, axis, 1)  # (ncomp, ntot, ...) view
    if lo == "periodic":
        M[:, :NG] = M[:, n : n + NG]
        M[:, NG + n :] = M[:, NG : 2 * NG]
        return
    for side, kind, state in ((0, lo, lo_state), (1, hi, hi_state)):
        if kind == "free":
            src = M[:, NG] if side == 0 else M[:, NG + n - 1]
            dst = M[:, :NG] if side == 0 else M[:, NG + n :]
            dst[:] = src[:, None] if src.ndim == 1 else src[:, None, :]
        elif kind == "reflect":
            for layer in range(1, NG + 1):
                if side == 0:
                    M[:, NG - layer] = M[:, NG + layer - 1]
                    M[normal_comp, NG - layer] *= -1.0
                else:
                    M[:, NG + n - 1 + layer] = M[:, NG + n - layer]
                    M[normal_comp, NG + n - 1 + layer] *= -1.0
        elif kind == "dirichlet":
            vals = np.asarray(state, dtype=float)
            if not primitive:
                vals = prim_to_cons(vals[:, None], gas)[:, 0]
            dst = M[:, :NG] if side == 0 else M[:, NG + n :]
            dst[:] = vals[(slice(None),) + (None,) * (dst.ndim - 1)]
        else:
            raise ValueError(f"unknown boundary kind {kind!r}")


def fill_ghosts(F, spec: BoundarySpec, grid: Grid, gas: GasModel, primitive=False):
    """Fill all ghost layers of a padded field in place and return it.

    x sides first over every row, then y sides over every column including
    the x ghosts, so corner ghosts hold the y-extension of x-extended data.
    """
    _fill_axis(F, 1, grid.nx, spec.xlo, spec.xhi, spec.xlo_state, spec.xhi_state, 1, gas, primitive)
    if grid.ndim == 2:
        _fill_axis(F, 2, grid.ny, spec.ylo, spec.yhi, spec.ylo_state, spec.yhi_state, 2, gas, primitive)
    return F


def cfl_dt(F, gas: GasModel, grid: Grid, cfl=0.45, primitive=False):
    """Time step from the physical cells' directional speed bounds.

    1-D: dt = cfl dx / max(|u| + c); 2-D uses the combined bound
    dt (sx/dx + sy/dy) = cfl, matching the dimension-by-dimension fluxes.
    """
    P = F[grid.interior]
    if primitive:
        vel = P[1:-1]
        c = sound_speed(P[0], P[-1], gas, clamp=True)
    else:
        vel = P[1:-1] / P[0]
        c = sound_speed(P[0], pressure(P, gas), gas)
    sx = np.max(np.abs(vel[0]) + c)
    if grid.ndim == 1:
        dt = cfl * grid.dx / sx
    else:
        sy = np.max(np.abs(vel[1]) + c)
        dt = cfl / (sx / grid.dx + sy / grid.dy)
    if not np.isfinite(dt) or dt <= 0.0:
        raise SolverError("non-finite wave speeds in time-step estimate")
    return dt


def ssp_rk3(y, dt, rhs, fill, interior):
    """One three-stage SSP step; ghost fills precede every stage.

    Written in increment form so a zero right side returns y bit-identically:
    u1 = u + dt L(u); u2 = u + (1/4)((u1 - u) + dt L(u1));
    u_next = u + (2/3)((u2 - u) + dt L(u2)).
    """
    fill(y)
    y1 = y.copy()
    y1[interior] = y[interior] + dt * rhs(y)
    fill(y1)
    y2 = y.copy()
    y2[interior] = y[interior] + 0.25 * ((y1[interior] - y[interior]) + dt * rhs(y1))
    fill(y2)
    out = y.copy()
    out[interior] = y[interior] + (2.0 / 3.0) * ((y2[interior] - y[interior]) + dt * rhs(y2))
    return out


@dataclass
class StepStats:
    step: int
    t: float
    dt: float
    counts: list
    detected: bool
    fallbacks: int
    ldcu_fallbacks: int
    wall_ms: float
    cons_ms: float
    prim_ms: float
    si_ms: float


@dataclass
class SolverContext:
    """Everything the step driver needs besides the evolving state."""

    gas: GasModel
    grid: Grid
    bc: BoundarySpec
    kappas: AdaptionCoefficients
    scheme: str = "adaptive"  # adaptive | aweno | primitive-only
    cfl: float = 0.45
    detect_every: int = 3
    force_regions: str | None = None  # "S" | "RNC"
    gravity: bool = False
    dt_scale: float | None = None  # dt = dt_scale * dx^(5/3) when set
    weno: WenoParams = field(default_factory=WenoParams)
    sbm: SbmParams = field(default_factory=SbmParams)

    def step_dt(self, F, primitive=False):
        if self.dt_scale is not None:
            return self.dt_scale * self.grid.dx ** (5.0 / 3.0)
        return cfl_dt(F, self.gas, self.grid, self.cfl, primitive=primitive)


@dataclass
class RunState:
    t: float
    step: int
    U: np.ndarray | None
    V: np.ndarray | None = None  # primitive-only scheme evolves this
    regions: RegionMaps | None = None
    stats: list = field(default_factory=list)
    fallback_total: int = 0


def _positivity_check(U, grid, gas, step):
    P = U[grid.interior]
    p = pressure(P, gas)
    bad = (P[0] <= 0.0) | (p <= 0.0) | ~np.isfinite(P[0]) | ~np.isfinite(p)
    if np.any(bad):
        idx = np.argwhere(bad)[:5].tolist()
        raise SolverError(
            f"positivity failure after step {step}",
            payload={"step": step, "cells": idx},
        )


def advance(state: RunState, ctx: SolverContext, dt) -> RunState:
    """One full time step of the configured scheme."""
    t0 = time.perf_counter()
    diag = SweepDiagnostics()
    grid, gas = ctx.grid, ctx.gas
    step_index = state.step + 1
    fill_c = lambda F: fill_ghosts(F, ctx.bc, grid, gas, primitive=False)
    fill_p = lambda F: fill_ghosts(F, ctx.bc, grid, gas, primitive=True)

    if ctx.scheme == "primitive-only":
        tp0 = time.perf_counter()
        rhs = lambda F: rhs_primitive(F, gas, grid, gravity=ctx.gravity)
        state.V = ssp_rk3(state.V, dt, rhs, fill_p, grid.interior)
        prim_ms = (time.perf_counter() - tp0) * 1e3
        state.t += dt
        state.step = step_index
        state.stats.append(
            StepStats(step_index, state.t, dt, [], False, 0, 0,
                      (time.perf_counter() - t0) * 1e3, 0.0, prim_ms, 0.0)
        )
        return state

    if ctx.force_regions is not None:
        if state.regions is None:
            state.regions = uniform_regions(grid, _TAG_BY_NAME[ctx.force_regions])
        regions = state.regions
        detect = False
    elif ctx.scheme == "aweno":
        if state.regions is None:
            state.regions = uniform_regions(grid, ROUGH)
        regions = state.regions
        detect = False
    else:
        regions = state.regions if state.regions is not None else uniform_regions(grid, ROUGH)
        detect = (state.step % ctx.detect_every) == 0

    if detect:
        fill_c(state.U)
        V0 = cons_to_prim(state.U, gas)

    tc0 = time.perf_counter()
    rhs_c = lambda F: rhs_conservative(
        F, regions, gas, grid, ctx.weno, ctx.sbm, diag, gravity=ctx.gravity
    )
    U_new = ssp_rk3(state.U, dt, rhs_c, fill_c, grid.interior)
    cons_ms = (time.perf_counter() - tc0) * 1e3
    _positivity_check(U_new, grid, gas, step_index)

    prim_ms = si_ms = 0.0
    if detect:
        tp0 = time.perf_counter()
        rhs_p = lambda F: rhs_primitive(F, gas, grid, gravity=ctx.gravity)
        V_new = ssp_rk3(V0, dt, rhs_p, fill_p, grid.interior)
        prim_ms = (time.perf_counter() - tp0) * 1e3
        ts0 = time.perf_counter()
        periodic = (ctx.bc.xlo == "periodic", ctx.bc.ylo == "periodic")
        state.regions = build_regions(U_new, V_new, gas, grid, ctx.kappas, periodic)
        si_ms = (time.perf_counter() - ts0) * 1e3

    state.U = U_new
    state.t += dt
    state.step = step_index
    state.fallback_total += diag.first_order_fallbacks
    state.stats.append(
        StepStats(
            step_index,
            state.t,
            dt,
            regions.counts(),
            detect,
            diag.first_order_fallbacks,
            diag.ldcu_fallbacks,
            (time.perf_counter() - t0) * 1e3,
            cons_ms,
            prim_ms,
            si_ms,
        )
    )
    return state


def run_solver(
    ctx: SolverContext,
    F0,
    t_final,
    snapshot_times=(),
    on_snapshot=None,
    on_step=None,
    max_steps=10_000_000,
):
    """Advance from the initial padded field to t_final.

    F0 is conserved for the adaptive/aweno schemes, primitive for
    primitive-only.  The step size is clamped so snapshot times and the
    final time are hit exactly.  Returns the final RunState.
    """
    primitive = ctx.scheme == "primitive-only"
    F0 = fill_ghosts(F0.copy(), ctx.bc, ctx.grid, ctx.gas, primitive=primitive)
    state = RunState(t=0.0, step=0, U=None if primitive else F0, V=F0 if primitive else None)
    marks = sorted(set(float(s) for s in snapshot_times if 0.0 < float(s) <= t_final))
    eps = 1e-12 * max(1.0, abs(t_final))
    while state.t < t_final - eps:
        F = state.V if primitive else state.U
        dt = ctx.step_dt(F, primitive=primitive)
        target = t_final
        for m in marks:
            if state.t < m - eps:
                target = m
                break
        hit = False
        if state.t + dt >= target - eps:
            dt = target - state.t
            hit = True
        advance(state, ctx, dt)
        if hit:
            state.t = target
        if on_step is not None:
            on_step(state)
        if hit and target != t_final and on_snapshot is not None:
            on_snapshot(state)
        if state.step >= max_steps:
            raise SolverError(f"exceeded {max_steps} steps before t_final")
    return state


def conserved_totals(U, grid: Grid):
    """Cell-sum of each conserved component times the cell volume."""
    vol = grid.dx * (grid.dy if grid.ndim == 2 else 1.0)
    P = U[grid.interior]
    return P.reshape(P.shape[0], -1).sum(axis=1) * vol
