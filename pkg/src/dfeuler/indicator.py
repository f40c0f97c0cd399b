"""Discrepancy-driven smoothness indicator and interface classification.

The conservative solution U and the co-evolved primitive solution V* agree
to truncation error where the flow is smooth but differ at O(1) near
discontinuities, because nonconservative schemes converge to wrong weak
solutions there.  Squared discrepancies in momentum flag rough zones;
pressure, which stays continuous across contacts, separates contact
neighborhoods from the rest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .conservative import CONTACT, ROUGH, SMOOTH
from .state import GasModel, Grid, cons_to_prim

SMOOTH_WEIGHTS = np.array([1.0, 4.0, 8.0, 4.0, 1.0]) / 18.0


@dataclass(frozen=True)
class AdaptionCoefficients:
    """Per-run thresholds relative to the domain-averaged indicator."""

    kappa_rhou: float
    kappa_p: float
    kappa_rhov: float | None = None

    def __post_init__(self):
        for k in (self.kappa_rhou, self.kappa_p, self.kappa_rhov):
            if k is not None and not k > 0:
                raise ValueError("adaption coefficients must be positive")


@dataclass(frozen=True)
class RegionMaps:
    """Interface tags per direction, frozen between detections.

    x: (B, nx+5) with B = 1 in 1-D, B = ny in 2-D; y: (nx, ny+5) or None.
    Tags: 0 smooth, 1 rough-contact, 2 rough-non-contact, on the same
    relative interface indexing the sweeps use (physical range [2, n+2]).
    """

    x: np.ndarray
    y: np.ndarray | None = None

    def counts(self):
        """(nS, nRC, nRNC) per direction over physical interfaces."""
        out = []
        for tags in (self.x, self.y):
            if tags is None:
                continue
            phys = tags[:, 2:-2]
            out.append(
                (
                    int((phys == SMOOTH).sum()),
                    int((phys == CONTACT).sum()),
                    int((phys == ROUGH).sum()),
                )
            )
        return out


def uniform_regions(grid: Grid, tag) -> RegionMaps:
    """All interfaces forced to one tag (first step, forced schemes)."""
    if grid.ndim == 1:
        x = np.full((1, grid.nx + 5), tag, dtype=np.int8)
        x.flags.writeable = False
        return RegionMaps(x=x)
    x = np.full((grid.ny, grid.nx + 5), tag, dtype=np.int8)
    y = np.full((grid.nx, grid.ny + 5), tag, dtype=np.int8)
    x.flags.writeable = False
    y.flags.writeable = False
    return RegionMaps(x=x, y=y)


def discrepancy_fields(U_phys, Vstar_phys, gas: GasModel):
    """Squared discrepancies of (rho u[, rho v], p) between the conservative
    solution and the primitive one, on physical cells.

    Non-finite entries (a blown-up primitive solution) are replaced by the
    field's largest finite value so those cells classify as rough without
    poisoning the domain averages.
    """
    V_of_U = cons_to_prim(U_phys, gas)
    eps = []
    for k in range(1, U_phys.shape[0] - 1):
        eps.append((U_phys[k] - Vstar_phys[0] * Vstar_phys[k]) ** 2)
    eps.append((V_of_U[-1] - Vstar_phys[-1]) ** 2)
    out = []
    for e in eps:
        finite = np.isfinite(e)
        if not finite.all():
            cap = e[finite].max() if finite.any() else 0.0
            e = np.where(finite, e, cap)
        out.append(e)
    return out


def smooth_and_average(raw, axis=-1, periodic=False):
    """Five-point (1,4,8,4,1)/18 smoothing along an axis plus the arithmetic
    mean of the smoothed field over the physical cells.

    The raw field is extended by zero-gradient extrapolation, or wrapped on
    periodic domains; the smoothed output covers physical cells plus one
    extension cell per side along the smoothing axis (what interface maxima
    at the boundary need).
    """
    raw = np.moveaxis(raw, axis, -1)
    mode = "wrap" if periodic else "edge"
    padded = np.pad(raw, [(0, 0)] * (raw.ndim - 1) + [(3, 3)], mode=mode)
    win = sliding_window_view(padded, 5, axis=-1)
    smoothed = win @ SMOOTH_WEIGHTS  # covers cells -1 .. n
    avg = float(smoothed[..., 1:-1].mean())
    return smoothed, avg


def classify_direction(eps_m, eps_p, kappa_m, kappa_p, periodic=False):
    """Tags along the last axis of the (B, n) raw indicator fields.

    Interface value = max of the two adjacent smoothed cells; smooth wins
    on ties (degenerate flat fields must stay on the cheap path).  Returns
    (B, n+5) tags covering the sweep halo by edge extension, or by wrapping
    on periodic domains so the repeated boundary interface gets one tag
    (conservation telescoping needs the wrap-around fluxes identical).
    """
    sm, avg_m = smooth_and_average(eps_m, periodic=periodic)
    sp_, avg_p = smooth_and_average(eps_p, periodic=periodic)
    im = np.maximum(sm[..., :-1], sm[..., 1:])
    ip = np.maximum(sp_[..., :-1], sp_[..., 1:])
    phys = np.where(
        im <= kappa_m * avg_m,
        SMOOTH,
        np.where(ip <= kappa_p * avg_p, CONTACT, ROUGH),
    ).astype(np.int8)
    B, nif = phys.shape
    n = nif - 1
    tags = np.empty((B, nif + 4), dtype=np.int8)
    tags[:, 2:-2] = phys
    if periodic:
        tags[:, 0] = phys[:, n - 2]
        tags[:, 1] = phys[:, n - 1]
        tags[:, -2] = phys[:, 1]
        tags[:, -1] = phys[:, 2]
    else:
        tags[:, :2] = phys[:, :1]
        tags[:, -2:] = phys[:, -1:]
    tags.flags.writeable = False
    return tags


def build_regions(
    U, Vstar, gas: GasModel, grid: Grid, kap: AdaptionCoefficients, periodic=(False, False)
) -> RegionMaps:
    """Classify every interface of both directions from the two solutions."""
    Up = U[grid.interior]
    Vp = Vstar[grid.interior]
    eps = discrepancy_fields(Up, Vp, gas)
    if grid.ndim == 1:
        eps_mx, eps_p = eps
        x = classify_direction(
            eps_mx[None, :], eps_p[None, :], kap.kappa_rhou, kap.kappa_p, periodic[0]
        )
        return RegionMaps(x=x)
    eps_mx, eps_my, eps_p = eps
    x = classify_direction(eps_mx.T, eps_p.T, kap.kappa_rhou, kap.kappa_p, periodic[0])
    y = classify_direction(eps_my, eps_p, kap.kappa_rhov, kap.kappa_p, periodic[1])
    return RegionMaps(x=x, y=y)
