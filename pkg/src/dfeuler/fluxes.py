"""One-sided local speeds, central-upwind interface fluxes, and the local
characteristic transform.

All functions operate on "normal-oriented" states: component 1 is the
momentum normal to the interface.  For y-direction sweeps, callers swap the
momentum components, apply these routines, and swap back.
"""

from __future__ import annotations

import numpy as np

from .state import GasModel, PositivityError, flux_normal, pressure, sound_speed

# Floor keeping the speed fan open; prevents division by a zero speed gap.
DELTA = 1e-10


def local_speeds(rho_l, u_l, p_l, rho_r, u_r, p_r, gas: GasModel, clamp=False):
    """One-sided propagation speeds from the two interface states.

    a+ = max(u_l + c_l, u_r + c_r, DELTA), a- = min(u_l - c_l, u_r - c_r,
    -DELTA).  clamp=True tolerates inadmissible states by zeroing negative
    sound-speed radicands (primitive-solver context only).
    """
    c_l = sound_speed(rho_l, p_l, gas, clamp=clamp)
    c_r = sound_speed(rho_r, p_r, gas, clamp=clamp)
    ap = np.maximum(np.maximum(u_l + c_l, u_r + c_r), DELTA)
    am = np.minimum(np.minimum(u_l - c_l, u_r - c_r), -DELTA)
    return ap, am


def _check_admissible(rho, p, what):
    bad = (rho <= 0.0) | (p <= 0.0)
    if np.any(bad):
        where = np.argwhere(bad)[:5].tolist()
        raise PositivityError(
            f"nonpositive density/pressure in {what} interface state",
            payload={"indices": where},
        )


def _interface_speeds(Um, Up, gas):
    pm = pressure(Um, gas)
    pp = pressure(Up, gas)
    _check_admissible(Um[0], pm, "left")
    _check_admissible(Up[0], pp, "right")
    um = Um[1] / Um[0]
    up = Up[1] / Up[0]
    ap, am = local_speeds(Um[0], um, pm, Up[0], up, pp, gas)
    return ap, am, pm, pp, um, up


def cu_flux(Um, Up, gas: GasModel):
    """Central-upwind flux with minmod anti-diffusion.

    F = (a+ F(Um) - a- F(Up))/(a+ - a-) + a+ a-/(a+ - a-) (Up - Um - q),
    q = minmod(Up - U*, U* - Um) with the intermediate state
    U* = (a+ Up - a- Um - (F(Up) - F(Um)))/(a+ - a-).
    """
    from .stencils import minmod

    ap, am, _, _, _, _ = _interface_speeds(Um, Up, gas)
    Fm = flux_normal(Um, gas)
    Fp = flux_normal(Up, gas)
    inv = 1.0 / (ap - am)
    # in-place assembly; these kernels dominate the sweep cost
    Ustar = ap * Up
    Ustar -= am * Um
    Ustar -= Fp
    Ustar += Fm
    Ustar *= inv
    q = minmod(Up - Ustar, Ustar - Um)
    np.subtract(Up, Um, out=Ustar)
    Ustar -= q
    Ustar *= ap * am * inv
    out = ap * Fm
    out -= am * Fp
    out *= inv
    out += Ustar
    return out


def ldcu_flux(Um, Up, gas: GasModel):
    """Low-dissipation flux built from a two-state interface fan.

    A single contact speed u* and pressure p* close the fan so that isolated
    contacts are transported exactly; the flux is assembled from the fan
    region containing the interface.  Degenerate fans (vanishing mass
    contrast or nonpositive star density) fall back to cu_flux per
    interface.  Returns (flux, fallback_mask).
    """
    ap, am, pm, pp, um, up = _interface_speeds(Um, Up, gas)
    Fm = flux_normal(Um, gas)
    Fp = flux_normal(Up, gas)
    ncomp = Um.shape[0]

    # Fan-conservation right sides a+ phi_r - a- phi_l - (flux_r - flux_l).
    rhs = ap * Up - am * Um - (Fp - Fm)
    den = rhs[0]
    scale = ap * Up[0] - am * Um[0]
    degenerate = np.abs(den) <= 1e-12 * scale
    with np.errstate(divide="ignore", invalid="ignore"):
        ustar = rhs[1] / np.where(degenerate, 1.0, den)
        rho_l = Um[0] * (am - um) / (am - ustar)
        rho_r = Up[0] * (ap - up) / (ap - ustar)
    if ncomp == 4:
        vt = np.where(ustar >= 0.0, Um[2] / Um[0], Up[2] / Up[0])
        ke = 0.5 * (ustar**2 + vt**2)
    else:
        ke = 0.5 * ustar**2
    pstar = (gas.gamma - 1.0) * (rhs[-1] - ke * rhs[0]) / (ap - am)

    star_l = np.empty_like(Um)
    star_r = np.empty_like(Um)
    star_l[0], star_r[0] = rho_l, rho_r
    star_l[1], star_r[1] = rho_l * ustar, rho_r * ustar
    if ncomp == 4:
        star_l[2], star_r[2] = rho_l * vt, rho_r * vt
    star_l[-1] = pstar / (gas.gamma - 1.0) + rho_l * ke
    star_r[-1] = pstar / (gas.gamma - 1.0) + rho_r * ke

    upwind_left = ustar >= 0.0
    flux = np.where(upwind_left, Fm + am * (star_l - Um), Fp + ap * (star_r - Up))

    bad = (
        degenerate
        | ~np.isfinite(ustar)
        | (rho_l <= 0.0)
        | (rho_r <= 0.0)
        | ~np.isfinite(rho_l)
        | ~np.isfinite(rho_r)
    )
    if np.any(bad):
        flux = np.where(bad, cu_flux(Um, Up, gas), flux)
    return flux, bad


def ldcu_star_states(Um, Up, gas: GasModel):
    """Star states and speeds of the fan construction (testing hook)."""
    ap, am, pm, pp, um, up = _interface_speeds(Um, Up, gas)
    Fm = flux_normal(Um, gas)
    Fp = flux_normal(Up, gas)
    rhs = ap * Up - am * Um - (Fp - Fm)
    ustar = rhs[1] / rhs[0]
    rho_l = Um[0] * (am - um) / (am - ustar)
    rho_r = Up[0] * (ap - up) / (ap - ustar)
    if Um.shape[0] == 4:
        vt = np.where(ustar >= 0.0, Um[2] / Um[0], Up[2] / Up[0])
        ke = 0.5 * (ustar**2 + vt**2)
    else:
        vt = None
        ke = 0.5 * ustar**2
    pstar = (gas.gamma - 1.0) * (rhs[-1] - ke * rhs[0]) / (ap - am)
    star_l = np.empty_like(Um)
    star_r = np.empty_like(Um)
    star_l[0], star_r[0] = rho_l, rho_r
    star_l[1], star_r[1] = rho_l * ustar, rho_r * ustar
    if Um.shape[0] == 4:
        star_l[2], star_r[2] = rho_l * vt, rho_r * vt
    star_l[-1] = pstar / (gas.gamma - 1.0) + rho_l * ke
    star_r[-1] = pstar / (gas.gamma - 1.0) + rho_r * ke
    return star_l, star_r, ustar, pstar, ap, am


def roe_average(Ul, Ur, gas: GasModel):
    """Square-root-of-density weighted interface average.

    Returns (u, v, H, c) with v = None in 1-D.  When the averaged sound
    speed would be imaginary (near-vacuum inputs), falls back to the
    arithmetic mean of the primitive variables.
    """
    sl = np.sqrt(Ul[0])
    sr = np.sqrt(Ur[0])
    w = 1.0 / (sl + sr)
    pl = pressure(Ul, gas)
    pr = pressure(Ur, gas)
    Hl = (Ul[-1] + pl) / Ul[0]
    Hr = (Ur[-1] + pr) / Ur[0]
    u = (sl * Ul[1] / Ul[0] + sr * Ur[1] / Ur[0]) * w
    H = (sl * Hl + sr * Hr) * w
    if Ul.shape[0] == 4:
        v = (sl * Ul[2] / Ul[0] + sr * Ur[2] / Ur[0]) * w
        q2 = u * u + v * v
    else:
        v = None
        q2 = u * u
    c2 = (gas.gamma - 1.0) * (H - 0.5 * q2)

    bad = ~(c2 > 0.0)  # catches NaN from inadmissible inputs as well
    if np.any(bad):
        rho_m = 0.5 * (Ul[0] + Ur[0])
        u_m = 0.5 * (Ul[1] / Ul[0] + Ur[1] / Ur[0])
        p_m = 0.5 * (pl + pr)
        if Ul.shape[0] == 4:
            v_m = 0.5 * (Ul[2] / Ul[0] + Ur[2] / Ur[0])
            v = np.where(bad, v_m, v)
            q2_m = u_m * u_m + v_m * v_m
        else:
            q2_m = u_m * u_m
        H_m = gas.gamma * p_m / ((gas.gamma - 1.0) * rho_m) + 0.5 * q2_m
        u = np.where(bad, u_m, u)
        H = np.where(bad, H_m, H)
        c2 = np.where(bad, (gas.gamma - 1.0) * (H_m - 0.5 * q2_m), c2)
    with np.errstate(invalid="ignore"):
        # inadmissible inputs can defeat both averages; the NaN basis then
        # produces NaN interface states, which the reconstruction fallback
        # and flux admissibility checks catch downstream
        return u, v, H, np.sqrt(c2)


def char_basis(u, v, H, c, ncomp):
    """Right/left eigenvector matrices of the linearized normal Jacobian.

    Inputs are flat arrays of m averaged states; returns (R, Rinv) of shape
    (m, ncomp, ncomp) with columns ordered by eigenvalue: u-c, u (repeated
    in 2-D with the shear wave), u+c.
    """
    m = np.shape(u)[0] if np.ndim(u) else 1
    u = np.atleast_1d(np.asarray(u, float))
    H = np.atleast_1d(np.asarray(H, float))
    c = np.atleast_1d(np.asarray(c, float))
    R = np.zeros((m, ncomp, ncomp))
    if ncomp == 3:
        R[:, 0, :] = 1.0
        R[:, 1, 0] = u - c
        R[:, 1, 1] = u
        R[:, 1, 2] = u + c
        R[:, 2, 0] = H - u * c
        R[:, 2, 1] = 0.5 * u * u
        R[:, 2, 2] = H + u * c
    else:
        v = np.atleast_1d(np.asarray(v, float))
        R[:, 0, 0] = 1.0
        R[:, 0, 1] = 1.0
        R[:, 0, 3] = 1.0
        R[:, 1, 0] = u - c
        R[:, 1, 1] = u
        R[:, 1, 3] = u + c
        R[:, 2, 0] = v
        R[:, 2, 1] = v
        R[:, 2, 2] = 1.0
        R[:, 2, 3] = v
        R[:, 3, 0] = H - u * c
        R[:, 3, 1] = 0.5 * (u * u + v * v)
        R[:, 3, 2] = v
        R[:, 3, 3] = H + u * c
    return R, np.linalg.inv(R)


def to_char(Rinv, states):
    """Map stacked states (m, ncomp, k) into characteristic variables."""
    return np.einsum("mij,mjk->mik", Rinv, states)


def from_char(R, gammas):
    """Inverse of to_char for single vectors (m, ncomp)."""
    return np.einsum("mij,mj->mi", R, gammas)
