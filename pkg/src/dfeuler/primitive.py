"""Spatial right-hand side of the primitive system via global fluxes.

The nonconservative system V_t + Ftilde(V)_x = B(V) V_x is rewritten with a
running antiderivative R of the nonconservative product, making it formally
flux-differenced: V_t + (Ftilde - R)_x = 0.  The solver is deliberately
plain: unlimited fifth-order interpolation, no characteristic decomposition,
no region logic, because its output feeds only the smoothness indicator and
is never used as a physical solution.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .conservative import aweno_correct
from .fluxes import local_speeds
from .state import NG, GasModel, Grid, swap_uv
from .stencils import (
    NODE_VALUE_MAT,
    boole_integrate,
    interp5_field,
    node_derivs_wide,
)


def ftilde_normal(V, gas: GasModel):
    """Primitive-system flux (rho u, u^2/2[, 0], p u) along component 1."""
    F = np.zeros_like(V)
    F[0] = V[0] * V[1]
    F[1] = 0.5 * V[1] * V[1]
    F[-1] = V[-1] * V[1]
    return F


def nonco_integrand(Vn, dVn, gas: GasModel):
    """Rows of B(V) V_x evaluated pointwise.

    1-D: (0, -p_x / rho, -(gamma-1) p u_x); the 2-D x-direction inserts the
    transverse row -u v_x.  Vn/dVn carry values and d/dx at quadrature
    nodes, any trailing shape.
    """
    out = np.zeros_like(Vn)
    out[1] = -dVn[-1] / Vn[0]
    if Vn.shape[0] == 4:
        out[2] = -Vn[1] * dVn[2]
    out[-1] = -(gas.gamma - 1.0) * Vn[-1] * dVn[1]
    return out


def cell_integrals(Vc, gas: GasModel, dx):
    """Fifth-order integral of the nonconservative product over each cell.

    Vc: (ncomp, B, ntot).  Returns (ncomp, B, ntot-6) for center cells
    3..ntot-4: quartic-interpolant values and degree-six-interpolant
    derivatives at the five Boole nodes, the pointwise product rows, then
    the Boole weights.  Constant input integrates to exact zeros.
    """
    win7 = sliding_window_view(Vc, 7, axis=-1)  # (ncomp, B, L, 7 cells)
    vals = win7[..., 1:6] @ NODE_VALUE_MAT.T  # (ncomp, B, L, 5 nodes)
    ders = node_derivs_wide(win7, dx)
    integ = nonco_integrand(vals, ders, gas)
    return boole_integrate(integ, dx)


def antiderivative(Bint, n):
    """Running antiderivative at the n+5 relative interfaces of each row.

    Bint covers cells 3..ntot-4 (length n+4).  Anchored to zero at the
    first physical interface and continued through the ghost halo by the
    same recursion, so only differences matter; the forward recursion
    R_i = R_{i-1} + B_i holds exactly by construction.
    """
    lead = Bint.shape[:-1]
    R = np.empty(lead + (n + 5,))
    R[..., 2] = 0.0
    np.cumsum(Bint[..., 2 : n + 4], axis=-1, out=R[..., 3:])
    R[..., 1] = -Bint[..., 1]
    R[..., 0] = R[..., 1] - Bint[..., 0]
    return R


def sweep_global_flux(Vc, gas: GasModel, dx):
    """Corrected global fluxes at the physical interfaces of each row.

    Interface values by unlimited interpolation, speeds from the (possibly
    inadmissible) interface values with a clamped sound speed, and the
    central-upwind combination of K = Ftilde(V) - R with a shared R per
    interface.  The high-order corrections apply at every interface.
    """
    n = Vc.shape[-1] - 2 * NG
    Vm, Vp = interp5_field(Vc)
    R = antiderivative(cell_integrals(Vc, gas, dx), n)
    Km = ftilde_normal(Vm, gas) - R
    Kp = ftilde_normal(Vp, gas) - R
    ap, am = local_speeds(Vm[0], Vm[1], Vm[-1], Vp[0], Vp[1], Vp[-1], gas, clamp=True)
    inv = 1.0 / (ap - am)
    Kfv = (ap * Km - am * Kp) * inv + (ap * am * inv) * (Vp - Vm)
    return aweno_correct(Kfv)


def rhs_primitive(V, gas: GasModel, grid: Grid, gravity=False):
    """Global-flux-difference right side over the physical cells.

    The gravity companion of the conservative (0, 0, rho, rho v) source is
    (0, 0, 1, 0): the velocity equation gains the unit acceleration and the
    pressure equation gains nothing.
    """
    if grid.ndim == 1:
        K = sweep_global_flux(V[:, None, :], gas, grid.dx)
        return -(K[:, 0, 1:] - K[:, 0, :-1]) / grid.dx

    nx, ny = grid.nx, grid.ny
    Vx = np.ascontiguousarray(np.swapaxes(V[:, :, NG : NG + ny], 1, 2))
    Kx = sweep_global_flux(Vx, gas, grid.dx)
    rhs = np.swapaxes(-(Kx[..., 1:] - Kx[..., :-1]) / grid.dx, 1, 2)

    Vy = np.ascontiguousarray(swap_uv(V[:, NG : NG + nx, :]))
    Ly = sweep_global_flux(Vy, gas, grid.dy)
    rhs += swap_uv(-(Ly[..., 1:] - Ly[..., :-1]) / grid.dy)

    if gravity:
        rhs[2] += 1.0
    return rhs
