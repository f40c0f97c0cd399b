"""Pointwise stencil kernels on scalar sequences.

Everything here acts on the last axis of its input and broadcasts over the
leading axes.  Callers apply these kernels component-wise or to local
characteristic variables.  Conventions: a six-cell stencil w[0..5] holds the
cells j-2..j+3 around the interface j+1/2; five-cell stencils hold j-2..j+2
around the cell j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Fifth-order interpolation to the interface j+1/2.
# minus side, cells j-2..j+2:  (3, -20, 90, 60, -5)/128
# plus side,  cells j-1..j+3:  (-5, 60, 90, -20, 3)/128
C5 = np.array([3.0, -20.0, 90.0, 60.0, -5.0]) / 128.0

# Quarter-point interpolation inside cell j from cells j-2..j+2.
CQ_MINUS = np.array([-45.0, 420.0, 1890.0, -252.0, 35.0]) / 2048.0
CQ_PLUS = CQ_MINUS[::-1].copy()

# Boole quadrature over one cell, nodes at j-1/2, j-1/4, j, j+1/4, j+1/2.
BOOLE_W = np.array([7.0, 32.0, 12.0, 32.0, 7.0]) / 90.0


@dataclass(frozen=True)
class WenoParams:
    """Knobs of the affine-invariant fifth-order nonlinear interpolation.

    eps and mu are floors, not scales: eps guards the division by the
    normalized smoothness measures, mu guards the normalization itself, and
    results are insensitive to both on non-degenerate data.
    """

    p: float = 2.0
    eps: float = 1e-40
    mu: float = 1e-300


@dataclass(frozen=True)
class SbmParams:
    """Two-parameter slope limiter; theta=2, tau=-0.25 is the
    overcompressive regime used near contacts."""

    theta: float = 2.0
    tau: float = -0.25


# Ideal weights of the three quadratic sub-interpolants; their convex
# combination with these weights reproduces the fifth-order formula C5.
D_IDEAL = np.array([1.0, 10.0, 5.0]) / 16.0


def interp5_minus(s6):
    """Left-biased fifth-order interface value from cells j-2..j+2."""
    return s6[..., :5] @ C5


def interp5_plus(s6):
    """Right-biased fifth-order interface value from cells j-1..j+3."""
    return s6[..., 1:6] @ C5[::-1]


def interp5_field(cells):
    """Minus/plus interface values at every in-stencil interface of a cell
    array, by slice arithmetic on the last axis (ni = ntot - 5 outputs)."""
    L = cells.shape[-1] - 5
    c0 = cells[..., 0:L]
    c1 = cells[..., 1 : L + 1]
    c2 = cells[..., 2 : L + 2]
    c3 = cells[..., 3 : L + 3]
    c4 = cells[..., 4 : L + 4]
    c5 = cells[..., 5 : L + 5]
    minus = 3.0 * c0
    minus -= 20.0 * c1
    minus += 90.0 * c2
    minus += 60.0 * c3
    minus -= 5.0 * c4
    minus /= 128.0
    plus = 3.0 * c5
    plus -= 20.0 * c4
    plus += 90.0 * c3
    plus += 60.0 * c2
    plus -= 5.0 * c1
    plus /= 128.0
    return minus, plus


def _aiweno_core(w5, wp: WenoParams, with_weights=False):
    # Jiang-Shu smoothness measures of the three quadratic sub-stencils.
    w0, w1, w2, w3, w4 = (w5[..., k] for k in range(5))
    b0 = 13.0 / 12.0 * (w0 - 2 * w1 + w2) ** 2 + 0.25 * (w0 - 4 * w1 + 3 * w2) ** 2
    b1 = 13.0 / 12.0 * (w1 - 2 * w2 + w3) ** 2 + 0.25 * (w1 - w3) ** 2
    b2 = 13.0 / 12.0 * (w2 - 2 * w3 + w4) ** 2 + 0.25 * (3 * w2 - 4 * w3 + w4) ** 2
    # Dividing by the mean renders the weights invariant under w -> a*w + b.
    scale = 1.0 / ((b0 + b1 + b2) / 3.0 + wp.mu)
    n0, n1, n2 = b0 * scale, b1 * scale, b2 * scale
    tau = np.abs(n0 - n2)
    a0 = D_IDEAL[0] * (1.0 + (tau / (n0 + wp.eps)) ** wp.p)
    a1 = D_IDEAL[1] * (1.0 + (tau / (n1 + wp.eps)) ** wp.p)
    a2 = D_IDEAL[2] * (1.0 + (tau / (n2 + wp.eps)) ** wp.p)
    asum = a0 + a1 + a2
    p0 = (3 * w0 - 10 * w1 + 15 * w2) / 8.0
    p1 = (-w1 + 6 * w2 + 3 * w3) / 8.0
    p2 = (3 * w2 + 6 * w3 - w4) / 8.0
    val = (a0 * p0 + a1 * p1 + a2 * p2) / asum
    if with_weights:
        return val, np.stack([a0 / asum, a1 / asum, a2 / asum], axis=-1)
    return val


def aiweno_z_minus(s6, wp: WenoParams = WenoParams()):
    """Nonlinear fifth-order left-biased interface value (affine-invariant
    Z weights on the three quadratic sub-interpolants)."""
    return _aiweno_core(s6[..., :5], wp)


def aiweno_z_plus(s6, wp: WenoParams = WenoParams()):
    """Right-biased counterpart: the same kernel on the mirrored stencil."""
    return _aiweno_core(s6[..., 5:0:-1], wp)


def aiweno_weights_minus(s6, wp: WenoParams = WenoParams()):
    """Nonlinear weights of the minus-side value (testing hook)."""
    return _aiweno_core(s6[..., :5], wp, with_weights=True)[1]


def sbm_phi(r, sp: SbmParams = SbmParams()):
    """Two-parameter limiter function.

    0 for r <= 0; min(r*theta, 1 + tau (r-1)) for 0 < r <= 1; and
    r * phi(1/r) above 1 (evaluated literally so the identity is exact).
    """
    r = np.asarray(r, dtype=float)
    big = r > 1.0
    arg = np.where(big, 1.0 / np.where(r == 0.0, 1.0, r), r)
    base = np.minimum(arg * sp.theta, 1.0 + sp.tau * (arg - 1.0))
    out = np.where(big, r * base, base)
    return np.where(r > 0.0, out, 0.0)


def sbm_slope_pair(g4, dx, sp: SbmParams = SbmParams()):
    """Limited slopes at the two cells flanking an interface.

    g4 holds (g_{j-1}, g_j, g_{j+1}, g_{j+2}) on the last axis; returns
    (slope_j, slope_{j+1}).  A zero denominator in the slope ratio yields a
    zero slope (flat reconstruction, the limit of phi(r) * 0).
    """
    d0 = g4[..., 1] - g4[..., 0]
    d1 = g4[..., 2] - g4[..., 1]
    d2 = g4[..., 3] - g4[..., 2]
    nz0 = d0 != 0.0
    nz1 = d1 != 0.0
    r_j = d1 / np.where(nz0, d0, 1.0)
    r_j1 = d2 / np.where(nz1, d1, 1.0)
    slope_j = np.where(nz0, sbm_phi(r_j, sp) * d0 / dx, 0.0)
    slope_j1 = np.where(nz1, sbm_phi(r_j1, sp) * d1 / dx, 0.0)
    return slope_j, slope_j1


def minmod(a, b):
    """0 when signs differ, otherwise the smaller-magnitude argument."""
    return np.where(a * b <= 0.0, 0.0, np.sign(a) * np.minimum(np.abs(a), np.abs(b)))


def interp_quarter(s5):
    """Values at x_{j-1/4} and x_{j+1/4} from cells j-2..j+2."""
    return s5 @ CQ_MINUS, s5 @ CQ_PLUS


def _node_tables(width):
    # Coefficients of the unique degree-(width-1) interpolant through cells
    # at xi = -(width//2)..width//2 are Vandermonde-solved once; rows map
    # cell values to values and derivatives (in cell-size units) at the
    # quadrature nodes xi = -1/2..1/2 step 1/4.
    half = width // 2
    xi = np.arange(-half, half + 1, dtype=float)
    nodes = np.array([-0.5, -0.25, 0.0, 0.25, 0.5])
    A = np.vander(xi, width, increasing=True)
    pow_val = np.vander(nodes, width, increasing=True)
    pow_der = np.zeros_like(pow_val)
    for k in range(1, width):
        pow_der[:, k] = k * nodes ** (k - 1)
    Ainv = np.linalg.inv(A)
    val = pow_val @ Ainv
    der = pow_der @ Ainv
    # Difference form of the derivative rows: acting on first differences
    # instead of values makes constant input give exact zeros (each exact
    # derivative row sums to zero; float rounding would otherwise leak).
    der_diff = np.cumsum(der[:, ::-1], axis=1)[:, ::-1][:, 1:]
    return val, der_diff


NODE_VALUE_MAT, NODE_DERIV_DIFF_MAT = _node_tables(5)
_, NODE_DERIV7_DIFF_MAT = _node_tables(7)


def cell_quadrature_nodes(s5, dx):
    """Quartic-interpolant values and d/dx at the five Boole nodes of cell j.

    s5 holds cells j-2..j+2; outputs have the node axis appended last.
    Derivatives act on first differences, so constant input yields exact
    zeros.
    """
    d = np.diff(s5, axis=-1)
    return s5 @ NODE_VALUE_MAT.T, (d @ NODE_DERIV_DIFF_MAT.T) / dx


def node_derivs_wide(s7, dx):
    """d/dx at the five Boole nodes of cell j from the degree-6 interpolant
    through cells j-3..j+3.

    One interpolation order beyond the quartic: the derivative of a
    width-five interpolant is only fourth-order accurate at the nodes, which
    would cap the global-flux right side below fifth order.
    """
    d = np.diff(s7, axis=-1)
    return (d @ NODE_DERIV7_DIFF_MAT.T) / dx


def boole_integrate(f5, dx):
    """Integral over one cell from the five node values:
    dx (7 f0 + 32 f1 + 12 f2 + 32 f3 + 7 f4) / 90."""
    return dx * (f5 @ BOOLE_W)
