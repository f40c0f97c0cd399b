"""Plain-text artifact formats and error norms.

Solution files: one header line, then one row per cell in row-major order,
17-significant-digit decimals (lossless binary64 round trip):

    # columns: x,rho,u,p,E; case=<name>; t=<t>; nx=<nx>
    # columns: x,y,rho,u,v,p,E; case=<name>; t=<t>; nx=<nx>; ny=<ny>

Region-map files: one row per interface, columns
``direction(x|y) j k tag`` with tags 0=smooth, 1=rough-contact,
2=rough-non-contact (k is 0 in 1-D).
"""

from __future__ import annotations

import json

import numpy as np

from .state import ConfigError, GasModel, Grid, cons_to_prim

FMT = "%.17g"


def solution_table(U, grid: Grid, gas: GasModel, primitive=False):
    """Cell table (columns listed in the header) from a padded field."""
    P = U[grid.interior]
    V = P if primitive else cons_to_prim(P, gas)
    if primitive:
        E = P[-1] / (gas.gamma - 1.0) + 0.5 * P[0] * np.sum(P[1:-1] ** 2, axis=0)
    else:
        E = P[-1]
    if grid.ndim == 1:
        x = grid.centers_x()
        return np.column_stack([x, V[0], V[1], V[2], E])
    X, Y = np.meshgrid(grid.centers_x(), grid.centers_y(), indexing="ij")
    cols = [X, Y, V[0], V[1], V[2], V[3], E]
    return np.column_stack([c.reshape(-1) for c in cols])


def write_solution(path, U, grid: Grid, gas: GasModel, case, t, primitive=False):
    table = solution_table(U, grid, gas, primitive=primitive)
    if grid.ndim == 1:
        header = f"columns: x,rho,u,p,E; case={case}; t={FMT % t}; nx={grid.nx}"
    else:
        header = (
            f"columns: x,y,rho,u,v,p,E; case={case}; t={FMT % t}; "
            f"nx={grid.nx}; ny={grid.ny}"
        )
    np.savetxt(path, table, fmt=FMT, header=header)
    return path


def read_solution(path):
    """(meta, table) from a solution file; meta holds case/t/nx[/ny]."""
    with open(path) as fh:
        first = fh.readline()
    if not first.startswith("# columns:"):
        raise ConfigError(f"{path}: missing solution header")
    meta = {}
    for part in first[1:].strip().split(";"):
        key, _, val = part.strip().partition(":" if part.strip().startswith("columns") else "=")
        meta[key.strip()] = val.strip()
    meta["t"] = float(meta["t"])
    meta["nx"] = int(meta["nx"])
    if "ny" in meta:
        meta["ny"] = int(meta["ny"])
    table = np.loadtxt(path)
    if table.ndim == 1:
        table = table[None, :]
    return meta, table


def column_names(meta):
    return [c.strip() for c in meta["columns"].split(",")]


def write_regions(path, regions, grid: Grid):
    """Physical-interface tags of every direction, one row per interface."""
    with open(path, "w") as fh:
        fh.write("# columns: direction j k tag (0=S 1=RC 2=RNC)\n")
        phys_x = regions.x[:, 2:-2]
        for k in range(phys_x.shape[0]):
            for j in range(phys_x.shape[1]):
                fh.write(f"x {j} {k} {phys_x[k, j]}\n")
        if regions.y is not None:
            phys_y = regions.y[:, 2:-2]
            for j in range(phys_y.shape[0]):
                for k in range(phys_y.shape[1]):
                    fh.write(f"y {j} {k} {phys_y[j, k]}\n")
    return path


def read_regions(path):
    """{'x': (n_if, n_rows) tags, 'y': ... or absent} keyed like the writer."""
    rows = {"x": [], "y": []}
    with open(path) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            d, j, k, tag = line.split()
            rows[d].append((int(j), int(k), int(tag)))
    out = {}
    for d, entries in rows.items():
        if not entries:
            continue
        nj = max(e[0] for e in entries) + 1
        nk = max(e[1] for e in entries) + 1
        arr = np.zeros((nj, nk), dtype=np.int8)
        for j, k, tag in entries:
            arr[j, k] = tag
        out[d] = arr
    return out


def l1_error(table_a, table_b, meta):
    """Per-component L1 norms sum(|a - b|) dx [dy] over the value columns."""
    if table_a.shape != table_b.shape:
        raise ConfigError(
            f"mesh/component mismatch: {table_a.shape} vs {table_b.shape} (no resampling)"
        )
    names = column_names(meta)
    ncoord = 2 if "y" in names else 1
    if not np.allclose(table_a[:, :ncoord], table_b[:, :ncoord], rtol=1e-13, atol=1e-13):
        raise ConfigError("cell-center coordinates differ (no resampling)")
    # cell volume from the stored mesh metadata
    if ncoord == 1:
        vol = (table_a[-1, 0] - table_a[0, 0]) / (meta["nx"] - 1) if meta["nx"] > 1 else 1.0
    else:
        xs = np.unique(table_a[:, 0])
        ys = np.unique(table_a[:, 1])
        vol = (xs[1] - xs[0]) * (ys[1] - ys[0])
    diff = np.abs(table_a[:, ncoord:] - table_b[:, ncoord:]).sum(axis=0) * vol
    return dict(zip(names[ncoord:], diff))


def exact_solution_table(spec, grid: Grid, t):
    """Cell table of a case's exact solution (registered cases only)."""
    if spec.exact is None:
        raise ConfigError(f"case {spec.name!r} has no exact solution")
    x = grid.centers_x()
    rho, u, p = spec.exact(x, t)
    gas = spec.gas()
    E = p / (gas.gamma - 1.0) + 0.5 * rho * u * u
    return np.column_stack([x, rho, u, p, E])


def write_manifest(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def diagnostics_line(st, ndim):
    """One machine-readable line per step: step t dt [counts per direction]
    wall_ms."""
    cols = [str(st.step), FMT % st.t, FMT % st.dt]
    for triple in st.counts:
        cols.extend(str(c) for c in triple)
    if not st.counts:  # primitive-only scheme has no regions
        cols.extend(["0"] * (3 * ndim))
    cols.append(f"{st.wall_ms:.3f}")
    return " ".join(cols)
