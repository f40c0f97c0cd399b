"""Benchmark case registry: domains, initial data, boundaries, adaption
coefficients, and final times.

Initial data are sampled pointwise at cell centers (the schemes evolve
point values, not cell averages).  Discontinuous data follow the where()
chains below; cell centers sit at half-integer offsets so they never land
exactly on an interface curve at the registered meshes, and a center that
did would take the chain's fall-through state.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .indicator import AdaptionCoefficients
from .state import ConfigError, GasModel, Grid, prim_to_cons
from .timestepping import BoundarySpec


@dataclass(frozen=True)
class CaseSpec:
    name: str
    dim: int
    xmin: float
    xmax: float
    nx: int
    gamma: float
    boundary: BoundarySpec
    kappas: AdaptionCoefficients
    t_final: float
    init: Callable
    ymin: float = 0.0
    ymax: float = 0.0
    ny: int = 0
    gravity: bool = False
    exact: Callable | None = None
    notes: str = ""

    def grid(self, nx=None, ny=None) -> Grid:
        if self.dim == 1:
            return Grid(nx=nx or self.nx, xmin=self.xmin, xmax=self.xmax)
        return Grid(
            nx=nx or self.nx,
            xmin=self.xmin,
            xmax=self.xmax,
            ny=ny or self.ny,
            ymin=self.ymin,
            ymax=self.ymax,
        )

    def gas(self) -> GasModel:
        return GasModel(self.gamma)


def _shock_density_wave(x):
    left = x < -4.0
    rho = np.where(left, 27.0 / 7.0, 1.0 + 0.2 * np.sin(5.0 * x))
    u = np.where(left, 4.0 * np.sqrt(35.0) / 9.0, 0.0)
    p = np.where(left, 31.0 / 3.0, 1.0)
    return rho, u, p


def _shock_entropy_wave(x):
    left = x < -4.5
    rho = np.where(left, 1.51695, 1.0 + 0.1 * np.sin(20.0 * x))
    u = np.where(left, 0.523346, 0.0)
    p = np.where(left, 1.805, 1.0)
    return rho, u, p


def _blast(x):
    rho = np.ones_like(x)
    u = np.zeros_like(x)
    p = np.where(x < 0.1, 1000.0, np.where(x < 0.9, 0.01, 100.0))
    return rho, u, p


def _smooth_contact(x):
    return 1.0 + 0.5 * np.sin(np.pi * x), np.ones_like(x), np.ones_like(x)


def _smooth_contact_exact(x, t):
    return _smooth_contact(x - t)


def _riemann_config3(x, y):
    q1 = (x > 1.0) & (y > 1.0)
    q2 = (x < 1.0) & (y > 1.0)
    q3 = (x < 1.0) & (y < 1.0)
    rho = np.where(q1, 1.5, np.where(q2, 0.5323, np.where(q3, 0.138, 0.5323)))
    u = np.where(q1, 0.0, np.where(q2, 1.206, np.where(q3, 1.206, 0.0)))
    v = np.where(q1, 0.0, np.where(q2, 0.0, 1.206))
    p = np.where(q1, 1.5, np.where(q2, 0.3, np.where(q3, 0.029, 0.3)))
    return rho, u, v, p


def _riemann_config12(x, y):
    q1 = (x > 0.5) & (y > 0.5)
    q2 = (x < 0.5) & (y > 0.5)
    q3 = (x < 0.5) & (y < 0.5)
    rho = np.where(q1, 0.5313, np.where(q2, 1.0, np.where(q3, 0.8, 1.0)))
    u = np.where(q2, 0.7276, 0.0)
    v = np.where(q1 | q2 | q3, 0.0, 0.7276)
    p = np.where(q1, 0.4, 1.0)
    return rho, u, v, p


def _implosion(x, y):
    core = x + y < 0.15
    rho = np.where(core, 0.125, 1.0)
    u = np.zeros_like(x)
    v = np.zeros_like(x)
    p = np.where(core, 0.14, 1.0)
    return rho, u, v, p


def _rayleigh_taylor(x, y, gamma=5.0 / 3.0):
    lower = y < 0.5
    rho = np.where(lower, 2.0, 1.0)
    p = np.where(lower, 2.0 * y + 1.0, y + 1.5)
    c = np.sqrt(gamma * p / rho)  # local sound speed of the unperturbed state
    u = np.zeros_like(x)
    v = -0.025 * c * np.cos(8.0 * np.pi * x)
    return rho, u, v, p


_REGISTRY: dict[str, CaseSpec] = {}


def _register(spec: CaseSpec):
    _REGISTRY[spec.name] = spec


_register(
    CaseSpec(
        name="ex1-shock-density",
        dim=1,
        xmin=-5.0,
        xmax=15.0,
        nx=600,  # dx = 1/30
        gamma=1.4,
        boundary=BoundarySpec(xlo="free", xhi="free"),
        kappas=AdaptionCoefficients(kappa_rhou=1e-3, kappa_p=1e-5),
        t_final=5.0,
        init=_shock_density_wave,
        notes="Mach 3 shock running into sinusoidal density fluctuations",
    )
)
_register(
    CaseSpec(
        name="ex2-shock-entropy",
        dim=1,
        xmin=-5.0,
        xmax=5.0,
        nx=400,  # dx = 1/40
        gamma=1.4,
        boundary=BoundarySpec(xlo="free", xhi="free"),
        kappas=AdaptionCoefficients(kappa_rhou=5e-3, kappa_p=1e-3),
        t_final=5.0,
        init=_shock_entropy_wave,
        notes="Mach 1.1 shock amplifying high-frequency entropy waves",
    )
)
_register(
    CaseSpec(
        name="ex3-blast",
        dim=1,
        xmin=0.0,
        xmax=1.0,
        nx=400,  # dx = 1/400
        gamma=1.4,
        boundary=BoundarySpec(xlo="reflect", xhi="reflect"),
        kappas=AdaptionCoefficients(kappa_rhou=1e-4, kappa_p=5e-2),
        t_final=0.038,
        init=_blast,
        notes="interacting blast waves; contact near x ~ 0.6 at the final time",
    )
)
_register(
    CaseSpec(
        name="ex4-config3",
        dim=2,
        xmin=0.0,
        xmax=1.2,
        ymin=0.0,
        ymax=1.2,
        nx=400,
        ny=400,  # dx = 3/1000
        gamma=1.4,
        boundary=BoundarySpec(xlo="free", xhi="free", ylo="free", yhi="free"),
        kappas=AdaptionCoefficients(kappa_rhou=1e-2, kappa_p=5e-2, kappa_rhov=1e-2),
        t_final=1.0,
        init=_riemann_config3,
        notes="four-shock Riemann problem with mushroom vortices",
    )
)
_register(
    CaseSpec(
        name="ex4-config12",
        dim=2,
        xmin=0.0,
        xmax=0.6,
        ymin=0.0,
        ymax=0.6,
        nx=400,
        ny=400,  # dx = 3/2000
        gamma=1.4,
        boundary=BoundarySpec(xlo="free", xhi="free", ylo="free", yhi="free"),
        kappas=AdaptionCoefficients(kappa_rhou=0.9, kappa_p=1.0, kappa_rhov=0.9),
        t_final=0.5,
        init=_riemann_config12,
        notes="two-shock/two-contact Riemann problem",
    )
)
_register(
    CaseSpec(
        name="ex5-implosion",
        dim=2,
        xmin=0.0,
        xmax=0.3,
        ymin=0.0,
        ymax=0.3,
        nx=250,
        ny=250,  # dx = 3/2500
        gamma=1.4,
        boundary=BoundarySpec(xlo="reflect", xhi="reflect", ylo="reflect", yhi="reflect"),
        kappas=AdaptionCoefficients(kappa_rhou=5e-2, kappa_p=2e-2, kappa_rhov=5e-2),
        t_final=2.5,
        init=_implosion,
        notes="converging low-density core; jet along the diagonal",
    )
)
_register(
    CaseSpec(
        name="ex6-rt",
        dim=2,
        xmin=0.0,
        xmax=0.25,
        ymin=0.0,
        ymax=1.0,
        nx=150,
        ny=600,  # dx = 1/600
        gamma=5.0 / 3.0,
        boundary=BoundarySpec(
            xlo="reflect",
            xhi="reflect",
            ylo="dirichlet",
            yhi="dirichlet",
            ylo_state=(2.0, 0.0, 0.0, 1.0),
            yhi_state=(1.0, 0.0, 0.0, 2.5),
        ),
        kappas=AdaptionCoefficients(kappa_rhou=1.2, kappa_p=1.0, kappa_rhov=1.2),
        t_final=2.95,
        init=_rayleigh_taylor,
        gravity=True,
        notes="heavy-over-light interface driven by a vertical source",
    )
)
_register(
    CaseSpec(
        name="smooth-contact-advection",
        dim=1,
        xmin=0.0,
        xmax=2.0,
        nx=100,
        gamma=1.4,
        boundary=BoundarySpec(xlo="periodic", xhi="periodic"),
        kappas=AdaptionCoefficients(kappa_rhou=1.0, kappa_p=1.0),
        t_final=0.5,
        init=_smooth_contact,
        exact=_smooth_contact_exact,
        notes="density wave advected at unit speed; exact solution available",
    )
)

_ALIASES = {
    "ex1": "ex1-shock-density",
    "ex2": "ex2-shock-entropy",
    "ex3": "ex3-blast",
    "ex4": "ex4-config3",
    "ex5": "ex5-implosion",
    "ex6": "ex6-rt",
    "smooth": "smooth-contact-advection",
}


def case_names():
    return sorted(_REGISTRY)


def case_lookup(name: str) -> CaseSpec:
    key = _ALIASES.get(name, name)
    if key not in _REGISTRY:
        raise ConfigError(f"unknown case {name!r}; registered: {', '.join(case_names())}")
    return _REGISTRY[key]


def init_fields(spec: CaseSpec, grid: Grid):
    """Padded conserved and primitive fields sampled at cell centers.

    Ghost cells hold a copy of the nearest physical data until the first
    boundary fill."""
    gas = spec.gas()
    U = grid.alloc()
    V = grid.alloc()
    if spec.dim == 1:
        comps = spec.init(grid.centers_x())
        Vp = np.stack(comps)
    else:
        X, Y = np.meshgrid(grid.centers_x(), grid.centers_y(), indexing="ij")
        Vp = np.stack(spec.init(X, Y))
    V[grid.interior] = Vp
    U[grid.interior] = prim_to_cons(Vp, gas)
    for F in (U, V):
        if spec.dim == 1:
            F[:, :5] = F[:, 5:6]
            F[:, -5:] = F[:, -6:-5]
        else:
            F[:, :5, :] = F[:, 5:6, :]
            F[:, -5:, :] = F[:, -6:-5, :]
            F[:, :, :5] = F[:, :, 5:6]
            F[:, :, -5:] = F[:, :, -6:-5]
    return U, V


def case_to_dict(spec: CaseSpec) -> dict:
    """Declarative form matching the run-config schema."""
    d = {
        "case": spec.name,
        "nx": spec.nx,
        "t_final": spec.t_final,
        "kappa_rhou": spec.kappas.kappa_rhou,
        "kappa_p": spec.kappas.kappa_p,
    }
    if spec.dim == 2:
        d["ny"] = spec.ny
        d["kappa_rhov"] = spec.kappas.kappa_rhov
    return d


def case_from_dict(d: dict) -> CaseSpec:
    spec = case_lookup(d["case"])
    kw = {}
    if "nx" in d:
        kw["nx"] = int(d["nx"])
    if "ny" in d and spec.dim == 2:
        kw["ny"] = int(d["ny"])
    if "t_final" in d:
        kw["t_final"] = float(d["t_final"])
    kaps = {
        "kappa_rhou": d.get("kappa_rhou", spec.kappas.kappa_rhou),
        "kappa_p": d.get("kappa_p", spec.kappas.kappa_p),
        "kappa_rhov": d.get("kappa_rhov", spec.kappas.kappa_rhov),
    }
    kw["kappas"] = AdaptionCoefficients(**kaps)
    return replace(spec, **kw)
