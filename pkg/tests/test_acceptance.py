"""Acceptance suite: one test per criterion, printing one PASS/FAIL line each.

Criteria with multiple clauses are split so a genuinely unattainable clause
(see the analysis notes in the repo-external decisions ledger) fails alone
without masking the healthy ones.  Heavy benchmark runs are cached and
shared between criteria; their artifacts land in artifacts/ for the
figure-plotting frontend.
"""

import os
import time

import numpy as np
import pytest

from dfeuler.cases import case_lookup, init_fields
from dfeuler.conservative import CONTACT, ROUGH, SMOOTH
from dfeuler.io import write_regions, write_solution
from dfeuler.primitive import rhs_primitive
from dfeuler.state import GasModel, NG, cons_to_prim, pressure, prim_to_cons
from dfeuler.stencils import (
    SbmParams,
    WenoParams,
    aiweno_weights_minus,
    boole_integrate,
    cell_quadrature_nodes,
    interp5_minus,
    interp5_plus,
    interp_quarter,
    sbm_phi,
)
from dfeuler.timestepping import (
    RunState,
    SolverContext,
    advance,
    cfl_dt,
    conserved_totals,
    fill_ghosts,
    run_solver,
)

ART = os.path.join(os.path.dirname(__file__), "..", "artifacts")
_cache = {}


def _report(tag, ok, detail):
    print(f"\nACCEPTANCE {tag}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {tag}: {detail}"


def _ctx(spec, grid, scheme, **kw):
    return SolverContext(
        gas=spec.gas(), grid=grid, bc=spec.boundary, kappas=spec.kappas,
        scheme=scheme, gravity=spec.gravity, **kw,
    )


# ------------------------------------------------------------ criterion 1


def test_criterion_1_kernel_exactness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    ok = True
    msgs = []

    # degree <= 4 polynomial reproduction at 1e-12 relative
    xi6 = np.arange(-2.0, 4.0)
    xi5 = np.arange(-2.0, 3.0)
    for trial in range(20):
        coef = rng.normal(size=5)
        s6 = np.polynomial.polynomial.polyval(xi6, coef)
        s5 = np.polynomial.polynomial.polyval(xi5, coef)
        want_half = np.polynomial.polynomial.polyval(0.5, coef)
        want_mq = np.polynomial.polynomial.polyval(-0.25, coef)
        want_pq = np.polynomial.polynomial.polyval(0.25, coef)
        scale = max(1.0, abs(want_half))
        ok &= abs(interp5_minus(s6) - want_half) <= 1e-12 * scale
        # plus side: same interpolant through cells -1..3 evaluated at 1/2
        coef_plus = np.polynomial.polynomial.polyfit(xi6[1:], s6[1:], 4)
        want_plus = np.polynomial.polynomial.polyval(0.5, coef_plus)
        ok &= abs(interp5_plus(s6) - want_plus) <= 1e-12 * max(1.0, abs(want_plus))
        vm, vp = interp_quarter(s5)
        ok &= abs(vm - want_mq) <= 1e-12 * max(1.0, abs(want_mq))
        ok &= abs(vp - want_pq) <= 1e-12 * max(1.0, abs(want_pq))
        vals, ders = cell_quadrature_nodes(s5, 1.0)
        nodes = np.array([-0.5, -0.25, 0.0, 0.25, 0.5])
        dcoef = np.polynomial.polynomial.polyder(coef)
        ok &= np.allclose(vals, np.polynomial.polynomial.polyval(nodes, coef), rtol=1e-12, atol=1e-12)
        ok &= np.allclose(ders, np.polynomial.polynomial.polyval(nodes, dcoef), rtol=1e-12, atol=1e-12)
        anti = np.polynomial.polynomial.polyint(coef)
        want_int = np.polynomial.polynomial.polyval(0.5, anti) - np.polynomial.polynomial.polyval(-0.5, anti)
        ok &= abs(boole_integrate(vals, 1.0) - want_int) <= 1e-12 * max(1.0, abs(want_int))
    msgs.append("polynomial exactness 1e-12")

    # affine invariance of the nonlinear weights over extreme scalings
    wp = WenoParams()
    s = rng.normal(size=(300, 6))
    w_ref = aiweno_weights_minus(s, wp)
    for lam in (1e-30, 1e30):
        w = aiweno_weights_minus(lam * s, wp)
        ok &= np.allclose(w, w_ref, rtol=1e-12, atol=1e-14)
    msgs.append("affine invariance 1e-30/1e30")

    sp = SbmParams()
    ok &= sbm_phi(1.0, sp) == 1.0
    r = np.linspace(1.0 + 1e-8, 30.0, 257)
    ok &= bool(np.array_equal(sbm_phi(r, sp), r * sbm_phi(1.0 / r, sp)))
    msgs.append("limiter identities")

    dt = time.perf_counter() - t0
    _report(1, ok and dt < 1.0, f"{'; '.join(msgs)} in {dt:.2f}s (<1s)")


# ------------------------------------------------------------ criterion 2


def test_criterion_2_flux_suite():
    from dfeuler.fluxes import cu_flux, ldcu_flux, ldcu_star_states, local_speeds
    from dfeuler.state import flux_normal

    t0 = time.perf_counter()
    gas = GasModel(1.4)
    rng = np.random.default_rng(1)
    ok = True

    def P(*vals):
        return prim_to_cons(np.array([[v] for v in vals], dtype=float), gas)

    for _ in range(100):
        U = P(rng.uniform(0.1, 5), rng.uniform(-3, 3), rng.uniform(0.1, 5))
        F = flux_normal(U, gas)
        ok &= np.allclose(cu_flux(U, U, gas), F, rtol=1e-13, atol=1e-15)
        Fl, bad = ldcu_flux(U, U, gas)
        ok &= np.allclose(Fl, F, rtol=1e-13, atol=1e-15) and not bad.any()

    # exact contact preservation at the figure-style states
    for rr in (0.125, 0.5, 3.0):
        F, bad = ldcu_flux(P(1.0, 0.0, 1.0), P(rr, 0.0, 1.0), gas)
        ok &= abs(F[0, 0]) <= 1e-14 and abs(F[2, 0]) <= 1e-14
        ok &= abs(F[1, 0] - 1.0) <= 1e-13

    for _ in range(100):
        Ul = P(rng.uniform(0.1, 5), rng.uniform(-3, 3), rng.uniform(0.1, 5))
        Ur = P(rng.uniform(0.1, 5), rng.uniform(-3, 3), rng.uniform(0.1, 5))
        sl, sr, us, ps, ap, am = ldcu_star_states(Ul, Ur, gas)
        lhs = (us - am) * sl + (ap - us) * sr
        rhs = ap * Ur - am * Ul - (flux_normal(Ur, gas) - flux_normal(Ul, gas))
        ok &= np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)
        # anti-diffusion jump bound
        from dfeuler.stencils import minmod

        pl, pr = pressure(Ul, gas), pressure(Ur, gas)
        a_p, a_m = local_speeds(Ul[0], Ul[1] / Ul[0], pl, Ur[0], Ur[1] / Ur[0], pr, gas)
        Ust = (a_p * Ur - a_m * Ul - (flux_normal(Ur, gas) - flux_normal(Ul, gas))) / (a_p - a_m)
        q = minmod(Ur - Ust, Ust - Ul)
        ok &= np.all(np.abs(Ur - Ul - q) <= np.abs(Ur - Ul) + 1e-14)

    dt = time.perf_counter() - t0
    _report(2, ok and dt < 1.0, f"consistency/contact/fan/jump bounds in {dt:.2f}s (<1s)")


# ------------------------------------------------------------ criteria 3, 4


def _smooth_eoc(scheme):
    spec = case_lookup("smooth-contact-advection")
    gas = spec.gas()
    t_final = 0.5
    errs = []
    scale = None
    for n in (40, 80, 160):
        grid = spec.grid(nx=n)
        U0, V0 = init_fields(spec, grid)
        if scale is None:
            dt0 = cfl_dt(fill_ghosts(U0.copy(), spec.boundary, grid, gas), gas, grid)
            scale = 0.9 * dt0 / grid.dx ** (5.0 / 3.0)  # dt proportional to dx^(5/3)
        ctx = _ctx(spec, grid, scheme,
                   force_regions="S" if scheme != "primitive-only" else None,
                   dt_scale=scale)
        F0 = V0 if scheme == "primitive-only" else U0
        st = run_solver(ctx, F0, t_final)
        F = st.V if scheme == "primitive-only" else st.U
        rho = F[grid.interior][0]
        errs.append(np.abs(rho - spec.exact(grid.centers_x(), t_final)[0]).sum() * grid.dx)
    return np.log2(np.array(errs[:-1]) / np.array(errs[1:])), errs


def test_criterion_3_fifth_order_eoc():
    t0 = time.perf_counter()
    eocs, errs = _smooth_eoc("adaptive")
    dt = time.perf_counter() - t0
    _report(3, eocs.min() >= 4.5 and dt < 60,
            f"L1 density EOC {np.round(eocs, 3).tolist()} >= 4.5 in {dt:.1f}s (<1min)")


def test_criterion_4_primitive_eoc_and_well_balancedness():
    t0 = time.perf_counter()
    eocs, errs = _smooth_eoc("primitive-only")
    # constant-state right side must vanish exactly
    from dfeuler.state import Grid

    grid = Grid(nx=24, xmin=0.0, xmax=1.0)
    V = np.tile(np.array([1.2, 0.4, 2.0])[:, None], (1, 24 + 2 * NG))
    rhs = rhs_primitive(V, GasModel(1.4), grid)
    balanced = bool(np.array_equal(rhs, np.zeros_like(rhs)))
    dt = time.perf_counter() - t0
    _report(4, eocs.min() >= 4.5 and balanced and dt < 60,
            f"EOC {np.round(eocs, 3).tolist()} >= 4.5, constant-state RHS exactly zero "
            f"({balanced}) in {dt:.1f}s (<1min)")


# ------------------------------------------------------------ criterion 5


@pytest.mark.slow
def test_criterion_5_conservation():
    t0 = time.perf_counter()
    # 1-D periodic smooth run, 100 steps
    spec = case_lookup("smooth-contact-advection")
    grid = spec.grid(nx=64)
    U0, _ = init_fields(spec, grid)
    ctx = _ctx(spec, grid, "adaptive")
    state = RunState(t=0.0, step=0, U=fill_ghosts(U0.copy(), spec.boundary, grid, spec.gas()))
    tot0 = conserved_totals(state.U, grid)
    for _ in range(100):
        advance(state, ctx, cfl_dt(state.U, spec.gas(), grid))
    drift1d = np.abs((conserved_totals(state.U, grid) - tot0) / tot0).max()

    # implosion on solid walls at desk scale
    spec5 = case_lookup("ex5-implosion")
    g5 = spec5.grid(nx=125, ny=125)
    U0, _ = init_fields(spec5, g5)
    tot0 = conserved_totals(U0, g5)
    st = run_solver(_ctx(spec5, g5, "adaptive"), U0, 0.5)
    mass_drift = abs((conserved_totals(st.U, g5)[0] - tot0[0]) / tot0[0])

    dt = time.perf_counter() - t0
    _report(5, drift1d <= 1e-11 and mass_drift <= 1e-6,
            f"periodic drift {drift1d:.2e} <= 1e-11, implosion mass drift "
            f"{mass_drift:.2e} <= 1e-6 in {dt:.0f}s (<5min)")


# ------------------------------------------------------------ criterion 6


def _ex3_runs():
    if "ex3" not in _cache:
        spec = case_lookup("ex3-blast")
        grid = spec.grid()  # dx = 1/400
        out = {}
        for scheme in ("adaptive", "aweno"):
            U0, _ = init_fields(spec, grid)
            st = run_solver(_ctx(spec, grid, scheme), U0, spec.t_final)
            out[scheme] = st
        _cache["ex3"] = (spec, grid, out)
    return _cache["ex3"]


def contact_transition_cells(xs, rho, window=(0.56, 0.63), dx=1.0 / 400.0):
    """Cells strictly between the contact's plateau values.

    The contact is located at the largest density jump inside the window
    (the window excludes the shock near x = 0.645); plateaus are medians
    over cells 5..10 widths away on each side, and cells within 5 percent
    of the jump off either plateau do not count as 'between'.
    """
    sel = np.nonzero((xs >= window[0]) & (xs <= window[1]))[0]
    jumps = np.abs(np.diff(rho[sel]))
    k = sel[np.argmax(jumps)]
    x_star = 0.5 * (xs[k] + xs[k + 1])
    left = (xs >= x_star - 10 * dx) & (xs <= x_star - 5 * dx)
    right = (xs >= x_star + 5 * dx) & (xs <= x_star + 10 * dx)
    lo, hi = sorted((np.median(rho[left]), np.median(rho[right])))
    margin = 0.05 * (hi - lo)
    near = (xs >= x_star - 10 * dx) & (xs <= x_star + 10 * dx)
    between = (rho > lo + margin) & (rho < hi - margin) & near
    return int(between.sum())


@pytest.mark.slow
def test_criterion_6a_blast_completion_and_contact_sharpness():
    t0 = time.perf_counter()
    spec, grid, runs = _ex3_runs()
    xs = grid.centers_x()
    widths = {}
    for scheme, st in runs.items():
        P = st.U[grid.interior]
        assert np.all(P[0] > 0) and np.all(pressure(P, spec.gas()) > 0)
        widths[scheme] = contact_transition_cells(xs, P[0])
    dt = time.perf_counter() - t0
    _report("6a", widths["adaptive"] < widths["aweno"],
            f"both schemes completed; contact transition cells adaptive="
            f"{widths['adaptive']} < aweno={widths['aweno']} in {dt:.0f}s (<5min)")


@pytest.mark.slow
def test_criterion_6b_blast_zero_fallbacks():
    # Known-unattainable clause: when the two blast waves collide (t ~ 0.027)
    # the 1-2 cell pressure gap between them cannot be interpolated
    # admissibly by any five-cell stencil, and the (spec-mandated)
    # first-order interface fallback fires at that one interface for a few
    # steps.  Verified robust against CFL, guard-constant, and
    # anti-diffusion variations; see the decisions ledger.
    spec, grid, runs = _ex3_runs()
    counts = {scheme: st.fallback_total for scheme, st in runs.items()}
    _report("6b", all(c == 0 for c in counts.values()),
            f"first-order fallbacks {counts} (spec demands zero for both schemes)")


# ------------------------------------------------------- criteria 7 and 8


def _ex1_runs():
    if "ex1" not in _cache:
        spec = case_lookup("ex1-shock-density")
        grid = spec.grid()  # dx = 1/30
        out = {}
        for scheme in ("aweno", "adaptive"):
            U0, _ = init_fields(spec, grid)
            t0 = time.perf_counter()
            st = run_solver(_ctx(spec, grid, scheme), U0, spec.t_final)
            out[scheme] = (st, time.perf_counter() - t0)
        os.makedirs(ART, exist_ok=True)
        for scheme, (st, _) in out.items():
            write_solution(os.path.join(ART, f"ex1-{scheme}.dat"), st.U, grid,
                           spec.gas(), spec.name, st.t)
        write_regions(os.path.join(ART, "ex1-regions.dat"), out["adaptive"][0].regions, grid)
        _cache["ex1"] = (spec, grid, out)
    return _cache["ex1"]


@pytest.mark.slow
def test_criterion_7_efficiency_and_agreement():
    spec, grid, runs = _ex1_runs()
    st_a, wall_a = runs["adaptive"]
    st_w, wall_w = runs["aweno"]
    ratio = wall_a / wall_w
    rho_a = st_a.U[grid.interior][0]
    rho_w = st_w.U[grid.interior][0]
    rel = np.abs(rho_a - rho_w).sum() / np.abs(rho_w).sum()
    _report(7, ratio <= 0.9 and rel <= 0.05,
            f"wall ratio {ratio:.3f} <= 0.9, L1 density difference "
            f"{100 * rel:.2f}% <= 5% ({wall_a:.1f}s vs {wall_w:.1f}s)")


def _reference_shock_interfaces(grid, U, gas):
    """Interface indices of shock clusters in a solution: pressure jumps
    above max(20 percent of the largest jump, 0.5), clustered, centroid."""
    p = pressure(U[grid.interior], gas)
    dp = np.abs(np.diff(p))
    thresh = max(0.2 * dp.max(), 0.5)
    flagged = np.nonzero(dp > thresh)[0]
    clusters = []
    for i in flagged:
        if clusters and i - clusters[-1][-1] <= 2:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return [int(round(np.mean(c))) + 1 for c in clusters]  # interface right of cell i


@pytest.mark.slow
def test_criterion_8a_indicator_covers_all_shocks():
    spec, grid, runs = _ex1_runs()
    st_a, _ = runs["adaptive"]
    st_w, _ = runs["aweno"]
    tags = st_a.regions.x[0, 2:-2]
    shocks = _reference_shock_interfaces(grid, st_w.U, spec.gas())
    uncovered = []
    for s in shocks:
        lo = max(0, s - 2)
        hi = min(grid.nx, s + 2)
        if not np.any(tags[lo : hi + 1] != SMOOTH):
            uncovered.append(s)
    _report("8a", len(shocks) >= 1 and not uncovered,
            f"{len(shocks)} reference shocks, all within 2 cells of non-smooth tags "
            f"(uncovered: {uncovered})")


@pytest.mark.slow
def test_criterion_8b_indicator_fraction():
    # Known-unattainable clause at this mesh: the physically rough set of
    # this solution at t=5 (shock, shocklet train, and a street of weak
    # steepened waves verified against a 4x-refined reference) spans about
    # 35 percent of the interfaces, above the spec's 25 percent bound.
    # See the decisions ledger.
    spec, grid, runs = _ex1_runs()
    st_a, _ = runs["adaptive"]
    tags = st_a.regions.x[0, 2:-2]
    frac = float((tags != SMOOTH).mean())
    _report("8b", frac < 0.25, f"non-smooth interface fraction {frac:.3f} (spec bound 0.25)")


# ------------------------------------------------------------ criterion 9


@pytest.mark.slow
def test_criterion_9_two_dimensional_desk_runs():
    t0 = time.perf_counter()
    os.makedirs(ART, exist_ok=True)
    results = {}
    for name, nx, ny, t_final in (("ex4-config3", 100, 100, 1.0), ("ex6-rt", 75, 300, 1.95)):
        spec = case_lookup(name)
        grid = spec.grid(nx=nx, ny=ny)
        U0, _ = init_fields(spec, grid)
        st = run_solver(_ctx(spec, grid, "adaptive"), U0, t_final)
        P = st.U[grid.interior]
        p = pressure(P, spec.gas())
        all_tags = False
        for s in st.stats:
            if s.detected and s.counts:
                tot = np.array(s.counts).sum(axis=0)
                if np.all(tot > 0):
                    all_tags = True
                    break
        results[name] = (bool(np.all(P[0] > 0) and np.all(p > 0)), all_tags, st.fallback_total)
        write_solution(os.path.join(ART, f"{name}.dat"), st.U, grid, spec.gas(), name, st.t)
        write_regions(os.path.join(ART, f"{name}-regions.dat"), st.regions, grid)
    dt = time.perf_counter() - t0
    ok = all(pos and tags for pos, tags, _ in results.values())
    _report(9, ok, f"{results} (positive rho/p, all tags present) in {dt:.0f}s (<30min)")
