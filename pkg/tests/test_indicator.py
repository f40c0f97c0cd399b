import numpy as np
import pytest

from dfeuler.conservative import CONTACT, ROUGH, SMOOTH
from dfeuler.indicator import (
    AdaptionCoefficients,
    RegionMaps,
    build_regions,
    classify_direction,
    discrepancy_fields,
    smooth_and_average,
    uniform_regions,
)
from dfeuler.state import GasModel, Grid, cons_to_prim, prim_to_cons

GAS = GasModel(1.4)


def test_zero_discrepancy_for_consistent_fields():
    rng = np.random.default_rng(0)
    V = np.stack([rng.uniform(0.5, 2, 30), rng.uniform(-1, 1, 30), rng.uniform(0.5, 2, 30)])
    U = prim_to_cons(V, GAS)
    eps = discrepancy_fields(U, cons_to_prim(U, GAS), GAS)
    assert all(np.max(e) <= 1e-24 for e in eps)


def test_single_cell_momentum_mismatch():
    V = np.tile(np.array([1.0, 0.5, 2.0])[:, None], (1, 20))
    U = prim_to_cons(V, GAS)
    Vstar = V.copy()
    Vstar[1, 7] += 0.1  # rho=1 so rho*u shifts by exactly 0.1
    eps_mx, eps_p = discrepancy_fields(U, Vstar, GAS)
    assert eps_mx[7] == pytest.approx(0.01, rel=1e-12)
    assert np.all(eps_mx[np.arange(20) != 7] == 0.0)
    # a pure pressure mismatch leaves the momentum field untouched
    Vstar2 = V.copy()
    Vstar2[2, 4] += 0.3
    eps_mx2, eps_p2 = discrepancy_fields(U, Vstar2, GAS)
    assert np.all(eps_mx2 == 0.0)
    assert eps_p2[4] == pytest.approx(0.09, rel=1e-12)


def test_nonfinite_discrepancy_is_capped():
    V = np.tile(np.array([1.0, 0.5, 2.0])[:, None], (1, 20))
    U = prim_to_cons(V, GAS)
    Vstar = V.copy()
    Vstar[1, 3] = np.inf
    Vstar[1, 9] += 1.0
    eps_mx, _ = discrepancy_fields(U, Vstar, GAS)
    assert np.all(np.isfinite(eps_mx))
    assert eps_mx[3] == eps_mx[9] == eps_mx.max()


def test_smoothing_weights_and_average():
    c = np.full((1, 25), 0.7)
    sm, avg = smooth_and_average(c)
    assert np.allclose(sm, 0.7, rtol=1e-14)
    assert avg == pytest.approx(0.7, rel=1e-14)
    # unit impulse spreads as (1,4,8,4,1)/18 and averages to 1/N
    e = np.zeros((1, 25))
    e[0, 12] = 1.0
    sm, avg = smooth_and_average(e)
    want = np.array([1.0, 4.0, 8.0, 4.0, 1.0]) / 18.0
    assert np.allclose(sm[0, 11:16], want, rtol=1e-14)  # cells j-2..j+2 (+1 offset)
    assert avg == pytest.approx(1.0 / 25.0, rel=1e-12)


def test_all_zero_fields_classify_smooth():
    tags = classify_direction(np.zeros((1, 20)), np.zeros((1, 20)), 1.0, 1.0)
    assert np.all(tags == SMOOTH)
    assert tags.shape == (1, 25)
    assert not tags.flags.writeable


def hand_classifier(eps_m, eps_p, km, kp):
    """Oracle: literal threshold logic on a single row, scalar loops."""
    n = eps_m.size
    pad_m = np.concatenate([[eps_m[0]] * 3, eps_m, [eps_m[-1]] * 3])
    pad_p = np.concatenate([[eps_p[0]] * 3, eps_p, [eps_p[-1]] * 3])
    sm = np.array([pad_m[i - 2 : i + 3] @ np.array([1, 4, 8, 4, 1]) / 18 for i in range(2, n + 4)])
    sp = np.array([pad_p[i - 2 : i + 3] @ np.array([1, 4, 8, 4, 1]) / 18 for i in range(2, n + 4)])
    am = sm[1:-1].mean()
    ap = sp[1:-1].mean()
    out = []
    for i in range(n + 1):
        im = max(sm[i], sm[i + 1])
        ip = max(sp[i], sp[i + 1])
        if im <= km * am:
            out.append(SMOOTH)
        elif ip <= kp * ap:
            out.append(CONTACT)
        else:
            out.append(ROUGH)
    return np.array(out)


def test_shock_spike_classifies_rough():
    eps_m = np.zeros(20)
    eps_p = np.zeros(20)
    eps_m[9:11] = 1.0
    eps_p[9:11] = 1.0
    tags = classify_direction(eps_m[None], eps_p[None], 1.0, 1.0)
    want = hand_classifier(eps_m, eps_p, 1.0, 1.0)
    assert np.array_equal(tags[0, 2:-2], want)
    assert ROUGH in tags[0, 2:-2]
    # interfaces bounding the spiked cells 9..10 must be flagged
    assert np.all(tags[0, 2:-2][9:12] != SMOOTH)


def test_momentum_spike_with_flat_pressure_classifies_contact():
    eps_m = np.zeros(20)
    eps_p = np.full(20, 1e-6)
    eps_m[9:11] = 1.0
    tags = classify_direction(eps_m[None], eps_p[None], 1.0, 1e6)
    want = hand_classifier(eps_m, eps_p, 1.0, 1e6)
    assert np.array_equal(tags[0, 2:-2], want)
    assert CONTACT in tags[0, 2:-2]
    assert ROUGH not in tags[0, 2:-2]


def test_scaling_consistency():
    rng = np.random.default_rng(7)
    eps_m = rng.uniform(0, 1, 40) ** 4
    eps_p = rng.uniform(0, 1, 40) ** 4
    base = classify_direction(eps_m[None], eps_p[None], 0.7, 1.3)
    for lam in (1e-12, 1.0, 1e12):
        scaled = classify_direction(lam * eps_m[None], lam * eps_p[None], 0.7, 1.3)
        assert np.array_equal(base, scaled)


def test_classification_deterministic_and_total():
    rng = np.random.default_rng(3)
    eps_m = rng.uniform(0, 1, (4, 30))
    eps_p = rng.uniform(0, 1, (4, 30))
    a = classify_direction(eps_m, eps_p, 1.0, 1.0)
    b = classify_direction(eps_m, eps_p, 1.0, 1.0)
    assert np.array_equal(a, b)
    assert np.isin(a, [SMOOTH, CONTACT, ROUGH]).all()


def test_build_regions_1d_and_2d_shapes_and_counts():
    grid = Grid(nx=24, xmin=0.0, xmax=1.0)
    U = grid.alloc()
    U[0] = 1.0
    U[2] = 2.5
    regions = build_regions(U, cons_to_prim(U, GAS), GAS, grid, AdaptionCoefficients(1.0, 1.0))
    assert regions.x.shape == (1, 29) and regions.y is None
    (nS, nRC, nRNC), = regions.counts()
    assert (nS, nRC, nRNC) == (25, 0, 0)  # all smooth, nx+1 physical interfaces

    g2 = Grid(nx=10, xmin=0.0, xmax=1.0, ny=8, ymin=0.0, ymax=1.0)
    U2 = g2.alloc()
    U2[0] = 1.0
    U2[3] = 2.5
    V2 = cons_to_prim(U2, GAS)
    V2[1, 12, 9] += 0.5  # momentum-x discrepancy inside the domain
    r2 = build_regions(U2, V2, GAS, g2, AdaptionCoefficients(1.0, 1.0, kappa_rhov=1.0))
    assert r2.x.shape == (8, 15) and r2.y.shape == (10, 13)
    cx, cy = r2.counts()
    assert sum(cx) == 8 * 11 and sum(cy) == 10 * 9
    assert cx[0] < 8 * 11  # the discrepancy must flag something in x


def test_uniform_regions_and_kappa_validation():
    grid = Grid(nx=12, xmin=0.0, xmax=1.0)
    r = uniform_regions(grid, ROUGH)
    assert np.all(r.x == ROUGH)
    assert not r.x.flags.writeable
    with pytest.raises(ValueError):
        AdaptionCoefficients(0.0, 1.0)
