from fractions import Fraction
import json
import math

import mpmath
import numpy as np
import pytest

from edgegeom import edgeanalysis as ea
from edgegeom import orbitlab as ol
from edgegeom import polygeom as pg
from edgegeom.errors import SingularHit


@pytest.mark.parametrize("N", range(3, 26))
def test_cs_period_law(N):
    for row in ol.cs_period_table(N):
        k = row["k"]
        assert row["period"] == N // math.gcd(k, N)
        assert row["steps"] == [k % N]


def _interior_samples(tile, n, seed):
    rng = np.random.default_rng(seed)
    c, h = complex(tile.center), float(tile.height)
    r = 0.9 * h * np.sqrt(rng.uniform(0, 1, n))
    a = rng.uniform(0, 2 * np.pi, n)
    return c + r * np.exp(1j * a)


@pytest.mark.parametrize("N,k", [(7, 1), (7, 2), (11, 2), (12, 3), (10, 2)])
def test_tile_interior_shares_orbit(N, k):
    tile = pg.first_family(N, exact=False).S(k)
    recs = [ol.period(z, N, max_iter=10 ** 5) for z in _interior_samples(tile, 10, N * k)]
    assert len({r.period for r in recs}) == 1
    assert len({tuple(r.indices) for r in recs}) == 1


@pytest.mark.parametrize("N", [7, 9, 11])
def test_period_doubling_odd_n(N):
    # S[k] of odd N: interior period 2N, centre period N
    fam = pg.first_family(N, exact=False)
    for k, tile in fam.tiles.items():
        if ea.mutation_spec(N, k) is not None:
            continue
        h = float(tile.height)
        rep = ol.tile_from_point(complex(tile.center) + 0.3j * h, N, box=3 * h)
        assert rep.sides == 2 * N
        assert rep.period == 2 * N
        assert rep.center_period == N
        assert rep.doubling


@pytest.mark.parametrize("N", [10, 14])
def test_twice_odd_tile_shapes(N):
    fam = pg.first_family(N, exact=False)
    for k, tile in fam.tiles.items():
        if ea.mutation_spec(N, k) is not None:
            continue
        h = float(tile.height)
        rep = ol.tile_from_point(complex(tile.center) + 0.2j * h, N, box=3 * h)
        assert rep.sides == tile.sides
        assert rep.radius * math.cos(math.pi / rep.sides) == pytest.approx(h, rel=1e-9)
        assert abs(rep.center - complex(tile.center)) < 1e-9
        assert rep.doubling == (k % 2 == 0)


@pytest.mark.parametrize("N", [5, 9, 11])
def test_embedded_tiles_are_web_tiles(N):
    f = pg.twice_odd_embedding(N, exact=False)
    fam = pg.first_family(N, exact=False)
    for k, tile in fam.tiles.items():
        if tile is fam.D or ea.mutation_spec(N, k) is not None:
            continue
        g = f(tile)
        h = float(g.height)
        rep = ol.tile_from_point(complex(g.center) + 0.1j * h, 2 * N, box=3 * h)
        assert rep.sides == g.sides
        assert abs(rep.center - complex(g.center)) < 1e-9


def test_dx_tile_n19():
    p = complex(-0.5777985323549032, -0.9993186363086173)
    rep = ol.tile_from_point(p, 19, max_iter=10 ** 4, box=0.01)
    assert rep.period == 2546
    assert rep.sides == 38
    assert rep.center_period == 1273


def test_pim_matches_mp_orbit():
    digits = 35
    with mpmath.workdps(digits):
        p = mpmath.mpc("-1.3", "0.21")
        idx = ol.ind(p, 200, 11, digits)
        orbit = ol.pim(p, idx, 11)
        z = p
        for j, k in enumerate(idx):
            r = ol.im.tau(z, 11, digits)
            z = r.point
            assert abs(z - orbit[j + 1]) < mpmath.mpf(10) ** (-(digits - 8))


def test_exact_period_agrees_with_double():
    fam = pg.first_family(12)
    for tile in fam.tiles.values():
        a = ol.period(tile.center, 12, mode="exact", max_iter=1000)
        b = ol.period(complex(tile.center), 12, max_iter=1000)
        assert a.period == b.period
        assert a.exact_confirmed


def test_mp_mode():
    tile = pg.first_family(7).S(1)
    rec = ol.period(mpmath.mpc(complex(tile.center)) + mpmath.mpc(0, "1e-3"), 7, mode="mp",
                    exact_point=None, max_iter=100)
    assert rec.period == 14


def test_singular_start():
    with pytest.raises(SingularHit):
        ol.period(0.1 + 0.1j, 7)


def test_no_return():
    rec = ol.period(complex(-1.2345, 0.6789), 7, max_iter=3)
    assert rec.period is None
    assert rec.termination == "max_iter_reached"


def test_orbit_record_json():
    rec = ol.period(complex(pg.first_family(7).S(1).center), 7)
    data = json.loads(json.dumps(rec.to_json()))
    assert data["period"] == 7
    assert len(data["indices"]) == 7


def test_doubling_center_formula():
    fam = pg.first_family(7)
    c = fam.S(1).center
    p = c + pg.Ctx(7, True).point(0, Fraction(1, 100))
    half = ol.ind(p, 7, 7)
    assert ol.doubling_center(p, half, 7) == c
    assert ol.reflection_center(half, 7) == c


def test_chain_periods_n16():
    rows = ol.chain_periods(16, 3)
    assert [r["period"] for r in rows] == [8, 32, 456]
    assert all(r["exact_confirmed"] for r in rows)
