from fractions import Fraction
import json
import math

import pytest
from hypothesis import given, strategies as st

from edgegeom import exactfield as ef
from edgegeom import polygeom as pg
from edgegeom.errors import DegenerateStars, IndexOutOfRange, WrongParity

SMALL_N = [5, 6, 7, 8, 9, 10, 11, 12, 14]


def _tiles(N):
    fam = pg.first_family(N)
    return [fam.polygon] + list(fam.tiles.values())


@pytest.mark.parametrize("N", SMALL_N)
def test_radius_height_relation_exact(N):
    for t in _tiles(N):
        ctx = t._ctx()
        assert t.radius * ctx.cos(1, t.sides) == t.height


@pytest.mark.parametrize("N", SMALL_N)
def test_first_family_heights(N):
    fam = pg.first_family(N)
    t = ef.tan_exact(1, N, 4 * N)
    for k, tile in fam.tiles.items():
        assert tile.height == t * ef.tan_exact(k, N, 4 * N)


@pytest.mark.parametrize("N", SMALL_N)
def test_two_star_reconstruction(N):
    for tile in _tiles(N)[1:]:
        n = tile.sides
        pts = tile.star_points("left")
        for j, k in [(1, 2), (1, len(pts))]:
            if k > len(pts) or j == k:
                continue
            d = pts[k - 1] - pts[j - 1]
            d = d if d.real_part().sign() > 0 else -d
            assert pg.two_star_height(d.real_part(), j, k, n) == tile.height


def test_two_star_degenerate():
    with pytest.raises(DegenerateStars):
        pg.two_star_height(ef.rational(1, 20), 2, 2, 5)


def test_star_index_out_of_range():
    tile = pg.first_family(7).polygon
    with pytest.raises(IndexOutOfRange):
        tile.star(4)


@pytest.mark.parametrize("N", [8, 10, 12, 14])
def test_ds_heights_even(N):
    ctx = pg.Ctx(N, True)
    hs2 = pg.s_tile(ctx, N, 2).height
    for k in range(1, N // 2 - 1):
        assert pg.ds_tile(N, k).height == hs2 * ctx.tan(1, N) * ctx.tan(k, N)


@pytest.mark.parametrize("N", [7, 9, 11])
def test_ds_heights_odd(N):
    # DS[k] of odd N is S[k] of 2N scaled by hS[2](N) / hS[N-2](2N)
    a, b = pg.Ctx(N, True, conductor=8 * N), pg.Ctx(2 * N, True)
    r = pg.s_tile(a, N, 2).height / pg.s_tile(b, 2 * N, N - 2).height
    for k in range(1, N - 1):
        assert pg.ds_tile(N, k).height.lift(8 * N) == pg.s_tile(b, 2 * N, k).height * r


@pytest.mark.parametrize("N", [10, 14, 18, 22])
def test_twice_odd_sides(N):
    fam = pg.first_family(N)
    for k, tile in fam.tiles.items():
        assert tile.sides == (N // 2 if k % 2 else N)
    assert pg.ds_tile(N, 1).sides == N // 2
    assert pg.ds_tile(N, 2).sides == N


@pytest.mark.parametrize("N", [5, 7, 9, 11])
def test_twice_odd_embedding(N):
    f = pg.twice_odd_embedding(N)
    a = pg.first_family(N)
    b = pg.first_family(2 * N)
    # D goes to the polygon 2N, N to S[N-2] and M to S[2m] of 2N
    image = f(a.D)
    assert image.center.is_zero()
    assert image.height == 1
    assert f(a.polygon).center == b.S(N - 2).center
    assert f(a.polygon).height == b.S(N - 2).height
    assert f(a.polygon).sides == b.S(N - 2).sides == N
    m = len(a.tiles) - 1
    assert f(a.M) == f(a.S(m))
    assert f(a.M).height == b.S(2 * m).height
    assert f(a.M).center == b.S(2 * m).center
    assert f(a.M).sides == b.S(2 * m).sides == 2 * N


def test_twice_odd_embedding_parity():
    with pytest.raises(WrongParity):
        pg.twice_odd_embedding(8)


@pytest.mark.parametrize("N", [8, 10, 12, 14, 7, 9])
def test_generation_chain(N):
    chain = pg.ideal_generation_chain(N, 4)
    fam = pg.first_family(N)
    t = fam.polygon.star(1)
    ds = [pair[1] for pair in chain]
    first = [fam.D] + ds
    ratios = [b.height / a.height for a, b in zip(first, first[1:])]
    assert all(r == ratios[0] for r in ratios)
    # centres on a line through star[1] of N, distances scaling by the same ratio
    for a, b in zip(first, first[1:]):
        u, v = a.center - t, b.center - t
        assert (u.conj() * v).imag_part().is_zero()
        assert v == u * ratios[0]


def test_family_json_schema():
    fam = pg.first_family(7)
    data = json.loads(json.dumps(fam.S(1).to_json(exact_coeffs=True)))
    assert {"sides", "center", "height", "radius", "phase", "label", "coeffs"} <= set(data)
    assert data["sides"] == 14
    assert math.isclose(data["radius"] * math.cos(math.pi / 14), data["height"], rel_tol=1e-15)


def test_exact_and_float_agree():
    ex = pg.first_family(11)
    fl = pg.first_family(11, exact=False, digits=40)
    for k in ex.tiles:
        assert abs(complex(ex.S(k).center) - complex(fl.S(k).center)) < 1e-14
        assert abs(float(ex.S(k).height) - float(fl.S(k).height)) < 1e-14


def test_side_one_midpoint():
    fam = pg.first_family(22, normalization="side_one")
    assert fam.S(1).base_midpoint.real_part() == Fraction(-1, 2)


def test_genscale_on_first_family():
    fam = pg.first_family(5)
    # hD/hN = sqrt 5 and GenScale[5] = sqrt 5 - 2
    assert fam.D.height == fam.genscale + 2


@given(st.integers(3, 40), st.integers(1, 19))
def test_missing_tile_raises(N, k):
    fam = pg.first_family(N, exact=False, digits=20)
    if k > (N + 1) // 2 - 1:
        with pytest.raises(IndexOutOfRange):
            fam.S(k)
    else:
        assert fam.S(k).height > 0
