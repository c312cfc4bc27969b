from fractions import Fraction
import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from edgegeom import exactfield as ef
from edgegeom import isomaps as im
from edgegeom import polygeom as pg
from edgegeom.errors import WrongParity

coord = st.fractions(min_value=-6, max_value=6, max_denominator=9)


def exact_point(N, x, y):
    return pg.Ctx(N, True).point(x, y)


small = st.fractions(min_value=-1, max_value=1, max_denominator=9)


@given(st.sampled_from([5, 7, 8, 12]), coord, coord, small, small)
def test_tau_is_an_isometry_on_each_atom(N, x1, y1, dx, dy):
    p, q = exact_point(N, x1, y1), exact_point(N, x1 + dx, y1 + dy)
    rp, rq = im.tau(p, N), im.tau(q, N)
    assume(rp.mapped and rq.mapped and rp.vertex_index == rq.vertex_index)
    d0 = (p - q) * (p - q).conj()
    d1 = (rp.point - rq.point) * (rp.point - rq.point).conj()
    assert d0 == d1


@given(st.sampled_from([5, 7, 8, 12]), coord, coord)
def test_tau_inverse_undoes_tau(N, x, y):
    p = exact_point(N, x, y)
    r = im.tau(p, N)
    assume(r.mapped)
    back = im.tau_inverse(r.point, N)
    assert back.mapped
    assert back.point == p


@pytest.mark.parametrize("N", [5, 7, 10])
def test_atoms_are_convex(N):
    # the atom index is constant on each open atom: midpoints of same-index pairs agree
    rng = np.random.default_rng(N)
    pts = (rng.uniform(-8, 8, 3000) + 1j * rng.uniform(-8, 8, 3000))
    idx = np.array([im.tau(complex(z), N).vertex_index or 0 for z in pts])
    checked = 0
    for k in range(1, N + 1):
        sel = pts[idx == k]
        for a, b in zip(sel[: len(sel) // 2], sel[len(sel) // 2:]):
            assert im.tau(complex((a + b) / 2), N).vertex_index == k
            checked += 1
    assert checked >= 1000


def test_tau_singular_on_polygon():
    assert im.tau(exact_point(7, 0, 0), 7).singular == "on_polygon"
    assert im.tau(0j, 7).singular == "on_polygon"


def test_tau_float_matches_exact():
    rng = np.random.default_rng(3)
    for _ in range(200):
        x, y = (Fraction(int(v), 97) for v in rng.integers(-500, 500, 2))
        p = exact_point(9, x, y)
        re, rf = im.tau(p, 9), im.tau(complex(p), 9)
        if re.mapped:
            assert re.vertex_index == rf.vertex_index
            assert abs(complex(re.point) - rf.point) < 1e-12


@pytest.mark.parametrize("N", [5, 7, 8, 11, 14])
def test_dc_vertex_cycle(N):
    # on the closed polygon Dc is the rotation about its centre, so the
    # vertex set comes back after N steps and the centre is fixed
    verts = [im.tw(v, N) for v in pg.polygon_vertices(N, exact=True)]
    centre = im.tw(pg.Ctx(N, True).point(0, 0), N)
    assert im.dc(centre, N)[0] == centre
    vs = set(verts)
    for v in verts:
        z = v
        for _ in range(N):
            z, _ = im.dc_piece(z, centre, N)
            assert z in vs
        assert z == v


@pytest.mark.parametrize("N", [5, 7, 8, 11, 14])
def test_dc_strict_vertices_cycle_through_minus_n(N):
    # with sign 0 on the axis the nonzero vertices of N and -N form one
    # cycle of length 2N - 2 (the origin, shared by both, is fixed)
    verts = [im.tw(v, N) for v in pg.polygon_vertices(N, exact=True)]
    both = {v for v in verts if not v.is_zero()} | {-v for v in verts if not v.is_zero()}
    assert len(both) == 2 * N - 2
    v = next(iter(both))
    z, seen = v, []
    for _ in range(2 * N - 2):
        seen.append(z)
        z, _ = im.dc(z, N)
    assert z == v
    assert set(seen) == both


def test_dc_axis_flag():
    z, on_axis = im.dc(ef.rational(Fraction(3, 2), 28), 7)
    assert on_axis
    _, on_axis = im.dc(complex(1.5, 0.1), 7)
    assert not on_axis


@given(st.floats(-0.99, 0.99), st.floats(-0.99, 0.99))
def test_df_rectify_is_a_rotation(x, y):
    N = 8
    w = 2 * math.cos(2 * math.pi / N)
    assume(abs(-x + w * y) < 0.99)
    u = complex(*im.df_rectify((x, y), N))
    v = complex(*im.df_rectify(im.df((x, y), N), N))
    rot = cmath.exp(2j * math.pi / N)
    assert abs(v - rot * u) < 1e-12


def test_df_wrong_parity():
    with pytest.raises(WrongParity):
        im.df((0.1, 0.2), 7)


def test_tw_midpoint_of_s1():
    fam = pg.first_family(22)
    mid = im.tw(fam.S(1).base_midpoint, 22)
    assert mid == ef.rational(Fraction(-1, 2), mid.conductor)


@given(st.sampled_from([7, 14]), coord, coord)
def test_tw_roundtrip(N, x, y):
    p = exact_point(N, x, y)
    assert im.tw_inverse(im.tw(p, N), N) == p


def test_mappoint_tags():
    p = im.MapPoint(complex(-3, 1), im.TAU_SPACE)
    assert im.tw(p, 7).space_tag == im.DC_SPACE
    assert im.tau(p, 7).point.space_tag == im.TAU_SPACE
