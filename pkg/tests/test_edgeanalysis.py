import csv
import os

import pytest
from hypothesis import given, strategies as st

from edgegeom import edgeanalysis as ea
from edgegeom.errors import IndexOutOfRange, TooShort

DATA = os.path.join(os.path.dirname(__file__), "data")


def _golden():
    with open(os.path.join(DATA, "mutations_n25.csv")) as fh:
        return {(int(r["N"]), r["role"], int(r["k"])): (int(r["kprime"]), int(r["component_sides"]))
                for r in csv.DictReader(fh)}


def test_mutation_golden_table():
    golden = _golden()
    got = {}
    for N in range(5, 26):
        for role in ("S", "DS"):
            for k, m in ea.mutation_table(N, role).items():
                got[(N, role, k)] = (m.kprime, m.component_sides)
    assert got == golden


@pytest.mark.parametrize("N,role,k,sides", [
    (20, "S", 2, 5), (25, "DS", 5, 5), (40, "DS", 10, 4), (28, "S", 2, 7), (30, "DS", 5, 3), (30, "DS", 9, 5),
])
def test_cited_mutations(N, role, k, sides):
    m = ea.mutation_spec(N, k, role)
    assert m.component_count == 2
    assert m.component_sides == sides


def test_cited_survivors():
    assert ea.mutation_spec(12, 4) is None
    assert ea.mutation_spec(24, 2) is None
    assert sorted(ea.mutation_table(24)) == [3, 4, 6, 8, 9]
    assert ea.mutation_spec(25, 5, "DS").base_star_index == 3


@given(st.integers(5, 80))
def test_predicted_ds_anchor(N):
    rep = ea.predicted_ds(N)
    anchor = N // 2 - 2 if N % 2 == 0 else N - 4
    assert rep.s1_alias == anchor
    assert rep.predicted_ds_indices[0] == anchor
    assert all((anchor - k) % rep.step == 0 for k in rep.predicted_ds_indices)
    assert rep.step == (4 if N % 2 == 0 else 8)
    assert min(rep.predicted_ds_indices) > 0


def test_predicted_ds_examples():
    assert ea.predicted_ds(22).predicted_ds_indices == [9, 5, 1]
    assert ea.predicted_ds(23).predicted_ds_indices == [19, 11, 3]
    assert ea.predicted_ds(60).predicted_ds_indices == [28, 24, 20, 16, 12, 8, 4]


@given(st.integers(5, 60), st.integers(1, 30))
def test_mutation_components_tile_the_polygon(N, k):
    top = (N + 1) // 2 - 1
    if k > top:
        with pytest.raises(IndexOutOfRange):
            ea.mutation_spec(N, k)
        return
    m = ea.mutation_spec(N, k)
    if m is not None:
        n = N // 2 if N % 4 == 2 else (N if N % 2 == 0 else 2 * N)
        assert m.component_sides * m.span == n
        assert 0 < m.base_star_index <= m.kprime


def test_n10_recurrence():
    seq = ea.linear_recurrence(ea.N10_TRANSITION, ea.N10_INIT, 31)
    d = [v[0] for v in seq]
    p = [v[1] for v in seq]
    assert d[:4] == [1, 5, 31, 185]
    assert p[:4] == [1, 8, 46, 278]
    c1, c2 = ea.collapsed_recurrence(ea.N10_TRANSITION)
    assert (c1, c2) == (5, 6)
    for n in range(2, 31):
        assert d[n] == c1 * d[n - 1] + c2 * d[n - 2]
    assert ea.dominant_ratio(ea.N10_TRANSITION) == 6
    assert abs(d[15] / d[14] - 6) < 1e-9


def test_quadratic_dimensions_increase():
    dims = ea.quadratic_dimensions()
    vals = [dims[N] for N in (5, 8, 12)]
    assert vals == sorted(vals) and len(set(vals)) == 3
    for N, want in ((5, 1.2411), (8, 1.2465), (12, 1.2513)):
        assert abs(dims[N] - want) < 5e-4


def test_temporal_estimate_needs_two():
    with pytest.raises(TooShort):
        ea.temporal_estimate([5])
    ratios, last = ea.temporal_estimate([9, 207, 4005])
    assert ratios[0] == 23


def test_effective_stars():
    assert ea.effective_stars(22, "S2") == [9, 5, 1]
    assert ea.effective_stars(40, "S1")[:3] == [19, 17, 15]
    with pytest.raises(ValueError):
        ea.effective_stars(22, "S3")
