"""Acceptance checks A1..A12 as data.

Each check returns a CheckResult with what was measured, what was expected,
the tolerance and the runtime.  A failed comparison is a report entry, not an
exception.  A12 is a stretch item and only runs when asked for.
"""

from dataclasses import dataclass, field, asdict
from fractions import Fraction
from functools import lru_cache
from math import gcd, isclose, sqrt
import os
import tempfile
import time

import numpy as np

from . import edgeanalysis as ea
from . import exactfield as ef
from . import isomaps as im
from . import orbitlab as ol
from . import polygeom as pg
from . import webgen as wg


@dataclass
class CheckResult:
    id: str
    title: str
    passed: bool
    measured: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    tolerance: object = None
    runtime: float = 0.0
    budget: float = None
    notes: list = field(default_factory=list)

    def to_json(self):
        return _jsonable(asdict(self))

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{self.id} {tag} {self.title} ({self.runtime:.2f}s)"


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


def _poly(coeffs):
    return [Fraction(c) for c in coeffs]


def _fr(*vals):
    return [Fraction(v) for v in vals]


# ---------------------------------------------------------------------------

def check_a1():
    g5 = ef.genscale(5)
    phi = ef.cos_pi(Fraction(1, 5), g5.conductor) * 2
    sqrt5 = phi * 2 - 1
    exact_ok = (g5 - (sqrt5 - 2)).is_zero() and ((g5 + 2) * (g5 + 2) - 5).is_zero()
    float_err = abs(float(g5) - (sqrt(5) - 2))
    mp8 = _poly(ef.minimal_polynomial("genscale", 8))
    cube8 = _poly(ef.to_generator_basis(ef.genscale(8) ** 3, "genscale", 8).coeffs)
    bad = []
    for N in range(3, 26):
        want = max(1, ef.euler_phi(N) // 2)
        deg = len(ef.minimal_polynomial(None, N)) - 1
        if deg != want:
            bad.append((N, deg, want))
    ok = exact_ok and float_err < 1e-12 and mp8 == _fr(1, -6, 1) and cube8 == _fr(-6, 35) and not bad
    return ok, {"genscale5_exact": exact_ok, "genscale5_float_err": float_err,
                "minpoly_genscale8": mp8, "genscale8_cubed": cube8, "rank_mismatches": bad}, \
        {"minpoly_genscale8": "x^2 = 6x - 1", "genscale8_cubed": "x^3 = 35x - 6",
         "rank": "phi(N)/2 for 3 <= N <= 25"}, 1e-12, []


def check_a2():
    notes = []
    h9 = float(pg.first_family(9, exact=False).S(1).height)
    f22 = pg.first_family(22)
    hM = f22.M.height
    hM22 = float(hM)
    hD5 = pg.first_family(5).D.height
    d5 = _poly(ef.to_generator_basis(hD5, None, 5).coeffs)
    d5_sq = ((hD5 * hD5) - 5).is_zero()

    def P(e):
        return _poly(ef.to_generator_basis(e, None, 22).coeffs)

    side = pg.first_family(22, normalization="side_one")
    rows = {
        "S[1] height/hM": (P(f22.S(1).height / hM), _fr(0, 1)),
        "S[1] mid/sN": (P(pg.re(side.S(1).base_midpoint)), _fr(Fraction(-1, 2))),
        "S[2] height/hN": (P(f22.S(2).height), _fr(0, 1)),
        "S[2] mid/sN": (P(pg.re(side.S(2).base_midpoint)), _fr(Fraction(-3, 2), Fraction(-1, 2))),
        "DS[5] height/hM": (P(pg.ds_tile(22, 5).height / hM),
                            [Fraction(c, 8) for c in (1, -22, 8, 6, -1)]),
        "DS[5] mid/sN": (P(pg.re(pg.ds_tile(22, 5, normalization="side_one", side="right").base_midpoint)),
                         _fr(Fraction(-3, 16), Fraction(11, 8), Fraction(5, 4), Fraction(1, 8), Fraction(-1, 16))),
    }
    row_ok = {k: a == b for k, (a, b) in rows.items()}
    if not row_ok["S[2] mid/sN"]:
        notes.append("reference MidS[2] = -3/2 - x/2 contradicts star[1] of S[2] at -1; computed -1 - x/2")
    notes.append("DS[5] midpoint is the copy mirrored across the axis of S[1] (right-side version)")
    ok = (abs(h9 - 0.132474) < 1e-5 and abs(hM22 - 0.489664) < 1e-5 and d5 == _fr(2, 1) and d5_sq
          and all(row_ok.values()))
    measured = {"hS1/hN N=9": h9, "hM/hN N=22": hM22, "hD/hN N=5": d5, "hD^2 = 5": d5_sq,
                "table_22_1": {k: a for k, (a, _) in rows.items()}, "row_match": row_ok}
    expected = {"hS1/hN N=9": 0.132474, "hM/hN N=22": 0.489664, "hD/hN N=5": "x + 2",
                "table_22_1": {k: b for k, (_, b) in rows.items()}}
    return ok, measured, expected, 1e-5, notes


@lru_cache(maxsize=1)
def _walkthrough():
    t0 = time.perf_counter()
    w = ol.gx_walkthrough()
    return w, time.perf_counter() - t0


def check_a3():
    w, _ = _walkthrough()
    polys = {k: _poly(v) for k, v in w.polynomials().items()}
    want = {
        "hGx/hN": _fr(Fraction(-5, 8), Fraction(59, 4), 9, Fraction(1, 4), Fraction(-3, 8)),
        "hSxx/hN": _fr(Fraction(-1, 8), Fraction(11, 4), Fraction(11, 2), Fraction(5, 4), Fraction(-3, 8)),
        "Sxx vertex6 x/sN": _fr(Fraction(-5, 8), Fraction(-27, 2), Fraction(-33, 4), Fraction(-1, 2), Fraction(3, 8)),
    }
    vals = {"v6": float(w.values["v6"]), "hGx": w.values["hGx"], "hSxx": w.values["hSxx"]}
    ok = (all(polys[k] == v for k, v in want.items())
          and abs(vals["v6"] + 0.7103831) < 1e-6
          and abs(vals["hGx"] - 0.0137606) < 1e-6
          and abs(vals["hSxx"] - 0.00099250) < 1e-6)
    return ok, {"polynomials": {k: polys[k] for k in want}, **vals}, \
        {"polynomials": want, "v6": -0.7103831, "hGx": 0.0137606, "hSxx": 0.00099250}, 1e-6, []


IND_N11 = [8, 11, 3, 7, 10, 3, 6, 9, 11, 1, 2, 4, 6, 8, 9, 10]


def check_a4():
    w, dt = _walkthrough()
    hgx = _poly(ef.to_generator_basis(w.hGx, "genscale", 11).coeffs)
    want_hgx = _fr(Fraction(-5, 8), Fraction(59, 4), 9, Fraction(1, 4), Fraction(-3, 8))
    ok = (list(w.indices16) == IND_N11 and hgx == want_hgx and w.sk2_period == 338
          and w.center_period == 169 and dt < 60)
    return ok, {"IND": list(w.indices16), "hGx/hN": hgx, "sk2_period": w.sk2_period,
                "center_period": w.center_period, "walkthrough_seconds": dt}, \
        {"IND": IND_N11, "hGx/hN": want_hgx, "sk2_period": 338, "center_period": 169}, 0, []


CHAIN_TARGETS = {
    12: ("genstar_combined", [60, 942, 28292, 775356]),
    14: ("embedded_half", [14, 98, 2216, 17486, 433468]),
    16: ("d_chain", [8, 32, 456, 2464, 20872, 110368]),
    9: ("s1_chain", [9, 207, 4005, 79263]),
}


def check_a5():
    notes = []
    law_bad = []
    for N in range(3, 26):
        for row in ol.cs_period_table(N):
            k = row["k"]
            if row["period"] != N // gcd(k, N) or row["steps"] != [k % N]:
                law_bad.append((N, k, row["period"], row["steps"]))
    measured = {"cs_law_failures": law_bad}
    expected = {"cs_law": "period N/gcd(k,N), constant step k, 3 <= N <= 25"}
    ok = not law_bad
    for N, (recipe, want) in CHAIN_TARGETS.items():
        t0 = time.perf_counter()
        depth = len(want) + (1 if N == 9 else 0)
        rows = ol.chain_periods(N, depth, recipe)
        got = [r["period"] for r in rows]
        dt = time.perf_counter() - t0
        measured[f"N={N}"] = {"recipe": recipe, "periods": got, "seconds": dt,
                              "exact_confirmed": all(r["exact_confirmed"] for r in rows)}
        expected[f"N={N}"] = want
        match = got[:len(want)] == want and dt < 300
        ok = ok and match
        if not match:
            diff = [(i, a, b) for i, (a, b) in enumerate(zip(got, want)) if a != b]
            notes.append(f"N={N}: computed {got[:len(want)]} differs from the reference at {diff}")
        if N == 9:
            ratio = Fraction(got[1], got[0])
            measured["N=9"]["207/9"] = ratio
            ok = ok and ratio == 23
            fifth = got[4]
            measured["N=9"]["fifth"] = fifth
            measured["N=9"]["fifth_ratio"] = fifth / got[3]
            notes.append(f"N=9 reference fifth entry 156374 is inconsistent with its ratio 19.7285; "
                         f"recomputed {fifth} (ratio {fifth / got[3]:.4f})")
    return ok, measured, expected, 0, notes


def check_a6():
    A, init = ea.N10_TRANSITION, ea.N10_INIT
    seq = ea.linear_recurrence(A, init, 30)
    d = [x for x, _ in seq]
    p = [y for _, y in seq]
    c1, c2 = ea.collapsed_recurrence(A)
    collapsed = all(d[n] == c1 * d[n - 1] + c2 * d[n - 2] for n in range(2, len(d)))
    ratio15 = d[14] / d[13]
    dom = ea.dominant_ratio(A)
    ok = (d[:4] == [1, 5, 31, 185] and p[:4] == [1, 8, 46, 278] and (c1, c2) == (5, 6) and collapsed
          and abs(ratio15 - 6) < 1e-9 and dom == 6 and isinstance(dom, int))
    return ok, {"d": d[:4], "p": p[:4], "collapsed": (c1, c2), "collapsed_holds_n<=30": collapsed,
                "ratio_n15": ratio15, "dominant_ratio": dom}, \
        {"d": [1, 5, 31, 185], "p": [1, 8, 46, 278], "collapsed": (5, 6), "ratio": 6}, 1e-9, []


def check_a7():
    q = ea.quadratic_dimensions()
    d18 = ea.dimension_8k2(18)
    d9 = ea.fractal_dimension(20, float(ef.tan_exact(1, 9)) ** 2)
    want = {5: 1.2411, 8: 1.2465, 12: 1.2513}
    mono = q[5] < q[8] < q[12]
    ok = (all(abs(q[n] - v) < 5e-4 for n, v in want.items()) and abs(d18 - 0.838493) < 1e-5
          and abs(d9 - 1.48203) < 1e-5 and mono)
    return ok, {"quadratic": q, "8k+2 N=18": d18, "N=9 local": d9, "increasing": mono}, \
        {"quadratic": want, "8k+2 N=18": 0.838493, "N=9 local": 1.48203}, {"quadratic": 5e-4, "other": 1e-5}, []


def check_a8():
    pred = {N: ea.predicted_ds(N).predicted_ds_indices for N in (22, 23, 60)}
    s24 = sorted(ea.mutation_table(24, "S"))
    m20 = ea.mutation_spec(20, 2, "S")
    m12 = ea.mutation_spec(12, 4, "S")
    m25 = ea.mutation_spec(25, 5, "DS")
    m40 = ea.mutation_spec(40, 10, "DS")
    checks = {
        "N=22": pred[22] == [9, 5, 1],
        "N=23": pred[23] == [19, 11, 3],
        "N=60": pred[60] == list(range(28, 0, -4)),
        "N=24 S-set": s24 == [3, 4, 6, 8, 9],
        "N=20 S[2]": m20 is not None and (m20.component_count, m20.component_sides) == (2, 5),
        "N=12 S[4]": m12 is None,
        "N=25 DS[5]": m25 is not None and (m25.component_count, m25.component_sides, m25.base_star_index) == (2, 5, 3),
        "N=40 DS[10]": m40 is not None and (m40.component_count, m40.component_sides) == (2, 4),
    }
    measured = {"predicted": pred, "N=24 S-set": s24,
                "N=20 S[2]": m20 and m20.to_json(), "N=12 S[4]": m12,
                "N=25 DS[5]": m25 and m25.to_json(), "N=40 DS[10]": m40 and m40.to_json(), "match": checks}
    expected = {"N=22": [9, 5, 1], "N=23": [19, 11, 3], "N=60": "28, 24, ..., 4", "N=24 S-set": [3, 4, 6, 8, 9],
                "N=20 S[2]": "two pentagons", "N=12 S[4]": "unmutated",
                "N=25 DS[5]": "two pentagons, base star[3]", "N=40 DS[10]": "two squares"}
    return all(checks.values()), measured, expected, 0, []


# crop of the N = 14 Dc web: from the seed interval through the base edge of N,
# upper half-plane only (Dc space)
A9_RECT = (-2.0, 0.0, 2.0, 1.5)


def check_a9():
    t0 = time.perf_counter()
    cloud = wg.web_points(14, "dc", (-2.0, -1.0), 1e-3, 5000, closure="pm")
    raw = cloud.seed_spec["raw"]
    cropped = len(wg.crop(cloud, A9_RECT))
    dt = time.perf_counter() - t0
    ok = 4.5e6 <= raw <= 5.5e6 and 3.6e5 <= cropped <= 5.4e5 and dt < 300
    return ok, {"seeds": cloud.seed_spec["count"], "raw": raw, "after_closure": len(cloud),
                "cropped": cropped, "crop_rect": A9_RECT, "seconds": dt}, \
        {"raw": "about 5e6", "cropped": [360000, 540000]}, None, \
        ["W combined with -W; crop is the upper half-plane over both seed intervals (Dc space)"]


def check_a10():
    r = wg.dc_periodicity_check(7, (-1, 1), levels=8, seeds=201, depth=300, digits=35)
    ok = r["closed"] and r["extension_points"] > 0
    return ok, r, {"level8 == level7": True, "35-digit extension points": "> 0"}, None, \
        ["the exact Dc web of [-1, 1] closes after 7 levels; 35-digit orbits leave it once roundoff "
         "of either sign decides the branch on the axis"]


def check_a11():
    t0 = time.perf_counter()
    r = wg.cross_map_check(14)
    dt = time.perf_counter() - t0
    r["seconds"] = dt
    ok = r["hausdorff_dc_to_tau"] < 1e-3 and dt < 120
    return ok, r, {"hausdorff_dc_to_tau": "< 1e-3"}, 1e-3, \
        ["Dc points within 1e-9 of the axis are snapped onto it (sign-bias artifacts otherwise sit just inside N)"]


# ---------------------------------------------------------------------------
# stretch

A12_N14 = [3482794, 86639924, 396527902]
A12_N7 = {"S[1][10]": 509698714, "S[2][10]": 63001498}
A12_RATIOS = {"S[1][10]": 1253.8158, "S[2][10]": 1253.861}


def check_a12(deep_depth=30 * 10 ** 6, checkpoint_dir=None):
    notes = []
    measured = {}
    rows = ol.chain_periods(14, 8, "embedded_half", max_iter=2 * 10 ** 9)
    n14 = [r["period"] for r in rows[5:8]]
    measured["N=14 M[5..7]"] = n14
    ok14 = n14 == A12_N14
    if not ok14:
        notes.append(f"N=14 computed {n14}; reference {A12_N14}")
    s1 = ol.chain_periods(7, 9, "s1_chain", max_iter=2 * 10 ** 9)
    s2 = ol.chain_periods(7, 9, "s2_chain", max_iter=2 * 10 ** 9)
    p1, p2 = s1[8]["period"], s2[8]["period"]
    # the reference ratios pair each tenth-generation tile with an earlier chain member
    r1, r2 = p1 / s2[5]["period"], p2 / s1[4]["period"]
    measured["N=7"] = {"S[1][10]": p1, "S[2][10]": p2, "ratio S[1][10]": r1, "ratio S[2][10]": r2,
                       "s1_chain": [r["period"] for r in s1], "s2_chain": [r["period"] for r in s2]}
    ok7 = (p1, p2) == (A12_N7["S[1][10]"], A12_N7["S[2][10]"]) and \
        abs(r1 - A12_RATIOS["S[1][10]"]) < 1e-3 and abs(r2 - A12_RATIOS["S[2][10]"]) < 1e-3
    notes.append("tenth generation = H^8 image of S[1] (resp. S[2]) about star[1] of N")

    N = 19
    s2t = pg.first_family(N, exact=False).S(2)
    star = complex(im.tw(complex(s2t.star(7, "left")), N)).real
    seeds = np.linspace(star - 1e-3, star + 1e-3, 200) + 0j
    ds7 = pg.ds_tile(N, 7, exact=False)
    c = complex(im.tw(complex(ds7.center), N))
    r = float(ds7.radius) / (2 * np.tan(np.pi / N))
    rect = (c.real - 4 * r, c.imag - 4 * r, c.real + 4 * r, c.imag + 4 * r)
    d = checkpoint_dir or tempfile.mkdtemp()
    ck = os.path.join(d, "deepfield_n19.ngck")
    t0 = time.perf_counter()
    cloud = wg.deep_field(N, seeds, deep_depth, rect, chunk=5 * 10 ** 6, checkpoint=ck)
    iters = seeds.size * (deep_depth - 1)
    measured["deep_field N=19"] = {"iterations": iters, "points": len(cloud), "rect": rect,
                                   "seconds": time.perf_counter() - t0}
    okdf = iters >= 10 ** 9 and len(cloud) > 10 ** 5
    ok = ok14 and ok7 and okdf
    expected = {"N=14 M[5..7]": A12_N14, "N=7": {**A12_N7, **{f"ratio {k}": v for k, v in A12_RATIOS.items()}},
                "deep_field": ">= 1e9 iterations, > 1e5 points"}
    return ok, measured, expected, 1e-3, notes


CHECKS = {
    "A1": ("scales and fields", check_a1, ("fields", "scales"), 1.0),
    "A2": ("first family values", check_a2, ("family",), None),
    "A3": ("N=11 characteristic polynomials", check_a3, ("polynomials",), None),
    "A4": ("N=11 end to end", check_a4, ("orbits", "polynomials"), 60.0),
    "A5": ("period laws and chains", check_a5, ("periods", "chains"), None),
    "A6": ("N=10 recurrences", check_a6, ("recurrences",), 1.0),
    "A7": ("fractal dimensions", check_a7, ("dimensions",), 1.0),
    "A8": ("predictions and mutations", check_a8, ("predictions",), 1.0),
    "A9": ("N=14 web replication", check_a9, ("web",), 300.0),
    "A10": ("exact Dc periodicity N=7", check_a10, ("web", "exact"), None),
    "A11": ("cross-map consistency N=14", check_a11, ("web",), 120.0),
    "A12": ("stretch: deep field and long periods", check_a12, ("stretch",), None),
}
STRETCH = {"A12"}


def run_check(cid):
    title, fn, _, budget = CHECKS[cid]
    t0 = time.perf_counter()
    ok, measured, expected, tol, notes = fn()
    dt = time.perf_counter() - t0
    if budget is not None and dt > budget:
        ok = False
        notes = notes + [f"runtime {dt:.1f}s exceeds {budget}s"]
    return CheckResult(cid, title, bool(ok), measured, expected, tol, dt, budget, notes)


def select(ids=None, filter=None, include_stretch=False):
    out = []
    for cid, (title, _, tags, _) in CHECKS.items():
        if ids and cid not in ids:
            continue
        if filter and filter not in tags and filter != cid:
            continue
        if cid in STRETCH and not include_stretch and not (ids and cid in ids):
            continue
        out.append(cid)
    return out


def verify_suite(ids=None, filter=None, include_stretch=False, progress=None):
    results = []
    for cid in select(ids, filter, include_stretch):
        r = run_check(cid)
        if progress:
            progress(r)
        results.append(r)
    return results
