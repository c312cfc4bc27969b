"""Orbit analysis for outer billiards: corner sequences, exact orbit
reconstruction, period detection and tiles recovered from itineraries.

Long orbits run in double precision (numba).  Every reported period is
then confirmed exactly: after k steps tau^k(z) = (-1)^k (z + 2T), where T
is an integer combination of the vertices of N, so a return is exact iff
T = 0 (k even) or z = -T (k odd).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import json
import math

import mpmath
import numba
import numpy as np

from . import exactfield as ef
from . import isomaps as im
from . import polygeom as pg
from .errors import ParallelLines, SingularHit


@dataclass
class OrbitRecord:
    start: object
    N: int
    indices: list = None
    period: int = None
    termination: str = "max_iter_reached"
    exact_confirmed: bool = False
    note: str = ""

    @property
    def steps(self):
        if not self.indices:
            return []
        return [(b - a) % self.N for a, b in zip(self.indices, self.indices[1:])]

    def to_json(self):
        z = complex(self.start)
        return {
            "start": [z.real, z.imag],
            "N": self.N,
            "period": self.period,
            "termination": self.termination,
            "exact_confirmed": self.exact_confirmed,
            "indices": self.indices,
            "steps": self.steps,
            "note": self.note,
        }


# ---------------------------------------------------------------------------
# corner sequences and exact orbits

def ind(p, n_iter, N, digits=ef.DEFAULT_DIGITS):
    """Vertex labels (1-based) used by the first n_iter tau steps."""
    z = p
    if not isinstance(z, ef.FieldElement) and not isinstance(z, mpmath.mpc):
        z = complex(z)
    out = []
    for j in range(n_iter):
        r = im.tau(z, N, digits)
        if not r.mapped:
            raise SingularHit(j + 1, r.singular)
        out.append(r.vertex_index)
        z = r.point
    return out


def pim(p0, indices, N):
    """Orbit p_{j+1} = 2 c_{indices[j]} - p_j (exact when p0 is exact)."""
    if isinstance(p0, ef.FieldElement):
        V = im._exact_vertices(N)
        m = p0.conductor
        if m != V[0].conductor:
            mm = m * V[0].conductor // math.gcd(m, V[0].conductor)
            V = [v.lift(mm) for v in V]
            p0 = p0.lift(mm)
    elif isinstance(p0, mpmath.mpc):
        V = im._mp_vertices(N, mpmath.mp.dps)
    else:
        V = im._float_vertices(N)
    out = [p0]
    p = p0
    for k in indices:
        p = V[k - 1] * 2 - p
        out.append(p)
    return out


def steps_of(indices, N):
    return [(b - a) % N for a, b in zip(indices, indices[1:])]


# ---------------------------------------------------------------------------
# exact return test from signed vertex counts

@lru_cache(maxsize=64)
def _vertex_exponents(N):
    m = 4 * N
    return tuple(int(pg.vertex_phase(N, k) * m / 2) % m for k in range(1, N + 1))


def signed_sum(counts, N):
    """T = sum counts[v] c_{v+1} as an exact point."""
    m = 4 * N
    nums = [0] * m
    for e, a in zip(_vertex_exponents(N), counts):
        nums[e] += int(a)
    r = 1 / ef.cos_pi(Fraction(1, N), m)
    return ef.FieldElement(m, nums) * r


def translation_is_zero(counts, N):
    m = 4 * N
    nums = [0] * m
    for e, a in zip(_vertex_exponents(N), counts):
        nums[e] += int(a)
    return ef.FieldElement(m, nums).is_zero()


def exact_return(p, k, counts, N):
    """Does tau^k fix the exact point p, given the signed counts of the itinerary?"""
    if k % 2 == 0:
        return translation_is_zero(counts, N)
    return p == -signed_sum(counts, N)


@numba.njit(cache=True)
def _advance(x, y, x0, y0, vx, vy, it, maxit, tol, counts):
    N = vx.shape[0]
    while it < maxit:
        best = -1
        for k in range(N):
            cx = vx[k] - x
            cy = vy[k] - y
            kp = (k + 1) % N
            km = (k - 1) % N
            if cx * (vy[kp] - y) - cy * (vx[kp] - x) <= 0.0 and cx * (vy[km] - y) - cy * (vx[km] - x) <= 0.0:
                best = k
                break
        if best < 0:
            return -2, x, y, it
        it += 1
        if it % 2 == 1:
            counts[best] -= 1
        else:
            counts[best] += 1
        x = 2.0 * vx[best] - x
        y = 2.0 * vy[best] - y
        if abs(x - x0) < tol and abs(y - y0) < tol:
            return 1, x, y, it
    return 0, x, y, it


@numba.njit(cache=True)
def _indices(x, y, vx, vy, n, out):
    N = vx.shape[0]
    for it in range(n):
        best = -1
        for k in range(N):
            cx = vx[k] - x
            cy = vy[k] - y
            kp = (k + 1) % N
            km = (k - 1) % N
            if cx * (vy[kp] - y) - cy * (vx[kp] - x) <= 0.0 and cx * (vy[km] - y) - cy * (vx[km] - x) <= 0.0:
                best = k
                break
        if best < 0:
            return it
        out[it] = best + 1
        x = 2.0 * vx[best] - x
        y = 2.0 * vy[best] - y
    return n


def ind_fast(p, n_iter, N):
    vx, vy = pg.polygon_vertices_float(N)
    out = np.zeros(n_iter, dtype=np.int64)
    z = complex(p)
    got = _indices(z.real, z.imag, vx, vy, n_iter, out)
    if got < n_iter:
        raise SingularHit(got + 1, "on_polygon")
    return out.tolist()


def period(p, N, max_iter=10 ** 6, mode="double", tol=None, digits=ef.DEFAULT_DIGITS,
           exact_point=None, keep_indices=10 ** 5):
    """Least k <= max_iter with tau^k(p) = p.

    mode 'exact' iterates in the cyclotomic field; 'mp' uses mpmath at
    `digits` with tolerance tol (default 1e-20) plus an exact check of the
    accumulated vertex counts; 'double' uses the numba kernel with the same
    exact check.  exact_point (or p itself when exact) enables the exact
    confirmation of odd returns.
    """
    if mode == "exact":
        return _period_exact(p, N, max_iter)
    if mode == "mp":
        return _period_mp(p, N, max_iter, tol or mpmath.mpf("1e-20"), digits, exact_point)
    vx, vy = pg.polygon_vertices_float(N)
    z = complex(p)
    tol = 1e-9 if tol is None else tol
    counts = np.zeros(N, dtype=np.int64)
    x, y, it = z.real, z.imag, 0
    ex = exact_point if exact_point is not None else (p if isinstance(p, ef.FieldElement) else None)
    while True:
        status, x, y, it = _advance(x, y, z.real, z.imag, vx, vy, it, max_iter, tol, counts)
        if status == -2:
            raise SingularHit(it + 1, "on_polygon")
        if status == 0:
            return OrbitRecord(p, N, None, None, "max_iter_reached")
        if it % 2 == 0 and translation_is_zero(counts, N):
            return _finish(p, N, it, keep_indices, True)
        if it % 2 == 1:
            if ex is not None:
                if exact_return(ex, it, counts, N):
                    return _finish(p, N, it, keep_indices, True)
            else:
                T = complex(signed_sum(counts, N))
                if abs(z + T) < tol:
                    return _finish(p, N, it, keep_indices, False, "odd return (float)")


def _finish(p, N, k, keep, confirmed, note=""):
    indices = ind_fast(p, k, N) if k <= keep else None
    return OrbitRecord(p, N, indices, k, "periodic", confirmed, note)


def _period_exact(p, N, max_iter):
    z = p
    indices = []
    for j in range(max_iter):
        r = im.tau(z, N)
        if not r.mapped:
            raise SingularHit(j + 1, r.singular)
        indices.append(r.vertex_index)
        z = r.point
        if z == p:
            return OrbitRecord(p, N, indices, j + 1, "periodic", True)
    return OrbitRecord(p, N, indices, None, "max_iter_reached")


def _period_mp(p, N, max_iter, tol, digits, exact_point):
    with mpmath.workdps(digits):
        z0 = mpmath.mpc(p.embed(digits)) if isinstance(p, ef.FieldElement) else mpmath.mpc(p)
        V = im._mp_vertices(N, digits)
        z = z0
        counts = [0] * N
        indices = []
        for j in range(1, max_iter + 1):
            r = im.tau(z, N, digits)
            if not r.mapped:
                raise SingularHit(j, r.singular)
            k = r.vertex_index
            indices.append(k)
            counts[k - 1] += 1 if j % 2 == 0 else -1
            z = r.point
            if abs(z - z0) < tol:
                if j % 2 == 0 and translation_is_zero(counts, N):
                    return OrbitRecord(p, N, indices, j, "periodic", True)
                if j % 2 == 1:
                    ex = exact_point if exact_point is not None else (p if isinstance(p, ef.FieldElement) else None)
                    if ex is None or exact_return(ex, j, counts, N):
                        return OrbitRecord(p, N, indices, j, "periodic", ex is not None)
    return OrbitRecord(p, N, indices, None, "max_iter_reached")


# ---------------------------------------------------------------------------
# period doubling

def line_intersection(l1, l2):
    """Intersection of lines given as point pairs (exact or numeric)."""
    (a, b), (c, d) = l1, l2
    u = b - a
    v = d - c
    w = c - a
    den = _cross(u, v)
    if _is_zero(den):
        raise ParallelLines("lines are parallel")
    s = _cross(w, v) / den
    return a + u * s


def _cross(a, b):
    if isinstance(a, ef.FieldElement):
        return (a.conj() * b).imag_part()
    a, b = complex(a), complex(b)
    return a.real * b.imag - a.imag * b.real


def _is_zero(x):
    if isinstance(x, ef.FieldElement):
        return x.is_zero()
    return abs(x) < 1e-300


def period_doubling_center(line1, line2):
    return line_intersection(line1, line2)


def doubling_center(p, half_indices, N):
    """Centre of a period-doubling tile from one interior point.

    tau^h with h = len(half_indices) odd is the point reflection about the
    centre, so the centre is the midpoint of p and its image.
    """
    if len(half_indices) % 2 == 0:
        raise ValueError("half period must be odd")
    q = pim(p, half_indices, N)[-1]
    return (p + q) * Fraction(1, 2) if isinstance(p, ef.FieldElement) else (p + q) / 2


def reflection_center(half_indices, N, conductor=None):
    """Exact fixed point of the odd composition given by the indices."""
    m = conductor or 4 * N
    zero = ef.rational(0, m)
    d = pim(zero, half_indices, N)[-1]
    return d * Fraction(1, 2)


# ---------------------------------------------------------------------------
# tiles recovered from itineraries

def _constraints(indices, N, V):
    """Half-planes A x + B y + C <= 0 (numeric) for each step, in order."""
    out = []
    s = 1
    d = 0j if not isinstance(V[0], mpmath.mpc) else mpmath.mpc(0)
    for j, k in enumerate(indices):
        c = V[k - 1]
        for nb in (k % N, (k - 2) % N):
            w = V[nb]
            u = w - c
            A = -u.imag * s
            B = u.real * s
            C = c.real * w.imag - c.imag * w.real + u.real * d.imag - u.imag * d.real
            out.append((A, B, C, j, k - 1, nb))
        s = -s
        d = 2 * c - d
    return out


def _clip(poly, labels, con, idx):
    A, B, C = con[0], con[1], con[2]
    out, lab = [], []
    n = len(poly)
    for i in range(n):
        P, Q = poly[i], poly[(i + 1) % n]
        fp = A * P.real + B * P.imag + C
        fq = A * Q.real + B * Q.imag + C
        if fp <= 0:
            out.append(P)
            lab.append(labels[i])
            if fq > 0 and fp < 0:
                t = fp / (fp - fq)
                out.append(P + (Q - P) * t)
                lab.append(idx)
        elif fq < 0:
            t = fp / (fp - fq)
            out.append(P + (Q - P) * t)
            lab.append(labels[i])
        elif fq == 0:
            pass
    return out, lab


def itinerary_cell(p, indices, N, box=None, digits=50, exact=False, dedupe=1e-25):
    """Closure of the set of points sharing the given itinerary with p.

    Returns (vertices, edge_lines).  edge_lines[i] is the exact or numeric
    line (A, B, C) carrying the edge from vertex i to vertex i+1.
    """
    with mpmath.workdps(digits):
        V = im._mp_vertices(N, digits)
        z = mpmath.mpc(complex(p)) if not isinstance(p, ef.FieldElement) else mpmath.mpc(p.embed(digits))
        cons = _constraints(indices, N, V)
        b = mpmath.mpf(float(box)) if box else mpmath.mpf(4)
        poly = [z + mpmath.mpc(-b, -b), z + mpmath.mpc(b, -b), z + mpmath.mpc(b, b), z + mpmath.mpc(-b, b)]
        labels = [None] * 4
        for i, con in enumerate(cons):
            poly, labels = _clip(poly, labels, con, i)
        # drop degenerate vertices (repeated or collinear constraints)
        keep_p, keep_l = [], []
        n = len(poly)
        for i in range(n):
            if abs(poly[i] - poly[(i + 1) % n]) > dedupe:
                keep_p.append(poly[i])
                keep_l.append(labels[i])
        poly, labels = _drop_collinear(keep_p, keep_l, mpmath.mpf(10) ** (-(digits // 2)))
        if any(lab is None for lab in labels):
            raise ValueError("cell is not bounded by the itinerary; enlarge the box")
        if not exact:
            lines = [cons[lab][:3] for lab in labels]
            return poly, lines
    lines = _exact_lines(indices, N, [cons[lab] for lab in labels])
    n = len(lines)
    verts = [_line_meet(lines[i - 1], lines[i]) for i in range(n)]
    return verts, lines


def _drop_collinear(poly, labels, eps):
    """Remove vertices lying on the straight continuation of their edges.

    The edge leaving vertex i carries labels[i]; merging keeps the label
    of the incoming edge, which is the same line.
    """
    changed = True
    while changed and len(poly) > 3:
        changed = False
        n = len(poly)
        for i in range(n):
            a, b, c = poly[i - 1], poly[i], poly[(i + 1) % n]
            u, v = b - a, c - b
            cr = u.real * v.imag - u.imag * v.real
            if abs(cr) <= eps * abs(u) * abs(v):
                del poly[i]
                del labels[i]
                changed = True
                break
    return poly, labels


def _exact_lines(indices, N, picked):
    V = im._exact_vertices(N)
    need = {c[3] for c in picked}
    m = V[0].conductor
    d = ef.rational(0, m)
    s = 1
    states = {}
    for j, k in enumerate(indices):
        if j in need:
            states[j] = (s, d)
        s = -s
        d = V[k - 1] * 2 - d
    out = []
    for A_, B_, C_, j, ci, nb in picked:
        s, d = states[j]
        c, w = V[ci], V[nb]
        u = w - c
        ux, uy = u.real_part(), u.imag_part()
        dx, dy = d.real_part(), d.imag_part()
        cross_cw = (c.conj() * w).imag_part()
        out.append((-uy * s, ux * s, cross_cw + ux * dy - uy * dx))
    return out


def _line_meet(l1, l2):
    A1, B1, C1 = l1
    A2, B2, C2 = l2
    det = A1 * B2 - A2 * B1
    x = (B1 * C2 - B2 * C1) / det
    y = (A2 * C1 - A1 * C2) / det
    if isinstance(x, ef.FieldElement):
        return x + ef.imag_unit(x.conductor) * y
    return mpmath.mpc(x, y)


def line_at_y(line, y):
    """x where the line A x + B y + C = 0 meets the horizontal line at y."""
    A, B, C = line
    return -(B * y + C) / A


# ---------------------------------------------------------------------------
# N = 11: Gx, Sk2/Sk and Sxx from a single orbit

@dataclass
class GxWalkthrough:
    indices16: list
    p0: object
    p1: object
    hGx: object
    cGx: object
    sk2_vertices: list
    cSk2: object
    cSk: object
    sk2_period: int
    center_period: int
    hSxx: object
    sxx_vertex6: object
    sxx_vertex1_y: object
    values: dict = field(default_factory=dict)

    def polynomials(self):
        """Coordinates in the GenScale[11] power basis, lowest degree first."""
        sN = 2 * ef.tan_exact(1, 11, 44)
        items = {
            "hGx/hN": self.hGx,
            "hSxx/hN": self.hSxx,
            "Sxx vertex6 x/sN": self.sxx_vertex6 / sN,
            "Sxx vertex1 y": self.sxx_vertex1_y,
            "cSk y": self.cSk.imag_part(),
        }
        return {k: ef.to_generator_basis(v, "genscale", 11).coeffs for k, v in items.items()}


def gx_walkthrough(offset=Fraction(1, 10 ** 6), digits=35):
    """Exact reconstruction of the N = 11 volunteer Gx and its satellites.

    p0 = left star[7] of S[1]; a point just above it has the 16-step
    corner sequence that carries p0 onto the extended edge of Gx.  The same
    point lies in Sk2, whose itinerary gives Sk2 (and Sk = rotation of Sk2
    about the centre of Gx).  The steep right edge of Sk2 extended to the
    base line fixes star[3] of Sxx, and star[3] of Gx is its other star.
    """
    N, m = 11, 44
    ctx = pg.Ctx(N, True, conductor=m)
    I = ctx.I
    t = ctx.tan(1, N)
    s1 = pg.s_tile(ctx, N, 1)
    p0 = s1.star(7, "left")
    pn_exact = p0 + I * ef.rational(offset, m)
    with mpmath.workdps(digits):
        pn = mpmath.mpc(pn_exact.embed(digits))
        rec = _period_mp(pn, N, 2000, mpmath.mpf(10) ** (-(digits - 10)), digits, None)
    full = rec.indices
    idx16 = full[:16]

    p1 = pim(p0, idx16, N)[-1]
    p1r = p1 * ctx.expi(Fraction(8, 11))
    V = im._exact_vertices(N)
    e = V[1] - V[0]
    X = p1r.real_part() + (-1 - p1r.imag_part()) / e.imag_part() * e.real_part()
    star1 = s1.star(1, "left").real_part()
    hGx = (star1 - X) / (ctx.tan(5, 11) - ctx.tan(4, 11))
    mid_gx = star1 - hGx * ctx.tan(5, 11)
    cGx = mid_gx + I * (hGx - 1)

    half = len(full) // 2
    cSk2 = reflection_center(full[:half], N, m)
    cSk = cGx + (cSk2 - cGx) * ctx.expi(Fraction(8, 11))
    center_rec = period(cSk2, N, mode="double", keep_indices=0)

    verts, lines = itinerary_cell(pn, full, N, box=Fraction(1, 20), digits=digits + 15, exact=True)
    rightmost = max(v.real_part() for v in verts)
    best = None
    for ln in lines:
        if ln[0].is_zero():
            continue
        x = line_at_y(ln, ef.rational(-1, m))
        if x > rightmost and (best is None or x < best):
            best = x
    star3_gx = mid_gx - hGx * ctx.tan(3, 11)
    hSxx = (best - star3_gx) / (2 * ctx.tan(3, 11))
    mid_sxx = star3_gx + hSxx * ctx.tan(3, 11)
    v6 = mid_sxx - hSxx * t
    v1y = hSxx - 1 + hSxx / ctx.cos(1, 11)
    out = GxWalkthrough(idx16, p0, p1, hGx, cGx, verts, cSk2, cSk, rec.period,
                        center_rec.period, hSxx, v6, v1y)
    out.values = {"hGx": float(hGx), "hSxx": float(hSxx), "v6": float(v6),
                  "sk2_period": rec.period, "center_period": center_rec.period}
    return out


# ---------------------------------------------------------------------------
# generation chains

CHAIN_RECIPES = {
    "d_chain": "D[k] = G^k(D) (twice-even) or H^k(D), periods of the centres",
    "m_chain": "M[k] of the ideal generation chain",
    "s1_chain": "S[1][k] = H^k(S[1]) (odd N)",
    "s2_chain": "S[2][k] = H^k(S[2]) (odd N)",
    "genstar_combined": "M[k] mirrored to GenStar plus its reflection about S[N/2-2] (twice-even)",
    "embedded_half": "S[1] natively, then G^k(S[1]) placed in D of N/2 (twice-odd N)",
}


def default_recipe(N):
    if N % 2:
        return "s1_chain"
    if N % 4 == 2:
        return "embedded_half"
    return "d_chain"


def chain_centers(N, depth, recipe=None):
    """[(k, [(dynamics_N, exact centre), ...]), ...] for k = 0..depth-1 or 1..depth."""
    recipe = recipe or default_recipe(N)
    ctx = pg.Ctx(N, True)
    t = ctx.tan(1, N)
    P = ctx.point(-t, -1)
    g, h = pg.chain_ratios(ctx, N)
    fam = pg.first_family(N)
    out = []
    if recipe in ("s1_chain", "s2_chain"):
        base = fam.S(1 if recipe == "s1_chain" else 2).center
        for k in range(depth):
            out.append((k, [(N, P + (base - P) * h ** k)]))
    elif recipe == "d_chain":
        r = g if N % 2 == 0 else h
        for k in range(1, depth + 1):
            out.append((k, [(N, P + (fam.D.center - P) * r ** k)]))
    elif recipe == "m_chain":
        for k, (mk, _) in enumerate(pg.ideal_generation_chain(N, depth), 1):
            out.append((k, [(N, mk.center)]))
    elif recipe == "genstar_combined":
        if N % 4:
            raise ValueError("genstar_combined needs N divisible by 4")
        ax = -(ctx.tan(N // 2 - 2, N) + t)
        for k, (mk, _) in enumerate(pg.ideal_generation_chain(N, depth), 1):
            c1 = pg.swap_nd(ctx, N, mk.center)
            c2 = ctx.point(2 * ax, 0) - c1.conj()
            out.append((k, [(N, c1), (N, c2)]))
    elif recipe == "embedded_half":
        if N % 4 != 2:
            raise ValueError("embedded_half needs N twice-odd")
        n = N // 2
        m = 4 * N
        cN = pg.Ctx(N, True, conductor=m)
        cn = pg.Ctx(n, True, conductor=m)
        tN = cN.tan(1, N)
        PN = cN.point(-tN, -1)
        gN, _ = pg.chain_ratios(cN, N)
        s1 = pg.s_tile(cN, N, 1)
        Dn = pg.s_tile(cn, n, (n + 1) // 2 - 1)
        out.append((0, [(N, s1.center)]))
        for k in range(1, depth):
            z = PN + (s1.center - PN) * gN ** k
            w = cn.point(Dn.center.real_part() - Dn.height * z.real_part(),
                         Dn.center.imag_part() + Dn.height * z.imag_part())
            out.append((k, [(n, w)]))
    else:
        raise ValueError(f"unknown recipe {recipe!r}")
    return out


def chain_periods(N, depth, recipe=None, max_iter=10 ** 8):
    """Periods along a generation chain; combined recipes add their parts."""
    rows = []
    for k, parts in chain_centers(N, depth, recipe):
        recs = [period(c, n, max_iter=max_iter, keep_indices=0) for n, c in parts]
        ok = all(r.period for r in recs)
        rows.append({
            "k": k,
            "period": sum(r.period for r in recs) if ok else None,
            "parts": [r.period for r in recs],
            "dynamics_N": [n for n, _ in parts],
            "exact_confirmed": ok and all(r.exact_confirmed for r in recs),
        })
    return rows


def cs_period_table(N):
    """Period and step sequence of the centre of each S[k]."""
    fam = pg.first_family(N)
    rows = []
    for k, tile in fam.tiles.items():
        rec = _period_exact(tile.center, N, 4 * N)
        rows.append({"label": f"S[{k}]", "N": N, "k": k, "period": rec.period,
                     "steps": sorted(set(rec.steps + [(rec.indices[0] - rec.indices[-1]) % N]))})
    return rows


@numba.njit(cache=True)
def _scan(xs, ys, vx, vy, maxit, tol, out):
    N = vx.shape[0]
    for i in range(xs.shape[0]):
        x0 = xs[i]
        y0 = ys[i]
        x = x0
        y = y0
        out[i] = 0
        for it in range(1, maxit + 1):
            best = -1
            for k in range(N):
                cx = vx[k] - x
                cy = vy[k] - y
                kp = (k + 1) % N
                km = (k - 1) % N
                if cx * (vy[kp] - y) - cy * (vx[kp] - x) <= 0.0 and cx * (vy[km] - y) - cy * (vx[km] - x) <= 0.0:
                    best = k
                    break
            if best < 0:
                out[i] = -1
                break
            x = 2.0 * vx[best] - x
            y = 2.0 * vy[best] - y
            if it % 2 == 0 and abs(x - x0) < tol and abs(y - y0) < tol:
                out[i] = it
                break


def scan_periods(points, N, max_iter=10 ** 5, tol=1e-10):
    """Float periods (even returns only, 0 = none found) for many points."""
    pts = np.asarray([complex(p) for p in points])
    vx, vy = pg.polygon_vertices_float(N)
    out = np.zeros(pts.size, dtype=np.int64)
    _scan(np.ascontiguousarray(pts.real), np.ascontiguousarray(pts.imag), vx, vy, max_iter, tol, out)
    return out


@dataclass
class TileReport:
    N: int
    period: int
    center: complex
    center_period: int
    sides: int
    radius: float
    vertices: list

    @property
    def doubling(self):
        return self.center_period is not None and 2 * self.center_period == self.period


def tile_from_point(p, N, max_iter=10 ** 5, digits=40, box=0.05):
    """Periodic tile containing p: its period, shape, centre and centre period."""
    rec = period(p, N, max_iter=max_iter, keep_indices=max_iter)
    if rec.period is None:
        return None
    while True:
        # the box only has to contain the tile; grow it until the cell is bounded
        try:
            verts, _ = itinerary_cell(p, rec.indices, N, box=box, digits=digits)
            break
        except ValueError:
            if box > 100:
                raise
            box *= 4
    vs = [complex(v) for v in verts]
    c = sum(vs) / len(vs)
    half = rec.period // 2
    cp = None
    if rec.period % 2 == 0 and half % 2 == 1:
        q = pim(mpmath.mpc(p), rec.indices[:half], N)[-1]
        mid = complex((mpmath.mpc(p) + q) / 2)
        if abs(mid - c) < 1e-6 * (1 + abs(c)):
            c = mid
            cp = period(c, N, max_iter=max_iter, tol=1e-9, keep_indices=0).period
    if cp is None:
        try:
            cp = period(c, N, max_iter=max_iter, tol=1e-9, keep_indices=0).period
        except SingularHit:
            cp = None
    return TileReport(N, rec.period, c, cp, len(vs), max(abs(v - c) for v in vs), vs)
