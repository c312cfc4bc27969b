"""The three piecewise isometries and the change of coordinates between them.

* tau: outer billiards about N (hN = 1, labels as in polygeom).
* dc: dual-center map z -> exp(-2 pi i/N) (z - sign(Im z)).
* df: digital-filter map on the torus [-1, 1)^2 (N even).

Points are complex numbers.  FieldElement points are handled exactly; any
other numeric point (complex, mpc) is handled in floating arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import mpmath
import numba
import numpy as np

from . import exactfield as ef
from . import polygeom as pg
from .errors import WrongParity

TAU_SPACE = "tau_space"
DC_SPACE = "dc_space"
DF_TORUS = "df_torus"


@dataclass(frozen=True)
class MapPoint:
    coords: object
    space_tag: str = TAU_SPACE


@dataclass(frozen=True)
class StepResult:
    point: object = None
    vertex_index: int = None
    singular: str = None

    @property
    def mapped(self):
        return self.singular is None


def _coords(p):
    return p.coords if isinstance(p, MapPoint) else p


def _wrap(p, value, tag):
    return MapPoint(value, tag) if isinstance(p, MapPoint) else value


# ---------------------------------------------------------------------------
# tau

@lru_cache(maxsize=64)
def _exact_vertices(N):
    return tuple(pg.polygon_vertices(N, exact=True))


@lru_cache(maxsize=64)
def _float_vertices(N):
    vx, vy = pg.polygon_vertices_float(N)
    return tuple(complex(x, y) for x, y in zip(vx, vy))


def _mp_vertices(N, digits):
    return _mp_vertices_cached(N, digits)


@lru_cache(maxsize=64)
def _mp_vertices_cached(N, digits):
    return tuple(pg.polygon_vertices(N, exact=False, digits=digits))


def cross_sign_exact(a, b):
    """Sign of the planar cross product of exact complex points."""
    return (a.conj() * b).imag_part().sign()


def _cross_f(a, b):
    return a.real * b.imag - a.imag * b.real


def _classify(signs):
    """signs[k] = (s_next, s_prev) for each vertex; returns index or reason."""
    N = len(signs)
    if all(s[0] <= 0 for s in signs):
        return None, "on_polygon"
    cands = [k for k in range(N) if signs[k][0] <= 0 and signs[k][1] <= 0]
    if not cands:
        return None, "on_polygon"
    if len(cands) > 1:
        return None, "on_trailing_edge"
    return cands[0], None


def tau(p, N, digits=ef.DEFAULT_DIGITS):
    """One outer-billiards step; Mapped(2c - p, k) or Singular(reason)."""
    z = _coords(p)
    if isinstance(z, ef.FieldElement):
        k, why = _tau_index_exact(z, N)
        if why:
            return StepResult(singular=why)
        c = _exact_vertices(N)[k]
        return StepResult(_wrap(p, c * 2 - z, TAU_SPACE), k + 1)
    if isinstance(z, (mpmath.mpc, mpmath.mpf)):
        V = _mp_vertices(N, digits)
        with mpmath.workdps(digits + 5):
            signs = []
            for k in range(N):
                a = V[k] - z
                s1 = mpmath.sign(mpmath.im(mpmath.conj(a) * (V[(k + 1) % N] - z)))
                s2 = mpmath.sign(mpmath.im(mpmath.conj(a) * (V[k - 1] - z)))
                signs.append((s1, s2))
            k, why = _classify(signs)
            if why:
                return StepResult(singular=why)
            return StepResult(_wrap(p, 2 * V[k] - z, TAU_SPACE), k + 1)
    z = complex(z)
    V = _float_vertices(N)
    signs = []
    for k in range(N):
        a = V[k] - z
        signs.append((np.sign(_cross_f(a, V[(k + 1) % N] - z)), np.sign(_cross_f(a, V[k - 1] - z))))
    k, why = _classify(signs)
    if why:
        return StepResult(singular=why)
    return StepResult(_wrap(p, 2 * V[k] - z, TAU_SPACE), k + 1)


def _tau_index_exact(z, N):
    V = _exact_vertices(N)
    Vf = _float_vertices(N)
    zf = complex(z)
    scale = (1 + abs(zf)) ** 2
    tol = 1e-9 * scale
    signs = []
    for k in range(N):
        a = Vf[k] - zf
        pair = []
        for nb in ((k + 1) % N, k - 1):
            c = _cross_f(a, Vf[nb] - zf)
            if abs(c) > tol:
                pair.append(1 if c > 0 else -1)
            else:
                pair.append(cross_sign_exact(V[k] - z, V[nb] - z))
        signs.append(tuple(pair))
    return _classify(signs)


def tau_candidates(z, N):
    """0-based vertices whose closed atom contains the exact point z.

    Two candidates means z sits on a trailing edge; the one-sided limits
    of tau there are the reflections through either vertex.
    """
    V = _exact_vertices(N)
    out = []
    for k in range(N):
        if cross_sign_exact(V[k] - z, V[(k + 1) % N] - z) <= 0 and \
                cross_sign_exact(V[k] - z, V[k - 1] - z) <= 0:
            out.append(k)
    return out


def tau_index(p, N):
    """1-based atom index of p, or raise-free None on the singular set."""
    r = tau(p, N)
    return r.vertex_index


def tr(p):
    """Reflection about the vertical axis."""
    z = _coords(p)
    if isinstance(z, ef.FieldElement):
        w = -z.conj()
    elif isinstance(z, (mpmath.mpc, mpmath.mpf)):
        w = -mpmath.conj(z)
    else:
        w = -complex(z).conjugate()
    return _wrap(p, w, TAU_SPACE)


def _tr_label(N, k):
    """Label of Tr(c_k)."""
    # Tr sends angle a to pi - a
    target = Fraction(1) - pg.vertex_phase(N, k)
    for j in range(1, N + 1):
        if (pg.vertex_phase(N, j) - target) % 2 == 0:
            return j
    raise AssertionError("polygon is not mirror symmetric")


def tau_inverse(p, N, digits=ef.DEFAULT_DIGITS):
    r = tau(tr(p), N, digits)
    if not r.mapped:
        reason = "on_forward_edge" if r.singular == "on_trailing_edge" else r.singular
        return StepResult(singular=reason)
    return StepResult(tr(r.point), _tr_label(N, r.vertex_index))


# ---------------------------------------------------------------------------
# dual center

def dc(z, N, digits=ef.DEFAULT_DIGITS):
    """Returns (image, on_axis)."""
    w = _coords(z)
    if isinstance(w, ef.FieldElement):
        m = w.conductor
        if m % N or m % 4:
            m = m * 4 * N // math.gcd(m, 4 * N)
            w = w.lift(m)
        s = w.imag_part().sign()
        rot = ef.FieldElement.zeta(m, -(m // N))
        out = (w - s) * rot
    elif isinstance(w, (mpmath.mpc, mpmath.mpf)):
        with mpmath.workdps(digits + 5):
            s = mpmath.sign(mpmath.im(w))
            out = mpmath.expjpi(mpmath.mpf(-2) / N) * (w - s)
    else:
        w = complex(w)
        s = (w.imag > 0) - (w.imag < 0)
        out = complex(math.cos(2 * math.pi / N), -math.sin(2 * math.pi / N)) * (w - s)
    return _wrap(z, out, DC_SPACE), s == 0


def dc_piece(z, witness, N):
    """Dc applied to z with the branch chosen by `witness` (exact points).

    Used to map a whole segment piece by the branch of its midpoint.
    """
    m = z.conductor
    if m % N or m % 4:
        m = m * 4 * N // math.gcd(m, 4 * N)
        z, witness = z.lift(m), witness.lift(m)
    s = witness.imag_part().sign()
    return (z - s) * ef.FieldElement.zeta(m, -(m // N)), s == 0


@numba.njit(cache=True)
def dc_orbit_kernel(xs, ys, depth, c, s, out_x, out_y, tol=0.0):
    """Iterate Dc from each seed; out arrays have shape (n, depth + 1)."""
    n = xs.shape[0]
    for i in range(n):
        x = xs[i]
        y = ys[i]
        out_x[i, 0] = x
        out_y[i, 0] = y
        for j in range(1, depth + 1):
            if y > tol:
                x -= 1.0
            elif y < -tol:
                x += 1.0
            else:
                y = 0.0
            nx = c * x + s * y
            y = c * y - s * x
            x = nx
            out_x[i, j] = x
            out_y[i, j] = y


@numba.njit(cache=True)
def dc_iterate_kernel(xs, ys, steps, c, s, tol=0.0):
    """Advance seeds in place without recording (throughput path).

    |Im z| <= tol counts as on the axis (tol = 0 is the strict map).
    """
    n = xs.shape[0]
    for i in range(n):
        x = xs[i]
        y = ys[i]
        for _ in range(steps):
            if y > tol:
                x -= 1.0
            elif y < -tol:
                x += 1.0
            else:
                y = 0.0
            nx = c * x + s * y
            y = c * y - s * x
            x = nx
        xs[i] = x
        ys[i] = y


def dc_float_orbits(seeds, N, depth, axis_tol=0.0):
    seeds = np.asarray(seeds, dtype=np.complex128)
    xs = np.ascontiguousarray(seeds.real)
    ys = np.ascontiguousarray(seeds.imag)
    ox = np.empty((xs.size, depth + 1))
    oy = np.empty((xs.size, depth + 1))
    dc_orbit_kernel(xs, ys, depth, math.cos(2 * math.pi / N), math.sin(2 * math.pi / N), ox, oy, axis_tol)
    return ox, oy


# ---------------------------------------------------------------------------
# digital filter

def sawtooth(z):
    return ((z + 1) % 2) - 1


def df(p, N):
    if N % 2:
        raise WrongParity("Df is defined for even N")
    z = _coords(p)
    x, y = (z[0], z[1]) if isinstance(z, tuple) else (complex(z).real, complex(z).imag)
    w = 2 * math.cos(2 * math.pi / N)
    out = (y, sawtooth(-x + w * y))
    if isinstance(p, MapPoint):
        return MapPoint(out, DF_TORUS)
    return out


def df_rectify(p, N):
    """Linear change of variables taking the no-overflow Df dynamics to rotation by +2 pi/N."""
    if N % 2:
        raise WrongParity("Df is defined for even N")
    z = _coords(p)
    x, y = z
    th = 2 * math.pi / N
    out = (x, (x * math.cos(th) - y) / math.sin(th))
    if isinstance(p, MapPoint):
        return MapPoint(out, DF_TORUS)
    return out


# ---------------------------------------------------------------------------
# tau space <-> dc space

def tw_constants(N, exact=False, digits=ef.DEFAULT_DIGITS):
    """(scale, offset) with tw(z) = scale*z + offset.

    star[1] of N goes to 0 and the edge length becomes 1, which puts the
    Dc-generated polygon N on the edge [0, 1] above the real axis.
    """
    ctx = pg.Ctx(N, exact, digits)
    return pg.normalization_map(ctx, N, "side_one")


def tw(p, N, direction="forward", digits=ef.DEFAULT_DIGITS):
    z = _coords(p)
    exact = isinstance(z, ef.FieldElement)
    s, off = tw_constants(N, exact, digits)
    if not exact:
        s, off = complex(s), complex(off)
        if isinstance(z, (mpmath.mpc, mpmath.mpf)):
            s2, off2 = tw_constants(N, False, digits)
            with mpmath.workdps(digits + 5):
                out = z * s2 + off2 if direction == "forward" else (z - off2) / s2
            return _wrap(p, out, DC_SPACE if direction == "forward" else TAU_SPACE)
        z = complex(z)
    out = z * s + off if direction == "forward" else (z - off) / s
    return _wrap(p, out, DC_SPACE if direction == "forward" else TAU_SPACE)


def tw_inverse(p, N, digits=ef.DEFAULT_DIGITS):
    return tw(p, N, "inverse", digits)
