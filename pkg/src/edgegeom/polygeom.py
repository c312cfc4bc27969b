"""Regular-tile geometry in outer-billiards (tau) space.

Placement conventions:

* N is centred at the origin with apothem hN = 1 and a horizontal base
  edge on the line y = -1.
* The First Family grows along the left extension of that base edge, so
  star[k] of N is (-tan(k pi/N), -1).  Right-side objects are mirror images.
* The vertices c_1..c_N of N are labelled clockwise.  c_k sits at angle
  pi/2 - 2 pi k/N (N odd) or pi/2 - 2 pi k/N - pi/N (N even), so for odd N
  the top vertex is c_N.

Points are complex numbers x + iy.  In exact mode they are FieldElements of
Q(zeta_4N) and in numeric mode they are mpmath mpc values.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd

import mpmath

from . import exactfield as ef
from .errors import DegenerateStars, IndexOutOfRange, WrongParity


class Ctx:
    """Scalar backend: exact cyclotomic numbers or mpmath floats."""

    def __init__(self, N, exact=True, digits=ef.DEFAULT_DIGITS, conductor=None):
        self.N = N
        self.exact = exact
        self.digits = digits
        self.m = conductor or 4 * N
        if exact:
            self.I = ef.imag_unit(self.m)

    def num(self, q):
        if self.exact:
            return ef.rational(q, self.m)
        q = Fraction(q)
        with mpmath.workdps(self.digits + 5):
            return mpmath.mpf(q.numerator) / q.denominator

    def tan(self, k, n):
        if self.exact:
            return ef.tan_exact(k, n, self.m)
        with mpmath.workdps(self.digits + 5):
            return mpmath.tan(mpmath.pi * k / n)

    def cos(self, k, n):
        if self.exact:
            return ef.cos_pi(Fraction(k, n), self.m)
        with mpmath.workdps(self.digits + 5):
            return mpmath.cos(mpmath.pi * k / n)

    def expi(self, q):
        """exp(i pi q)."""
        if self.exact:
            return ef.expi_pi(q, self.m)
        q = Fraction(q)
        with mpmath.workdps(self.digits + 5):
            return mpmath.expjpi(mpmath.mpf(q.numerator) / q.denominator)

    def point(self, x, y):
        if self.exact:
            return x + self.I * y
        with mpmath.workdps(self.digits + 5):
            return mpmath.mpc(x, y)


def is_exact(z):
    return isinstance(z, ef.FieldElement)


def re(z):
    if is_exact(z):
        return z.real_part()
    return mpmath.re(z) if isinstance(z, (mpmath.mpc, mpmath.mpf)) else complex(z).real


def im(z):
    if is_exact(z):
        return z.imag_part()
    return mpmath.im(z) if isinstance(z, (mpmath.mpc, mpmath.mpf)) else complex(z).imag


def to_complex(z):
    return complex(z)


def to_float(v):
    return float(v)


def _ctx_for(z, N=None):
    if is_exact(z):
        return Ctx(N or z.conductor // 4, True, conductor=z.conductor)
    return Ctx(N or 3, False)


@dataclass(frozen=True)
class RegularTile:
    """Regular n-gon; phase is the angle of vertex 1 in units of pi."""

    sides: int
    center: object
    height: object
    phase: Fraction = Fraction(0)
    label: str = ""

    @property
    def exact(self):
        return is_exact(self.center)

    def _ctx(self):
        if self.exact:
            m = self.center.conductor
            for q in (4, 2 * self.sides, 2 * Fraction(self.phase).denominator):
                m = m * q // gcd(m, q)
            return Ctx(m // 4, True, conductor=m)
        return Ctx(self.sides, False)

    @property
    def radius(self):
        ctx = self._ctx()
        return self.height / ctx.cos(1, self.sides)

    @property
    def phase_radians(self):
        return float(self.phase) * float(mpmath.pi)

    def vertices(self):
        ctx = self._ctx()
        r = self.radius
        return [self.center + r * ctx.expi(self.phase + Fraction(2 * j, self.sides))
                for j in range(self.sides)]

    @property
    def base_midpoint(self):
        """Midpoint of the bottom edge (tiles built here rest on a horizontal base)."""
        ctx = self._ctx()
        return self.center - ctx.point(0, 1) * self.height

    def star_points(self, side="left"):
        """star[1..ceil(n/2)-1] along the base line, ordered outward."""
        ctx = self._ctx()
        sgn = -1 if side == "left" else 1
        mid = self.base_midpoint
        return [mid + sgn * self.height * ctx.tan(k, self.sides)
                for k in range(1, (self.sides + 1) // 2)]

    def star(self, k, side="left"):
        pts = self.star_points(side)
        if not 1 <= k <= len(pts):
            raise IndexOutOfRange(f"star[{k}] of a {self.sides}-gon")
        return pts[k - 1]

    def map_affine(self, scale, offset, mirror=False, label=None):
        """Image under z -> scale*z + offset (optionally after x -> -x)."""
        c = self.center
        phase = self.phase
        if mirror:
            c = -_conj(c)
            phase = 1 - phase
        return replace(self, center=c * scale + offset, height=self.height * scale,
                       phase=phase, label=label or self.label)

    def numeric(self, digits=17):
        if not self.exact:
            return self
        return replace(self, center=mpmath.mpc(self.center.embed(digits)),
                       height=self.height.embed(digits))

    def to_json(self, digits=17, exact_coeffs=False):
        c = complex(self.center)
        out = {
            "sides": self.sides,
            "center": [_round(c.real, digits), _round(c.imag, digits)],
            "height": _round(float(self.height), digits),
            "radius": _round(float(self.radius), digits),
            "phase": _round(self.phase_radians, digits),
            "label": self.label,
        }
        if exact_coeffs and self.exact:
            out["coeffs"] = {
                "conductor": self.center.conductor,
                "center_x": [str(q) for q in re(self.center).coeffs],
                "center_y": [str(q) for q in im(self.center).coeffs],
                "height": [str(q) for q in self.height.coeffs],
            }
        return out


def _round(v, digits):
    return float(f"{v:.{digits}g}")


def _conj(z):
    if is_exact(z):
        return z.conj()
    return mpmath.conj(z)


def base_phase(sides):
    """Phase putting the base edge horizontal at the bottom.

    Odd n: vertex 1 at the top.  Even n: vertex 1 at the right end of the base.
    """
    if sides % 2:
        return Fraction(1, 2)
    return Fraction(-1, 2) + Fraction(1, sides)


# ---------------------------------------------------------------------------
# the polygon N and its clockwise vertex labels

def vertex_phase(N, k):
    """Angle of c_k in units of pi."""
    delta = Fraction(0) if N % 2 else Fraction(-1, N)
    return Fraction(1, 2) - Fraction(2 * k, N) + delta


def polygon_vertices(N, exact=True, digits=ef.DEFAULT_DIGITS):
    """c_1..c_N (clockwise) of N with hN = 1."""
    ctx = Ctx(N, exact, digits)
    r = 1 / ctx.cos(1, N) if exact else ctx.num(1) / ctx.cos(1, N)
    return [r * ctx.expi(vertex_phase(N, k)) for k in range(1, N + 1)]


def polygon_vertices_float(N):
    import numpy as np
    th = [float(vertex_phase(N, k)) * np.pi for k in range(1, N + 1)]
    r = 1.0 / np.cos(np.pi / N)
    return r * np.cos(th), r * np.sin(th)


# ---------------------------------------------------------------------------
# First Family

def family_sides(N, k=None):
    """Sides of S[k]: 2N for N odd; N/2 for odd k when N is twice-odd; N otherwise.

    The N/2-gons of a twice-odd N keep the apothem and centre of the
    N-gon they replace.
    """
    if N % 2:
        return 2 * N
    if N % 4 == 2 and k is not None and k % 2:
        return N // 2
    return N


def s_height(ctx, N, k):
    return ctx.tan(1, N) * ctx.tan(k, N)


def s_tile(ctx, N, k, side="left"):
    """S[k] of N in tau space (hN = 1)."""
    t = ctx.tan(1, N)
    tk = ctx.tan(k, N)
    h = t * tk
    sgn = -1 if side == "left" else 1
    mid_x = sgn * (tk + t)
    center = ctx.point(mid_x, h - 1)
    n = family_sides(N, k)
    return RegularTile(n, center, h, base_phase(n), f"S[{k}]")


def n_tile(ctx, N):
    return RegularTile(N, ctx.point(0, 0), ctx.num(1), base_phase(N), "N")


@dataclass(frozen=True)
class FirstFamily:
    N: int
    normalization: str
    polygon: RegularTile
    tiles: dict
    star_points: list
    scales: dict
    genscale: object
    genstar: object
    local_genstar: object
    transform: tuple = field(default=None, repr=False)

    @property
    def D(self):
        return self.tiles[(self.N + 1) // 2 - 1]

    @property
    def M(self):
        return self.tiles[(self.N + 1) // 2 - 2] if (self.N + 1) // 2 - 2 >= 1 else None

    def S(self, k):
        if k not in self.tiles:
            raise IndexOutOfRange(f"S[{k}] does not exist for N={self.N}")
        return self.tiles[k]


def normalization_map(ctx, N, normalization):
    """(scale, offset) taking hN = 1 tau space to the requested convention.

    side_one puts star[1] of N at the origin with sN = 1.
    """
    if normalization == "height_one":
        return ctx.num(1), ctx.point(0, 0)
    if normalization == "side_one":
        t = ctx.tan(1, N)
        s = 1 / (2 * t)
        star1 = ctx.point(-t, -1)
        return s, -star1 * s
    raise ValueError(f"unknown normalization {normalization!r}")


def first_family(N, normalization="height_one", exact=True, digits=ef.DEFAULT_DIGITS):
    if N < 3:
        raise IndexOutOfRange("N must be at least 3")
    ctx = Ctx(N, exact, digits)
    s, off = normalization_map(ctx, N, normalization)
    count = (N + 1) // 2 - 1
    tiles = {}
    for k in range(1, count + 1):
        tile = s_tile(ctx, N, k)
        if k == count:
            tile = replace(tile, label=f"S[{k}] (D)")
        elif k == count - 1:
            tile = replace(tile, label=f"S[{k}] (M)")
        tiles[k] = tile.map_affine(s, off)
    poly = n_tile(ctx, N).map_affine(s, off)
    stars = poly.star_points("left")
    scales = {k: ctx.tan(1, N) / ctx.tan(k, N) for k in range(1, count + 1)}
    if exact:
        gs = ef.genscale(N, ctx.m)
    else:
        with mpmath.workdps(digits + 5):
            gs = mpmath.tan(mpmath.pi / N) ** 2 if N % 2 == 0 else \
                mpmath.tan(mpmath.pi / N) * mpmath.tan(mpmath.pi / (2 * N))
    D = tiles[count]
    genstar = D.star(1, "right")
    s2 = tiles[2] if count >= 2 else tiles[1]
    local = s2.star(1 if N % 2 == 0 else 2, "right")
    return FirstFamily(N, normalization, poly, tiles, stars, scales, gs, genstar, local, (s, off))


def two_star_height(d, j, k, n):
    """Height of an n-gon whose star[j] and star[k] are a distance d apart."""
    if j == k:
        raise DegenerateStars("star indices must differ")
    if is_exact(d):
        m = d.conductor
        need = 4 * n
        m = m * need // gcd(m, need)
        diff = ef.tan_exact(j, n, m) - ef.tan_exact(k, n, m)
        if diff.sign() < 0:
            diff = -diff
        return d / diff
    with mpmath.workdps(max(mpmath.mp.dps, 40)):
        diff = abs(mpmath.tan(mpmath.pi * j / n) - mpmath.tan(mpmath.pi * k / n))
        return mpmath.mpf(d) / diff


def build_tile(height, sides, center=None, star_anchor=None, phase_rule="base", label=""):
    """Regular tile from its centre, or from a star point on its base line.

    star_anchor = (point, index, side): the anchor is star[index] on the
    given side of the new tile.  phase_rule: 'base' (horizontal base edge),
    'vertex3' (a vertex at 3 o'clock) or an explicit Fraction of pi.
    """
    if center is None:
        if star_anchor is None:
            raise ValueError("need a centre or a star anchor")
        pt, idx, side = star_anchor
        ctx = _ctx_for(pt)
        sgn = -1 if side == "left" else 1
        mid = pt - sgn * height * ctx.tan(idx, sides)
        center = mid + ctx.point(0, 1) * height
    if phase_rule == "base":
        phase = base_phase(sides)
    elif phase_rule == "vertex3":
        phase = Fraction(0)
    else:
        phase = Fraction(phase_rule)
    return RegularTile(sides, center, height, phase, label)


def ds_tile(N, k, exact=True, digits=ef.DEFAULT_DIGITS, normalization="height_one", side="left"):
    """DS[k]: next-generation tile on the right (inner) edge of S[2].

    side='right' gives the mirror copy across the vertical axis of S[1],
    which lies between S[1] and N.
    """
    if N < 5:
        raise IndexOutOfRange("DS tiles need N >= 5")
    ctx = Ctx(N, exact, digits)
    s2 = s_tile(ctx, N, 2)
    t = ctx.tan(1, N)
    if N % 2 == 0:
        if not 1 <= k <= N // 2 - 2:
            raise IndexOutOfRange(f"DS[{k}] for N={N}")
        tk = ctx.tan(k, N)
        h = s2.height * t * tk
        center = s2.center + s2.height * ctx.point(tk + t, t * tk - 1)
        n = family_sides(N, k)
        tile = RegularTile(n, center, h, base_phase(n), f"DS[{k}]")
    else:
        if not 1 <= k <= N - 2:
            raise IndexOutOfRange(f"DS[{k}] for N={N}")
        n2 = 2 * N
        h = s2.height * ctx.tan(k, n2) * t
        star = s2.star(k, "right")
        mid = star + h * ctx.tan(N - k, n2)
        tile = RegularTile(n2, mid + ctx.point(0, 1) * h, h, base_phase(n2), f"DS[{k}]")
    if side == "right":
        axis = re(s_tile(ctx, N, 1).center)
        tile = tile.map_affine(1, ctx.point(2 * axis, 0) if exact else 2 * axis, mirror=True)
    elif side != "left":
        raise ValueError("side must be 'left' or 'right'")
    s, off = normalization_map(ctx, N, normalization)
    return tile.map_affine(s, off)


# ---------------------------------------------------------------------------
# generation chains

def homothety(tile, ratio, fixed, power=1, label=None):
    f = ratio ** power
    return replace(tile, center=fixed + (tile.center - fixed) * f,
                   height=tile.height * f, label=label or tile.label)


def chain_ratios(ctx, N):
    """(G, H): G = hS[2]/hN (twice-even/twice-odd D chains), H = GenScale[N]."""
    t = ctx.tan(1, N)
    g = t * ctx.tan(2, N)
    h = t * t if N % 2 == 0 else t * ctx.tan(1, 2 * N)
    return g, h


def swap_nd(ctx, N, z):
    """Mirror about the perpendicular bisector of N and D (even N)."""
    t = ctx.tan(1, N)
    axis = -(1 / t + t)
    return ctx.point(axis, 0) - _conj(z)


def ideal_generation_chain(N, depth, exact=True, digits=ef.DEFAULT_DIGITS, anchor="N"):
    """Pairs (M[k], D[k]) for k = 1..depth converging to star[1] of N.

    Twice-odd N: M[k] and D[k] are the images of M and D under the
    homothety about star[1] of N with ratio GenScale[N/2] = hS[2]/hN.
    Twice-even N: M[k] = H^k(D) with ratio GenScale[N] (so M[1] = S[1]) and
    D[k] = G^k(D) with ratio hS[2]/hN (so D[1] = S[2]).
    Odd N: both chains use GenScale[N]; D[k] = H^k(D) and M[k] = H^k(M).
    anchor='genstar' mirrors the chain to star[1] of D (even N only).
    """
    if N <= 4:
        raise IndexOutOfRange("chains need N > 4")
    ctx = Ctx(N, exact, digits)
    fam = first_family(N, exact=exact, digits=digits)
    t = ctx.tan(1, N)
    P = ctx.point(-t, -1)
    D, M = fam.D, fam.M
    g, h = chain_ratios(ctx, N)
    out = []
    for k in range(1, depth + 1):
        if N % 4 == 2:
            mk = homothety(M, g, P, k, f"M[{k}]")
            dk = homothety(D, g, P, k, f"D[{k}]")
        elif N % 2 == 0:
            mk = homothety(D, h, P, k, f"M[{k}]")
            dk = homothety(D, g, P, k, f"D[{k}]")
        else:
            mk = homothety(M, h, P, k, f"M[{k}]")
            dk = homothety(D, h, P, k, f"D[{k}]")
        if anchor == "genstar":
            if N % 2:
                raise WrongParity("GenStar anchoring is implemented for even N")
            mk = replace(mk, center=swap_nd(ctx, N, mk.center))
            dk = replace(dk, center=swap_nd(ctx, N, dk.center))
        out.append((mk, dk))
    return out


def step2_family(N, exact=True, digits=ef.DEFAULT_DIGITS):
    """S_kx tiles conforming to star[2] of S[1] (N twice-even)."""
    if N % 4:
        raise WrongParity("step-2 family needs N twice-even")
    ctx = Ctx(N, exact, digits)
    t = ctx.tan(1, N)
    t2 = ctx.tan(2, N)
    s1 = s_tile(ctx, N, 1)
    d2 = s1.height * t2
    out = []
    for k in range(1, N // 2):
        h = s1.height * t * ctx.tan(k, N) * t2 / t
        mid = s1.star(k, "left") - d2
        out.append(RegularTile(N, mid + ctx.point(0, 1) * h, h, base_phase(N), f"S{k}x"))
    return out


def tower_shared_star(N, k):
    if not 1 <= k <= (N + 1) // 2 - 1:
        raise IndexOutOfRange(f"S[{k}] for N={N}")
    return k + 1 if N % 2 == 0 else 2 * k + 2


def conformity(tile_a, tile_b, tol=1e-12):
    """Number of star points (either side) the two tiles share."""
    pa = tile_a.star_points("left") + tile_a.star_points("right")
    pb = tile_b.star_points("left") + tile_b.star_points("right")
    ca = [complex(p) for p in pa]
    cb = [complex(p) for p in pb]
    return sum(1 for p in ca if any(abs(p - q) < tol for q in cb))


def twice_odd_embedding(N, exact=True, digits=ef.DEFAULT_DIGITS):
    """Similarity carrying the tau space of odd N into the tau space of 2N.

    D of N lands on the polygon 2N, N lands on S[N-2] of 2N, and every
    First Family tile of N lands on a web tile of 2N with the same shape.
    Returns a function acting on points and tiles.
    """
    if N % 2 == 0 or N < 3:
        raise WrongParity("the embedding is defined for odd N")
    fam = first_family(N, exact=exact, digits=digits)
    c, h = fam.D.center, fam.D.height

    def f(obj):
        if isinstance(obj, RegularTile):
            return obj.map_affine(1 / h, _conj(c) / h, mirror=True)
        return -_conj(obj - c) / h
    return f
