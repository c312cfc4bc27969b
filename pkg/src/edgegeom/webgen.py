"""Singularity webs.

Exact segment webs (low level, for correctness checks) and point-sampled
webs (the working representation) for tau, tau^-1 and Dc, plus symmetry
closure, cropping, rasterization, file I/O and checkpointed deep fields.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import logging
import math
import os
import struct

import mpmath
import numba
import numpy as np

from . import exactfield as ef
from . import isomaps as im
from . import polygeom as pg
from .errors import IoError

log = logging.getLogger(__name__)

QUANTUM = 1e-12


# ---------------------------------------------------------------------------
# exact segment webs

@dataclass
class SegmentWeb:
    N: int
    level: int
    segments: set
    space: str = im.TAU_SPACE

    def __len__(self):
        return len(self.segments)

    def numeric(self):
        return [(complex(a), complex(b)) for a, b in (tuple(s) for s in self.segments)]

    def distance(self, z):
        """Euclidean distance from a float point to the nearest segment."""
        best = math.inf
        for a, b in self.numeric():
            d = b - a
            L = abs(d) ** 2
            s = 0.0 if L == 0 else min(1.0, max(0.0, ((z - a).conjugate() * d).real / L))
            best = min(best, abs(a + s * d - z))
        return best


def _seg(a, b):
    return frozenset((a, b))


def _cross(a, b):
    return (a.conj() * b).imag_part()


def _star_reach(N):
    return N // 2 - 1 if N % 2 == 0 else (N - 1) // 2


@lru_cache(maxsize=32)
def _rays(N):
    """(origin, direction, kind) for the two extensions of every edge."""
    V = im._exact_vertices(N)
    out = []
    for k in range(N):
        a, b = V[k], V[(k + 1) % N]
        for o, d in ((b, b - a), (a, a - b)):
            probe = o + d * Fraction(1, 4)
            r = im.tau(probe, N)
            out.append((o, d, "trailing" if r.singular == "on_trailing_edge" else "forward"))
    return out


def level0(N, kind="forward"):
    """Edges of N plus extended edges out to the outermost star point.

    kind: 'forward', 'trailing' or 'star_polygon' (both extensions).
    """
    if N < 3:
        raise ValueError("N must be at least 3")
    V = im._exact_vertices(N)
    segs = {_seg(V[k], V[(k + 1) % N]) for k in range(N)}
    # length from an endpoint of an edge to the outermost star point
    ctx = pg.Ctx(N, True)
    reach = ctx.tan(_star_reach(N), N) - ctx.tan(1, N)
    side = 2 * ctx.tan(1, N)
    for o, d, k in _rays(N):
        if kind == "star_polygon" or kind == k:
            segs.add(_seg(o, o + d * (reach / side)))
    return SegmentWeb(N, 0, segs)


def interval_web(N, a, b, conductor=None):
    """A single real interval [a, b] (Dc space)."""
    m = conductor or 4 * N
    return SegmentWeb(N, 0, {_seg(ef.rational(a, m), ef.rational(b, m))}, im.DC_SPACE)


def _split_params(a, b, cuts):
    """Sorted interior parameters in (0, 1) where [a, b] meets the cut rays."""
    d = b - a
    af, df = complex(a), complex(d)
    ps = set()
    for o, u in cuts:
        of, uf = complex(o), complex(u)
        denf = _fcross(df, uf)
        scale = abs(df) * abs(uf) + 1e-300
        if abs(denf) > 1e-9 * scale:
            sf = _fcross(of - af, uf) / denf
            rf = _fcross(of - af, df) / denf
            if sf < -1e-6 or sf > 1 + 1e-6 or rf < -1e-6 * (1 + abs(uf)):
                continue
        den = _cross(d, u)
        if den.is_zero():
            # collinear: split at the ray origin if it falls inside
            if _cross(o - a, d).is_zero():
                dd = (d.conj() * d).real_part()
                s = (d.conj() * (o - a)).real_part() / dd
                if 0 < s < 1:
                    ps.add(s)
            continue
        s = _cross(o - a, u) / den
        r = _cross(o - a, d) / den
        if 0 < s < 1 and r.sign() >= 0:
            ps.add(s)
    return sorted(ps, key=float)


def _fcross(a, b):
    return a.real * b.imag - a.imag * b.real


def _pieces(a, b, cuts):
    ps = _split_params(a, b, cuts)
    pts = [a] + [a + (b - a) * s for s in ps] + [b]
    return list(zip(pts, pts[1:]))


def _map_piece(a, b, N, kind):
    """Images of the piece [a, b]; pieces lying on a singular ray get both one-sided images."""
    mid = (a + b) * Fraction(1, 2)
    if kind in ("tau", "tau_inverse"):
        probe = mid if kind == "tau" else -mid.conj()
        r = im.tau(probe, N)
        if r.mapped:
            ks = [r.vertex_index - 1]
        elif r.singular == "on_trailing_edge":
            ks = im.tau_candidates(probe, N)
        else:
            return []
        V = im._exact_vertices(N)
        out = []
        for k in ks:
            c = V[k] * 2
            if kind == "tau_inverse":
                c = -c.conj()
            out.append((c - a, c - b))
        return out
    if kind == "dc":
        img_a, _ = im.dc_piece(a, mid, N)
        img_b, _ = im.dc_piece(b, mid, N)
        return [(img_a, img_b)]
    raise ValueError(f"unknown map {kind!r}")


def advance_segments(web, map_kind="tau", steps=1):
    """Union of the web with its first `steps` images, pieces split at atom boundaries."""
    N = web.N
    if map_kind == "dc":
        m = next(iter(web.segments))
        m = next(iter(m)).conductor
        cuts = [(ef.rational(0, m), ef.rational(1, m)), (ef.rational(0, m), ef.rational(-1, m))]
    else:
        want = "trailing" if map_kind == "tau" else "forward"
        cuts = [(o, d) for o, d, k in _rays(N) if k == want]
    segs = set(web.segments)
    frontier = set(web.segments)
    for _ in range(steps):
        new = set()
        for s in frontier:
            a, b = tuple(s) if len(s) == 2 else (next(iter(s)),) * 2
            for p, q in _pieces(a, b, cuts):
                for img in _map_piece(p, q, N, map_kind):
                    seg = _seg(*img)
                    if seg not in segs:
                        new.add(seg)
        segs |= new
        frontier = new
    return SegmentWeb(N, web.level + steps, segs, web.space)


# ---------------------------------------------------------------------------
# point clouds

@dataclass
class WebCloud:
    N: int
    map_kind: str
    depth: int
    points: np.ndarray  # complex128, unique on the quantization grid
    seed_spec: dict = field(default_factory=dict)

    def __len__(self):
        return int(self.points.size)


def quantize(points, quantum=QUANTUM):
    """Unique points on a grid of the given spacing (sorted, deterministic).

    Each occupied cell keeps its smallest point in (x, y) order, so the
    result does not depend on the input order.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        return pts
    kx = np.round(pts.real / quantum).astype(np.int64)
    ky = np.round(pts.imag / quantum).astype(np.int64)
    order = np.lexsort((pts.imag, pts.real, ky, kx))
    kx, ky, pts = kx[order], ky[order], pts[order]
    first = np.ones(pts.size, dtype=bool)
    first[1:] = (kx[1:] != kx[:-1]) | (ky[1:] != ky[:-1])
    return pts[first]


@numba.njit(cache=True)
def _tau_orbits(xs, ys, vx, vy, depth, out_x, out_y):
    N = vx.shape[0]
    n = xs.shape[0]
    for i in range(n):
        x = xs[i]
        y = ys[i]
        out_x[i, 0] = x
        out_y[i, 0] = y
        alive = True
        for j in range(1, depth + 1):
            best = -1
            if alive:
                for k in range(N):
                    cx = vx[k] - x
                    cy = vy[k] - y
                    kp = (k + 1) % N
                    km = (k - 1) % N
                    if cx * (vy[kp] - y) - cy * (vx[kp] - x) <= 0.0 and cx * (vy[km] - y) - cy * (vx[km] - x) <= 0.0:
                        best = k
                        break
            if best < 0:
                alive = False
                out_x[i, j] = np.nan
                out_y[i, j] = np.nan
                continue
            x = 2.0 * vx[best] - x
            y = 2.0 * vy[best] - y
            out_x[i, j] = x
            out_y[i, j] = y


def seed_points(seed_interval, density):
    a, b = seed_interval
    n = int(round((b - a) / density))
    return a + density * np.arange(n + 1)


@numba.njit(cache=True)
def _tau_record(xs, ys, vx, vy, depth, x0, y0, x1, y1, bx, by, nb):
    """Iterate tau from each seed; store visited points inside the window."""
    N = vx.shape[0]
    cap = bx.shape[0]
    for i in range(xs.shape[0]):
        x = xs[i]
        y = ys[i]
        for j in range(depth + 1):
            if j > 0:
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
                    break
                x = 2.0 * vx[best] - x
                y = 2.0 * vy[best] - y
            if x > x0 and x < x1 and y > y0 and y < y1:
                if nb < cap:
                    bx[nb] = x
                    by[nb] = y
                nb += 1
    return nb


def _tau_seeds(N, xs, map_kind, all_edges):
    s, off = im.tw_constants(N, exact=False)
    z0 = (xs - complex(off)) / complex(s)
    if all_edges:
        rot = np.exp(-2j * np.pi * np.arange(N) / N)
        z0 = (rot[:, None] * z0[None, :]).ravel()
    if map_kind == "tau_inverse":
        z0 = -np.conj(z0)
    return z0


def web_points(N, map_kind="dc", seed_interval=(-2.0, -1.0), density=1e-3, depth=100,
               closure="none", all_edges=True, digits=None, rect=None, capacity=2 * 10 ** 7,
               axis_tol=0.0, workers=1):
    """Iterate seeds and record every visited point.

    Dc seeds lie on the real axis.  tau seeds lie on the forward extension
    of the base edge (seed_interval is in tw coordinates, so (-2, -1) means
    the same physical interval for both maps) and, with all_edges, on its
    N rotated copies.  Points come back in Dc space for 'dc' and in tau
    space otherwise.  With rect, only points inside it (in the output
    space) are kept, which avoids storing whole orbits.  With digits, Dc
    runs in mpmath at that precision.  axis_tol > 0 snaps Dc points with
    |Im z| <= axis_tol onto the axis, which removes the spurious extensions
    created when an orbit that should return to the axis exactly picks up
    roundoff of either sign.  workers > 1 splits the seeds over processes;
    the merged cloud is the same set whatever the split.
    """
    if workers > 1:
        return _web_points_parallel(N, map_kind, seed_interval, density, depth, closure, all_edges,
                                    digits, rect, capacity, axis_tol, workers)
    xs = seed_points(seed_interval, density)
    spec = {"interval": list(seed_interval), "density": density, "count": int(xs.size)}
    pts, raw = _web_from_seeds(N, map_kind, xs, depth, all_edges, digits, rect, capacity, axis_tol)
    spec["raw"] = raw
    if rect is not None:
        spec["window"] = list(rect)
    return symmetry_closure(WebCloud(N, map_kind, depth, pts, spec), closure)


def _web_from_seeds(N, map_kind, xs, depth, all_edges, digits, rect, capacity, axis_tol):
    """(quantized points, raw count) for one batch of seeds."""
    if map_kind not in ("dc", "tau", "tau_inverse"):
        raise ValueError(f"unsupported map {map_kind!r}")
    if rect is not None:
        bx = np.empty(capacity)
        by = np.empty(capacity)
        if map_kind == "dc":
            c, sn = math.cos(2 * math.pi / N), math.sin(2 * math.pi / N)
            seeds = xs.astype(np.float64)
            pts0 = seeds[(seeds > rect[0]) & (seeds < rect[2]) & (0 > rect[1]) & (0 < rect[3])] + 0j
            nb = _dc_record(seeds.copy(), np.zeros_like(seeds), depth, c, sn, *rect, bx, by, 0, axis_tol)
        else:
            z0 = _tau_seeds(N, xs, "tau", all_edges)
            vx, vy = pg.polygon_vertices_float(N)
            r = rect if map_kind == "tau" else (-rect[2], rect[1], -rect[0], rect[3])
            nb = _tau_record(np.ascontiguousarray(z0.real), np.ascontiguousarray(z0.imag), vx, vy, depth,
                             *r, bx, by, 0)
            pts0 = np.zeros(0, complex)
        if nb > capacity:
            raise MemoryError(f"window holds {nb} points, above capacity {capacity}")
        pts = np.concatenate([pts0, bx[:nb] + 1j * by[:nb]])
        if map_kind == "tau_inverse":
            pts = -np.conj(pts)
    elif map_kind == "dc":
        if digits:
            pts = _dc_mp(xs, N, depth, digits, axis_tol)
        else:
            ox, oy = im.dc_float_orbits(xs.astype(np.complex128), N, depth, axis_tol)
            pts = (ox + 1j * oy).ravel()
    else:
        z0 = _tau_seeds(N, xs, "tau", all_edges)
        vx, vy = pg.polygon_vertices_float(N)
        ox = np.empty((z0.size, depth + 1))
        oy = np.empty((z0.size, depth + 1))
        _tau_orbits(np.ascontiguousarray(z0.real), np.ascontiguousarray(z0.imag), vx, vy, depth, ox, oy)
        pts = (ox + 1j * oy).ravel()
        pts = pts[~np.isnan(pts)]
        if map_kind == "tau_inverse":
            pts = -np.conj(pts)
    return quantize(pts), int(pts.size)


def _web_part(args):
    N, map_kind, xs, depth, all_edges, digits, rect, capacity, axis_tol = args
    return _web_from_seeds(N, map_kind, xs, depth, all_edges, digits, rect, capacity, axis_tol)


def _web_points_parallel(N, map_kind, seed_interval, density, depth, closure, all_edges,
                         digits, rect, capacity, axis_tol, workers):
    from concurrent.futures import ProcessPoolExecutor
    xs = seed_points(seed_interval, density)
    parts = np.array_split(xs, workers)
    jobs = [(N, map_kind, p, depth, all_edges, digits, rect, capacity, axis_tol) for p in parts if p.size]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        results = list(ex.map(_web_part, jobs))
    pts = quantize(np.concatenate([r[0] for r in results]))
    spec = {"interval": list(seed_interval), "density": density, "count": int(xs.size),
            "raw": int(sum(r[1] for r in results)), "workers": workers}
    if rect is not None:
        spec["window"] = list(rect)
    return symmetry_closure(WebCloud(N, map_kind, depth, pts, spec), closure)


def _dc_mp(xs, N, depth, digits, axis_tol=0.0):
    out = []
    with mpmath.workdps(digits):
        rot = mpmath.expjpi(mpmath.mpf(-2) / N)
        for x in xs:
            z = mpmath.mpc(mpmath.mpf(repr(float(x))))
            out.append(complex(z))
            for _ in range(depth):
                if abs(z.imag) <= axis_tol:
                    z = mpmath.mpc(z.real, 0)
                s = mpmath.sign(z.imag)
                z = rot * (z - s)
                out.append(complex(z))
    return np.asarray(out)


def dc_mp_levels(xs, N, depth, digits=35):
    """Final mpmath positions after each of 0..depth Dc steps (list per level)."""
    levels = []
    with mpmath.workdps(digits):
        rot = mpmath.expjpi(mpmath.mpf(-2) / N)
        zs = [mpmath.mpc(mpmath.mpf(Fraction(x).numerator) / Fraction(x).denominator) for x in xs]
        levels.append(list(zs))
        for _ in range(depth):
            zs = [rot * (z - mpmath.sign(z.imag)) for z in zs]
            levels.append(list(zs))
    return levels


def _reflect_axis(cloud, pts=None):
    """x -> 1 - x in Dc space (the axis of N); x -> -x in tau space.

    In Dc space the reflection is a symmetry of the upper half-plane only,
    so only points with Im z > 0 are reflected.
    """
    p = cloud.points if pts is None else pts
    if cloud.map_kind == "dc":
        up = p[p.imag > 0]
        return 1 - np.conj(up)
    return -np.conj(p)


def symmetry_closure(cloud, closure="both"):
    """Close the cloud under z -> -z ('pm'), the axis reflection ('reflect') or both.

    The result is idempotent: closing it again adds nothing.
    """
    if closure == "none":
        return cloud
    if closure not in ("pm", "reflect", "both"):
        raise ValueError(f"unknown closure {closure!r}")
    base = cloud.points
    if closure in ("pm", "both"):
        base = np.concatenate([base, -base])
    parts = [base]
    if closure in ("reflect", "both"):
        r = _reflect_axis(cloud, base)
        parts.append(r)
        if closure == "both":
            parts.append(-r)
    pts = quantize(np.concatenate(parts))
    return WebCloud(cloud.N, cloud.map_kind, cloud.depth, pts, dict(cloud.seed_spec, closure=closure))


def crop(cloud, rect):
    x0, y0, x1, y1 = rect
    if not (x1 > x0 and y1 > y0):
        raise ValueError("degenerate rectangle")
    p = cloud.points
    keep = (p.real > x0) & (p.real < x1) & (p.imag > y0) & (p.imag < y1)
    if not keep.any():
        log.warning("crop produced an empty cloud")
    return WebCloud(cloud.N, cloud.map_kind, cloud.depth, p[keep], dict(cloud.seed_spec, crop=list(rect)))


def to_tau_space(cloud):
    """Dc cloud -> tau space through the inverse change of coordinates."""
    s, off = im.tw_constants(cloud.N, exact=False)
    pts = (cloud.points - complex(off)) / complex(s)
    return WebCloud(cloud.N, "dc->tau", cloud.depth, pts, cloud.seed_spec)


def hausdorff_one_sided(a, b, cell=None):
    """max over a of the distance to the nearest point of b."""
    d = nearest_distances(a, b, cell)
    return float(d.max()) if d.size else 0.0


def nearest_distances(a, b, cell=None):
    """Distance from each point of a to the nearest point of b."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    if a.size == 0:
        return np.zeros(0)
    if b.size == 0:
        return np.full(a.size, np.inf)
    x0, y0 = min(a.real.min(), b.real.min()), min(a.imag.min(), b.imag.min())
    x1, y1 = max(a.real.max(), b.real.max()), max(a.imag.max(), b.imag.max())
    if cell is None:
        cell = max(math.sqrt(max((x1 - x0) * (y1 - y0), 1e-18) / b.size) * 2, 1e-12)
    nx = int((x1 - x0) / cell) + 1
    ny = int((y1 - y0) / cell) + 1
    bi = ((b.real - x0) / cell).astype(np.int64) * ny + ((b.imag - y0) / cell).astype(np.int64)
    order = np.argsort(bi, kind="stable")
    bs = b[order]
    starts = np.searchsorted(bi[order], np.arange(nx * ny + 1))
    out = np.empty(a.size)
    _nearest_kernel(a.real.copy(), a.imag.copy(), bs.real.copy(), bs.imag.copy(),
                    starts, x0, y0, cell, nx, ny, out)
    return out


@numba.njit(cache=True)
def _nearest_kernel(ax, ay, bx, by, starts, x0, y0, cell, nx, ny, out):
    for i in range(ax.shape[0]):
        ci = int((ax[i] - x0) / cell)
        cj = int((ay[i] - y0) / cell)
        best = np.inf
        r = 0
        while True:
            for di in range(-r, r + 1):
                for dj in range(-r, r + 1):
                    if max(abs(di), abs(dj)) != r:
                        continue
                    ii = ci + di
                    jj = cj + dj
                    if ii < 0 or jj < 0 or ii >= nx or jj >= ny:
                        continue
                    k = ii * ny + jj
                    for m in range(starts[k], starts[k + 1]):
                        d = (bx[m] - ax[i]) ** 2 + (by[m] - ay[i]) ** 2
                        if d < best:
                            best = d
            # any point outside the searched square is at least r*cell away
            if best <= (r * cell) ** 2 or r > nx + ny:
                break
            r += 1
        out[i] = np.sqrt(best)


# ---------------------------------------------------------------------------
# rasters and files

def rasterize(cloud, width, height, rect, gamma=0.5):
    """uint8 image (row 0 at the top); counts mapped to intensity with a gamma curve."""
    if width < 1 or height < 1:
        raise ValueError("image size must be positive")
    x0, y0, x1, y1 = rect
    if not (x1 > x0 and y1 > y0):
        raise ValueError("degenerate rectangle")
    p = cloud.points if isinstance(cloud, WebCloud) else np.asarray(cloud)
    keep = (p.real >= x0) & (p.real < x1) & (p.imag >= y0) & (p.imag < y1)
    p = p[keep]
    img = np.zeros((height, width), dtype=np.float64)
    if p.size:
        col = np.minimum(((p.real - x0) / (x1 - x0) * width).astype(np.int64), width - 1)
        row = np.minimum(((y1 - p.imag) / (y1 - y0) * height).astype(np.int64), height - 1)
        np.add.at(img, (row, col), 1.0)
        img = (img / img.max()) ** gamma * 255.0
        img = np.where(img > 0, np.maximum(img, 1.0), 0.0)
    return np.round(img).astype(np.uint8)


MAGIC = b"NGWB"
VERSION = 1


def save(obj, path, fmt=None, digits=None, provenance=None):
    """Write a cloud (csv | ngwb) or an image (pgm | png).

    provenance (a short string) goes into a leading '#' line (csv), a
    comment line (pgm), a text chunk (png) or a trailer after the point
    data (ngwb); readers skip it.
    """
    fmt = (fmt or os.path.splitext(path)[1].lstrip(".")).lower()
    prov = provenance.replace("\n", " ") if provenance else None
    try:
        if fmt == "csv":
            pts = obj.points if isinstance(obj, WebCloud) else np.asarray(obj)
            with open(path, "w") as fh:
                if prov:
                    fh.write(f"# {prov}\n")
                fh.write("x,y\n")
                for z in pts:
                    if digits:
                        fh.write(f"{z.real:.{digits}g},{z.imag:.{digits}g}\n")
                    else:
                        fh.write(f"{float(z.real)!r},{float(z.imag)!r}\n")
        elif fmt == "ngwb":
            pts = np.asarray(obj.points, dtype=np.complex128)
            with open(path, "wb") as fh:
                fh.write(MAGIC + struct.pack("<HIQ", VERSION, obj.N, pts.size))
                fh.write(np.stack([pts.real, pts.imag], axis=1).astype("<f8").tobytes())
                if prov:
                    raw = prov.encode()
                    fh.write(b"PROV" + struct.pack("<I", len(raw)) + raw)
        elif fmt == "pgm":
            img = np.asarray(obj, dtype=np.uint8)
            with open(path, "wb") as fh:
                fh.write(b"P5\n")
                if prov:
                    fh.write(b"# " + prov.encode() + b"\n")
                fh.write(b"%d %d\n255\n" % (img.shape[1], img.shape[0]))
                fh.write(img.tobytes())
        elif fmt == "png":
            from PIL import Image, PngImagePlugin
            info = PngImagePlugin.PngInfo()
            if prov:
                info.add_text("provenance", prov)
            Image.fromarray(np.asarray(obj, dtype=np.uint8), mode="L").save(path, pnginfo=info)
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as e:
        raise IoError(str(e)) from e


def load(path, fmt=None):
    fmt = (fmt or os.path.splitext(path)[1].lstrip(".")).lower()
    try:
        if fmt == "csv":
            with open(path) as fh:
                lines = [ln for ln in fh if not ln.startswith("#")]
            if not lines or lines[0].strip() != "x,y":
                raise IoError("missing 'x,y' header")
            if len(lines) == 1:
                return np.zeros(0, complex)
            data = np.loadtxt(lines[1:], delimiter=",", ndmin=2)
            return data[:, 0] + 1j * data[:, 1]
        if fmt == "ngwb":
            with open(path, "rb") as fh:
                head = fh.read(18)
                if head[:4] != MAGIC:
                    raise IoError("not an NGWB file")
                ver, N, n = struct.unpack("<HIQ", head[4:])
                body = fh.read(16 * n)
                if len(body) != 16 * n:
                    raise IoError("truncated NGWB file")
                raw = np.frombuffer(body, dtype="<f8").reshape(n, 2)
                spec = {"version": ver}
                tail = fh.read(8)
                if tail[:4] == b"PROV":
                    spec["provenance"] = fh.read(struct.unpack("<I", tail[4:])[0]).decode()
            return WebCloud(N, "file", 0, raw[:, 0] + 1j * raw[:, 1], spec)
        if fmt == "pgm":
            with open(path, "rb") as fh:
                data = fh.read()
            fields, pos = [], 0
            while len(fields) < 4:
                while data[pos:pos + 1].isspace():
                    pos += 1
                if data[pos:pos + 1] == b"#":
                    pos = data.index(b"\n", pos) + 1
                    continue
                end = pos
                while not data[end:end + 1].isspace():
                    end += 1
                fields.append(data[pos:end])
                pos = end
            if fields[0] != b"P5":
                raise IoError("not a binary PGM")
            w, h = int(fields[1]), int(fields[2])
            return np.frombuffer(data[pos + 1:pos + 1 + w * h], dtype=np.uint8).reshape(h, w)
        if fmt == "png":
            from PIL import Image
            return np.asarray(Image.open(path))
    except OSError as e:
        raise IoError(str(e)) from e
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# deep fields

@numba.njit(cache=True)
def _dc_record(xs, ys, steps, c, s, x0, y0, x1, y1, bx, by, nb, tol=0.0):
    """Advance all seeds; store visited points inside the window."""
    n = xs.shape[0]
    cap = bx.shape[0]
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
            if x > x0 and x < x1 and y > y0 and y < y1:
                if nb < cap:
                    bx[nb] = x
                    by[nb] = y
                nb += 1
        xs[i] = x
        ys[i] = y
    return nb


def star_window_seeds(N, tile, lo, hi, step):
    """Dc-space seeds between star[lo] and star[hi] of a First Family tile."""
    fam = pg.first_family(N, exact=False)
    t = fam.S(int(tile[1:])) if tile.startswith("S") else fam.polygon
    a = complex(t.star(lo, "left"))
    b = complex(t.star(hi, "left"))
    s, off = im.tw_constants(N, exact=False)
    s, off = complex(s), complex(off)
    a, b = (a * s + off).real, (b * s + off).real
    a, b = min(a, b), max(a, b)
    return seed_points((a, b), step)


CK_MAGIC = b"NGCK"


def _write_checkpoint(path, N, done, xs, ys, pts):
    tmp = path + ".tmp"
    try:
        with open(tmp, "wb") as fh:
            fh.write(CK_MAGIC + struct.pack("<HIQQQ", 1, N, done, xs.size, pts.size))
            fh.write(np.stack([xs, ys, np.full(xs.size, float(done))], axis=1).astype("<f8").tobytes())
            fh.write(np.stack([pts.real, pts.imag], axis=1).astype("<f8").tobytes())
        os.replace(tmp, path)
    except OSError as e:
        raise IoError(str(e)) from e


def _read_checkpoint(path):
    try:
        with open(path, "rb") as fh:
            head = fh.read(34)
            if head[:4] != CK_MAGIC:
                raise IoError("not a checkpoint file")
            _, N, done, n, m = struct.unpack("<HIQQQ", head[4:])
            seeds = np.frombuffer(fh.read(24 * n), dtype="<f8").reshape(n, 3)
            pts = np.frombuffer(fh.read(16 * m), dtype="<f8").reshape(m, 2)
    except OSError as e:
        raise IoError(str(e)) from e
    return N, done, seeds[:, 0].copy(), seeds[:, 1].copy(), pts[:, 0] + 1j * pts[:, 1]


def deep_field(N, seeds, depth, rect, chunk=10 ** 6, capacity=5 * 10 ** 6, checkpoint=None,
               axis_tol=0.0):
    """Iterate Dc seeds to `depth`, keeping quantized points inside rect.

    Progress is saved to `checkpoint` after every chunk of steps (written to
    a temporary file and renamed) and resumed from it when present.
    """
    xs = np.ascontiguousarray(np.real(seeds), dtype=np.float64).copy()
    ys = np.ascontiguousarray(np.imag(seeds), dtype=np.float64).copy()
    done = 0
    kept = np.zeros(0, dtype=np.complex128)
    if depth >= 1:
        kept = quantize(xs + 1j * ys)
        kept = kept[(kept.real > rect[0]) & (kept.real < rect[2]) & (kept.imag > rect[1]) & (kept.imag < rect[3])]
    if checkpoint and os.path.exists(checkpoint):
        n2, done, xs, ys, kept = _read_checkpoint(checkpoint)
        if n2 != N:
            raise IoError("checkpoint belongs to a different N")
    c, s = math.cos(2 * math.pi / N), math.sin(2 * math.pi / N)
    bx = np.empty(capacity)
    by = np.empty(capacity)
    while done < depth - 1:
        steps = min(chunk, depth - 1 - done)
        nb = _dc_record(xs, ys, steps, c, s, rect[0], rect[1], rect[2], rect[3], bx, by, 0, axis_tol)
        if nb > capacity:
            log.warning("deep-field buffer overflow: %d points dropped", nb - capacity)
            nb = capacity
        kept = quantize(np.concatenate([kept, bx[:nb] + 1j * by[:nb]]))
        done += steps
        if checkpoint:
            _write_checkpoint(checkpoint, N, done, xs, ys, kept)
    return WebCloud(N, "dc", depth, kept, {"seeds": int(np.size(seeds)), "rect": list(rect)})


def dc_throughput(N=14, seeds=1000, steps=10000):
    """Measured Dc iterations per second of the double-precision kernel."""
    import time
    xs = -1.0 - np.arange(seeds) / seeds
    ys = np.zeros(seeds)
    c, s = math.cos(2 * math.pi / N), math.sin(2 * math.pi / N)
    im.dc_iterate_kernel(xs[:1].copy(), ys[:1].copy(), 10, c, s)
    t0 = time.perf_counter()
    im.dc_iterate_kernel(xs, ys, steps, c, s)
    return seeds * steps / (time.perf_counter() - t0)


def segment_distances(web, points):
    """Distance from each float point to the nearest segment of an exact web."""
    segs = np.array(web.numeric(), dtype=np.complex128)
    z = np.asarray(points, dtype=np.complex128).ravel()
    out = np.full(z.size, np.inf)
    if segs.size == 0:
        return out
    a, b = segs[:, 0], segs[:, 1]
    d = b - a
    L = np.abs(d) ** 2
    L[L == 0] = 1.0
    for i in range(0, z.size, 4096):
        w = z[i:i + 4096, None]
        s = np.clip((np.conj(d) * (w - a)).real / L, 0.0, 1.0)
        out[i:i + 4096] = np.abs(a + s * d - w).min(axis=1)
    return out


def dc_periodicity_check(N=7, interval=(-1, 1), levels=8, seeds=201, depth=300, digits=35, tol=1e-9):
    """Exact Dc segment web of a real interval versus mpmath iteration.

    The exact web stops growing once every piece has returned; mpmath
    orbits of rational seeds on the same interval pick a branch from the
    roundoff sign when they come back to the axis and leave the web.
    """
    web = interval_web(N, *interval)
    counts = [len(web)]
    for _ in range(levels):
        web = advance_segments(web, "dc", 1)
        counts.append(len(web))
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    xs = [lo + (hi - lo) * Fraction(j, seeds - 1) for j in range(seeds)]
    pts = np.array([complex(z) for lev in dc_mp_levels(xs, N, depth, digits) for z in lev])
    off = int((segment_distances(web, pts) > tol).sum())
    return {"N": N, "segment_counts": counts, "closed": counts[-1] == counts[-2],
            "float_points": int(pts.size), "extension_points": off, "digits": digits}


def cross_map_check(N=14, rect=(-1.6, -1e-9, 0.0, 0.6), density=1e-3, depth=1000, axis_tol=1e-9):
    """One-sided Hausdorff distance from the Dc web to the tau web inside a Dc-space window.

    The tau seeds cover the forward edges out to the last star point, so the
    tau cloud is the larger of the two; the distance is measured from Dc to tau.
    """
    s, off = im.tw_constants(N, exact=False)
    s, off = complex(s), complex(off)
    trect = ((rect[0] - off.real) / s.real, (rect[1] - off.imag) / s.real,
             (rect[2] - off.real) / s.real, (rect[3] - off.imag) / s.real)
    t = math.tan(math.pi / N)
    reach = (math.tan(_star_reach(N) * math.pi / N) - t) / (2 * t)
    dcw = web_points(N, "dc", (-2.0, -1.0), density, depth, rect=rect, axis_tol=axis_tol)
    taw = web_points(N, "tau", (-reach, 0.0), density, depth, rect=trect)
    a = dcw.points
    b = taw.points * s + off
    return {"N": N, "dc_points": int(a.size), "tau_points": int(b.size),
            "hausdorff_dc_to_tau": hausdorff_one_sided(a, b),
            "hausdorff_tau_to_dc": hausdorff_one_sided(b, a)}
