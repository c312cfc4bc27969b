"""Command-line front end.

Every subcommand accepts --json, --config FILE (flat key = value lines),
--dump-config and the RunConfig flags it uses.  Explicit flags beat the
config file, which beats the defaults.  Exit codes: 0 success, 1 domain
error (or a failed verify criterion), 2 usage error.
"""

from dataclasses import dataclass, asdict, fields
from fractions import Fraction
import hashlib
import json
import os
import sys

import click

from . import __version__
from .errors import EdgeGeomError

DIGITS_ENV = "EDGEGEOM_DIGITS"


@dataclass
class RunConfig:
    N: int = None
    precision_digits: int = 35
    depth: int = 1000
    density: float = 1e-3
    crop: tuple = None
    output_format: str = None
    normalization: str = "height_one"
    workers: int = 1

    def validate(self):
        if self.N is not None and self.N < 3:
            raise click.BadParameter("N must be at least 3", param_hint="'--n'")
        if self.precision_digits < 15:
            raise click.BadParameter("precision must be at least 15 digits", param_hint="'--digits'")
        if self.depth < 0:
            raise click.BadParameter("depth must be non-negative", param_hint="'--depth'")
        if self.workers < 1:
            raise click.BadParameter("need at least one worker", param_hint="'--workers'")
        if self.density <= 0:
            raise click.BadParameter("density must be positive", param_hint="'--density'")
        if self.normalization not in ("height_one", "side_one"):
            raise click.BadParameter("height_one or side_one", param_hint="'--normalization'")
        return self

    def digest(self):
        blob = json.dumps(asdict(self), sort_keys=True, default=list).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def provenance(self):
        return f"edgegeom {__version__} config={self.digest()}"


_KEYS = {f.name: f.type for f in fields(RunConfig)}
_ALIASES = {"n": "N", "digits": "precision_digits", "format": "output_format"}


def _parse_rect(text):
    if text is None or isinstance(text, (tuple, list)):
        return tuple(text) if text else None
    parts = [float(v) for v in str(text).replace(" ", "").split(",")]
    if len(parts) != 4 or not (parts[2] > parts[0] and parts[3] > parts[1]):
        raise click.BadParameter("expected x0,y0,x1,y1 with x1 > x0 and y1 > y0", param_hint="'--crop'")
    return tuple(parts)


def _coerce(key, value):
    if key == "crop":
        return _parse_rect(value)
    if key in ("N", "precision_digits", "depth", "workers"):
        return int(value)
    if key == "density":
        return float(value)
    return str(value)


def read_config_file(path):
    out = {}
    try:
        with open(path) as fh:
            for ln, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise click.BadParameter(f"line {ln}: expected key = value", param_hint="'--config'")
                k, v = (s.strip() for s in line.split("=", 1))
                k = _ALIASES.get(k, k)
                if k not in _KEYS:
                    raise click.BadParameter(f"line {ln}: unknown key {k!r}", param_hint="'--config'")
                out[k] = _coerce(k, v)
    except OSError as e:
        raise click.BadParameter(str(e), param_hint="'--config'")
    return out


def build_config(config_path=None, **overrides):
    base = RunConfig()
    env = os.environ.get(DIGITS_ENV)
    if env:
        try:
            base.precision_digits = int(env)
        except ValueError:
            raise click.BadParameter(f"{DIGITS_ENV} must be an integer", param_hint=DIGITS_ENV)
    values = asdict(base)
    if config_path:
        values.update(read_config_file(config_path))
    for k, v in overrides.items():
        if v is not None:
            k = _ALIASES.get(k, k)
            values[k] = _coerce(k, v)
    return RunConfig(**values).validate()


# ---------------------------------------------------------------------------
# output helpers

def _num(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, dict):
        return {str(k): _num(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_num(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def emit(cfg, as_json, payload, text_lines):
    if as_json:
        payload = dict(_num(payload), provenance=cfg.provenance())
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


def common(fn):
    """Options shared by every subcommand."""
    opts = [
        click.option("--json", "as_json", is_flag=True, help="Machine-readable output."),
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="Flat key = value config file."),
        click.option("--dump-config", is_flag=True, help="Print the effective configuration and exit."),
        click.option("--digits", type=int, default=None, help=f"Working precision (default 35 or ${DIGITS_ENV})."),
    ]
    for o in reversed(opts):
        fn = o(fn)
    return fn


def n_option(required=True):
    return click.option("--n", "n", type=click.IntRange(min=3), required=required, help="Polygon order N.")


def _setup(as_json, config_path, dump_config, **kw):
    cfg = build_config(config_path, **kw)
    if dump_config:
        click.echo(json.dumps(_num(asdict(cfg)), indent=2, sort_keys=True))
        raise click.exceptions.Exit(0)
    if cfg.N is None and "n" in kw:
        raise click.UsageError("Missing option '--n' (or N in the config file).")
    return cfg


# ---------------------------------------------------------------------------

@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="edgegeom")
def cli():
    """Edge geometry of regular polygons: families, webs, orbits and predictions."""


@cli.command()
@n_option(required=False)
@click.option("--normalization", type=click.Choice(["height_one", "side_one"]), default=None)
@common
def family(n, normalization, as_json, config_path, dump_config, digits):
    """First Family S[1..] of N."""
    from . import polygeom as pg
    cfg = _setup(as_json, config_path, dump_config, n=n, normalization=normalization, digits=digits)
    fam = pg.first_family(cfg.N, cfg.normalization, exact=False, digits=cfg.precision_digits)
    hN = float(fam.polygon.height)
    tiles = []
    for k, t in sorted(fam.tiles.items()):
        d = t.to_json()
        d["k"] = k
        d["h_over_hN"] = float(t.height) / hN
        d["scale"] = float(fam.scales[k])
        tiles.append(d)
    payload = {"N": cfg.N, "normalization": cfg.normalization, "tiles": tiles,
               "genscale": float(fam.genscale), "genstar": complex(fam.genstar)}
    if fam.M is not None:
        payload["hM_over_hN"] = float(fam.M.height) / hN
    payload["hD_over_hN"] = float(fam.D.height) / hN
    lines = [f"N={cfg.N} ({cfg.normalization})  GenScale={float(fam.genscale):.12g}"]
    for d in tiles:
        lines.append(f"  {d['label']:<12} sides={d['sides']:<3} h/hN={d['h_over_hN']:.10g}  "
                     f"center=({d['center'][0]:.10g}, {d['center'][1]:.10g})")
    emit(cfg, as_json, payload, lines)


@cli.command()
@n_option(required=False)
@click.option("--k", "k", type=int, default=None, help="Index of DS[k]; all when omitted.")
@click.option("--side", type=click.Choice(["left", "right"]), default="left")
@click.option("--normalization", type=click.Choice(["height_one", "side_one"]), default=None)
@common
def ds(n, k, side, normalization, as_json, config_path, dump_config, digits):
    """Next-generation DS[k] tiles on the edges of S[2]."""
    from . import polygeom as pg
    cfg = _setup(as_json, config_path, dump_config, n=n, normalization=normalization, digits=digits)
    N = cfg.N
    top = N // 2 - 2 if N % 2 == 0 else N - 2
    ks = [k] if k is not None else list(range(1, top + 1))
    out = []
    for j in ks:
        t = pg.ds_tile(N, j, exact=False, digits=cfg.precision_digits,
                       normalization=cfg.normalization, side=side)
        d = t.to_json()
        d["k"] = j
        out.append(d)
    emit(cfg, as_json, {"N": N, "side": side, "tiles": out},
         [f"DS[{d['k']}] sides={d['sides']} h={d['height']:.10g} center=({d['center'][0]:.10g}, "
          f"{d['center'][1]:.10g})" for d in out])


@cli.command()
@n_option(required=False)
@common
def predict(n, as_json, config_path, dump_config, digits):
    """DS[k] expected on the edges of S[2]."""
    from . import edgeanalysis as ea
    cfg = _setup(as_json, config_path, dump_config, n=n, digits=digits)
    rep = ea.predicted_ds(cfg.N)
    lines = [f"N={cfg.N} ({rep.family_class}): " + ", ".join(f"DS[{i}]" for i in rep.predicted_ds_indices)]
    lines += [f"  note: {s}" for s in rep.notes]
    emit(cfg, as_json, rep.to_json(), lines)


@cli.command()
@n_option(required=False)
@click.option("--role", type=click.Choice(["S", "DS"]), default="S")
@click.option("--k", "k", type=int, default=None)
@common
def mutations(n, role, k, as_json, config_path, dump_config, digits):
    """Predicted weaves of S[k] or DS[k]."""
    from . import edgeanalysis as ea
    cfg = _setup(as_json, config_path, dump_config, n=n, digits=digits)
    if k is not None:
        m = ea.mutation_spec(cfg.N, k, role)
        table = {k: m} if m else {}
    else:
        table = ea.mutation_table(cfg.N, role)
    payload = {"N": cfg.N, "role": role, "mutations": {str(j): m.to_json() for j, m in table.items()}}
    lines = [f"{role}[{j}]: k'={m.kprime} -> {m.component_count} x {m.component_sides}-gon, "
             f"base star[{m.base_star_index}], span {m.span}" + (" (lazy)" if m.lazy else "")
             for j, m in table.items()] or [f"no mutations predicted for {role} tiles of N={cfg.N}"]
    emit(cfg, as_json, payload, lines)


def _write_cloud(cfg, cloud, out, width, height, view):
    from . import webgen as wg
    fmt = (cfg.output_format or os.path.splitext(out)[1].lstrip(".") or "csv").lower()
    if fmt in ("pgm", "png"):
        rect = view or cfg.crop
        if rect is None:
            p = cloud.points
            rect = (p.real.min(), p.imag.min(), p.real.max() + 1e-12, p.imag.max() + 1e-12)
        wg.save(wg.rasterize(cloud, width, height, rect), out, fmt, provenance=cfg.provenance())
    else:
        wg.save(cloud, out, fmt, provenance=cfg.provenance())
    return fmt


@cli.command()
@n_option(required=False)
@click.option("--map", "map_kind", type=click.Choice(["dc", "tau", "tau_inverse"]), default="dc")
@click.option("--seeds", default="-2,-1", help="Seed interval a,b (Dc space).")
@click.option("--density", type=float, default=None)
@click.option("--depth", type=int, default=None)
@click.option("--closure", type=click.Choice(["none", "pm", "reflect", "both"]), default="none")
@click.option("--crop", default=None, help="x0,y0,x1,y1 kept after closure.")
@click.option("--axis-tol", type=float, default=0.0)
@click.option("--mp", is_flag=True, help="Iterate Dc in mpmath at --digits.")
@click.option("--workers", type=int, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "ngwb", "pgm", "png"]), default=None)
@click.option("--size", default="1000x1000", help="Raster size WxH.")
@common
def web(n, map_kind, seeds, density, depth, closure, crop, axis_tol, mp, workers, out, fmt, size,
        as_json, config_path, dump_config, digits):
    """Point-sampled web of Dc, tau or tau inverse."""
    from . import webgen as wg
    cfg = _setup(as_json, config_path, dump_config, n=n, density=density, depth=depth, crop=crop,
                 workers=workers, format=fmt, digits=digits)
    a, b = _pair(seeds, "--seeds")
    cloud = wg.web_points(cfg.N, map_kind, (a, b), cfg.density, cfg.depth, closure=closure,
                          digits=cfg.precision_digits if mp else None, axis_tol=axis_tol, workers=cfg.workers)
    raw, closed = cloud.seed_spec["raw"], len(cloud)
    if cfg.crop:
        cloud = wg.crop(cloud, cfg.crop)
    payload = {"N": cfg.N, "map": map_kind, "seeds": cloud.seed_spec.get("count"), "raw": raw,
               "unique": closed, "kept": len(cloud), "crop": cfg.crop}
    if out:
        w, h = _size(size)
        payload["file"] = out
        payload["format"] = _write_cloud(cfg, cloud, out, w, h, cfg.crop)
    emit(cfg, as_json, payload, [f"{k}: {v}" for k, v in payload.items()])


@cli.command()
@n_option(required=False)
@click.option("--seeds", required=True, help="Seed interval a,b on the Dc axis.")
@click.option("--step", type=float, default=1e-5, help="Seed spacing.")
@click.option("--depth", type=int, default=None)
@click.option("--rect", required=True, help="Window x0,y0,x1,y1 (Dc space).")
@click.option("--checkpoint", type=click.Path(dir_okay=False), default=None)
@click.option("--chunk", type=int, default=10 ** 6)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "ngwb", "pgm", "png"]), default=None)
@click.option("--size", default="1000x1000")
@common
def deepfield(n, seeds, step, depth, rect, checkpoint, chunk, out, fmt, size,
              as_json, config_path, dump_config, digits):
    """Long Dc orbits recorded inside a window, with checkpoint and resume."""
    from . import webgen as wg
    cfg = _setup(as_json, config_path, dump_config, n=n, depth=depth, crop=rect, format=fmt, digits=digits)
    a, b = _pair(seeds, "--seeds")
    xs = wg.seed_points((a, b), step)
    cloud = wg.deep_field(cfg.N, xs + 0j, cfg.depth, cfg.crop, chunk=chunk, checkpoint=checkpoint)
    payload = {"N": cfg.N, "seeds": int(xs.size), "depth": cfg.depth, "points": len(cloud), "rect": cfg.crop}
    if out:
        w, h = _size(size)
        payload["file"] = out
        payload["format"] = _write_cloud(cfg, cloud, out, w, h, cfg.crop)
    emit(cfg, as_json, payload, [f"{k}: {v}" for k, v in payload.items()])


def _point(x, y, space, N):
    from . import isomaps as im
    z = complex(x, y)
    return complex(im.tw_inverse(z, N)) if space == "dc" else z


@cli.command()
@n_option(required=False)
@click.option("--x", type=float, required=True)
@click.option("--y", type=float, required=True)
@click.option("--space", type=click.Choice(["tau", "dc"]), default="tau", help="Frame of the start point.")
@click.option("--steps", type=int, default=20)
@common
def orbit(n, x, y, space, steps, as_json, config_path, dump_config, digits):
    """Corner sequence (1-based vertex labels) and orbit points under tau."""
    from . import orbitlab as ol
    cfg = _setup(as_json, config_path, dump_config, n=n, digits=digits)
    p = _point(x, y, space, cfg.N)
    idx = ol.ind_fast(p, steps, cfg.N)
    pts = ol.pim(complex(p), idx, cfg.N)
    payload = {"N": cfg.N, "start": p, "indices": idx, "steps": ol.steps_of(idx, cfg.N),
               "points": [complex(z) for z in pts]}
    emit(cfg, as_json, payload, [f"IND: {idx}", f"steps: {payload['steps']}",
                                 f"end: {complex(pts[-1])}"])


@cli.command()
@n_option(required=False)
@click.option("--x", type=float, required=True)
@click.option("--y", type=float, required=True)
@click.option("--space", type=click.Choice(["tau", "dc"]), default="tau")
@click.option("--max-iter", type=int, default=10 ** 7)
@click.option("--mode", type=click.Choice(["double", "mp"]), default="double")
@click.option("--tile", is_flag=True, help="Also report the tile shape, centre and period doubling.")
@common
def period(n, x, y, space, max_iter, mode, tile, as_json, config_path, dump_config, digits):
    """tau-period of a point (exactly confirmed from vertex counts)."""
    import mpmath
    from . import orbitlab as ol
    cfg = _setup(as_json, config_path, dump_config, n=n, digits=digits)
    p = _point(x, y, space, cfg.N)
    if mode == "mp":
        with mpmath.workdps(cfg.precision_digits):
            rec = ol.period(mpmath.mpc(p), cfg.N, max_iter=max_iter, mode="mp", digits=cfg.precision_digits,
                            keep_indices=0)
    else:
        rec = ol.period(p, cfg.N, max_iter=max_iter, keep_indices=0)
    payload = rec.to_json()
    lines = [f"period: {rec.period} ({rec.termination}, exact_confirmed={rec.exact_confirmed})"]
    if tile and rec.period:
        t = ol.tile_from_point(p, cfg.N, max_iter=max(rec.period * 2 + 1, 10 ** 5))
        payload["tile"] = {"sides": t.sides, "center": t.center, "radius": t.radius,
                           "center_period": t.center_period, "period_doubling": t.doubling}
        lines.append(f"tile: {t.sides}-gon centre {t.center} radius {t.radius:.6g}, centre period "
                     f"{t.center_period}" + (" (period doubling)" if t.doubling else ""))
    emit(cfg, as_json, payload, lines)


@cli.command()
@n_option(required=False)
@click.option("--tile", "tile_name", default="S1", help="S<k>, D, M, DS<k> or one of gx, sxx (N = 11).")
@click.option("--quantity", type=click.Choice(["height", "mid"]), default="height")
@click.option("--relative-to", type=click.Choice(["N", "M"]), default="N")
@click.option("--generator", type=click.Choice(["default", "genscale", "genscale_half", "lambda"]),
              default="default")
@click.option("--side", type=click.Choice(["left", "right"]), default="left")
@common
def poly(n, tile_name, quantity, relative_to, generator, side, as_json, config_path, dump_config, digits):
    """Exact height or midpoint polynomial of a tile in a generator of the scaling field.

    Heights use hN = 1; midpoints use sN = 1 with star[1] of N at the origin.
    """
    from . import exactfield as ef
    from . import orbitlab as ol
    from . import polygeom as pg
    cfg = _setup(as_json, config_path, dump_config, n=n, digits=digits)
    N = cfg.N
    tag = None if generator == "default" else generator
    name = tile_name.strip()
    if name.lower() in ("gx", "sxx"):
        if N != 11:
            raise click.BadParameter("gx and sxx are defined for N = 11", param_hint="'--tile'")
        w = ol.gx_walkthrough(digits=cfg.precision_digits)
        val = w.hGx if name.lower() == "gx" else w.hSxx
        if quantity != "height":
            raise click.BadParameter("only heights are available for gx and sxx", param_hint="'--quantity'")
        tag = tag or "genscale"
    else:
        norm = "side_one" if quantity == "mid" else "height_one"
        fam = pg.first_family(N, normalization=norm)
        if name.upper().startswith("DS"):
            t = pg.ds_tile(N, int(name[2:]), normalization=norm, side=side)
        elif name.upper() == "D":
            t = fam.D
        elif name.upper() == "M":
            t = fam.M
        elif name.upper().startswith("S"):
            t = fam.S(int(name[1:]))
        else:
            raise click.BadParameter(f"unknown tile {name!r}", param_hint="'--tile'")
        if quantity == "height":
            val = t.height
            if relative_to == "M":
                val = val / pg.first_family(N).M.height
        else:
            val = pg.re(t.base_midpoint)
    sp = ef.to_generator_basis(val, tag, N)
    payload = {"N": N, "tile": name, "quantity": quantity, **sp.to_json(), "value": float(val)}
    terms = " + ".join(f"({c})x^{i}" for i, c in enumerate(sp.coeffs) if c != 0) or "0"
    emit(cfg, as_json, payload, [f"x = {sp.label}", f"{terms}  ~ {float(val):.15g}"])


@cli.command()
@n_option(required=False)
@click.option("--depth", type=int, default=None)
@click.option("--recipe", type=click.Choice(["default", "d_chain", "m_chain", "s1_chain", "s2_chain",
                                             "genstar_combined", "embedded_half"]), default="default")
@click.option("--max-iter", type=int, default=10 ** 8)
@common
def chain(n, depth, recipe, max_iter, as_json, config_path, dump_config, digits):
    """Periods of the centres along a generation chain."""
    from . import orbitlab as ol
    cfg = _setup(as_json, config_path, dump_config, n=n, depth=depth if depth is not None else 4, digits=digits)
    r = None if recipe == "default" else recipe
    rows = ol.chain_periods(cfg.N, cfg.depth, r, max_iter=max_iter)
    payload = {"N": cfg.N, "recipe": r or ol.default_recipe(cfg.N), "rows": rows}
    emit(cfg, as_json, payload, [f"k={row['k']}: {row['period']}"
                                 + (f" = {' + '.join(map(str, row['parts']))}" if len(row["parts"]) > 1 else "")
                                 + ("" if row["exact_confirmed"] else " (unconfirmed)") for row in rows])


@cli.command()
@click.option("--temporal", type=float, default=None)
@click.option("--scale", "geo", default=None, help="Geometric scale (number or genscale:N).")
@click.option("--n", "n", type=click.IntRange(min=3), default=None, help="8k+2 form for this N.")
@click.option("--quadratic", is_flag=True, help="Dimensions of the quadratic polygons 5, 8, 12.")
@common
def dimension(temporal, geo, n, quadratic, as_json, config_path, dump_config, digits):
    """Similarity dimension ln(temporal)/ln(1/scale)."""
    from . import edgeanalysis as ea
    from . import exactfield as ef
    cfg = _setup(as_json, config_path, dump_config, digits=digits)
    if quadratic:
        q = ea.quadratic_dimensions()
        emit(cfg, as_json, {"quadratic": q}, [f"N={k}: {v:.6f}" for k, v in q.items()])
        return
    if n is not None:
        d = ea.dimension_8k2(n)
        emit(cfg, as_json, {"N": n, "dimension": d}, [f"{d:.6f}"])
        return
    if temporal is None or geo is None:
        raise click.UsageError("give --temporal and --scale, or --n, or --quadratic")
    if str(geo).startswith("genscale:"):
        s = float(ef.genscale(int(geo.split(":")[1])))
    else:
        s = float(geo)
    d = ea.fractal_dimension(temporal, s)
    emit(cfg, as_json, {"temporal": temporal, "scale": s, "dimension": d}, [f"{d:.6f}"])


@cli.command()
@click.option("--filter", "flt", default=None, help="Tag or criterion id, e.g. 'dimensions' or A7.")
@click.option("--ids", default=None, help="Comma-separated criterion ids.")
@click.option("--stretch", is_flag=True, help="Include the stretch criterion A12.")
@click.option("--report", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here.")
@common
def verify(flt, ids, stretch, report, as_json, config_path, dump_config, digits):
    """Replay the acceptance suite."""
    from . import verify as vf
    cfg = _setup(as_json, config_path, dump_config, digits=digits)
    wanted = [s.strip().upper() for s in ids.split(",")] if ids else None
    progress = None if as_json else (lambda r: click.echo(r.line()))
    results = vf.verify_suite(wanted, flt, stretch, progress)
    if not results:
        raise click.UsageError("no criteria match the selection")
    data = {"results": [r.to_json() for r in results], "passed": sum(r.passed for r in results),
            "total": len(results)}
    if report:
        try:
            with open(report, "w") as fh:
                json.dump(dict(data, provenance=cfg.provenance()), fh, indent=2, sort_keys=True, default=str)
        except OSError as e:
            raise EdgeGeomError(str(e))
    if as_json:
        emit(cfg, True, data, [])
    else:
        for r in results:
            for note in r.notes:
                click.echo(f"  {r.id}: {note}")
        click.echo(f"{data['passed']}/{data['total']} criteria pass")
    if data["passed"] != data["total"]:
        raise click.exceptions.Exit(1)


def _pair(text, hint):
    try:
        a, b = (float(v) for v in text.split(","))
    except ValueError:
        raise click.BadParameter("expected a,b", param_hint=f"'{hint}'")
    return a, b


def _size(text):
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise click.BadParameter("expected WxH", param_hint="'--size'")
    return w, h


def main(argv=None):
    """Entry point returning the exit code (0 ok, 1 domain error, 2 usage error)."""
    try:
        rv = cli.main(args=argv, prog_name="edgegeom", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.UsageError as e:
        e.show()
        return 2
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except (EdgeGeomError, ValueError, ArithmeticError, MemoryError) as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
