"""Prediction layer: local web steps, Edge Conjecture DS[k] lists, mutation
forecasts, effective star points, recurrences and fractal dimensions."""

from dataclasses import dataclass, field, asdict
from math import gcd, log

import numpy as np

from . import exactfield as ef
from .errors import DomainError, IndexOutOfRange, TooShort


def _check_k(N, k, role):
    if N < 3:
        raise IndexOutOfRange("N must be at least 3")
    top = (N + 1) // 2 - 1 if role.startswith("S") else (N - 1 if N % 2 else N // 2 - 1)
    if not 1 <= k <= top:
        raise IndexOutOfRange(f"{role}[{k}] is not defined for N={N}")


def kprime(N, k, role="S"):
    """Web step of the local family of S[k] or DS[k].

    role is 'S', 'DS' (or the explicit 'S_even' / 'S_odd').
    """
    role = "S" if role in ("S_even", "S_odd") else role
    _check_k(N, k, role)
    if role == "S":
        return N // 2 - k if N % 2 == 0 else N - 2 * k
    if role == "DS":
        return N // 2 - k if N % 2 == 0 else N - k
    raise ValueError(f"unknown role {role!r}")


def retrograde_step(N, k):
    _check_k(N, k, "S")
    return k + 1 if N % 2 == 0 else 2 * k + 2


# ---------------------------------------------------------------------------
# Edge Conjecture

_CLASS_NOTES = {
    1: "8k+1: a volunteer DS[2] is expected (conjectural, not a guaranteed tile)",
    4: "8k+4: S[2] is the weave of two N/4-gons; DS[4] parents P_x follow one of two mod-16 branches",
    5: "8k+5: DS[1] is predicted",
    7: "8k+7: volunteer DS[1] tiles are expected to pair with DS[3] (conjectural)",
}


@dataclass
class PredictionReport:
    N: int
    family_class: str
    predicted_ds_indices: list
    s1_alias: int
    step: int
    notes: list = field(default_factory=list)

    def to_json(self):
        return asdict(self)


def predicted_ds(N):
    """DS[k] expected on the edges of S[2], counting down from the S[1] alias."""
    if N < 5:
        raise IndexOutOfRange("predictions need N >= 5")
    if N % 2 == 0:
        anchor, step = N // 2 - 2, 4
    else:
        anchor, step = N - 4, 8
    seq = list(range(anchor, 0, -step))
    r = N % 8
    notes = [f"S[1] acts as DS[{anchor}]"]
    if r in _CLASS_NOTES:
        notes.append(_CLASS_NOTES[r])
    return PredictionReport(N, f"8k+{r}", seq, anchor, step, notes)


# ---------------------------------------------------------------------------
# mutations

@dataclass
class MutationSpec:
    N: int
    k: int
    role: str
    kprime: int
    component_count: int
    component_sides: int
    base_star_index: int
    span: int
    lazy: bool = False

    def to_json(self):
        return asdict(self)


def mutation_spec(N, k, role="S", kp=None):
    """Predicted mutation of S[k] or DS[k], or None when the tile is intact.

    The underlying polygon has n = N/2 (N twice-odd), N (N twice-even) or
    2N (N odd) sides.  The tile mutates when g = gcd(n, k') exceeds 1 (n = N/2)
    or 2 (otherwise), into two n/g-gons spanning g star points.  kp
    overrides k' (for effective steps of secondary tiles).
    """
    k1 = kprime(N, k, role) if kp is None else kp
    if N % 4 == 2:
        n, thresh, top = N // 2, 1, N // 2 - 1
    elif N % 2 == 0:
        n, thresh, top = N, 2, N // 2 - 1
    else:
        n, thresh, top = 2 * N, 2, N - 2
    g = gcd(n, k1)
    if g <= thresh:
        return None
    base = top
    while base - k1 > 0:
        base -= k1
    sides = n // g
    return MutationSpec(N, k, role, k1, 2, sides, base, g, lazy=sides <= 2)


def mutation_table(N, role="S"):
    top = (N + 1) // 2 - 1 if role == "S" else (N - 1 if N % 2 else N // 2 - 1)
    out = {}
    for k in range(1, top + 1):
        m = mutation_spec(N, k, role)
        if m is not None:
            out[k] = m
    return out


# ---------------------------------------------------------------------------
# effective star points

def effective_stars(N, tile="S1"):
    if N < 5:
        raise IndexOutOfRange("needs N >= 5")
    if tile == "S1":
        start, step = (N // 2 - 1, 2) if N % 2 == 0 else (N - 2, 4)
    elif tile == "S2":
        start, step = (N // 2 - 2, 4) if N % 2 == 0 else (N - 4, 8)
    else:
        raise ValueError("tile must be 'S1' or 'S2'")
    return list(range(start, 0, -step))


# ---------------------------------------------------------------------------
# temporal scaling

# N = 10: decagons d and pentagons p per generation, d' = 3d + 2p, p' = 6d + 2p
N10_TRANSITION = ((3, 2), (6, 2))
N10_INIT = (1, 1)


def linear_recurrence(transition, init, n):
    """First n terms of v_{j+1} = A v_j, as a list of integer tuples."""
    (a, b), (c, d) = transition
    x, y = init
    out = [(x, y)]
    for _ in range(n - 1):
        x, y = a * x + b * y, c * x + d * y
        out.append((x, y))
    return out


def dominant_ratio(transition):
    """Largest eigenvalue; returned as an int when it is one."""
    (a, b), (c, d) = transition
    tr, det = a + d, a * d - b * c
    disc = tr * tr - 4 * det
    if disc >= 0:
        r = int(np.sqrt(disc))
        for s in (r - 1, r, r + 1):
            if s >= 0 and s * s == disc and (tr + s) % 2 == 0:
                return (tr + s) // 2
    return float(max(np.linalg.eigvals(np.array(transition, dtype=float)).real))


def collapsed_recurrence(transition):
    """(c1, c2) with d_n = c1 d_{n-1} + c2 d_{n-2} (Cayley-Hamilton)."""
    (a, b), (c, d) = transition
    return a + d, -(a * d - b * c)


def temporal_estimate(periods):
    if len(periods) < 2:
        raise TooShort("need at least two periods")
    ratios = [b / a for a, b in zip(periods, periods[1:])]
    return ratios, ratios[-1]


# ---------------------------------------------------------------------------
# fractal dimension

def fractal_dimension(temporal, geometric_scale):
    temporal = float(temporal)
    s = float(geometric_scale)
    if not 0 < s < 1:
        raise DomainError("geometric scale must lie in (0, 1)")
    if temporal <= 1:
        raise DomainError("temporal scale must exceed 1")
    return log(temporal) / log(1 / s)


def dimension_8k2(N):
    """log(N/2 + 1) / log(1/GenScale[N/2]) for N = 8k+2."""
    if N % 8 != 2 or N < 10:
        raise DomainError("formula applies to N = 8k+2")
    return fractal_dimension(N // 2 + 1, float(ef.genscale(N // 2)))


# temporal scales of the quadratic polygons (successive generation ratios)
QUADRATIC_TEMPORAL = {5: 6, 8: 9, 12: 27}


def quadratic_dimensions():
    return {N: fractal_dimension(T, float(ef.genscale(N))) for N, T in QUADRATIC_TEMPORAL.items()}
