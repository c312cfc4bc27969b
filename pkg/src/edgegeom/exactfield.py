"""Exact arithmetic in the cyclotomic field Q(zeta_m), m = 4N.

Elements are stored as integer numerators over one positive common
denominator, in the power basis 1, z, z^2, ... reduced modulo the m-th
cyclotomic polynomial.  Everything geometric in the package (tan values,
polygon vertices, tile heights) is built from these elements.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
import threading

import mpmath

from .errors import DivisionByZero, NotInSubfield, PoleError

DEFAULT_DIGITS = 35

_lock = threading.Lock()


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, lowest degree first)

def _poly_divexact(a, b):
    """Exact quotient of integer polynomials, b monic."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m):
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return tuple(num)


def euler_phi(n):
    result, p, k = n, 2, n
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


@lru_cache(maxsize=None)
def _power_table(m, top):
    """Rows x^e mod Phi_m for e in [0, top]."""
    phi = cyclotomic_poly(m)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(top + 1):
        rows.append(tuple(cur))
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for j in range(d):
                cur[j] -= lead * phi[j]
    return tuple(rows)


def _reduce(coeffs, m):
    d = euler_phi(m)
    if len(coeffs) <= d:
        return list(coeffs) + [0] * (d - len(coeffs))
    table = _power_table(m, len(coeffs) - 1)
    out = list(coeffs[:d])
    for e in range(d, len(coeffs)):
        c = coeffs[e]
        if c:
            row = table[e]
            for j in range(d):
                if row[j]:
                    out[j] += c * row[j]
    return out


def _lcm(a, b):
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------

class FieldElement:
    """Immutable element of Q(zeta_conductor)."""

    __slots__ = ("conductor", "_num", "_den", "_real")

    def __init__(self, conductor, numerators, denominator=1):
        d = euler_phi(conductor)
        nums = _reduce(list(numerators), conductor)
        if len(nums) != d:
            raise ValueError("wrong coefficient count")
        if denominator == 0:
            raise DivisionByZero("zero denominator")
        if denominator < 0:
            nums = [-c for c in nums]
            denominator = -denominator
        g = denominator
        for c in nums:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if g > 1:
            nums = [c // g for c in nums]
            denominator //= g
        if not any(nums):
            denominator = 1
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "_num", tuple(nums))
        object.__setattr__(self, "_den", denominator)
        object.__setattr__(self, "_real", None)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rational(cls, value, conductor):
        value = Fraction(value)
        return cls(conductor, [value.numerator], value.denominator)

    @classmethod
    def from_coeffs(cls, coeffs, conductor):
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(conductor, [int(c * den) for c in fr], den)

    @classmethod
    def zeta(cls, conductor, power=1):
        power %= conductor
        nums = [0] * (power + 1)
        nums[power] = 1
        return cls(conductor, nums)

    # -- representation -----------------------------------------------------
    @property
    def coeffs(self):
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self):
        return self._num

    @property
    def denominator(self):
        return self._den

    def is_zero(self):
        return not any(self._num)

    def rational_value(self):
        """The element as a Fraction, or None when it is irrational."""
        if any(self._num[1:]):
            return None
        return Fraction(self._num[0], self._den)

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"FieldElement(m={self.conductor}: {' + '.join(terms) or '0'})"

    def __hash__(self):
        # equal elements of different conductors hash equal only after lifting
        return hash((self.conductor, self._num, self._den))

    # -- lifting ------------------------------------------------------------
    def lift(self, conductor):
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"Q(zeta_{self.conductor}) does not embed in Q(zeta_{conductor})")
        step = conductor // self.conductor
        spread = [0] * ((len(self._num) - 1) * step + 1)
        for i, c in enumerate(self._num):
            spread[i * step] = c
        return FieldElement(conductor, spread, self._den)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.conductor == self.conductor:
                return self, other
            m = _lcm(self.conductor, other.conductor)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, FieldElement.from_rational(other, self.conductor)
        return NotImplemented, NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        den = a._den * b._den // gcd(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return FieldElement(a.conductor, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.conductor, [-c for c in self._num], self._den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FieldElement(self.conductor, [c * other.numerator for c in self._num],
                                self._den * other.denominator)
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        an, bn = a._num, b._num
        prod = [0] * (len(an) + len(bn) - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(a.conductor, prod, a._den * b._den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # extended Euclid over Q[x]: find u with self*u = 1 mod Phi
        m = self.conductor
        r0 = [Fraction(c) for c in cyclotomic_poly(m)]
        r1 = [Fraction(c, self._den) for c in self._num]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        _trim(r1)
        while not (len(r1) == 1):
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
            if not any(r1):
                raise DivisionByZero("element shares a factor with the modulus")
        inv = [c / r1[0] for c in s1]
        return FieldElement.from_coeffs(inv, m)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement.from_rational(1, self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self):
        m = self.conductor
        nums = [0] * m
        for i, c in enumerate(self._num):
            nums[(-i) % m] += c
        return FieldElement(m, nums, self._den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rational_value() == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        a, b = self._coerce(other)
        return a._num == b._num and a._den == b._den

    # -- real structure -----------------------------------------------------
    def is_real(self):
        if self._real is None:
            object.__setattr__(self, "_real", self.conj() == self)
        return self._real

    def real_part(self):
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self):
        i = imag_unit(self.conductor) if self.conductor % 4 == 0 else imag_unit(_lcm(self.conductor, 4))
        return (self - self.conj()) / (i * 2)

    def embed(self, digits=DEFAULT_DIGITS):
        """Numeric value under z -> exp(2 pi i / m); mpf when real, else mpc."""
        zs = _zeta_powers(self.conductor, digits)
        with mpmath.workdps(digits + 10):
            total = mpmath.fsum(mpmath.mpf(c) * zs[i] for i, c in enumerate(self._num) if c)
            total = total / self._den
            return mpmath.re(total) if self.is_real() else total

    def __float__(self):
        return float(mpmath.re(self.embed(20)))

    def __complex__(self):
        return complex(self.embed(20))

    def sign(self):
        """Exact sign of a real element (-1, 0, 1)."""
        if self.is_zero():
            return 0
        if not self.is_real():
            raise ValueError("sign of a non-real element")
        size = sum(abs(c) for c in self._num) / self._den
        digits = 30
        while True:
            v = self.embed(digits)
            bound = mpmath.mpf(size + 1) * mpmath.mpf(10) ** (-digits)
            if abs(v) > bound:
                return 1 if v > 0 else -1
            digits *= 2

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _polydivmod(a, b):
    a = list(a)
    _trim(a)
    b = _trim(list(b))
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for j in range(len(b)):
            a[k + j] -= c * b[j]
        a.pop()
        _trim(a)
    return q, _trim(a)


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _polysub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(c) for c in out])


_zeta_cache = {}


def _zeta_powers(m, digits):
    key = (m, digits)
    cached = _zeta_cache.get(key)
    if cached is None:
        with _lock:
            cached = _zeta_cache.get(key)
            if cached is None:
                with mpmath.workdps(digits + 20):
                    cached = tuple(mpmath.expjpi(mpmath.mpf(2 * k) / m) for k in range(euler_phi(m)))
                _zeta_cache[key] = cached
    return cached


# ---------------------------------------------------------------------------
# constructors

def rational(value, conductor):
    return FieldElement.from_rational(value, conductor)


def imag_unit(conductor):
    if conductor % 4:
        raise ValueError("i needs a conductor divisible by 4")
    return FieldElement.zeta(conductor, conductor // 4)


def expi_pi(q, conductor):
    """exp(i*pi*q) for rational q, as an element of Q(zeta_conductor)."""
    q = Fraction(q)
    e = q * conductor / 2
    if e.denominator != 1:
        raise ValueError(f"exp(i pi {q}) is not in Q(zeta_{conductor})")
    return FieldElement.zeta(conductor, int(e))


def cos_pi(q, conductor):
    return expi_pi(q, conductor).real_part()


def sin_pi(q, conductor):
    return expi_pi(q, conductor).imag_part()


def tan_exact(k, n, conductor=None):
    """tan(k*pi/n) exactly; the default conductor is 4n."""
    if n < 1:
        raise ValueError("n must be positive")
    q = Fraction(k, n)
    if (q - Fraction(1, 2)).denominator == 1:
        raise PoleError(f"tan({k}pi/{n}) is a pole")
    m = conductor or 4 * n
    w = expi_pi(q, m)
    wi = w.conj()
    return (w - wi) / ((w + wi) * imag_unit(m))


def cot_exact(k, n, conductor=None):
    return 1 / tan_exact(k, n, conductor)


def lambda_n(N, conductor=None):
    """2 cos(2 pi / N)."""
    m = conductor or 4 * N
    return cos_pi(Fraction(2, N), m) * 2


def genscale(N, conductor=None):
    """Generation scale: tan^2(pi/N) for N even, tan(pi/N)tan(pi/2N) for N odd."""
    m = conductor or 4 * N
    if N % 2 == 0:
        t = tan_exact(1, N, m)
        return t * t
    return tan_exact(1, N, m) * tan_exact(1, 2 * N, m)


def scale(N, k, conductor=None):
    m = conductor or 4 * N
    return tan_exact(1, N, m) / tan_exact(k, N, m)


def embed(e, digits=DEFAULT_DIGITS):
    if isinstance(e, FieldElement):
        return e.embed(digits)
    with mpmath.workdps(digits):
        return +mpmath.mpf(Fraction(e).numerator) / Fraction(e).denominator


def field_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# generators and change of basis

def default_generator_tag(N):
    return "genscale_half" if N % 4 == 2 else "genscale"


def generator(tag, N):
    """Return (element, label) for a generator tag.

    Tags: 'genscale' (GenScale[N]), 'genscale_half' (GenScale[N/2], N even),
    'lambda' (2cos(2pi/N)), or None for the default choice per parity.
    """
    tag = tag or default_generator_tag(N)
    if tag == "genscale":
        return genscale(N), f"GenScale[{N}]"
    if tag == "genscale_half":
        if N % 2:
            raise ValueError("GenScale[N/2] needs N even")
        return genscale(N // 2, 4 * N), f"GenScale[{N // 2}]"
    if tag == "lambda":
        return lambda_n(N), f"lambda[{N}]"
    raise ValueError(f"unknown generator tag {tag!r}")


def subfield_rank(N):
    return max(1, euler_phi(N) // 2)


def _solve_exact(columns, target):
    """Solve sum_j x_j columns[j] = target over Q; None when inconsistent."""
    n = len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])]
            for i in range(len(target))]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][n] != 0 for i in range(r, len(rows))):
        return None
    if len(piv_cols) < n:
        raise ArithmeticError("generator powers are linearly dependent")
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][n]
    return x


def rank_over_q(elements):
    """Dimension of the Q-span of a list of field elements."""
    m = 1
    for e in elements:
        m = _lcm(m, e.conductor)
    vecs = [list(e.lift(m).coeffs) for e in elements]
    rank = 0
    rows = [list(v) for v in vecs]
    ncol = euler_phi(m)
    for c in range(ncol):
        p = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SubfieldPolynomial:
    generator_tag: str
    N: int
    coeffs: tuple

    @property
    def degree_bound(self):
        return subfield_rank(self.N)

    @property
    def label(self):
        return generator(self.generator_tag, self.N)[1]

    def evaluate(self):
        g, _ = generator(self.generator_tag, self.N)
        total = FieldElement.from_rational(0, g.conductor)
        power = FieldElement.from_rational(1, g.conductor)
        for c in self.coeffs:
            total = total + power * c
            power = power * g
        return total

    def to_json(self):
        return {"generator": self.label, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, N=None):
        label = data["generator"]
        inner = label[label.index("[") + 1:label.index("]")]
        if label.startswith("GenScale"):
            if N is not None and int(inner) * 2 == N and N % 4 == 2:
                tag, n = "genscale_half", N
            else:
                tag, n = "genscale", int(inner)
        elif label.startswith("lambda"):
            tag, n = "lambda", int(inner)
        else:
            raise ValueError(f"unknown generator label {label!r}")
        return cls(tag, N or n, tuple(Fraction(c) for c in data["coeffs"]))


def _basis_columns(tag, N, conductor, count):
    g, _ = generator(tag, N)
    m = _lcm(g.conductor, conductor)
    g = g.lift(m)
    cols = []
    p = FieldElement.from_rational(1, m)
    for _ in range(count):
        cols.append(p.coeffs)
        p = p * g
    return cols, p, m


def to_generator_basis(e, generator_tag=None, N=None):
    """Write a real element as a polynomial of degree < phi(N)/2 in the generator."""
    if N is None:
        raise ValueError("N is required")
    tag = generator_tag or default_generator_tag(N)
    if not e.is_real():
        raise NotInSubfield("element is not real")
    d = subfield_rank(N)
    cols, _, m = _basis_columns(tag, N, e.conductor, d)
    sol = _solve_exact(cols, e.lift(m).coeffs)
    if sol is None:
        raise NotInSubfield("element is not in the span of the generator powers")
    while len(sol) > 1 and sol[-1] == 0:
        sol.pop()
    return SubfieldPolynomial(tag, N, tuple(sol))


def minimal_polynomial(generator_tag, N):
    """Monic minimal polynomial of the generator, coefficients lowest degree first."""
    tag = generator_tag or default_generator_tag(N)
    d = subfield_rank(N)
    cols, top, m = _basis_columns(tag, N, 4, d)
    sol = _solve_exact(cols, top.coeffs)
    if sol is None:
        raise ArithmeticError("generator degree exceeds the subfield rank")
    return tuple([-c for c in sol] + [Fraction(1)])


def primitive_scale_indices(N):
    return [k for k in range(1, (N + 1) // 2) if gcd(k, N) == 1]


def primitive_scales(N):
    return [scale(N, k) for k in primitive_scale_indices(N)]
