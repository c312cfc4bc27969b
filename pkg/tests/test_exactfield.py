from fractions import Fraction
import json
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from edgegeom import exactfield as ef
from edgegeom.errors import DivisionByZero, NotInSubfield

CONDUCTORS = [20, 28, 36, 44, 56]

small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def elements(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    nums = draw(st.lists(st.integers(-6, 6), min_size=m, max_size=m))
    den = draw(st.integers(1, 5))
    return ef.FieldElement(m, nums, den)


@st.composite
def triples(draw):
    m = draw(st.sampled_from(CONDUCTORS))
    return draw(elements(m)), draw(elements(m)), draw(elements(m))


@given(triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ef.rational(0, a.conductor)


@given(elements())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(DivisionByZero):
            a.inverse()
    else:
        assert a * a.inverse() == ef.rational(1, a.conductor)


@given(triples())
def test_embedding_is_a_homomorphism(abc):
    a, b, _ = abc
    digits = 30
    with mpmath.workdps(digits):
        lhs = (a * b).embed(digits)
        rhs = a.embed(digits) * b.embed(digits)
        assert abs(lhs - rhs) < mpmath.mpf(10) ** (-(digits - 3)) * (1 + abs(rhs))


def test_canonical_form_is_unique():
    # zeta^m = 1 and the cyclotomic relation both reduce to the same element
    z = ef.FieldElement.zeta(20)
    assert z ** 20 == ef.rational(1, 20)
    assert hash(z ** 21) == hash(z)
    phi = ef.cyclotomic_poly(20)
    total = sum((z ** k * c for k, c in enumerate(phi)), ef.rational(0, 20))
    assert total.is_zero()


@pytest.mark.parametrize("N", range(3, 26))
def test_primitive_scale_count(N):
    assert len(ef.primitive_scales(N)) == ef.euler_phi(N) // 2
    assert ef.subfield_rank(N) == ef.euler_phi(N) // 2


def test_genscale_values():
    assert ef.genscale(5) * ef.genscale(5) == ef.genscale(5) * (-4) + 1
    assert abs(float(ef.genscale(5)) - (math.sqrt(5) - 2)) < 1e-14
    assert abs(float(ef.genscale(8)) - math.tan(math.pi / 8) ** 2) < 1e-14
    assert abs(float(ef.genscale(7)) - math.tan(math.pi / 7) * math.tan(math.pi / 14)) < 1e-14


@pytest.mark.parametrize("N", [5, 7, 8, 9, 11, 12, 14, 22])
def test_minimal_polynomial_vanishes(N):
    tag = ef.default_generator_tag(N)
    coeffs = ef.minimal_polynomial(tag, N)
    g, _ = ef.generator(tag, N)
    total = ef.rational(0, g.conductor)
    for k, c in enumerate(coeffs):
        total = total + g ** k * c
    assert total.is_zero()
    assert len(coeffs) - 1 == ef.subfield_rank(N)


def test_minimal_polynomial_genscale8():
    # x^2 = 6x - 1
    assert ef.minimal_polynomial("genscale", 8) == (1, -6, 1)


@pytest.mark.parametrize("N", [7, 11, 22])
def test_generator_basis_roundtrip(N):
    for k in range(1, (N + 1) // 2):
        e = ef.scale(N, k)
        poly = ef.to_generator_basis(e, N=N)
        assert poly.evaluate() == e.lift(poly.evaluate().conductor) or poly.evaluate() == e
        back = ef.SubfieldPolynomial.from_json(json.loads(json.dumps(poly.to_json())), N=N)
        assert back == poly


def test_generator_basis_rejects_nonreal():
    with pytest.raises(NotInSubfield):
        ef.to_generator_basis(ef.FieldElement.zeta(44), N=11)


@given(small_q, small_q)
def test_rational_order(p, q):
    a, b = ef.rational(p, 28), ef.rational(q, 28)
    assert (a < b) == (p < q)
    assert (a - b).sign() == (p > q) - (p < q)
