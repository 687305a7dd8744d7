import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from motivic.errors import PoleError
from motivic.laurent import L, ONE, ZERO, LaurentPoly

from conftest import laurent_polys


def P(text):
    return LaurentPoly.parse(text)


def test_difference_of_squares():
    assert (1 + L) * (1 - L) == 1 - L**2
    assert ((1 + L) * (1 - L)).terms == {0: 1, 2: -1}


def test_monomial_inverse():
    assert L**3 * L**-3 == ONE


def test_sub_matches_termwise_expansion():
    # (1 + L + L^2) - L(1 + L): expand termwise by hand: {0:1,1:1,2:1} - {1:1,2:1} = {0:1}
    assert (LaurentPoly.geometric(3) - L * (1 + L)).terms == {0: 1}


def test_canonical_form_drops_zeros():
    p = LaurentPoly({0: 0, 3: 2, -1: 0})
    assert p.terms == {3: 2}
    assert LaurentPoly({1: 1, 2: 0}) == L
    assert (L - L).terms == {}
    assert ZERO.is_zero()


def test_big_coefficients_do_not_overflow():
    p = (1 + L) ** 200
    assert p.coefficient(100) == math.comb(200, 100)
    assert p.substitute(1) == 2**200


@pytest.mark.parametrize("src, expected", [
    (L, {-1: 1}),
    (ONE, {0: 1}),
    (LaurentPoly.geometric(3), {0: 1, -1: 1, -2: 1}),
])
def test_dual(src, expected):
    assert src.dual().terms == expected


@pytest.mark.parametrize("poly, value, expected", [
    (LaurentPoly.geometric(3), 4, 21),
    (1 + L, 1, 2),
    (L - 1, 1, 0),
    (L**-2 + 3, Fraction(1, 2), 7),
])
def test_substitute(poly, value, expected):
    assert poly.substitute(value) == expected


def test_substitute_oracle_projective_plane_over_f4():
    q = 4
    assert LaurentPoly.geometric(3).substitute(q) == (q**3 - 1) // (q - 1)


def test_substitute_zero_into_pole():
    with pytest.raises(PoleError):
        (L**-1 + 1).substitute(0)
    assert (1 + L).substitute(0) == 1


def test_substitute_rejects_floats():
    with pytest.raises(TypeError):
        L.substitute(0.5)


@pytest.mark.parametrize("poly, text", [
    (L**-2 + 3 + 2 * L, "L^-2 + 3 + 2*L"),
    (1 - L, "1 - L"),
    (-1 + L**2, "-1 + L^2"),
    (-L, "-L"),
    (ZERO, "0"),
    (LaurentPoly.geometric(3).dual(), "L^-2 + L^-1 + 1"),
    (-3 * L**-1, "-3*L^-1"),
])
def test_render(poly, text):
    assert str(poly) == text
    assert LaurentPoly.parse(text) == poly


def test_render_latex():
    assert (L**-2 + 2 * L).render("latex") == r"\mathbb{L}^{-2} + 2\mathbb{L}"


@given(laurent_polys, laurent_polys, laurent_polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(laurent_polys, laurent_polys)
def test_dual_is_involutive_ring_hom(a, b):
    assert a.dual().dual() == a
    assert (a * b).dual() == a.dual() * b.dual()
    assert (a + b).dual() == a.dual() + b.dual()


@given(laurent_polys, laurent_polys, st.fractions().filter(lambda v: v != 0))
def test_substitute_is_multiplicative(a, b, v):
    assert (a * b).substitute(v) == a.substitute(v) * b.substitute(v)


@given(laurent_polys)
def test_render_parses_back(a):
    assert LaurentPoly.parse(str(a)) == a


@given(laurent_polys)
def test_hash_consistent_with_eq(a):
    b = LaurentPoly(dict(reversed(list(a.terms.items()))))
    assert a == b and hash(a) == hash(b)
