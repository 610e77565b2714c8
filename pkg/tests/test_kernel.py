import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tritile.kernel import (
    MixedFieldError,
    QuadVal,
    format_length,
    heron_area_sq,
    heron_area_sq_from_squares,
    parse_length_sq,
    parse_rational,
    quad_sign,
    rat_is_square,
    squarefree_part,
)

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) <= 1000)
SQUAREFREE = [2, 3, 5, 6, 7, 10, 11, 13, 15, 30]


@st.composite
def quadvals(draw, d=None):
    d = d or draw(st.sampled_from(SQUAREFREE))
    return QuadVal(draw(fractions), draw(fractions), d)


@st.composite
def same_field(draw, k=3):
    d = draw(st.sampled_from(SQUAREFREE))
    return [draw(quadvals(d)) for _ in range(k)]


def test_parse_rational_canonical():
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational("-0/7") == 0
    assert parse_rational(" 5 ") == 5
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("1.5")


@pytest.mark.parametrize("q,root", [(Fraction(4, 9), Fraction(2, 3)), (6, None), (1225, 35), (0, 0), (-4, None)])
def test_rat_is_square_examples(q, root):
    assert rat_is_square(q) == root


@pytest.mark.parametrize("n,expected", [(48, (3, 4)), (1, (1, 1)), (675, (3, 15))])
def test_squarefree_part_examples(n, expected):
    assert squarefree_part(n) == expected


def test_squarefree_part_sweep():
    # oracle: trial division
    for n in range(1, 20001):
        s, f = squarefree_part(n)
        assert s * f * f == n
        assert all(s % (p * p) for p in range(2, int(s**0.5) + 1))


@pytest.mark.parametrize(
    "a,b,d,sign",
    [(1, -1, 3, -1), (0, 0, 5, 0), (5, -2, 3, 1), (-5, 2, 3, -1), (2, -1, 3, 1), (0, -1, 2, -1)],
)
def test_quad_sign_examples(a, b, d, sign):
    assert quad_sign(QuadVal(a, b, d)) == sign


def test_quad_sign_matches_highprec_oracle():
    rng = random.Random(7)
    mpmath.mp.prec = 200
    for _ in range(2000):
        d = rng.choice([n for n in range(2, 200) if squarefree_part(n)[1] == 1])
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 50))
        b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 50))
        v = mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator * mpmath.sqrt(d)
        assert quad_sign(QuadVal(a, b, d)) == (v > 0) - (v < 0)


def test_quad_sign_near_ties():
    # a^2 - 2 b^2 = +-1 from Pell solutions: extremely close to zero
    x, y = 3, 2
    for _ in range(30):
        v = QuadVal(x, -y, 2)
        assert quad_sign(v) == 1
        assert quad_sign(-v) == -1
        x, y = 3 * x + 4 * y, 2 * x + 3 * y


def test_rational_collapse():
    assert QuadVal(3, 5, 1) == 8
    assert QuadVal(3, 5, 0) == 3
    assert QuadVal(2, 0, 7).d == 1
    assert hash(QuadVal(Fraction(1, 2))) == hash(Fraction(1, 2))
    with pytest.raises(ValueError):
        QuadVal(0, 1, 12)


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldError):
        QuadVal(0, 1, 2) + QuadVal(0, 1, 3)
    # a rational value combines with anything
    assert QuadVal(0, 1, 2) + 1 == QuadVal(1, 1, 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadVal(1, 1, 2) / QuadVal()


def test_sqrt_of():
    assert QuadVal.sqrt_of(12) == QuadVal(0, 2, 3)
    assert QuadVal.sqrt_of(Fraction(9, 4)) == Fraction(3, 2)
    assert QuadVal.sqrt_of(Fraction(1, 3)) == QuadVal(0, Fraction(1, 3), 3)
    r = QuadVal.sqrt_of(Fraction(5, 7))
    assert r * r == Fraction(5, 7)


@given(same_field())
def test_field_axioms(vals):
    x, y, z = vals
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(quadvals(), quadvals())
def test_order_is_consistent(x, y):
    if x.d != y.d and not (x.is_rational or y.is_rational):
        return
    assert (x < y) + (x == y) + (x > y) == 1
    assert quad_sign(x - y) == (x > y) - (x < y)


@given(fractions)
def test_square_roots_of_squares(q):
    assert rat_is_square(q * q) == abs(q)


@given(st.sampled_from(SQUAREFREE), fractions.filter(bool))
def test_nonsquare_kernel_stays_nonsquare(s, r):
    assert rat_is_square(s * r * r) is None


@given(st.integers(1, 10**9))
def test_squarefree_part_property(n):
    s, f = squarefree_part(n)
    assert s * f * f == n
    assert squarefree_part(s) == (s, 1)


@pytest.mark.parametrize(
    "sides,area_sq,d",
    [((3, 5, 7), Fraction(675, 16), 3), ((2, 3, 4), Fraction(135, 16), 15), ((1, 1, 1), Fraction(3, 16), 3), ((3, 4, 5), 36, 1)],
)
def test_heron(sides, area_sq, d):
    assert heron_area_sq(*sides) == (area_sq, d)
    assert heron_area_sq_from_squares(*(s * s for s in sides)) == area_sq


@pytest.mark.parametrize("bad", [(1, 2, 3), (1, 1, 5), (0, 1, 1), (-1, 2, 2)])
def test_heron_rejects_degenerate(bad):
    with pytest.raises(ValueError):
        heron_area_sq(*bad)


def test_length_syntax_roundtrip():
    for text, sq in [("3/2", Fraction(9, 4)), ("sqrt(3)", 3), ("sqrt(13/4)", Fraction(13, 4)), ("sqrt(4)", 4)]:
        assert parse_length_sq(text) == sq
    assert format_length(Fraction(13, 4)) == "sqrt(13/4)"
    assert format_length(4) == "2"
    with pytest.raises(ValueError):
        parse_length_sq("sqrt(-2)")
