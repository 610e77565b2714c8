import random
from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tritile.classifier import TileKind
from tritile.constructors import (
    bisect_isosceles,
    biquadratic_tiling,
    count_case4,
    count_case5,
    count_case6,
    count_case8,
    glue_append_similar,
    glue_plans,
    glue_tile_count,
    hexagonal_tiling,
    place_triangle,
    quadratic_tiling,
    tri_306090_tiling,
    triquadratic_params,
)
from tritile.geometry import Point, dist_sq, verify
from tritile.kernel import QuadVal
from tritile.numtheory import is_perfect_square

R3 = QuadVal(0, 1, 3)


def check(t, n):
    rep = verify(t)
    assert rep.valid, {k: v.counterexample for k, v in rep.checks.items() if not v.passed}
    assert rep.n_tiles == n
    return rep


@pytest.mark.parametrize("n", [1, 2, 3, 10])
def test_quadratic(n):
    check(quadratic_tiling([(0, 0), (7, 0), (2, 5)], n), n * n)


def test_quadratic_irrational_outer():
    outer = [Point.of(0, 0), Point.of(2, 0), Point(QuadVal.of(1), R3)]
    t = quadratic_tiling(outer, 3)
    check(t, 9)
    assert t.tile_sq == (F(4, 9),) * 3


def test_quadratic_errors():
    with pytest.raises(ValueError):
        quadratic_tiling([(0, 0), (1, 0), (2, 0)], 2)
    with pytest.raises(ValueError):
        quadratic_tiling([(0, 0), (1, 0), (0, 1)], 0)


def test_place_triangle():
    P, Q, R = place_triangle(3, 5, 7)
    assert dist_sq(P, Q) == 49 and dist_sq(P, R) == 25 and dist_sq(Q, R) == 9
    assert R.y.d == 3


def test_bisect_examples():
    t = check(bisect_isosceles(2, 1), 2)
    assert t.is_square_count is False
    t = bisect_isosceles(2, R3)
    check(t, 2)
    assert t.tile_sq == (1, 3, 4)
    check(bisect_isosceles(2, 5), 2)
    with pytest.raises(ValueError):
        bisect_isosceles(0, 1)


def test_bisect_random_shapes():
    rng = random.Random(11)
    for _ in range(20):
        base = F(rng.randint(1, 50), rng.randint(1, 9))
        height = F(rng.randint(1, 50), rng.randint(1, 9))
        if rng.random() < 0.3:
            height = height * R3
        check(bisect_isosceles(base, height), 2)


@pytest.mark.parametrize("k,n", [(1, 12), (2, 27), (3, 48), (4, 75)])
def test_hexagonal(k, n):
    t = hexagonal_tiling(k)
    check(t, n)
    # equilateral outer of side (k+1) sqrt 3
    P, Q, R = t.outer
    assert dist_sq(P, Q) == dist_sq(Q, R) == dist_sq(R, P) == 3 * (k + 1) ** 2


@pytest.mark.parametrize("M,K", [(3, 2), (5, 7), (1, 1), (2, 4)])
def test_biquadratic(M, K):
    t = biquadratic_tiling(M, K)
    check(t, M * M + K * K)
    # outer is similar to the tile with ratio sqrt(M^2 + K^2)
    outer_sq = sorted(dist_sq(t.outer[i], t.outer[(i + 1) % 3]) for i in range(3))
    assert [o / s for o, s in zip(outer_sq, t.tile_sq)] == [M * M + K * K] * 3


def test_biquadratic_matches_bisect_when_equal_legs():
    a = biquadratic_tiling(1, 1)
    assert a.n_tiles == 2 and a.tile_sq == (1, 1, 2)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_tri_306090(k):
    t = tri_306090_tiling(k)
    check(t, 3 * k * k)
    assert t.tile_sq == (1, 3, 4)


def _right_base():
    return quadratic_tiling([(0, 0), (4, 0), (0, 3)], 2)


def test_glue_mirror():
    base = _right_base()
    for side in (0, 2):  # both legs
        g = glue_append_similar(base, side)
        check(g, 8)
        lens = [dist_sq(g.outer[i], g.outer[(i + 1) % 3]) for i in range(3)]
        assert len(set(lens)) == 2  # isosceles, not equilateral


def test_glue_rejects_impossible_side():
    base = _right_base()
    # hypotenuse: gluing never leaves a straight angle
    assert glue_plans(base.outer, 1, base.tile_sq) == []
    with pytest.raises(ValueError):
        glue_append_similar(base, 1)


def test_glue_count_formula():
    assert glue_tile_count(1215, 135, 5) == 1944
    assert glue_tile_count(1215, 135, 3) == 3240
    assert glue_tile_count(4, 3, F(3, 2)) == 8
    with pytest.raises(ValueError):
        glue_tile_count(4, 3, 2)


def test_glue_plans_equilateral_135():
    # equilateral outer of side 135 and tile (3, 5, 7): the 120 degree angle
    # of a scaled tile fills the 60 degree corner to a straight angle
    outer = [Point.of(0, 0), Point.of(135, 0), Point(QuadVal.of(F(135, 2)), F(135, 2) * R3)]
    plans = glue_plans(outer, 0, (9, 25, 49), 3)
    scales = sorted({p.scale for p in plans})
    assert scales == [27, 45]
    for p in plans:
        assert glue_tile_count(1215, 135, 135 // p.scale) == 1215 + p.added_tiles


def test_glue_plans_equilateral_15():
    outer = [Point.of(0, 0), Point.of(15, 0), Point(QuadVal.of(F(15, 2)), F(15, 2) * R3)]
    plans = glue_plans(outer, 0, (9, 25, 49), 3)
    assert sorted({p.scale for p in plans}) == [3, 5]


def test_count_case4():
    c = count_case4(3, 5, 1)
    assert c.n_expression == 40 and not c.is_square_possible
    assert count_case4(5, 3, 1).n_expression == 24
    assert count_case4(3, 5, 2).n_expression == 160
    with pytest.raises(ValueError):
        count_case4(3, 4, 1)
    with pytest.raises(ValueError):
        count_case4(6, 10, 1)


def test_count_case6():
    assert count_case6(5, F(1, 2)).n_expression == 77
    assert count_case6(10, F(1, 2)).n_expression == 308
    with pytest.raises(ZeroDivisionError):
        count_case6(5, 1)
    with pytest.raises(ValueError):
        count_case6(5, F(3, 2))


def test_count_case5_and_8():
    assert count_case5(F(1, 5)).n_expression == F(11, 24)
    assert count_case5(F(1, 4)).n_expression == F(26, 63)
    assert count_case5(F(1, 5)).square_class_only
    with pytest.raises(ValueError):
        count_case5(F(1, 3))
    assert count_case8(F(1, 5)).n_expression == F(13, 8)
    assert count_case8(F(1, 10)).n_expression == F(157, 117)
    with pytest.raises(ZeroDivisionError):
        count_case8(1)


def test_triquadratic_examples():
    c, shape = triquadratic_params(2, 4)
    assert c.n_expression == 28 and shape.sides == (2, 3, 4) and not c.is_square_possible
    c, shape = triquadratic_params(5, 25)
    assert c.n_expression == 1225 and is_perfect_square(1225) == 35 and c.is_square_possible
    assert shape.sides == (5, 24, 25)
    c, shape = triquadratic_params(3, 9)
    assert c.n_expression == 153 and shape.sides == (3, 8, 9)
    # K | M^2 without M | K is flagged, not rejected
    c, shape = triquadratic_params(6, 9)
    assert c.n_expression == 126 and shape.sides == (6, 5, 9) and c.notes
    with pytest.raises(ValueError):
        triquadratic_params(3, 4)
    with pytest.raises(ValueError):
        triquadratic_params(4, 2)


def test_triquadratic_sweep():
    for K in range(2, 51):
        for M in range(1, K):
            if (M * M) % K:
                continue
            c, shape = triquadratic_params(M, K)
            assert c.n_expression == 2 * K * K - M * M
            a, b, cc = M, K - M * M // K, K
            g = gcd(gcd(a, b), cc)
            assert shape.sides == (a // g, b // g, cc // g)
            assert F(shape.sides[1], shape.sides[2]) == 1 - F(M, K) ** 2
            assert shape.kind is TileKind.GROUP1
            assert c.is_square_possible == (is_perfect_square(2 * K * K - M * M) is not None)


def _square_class_is_square(q):
    q = F(q)
    return q >= 0 and is_perfect_square(q.numerator * q.denominator) is not None


t_range = st.fractions(min_value=0, max_value=F(1, 3), max_denominator=100).filter(lambda t: 0 < t < F(1, 3))


@given(t_range, st.integers(1, 20), st.fractions(min_value=0, max_value=1, max_denominator=100).filter(lambda s: 0 < s < 1))
def test_certificates_never_square(t, M, s):
    for c in (count_case5(t), count_case8(t), count_case6(M, s)):
        assert not c.is_square_possible
        assert not _square_class_is_square(c.n_expression)
