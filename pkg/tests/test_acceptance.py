"""Acceptance criteria 1-8, one test per criterion.

Run alone with ``pytest tests/test_acceptance.py`` (or execute this file);
the terminal summary prints one PASS/FAIL line per criterion.
"""

import itertools
import random
from fractions import Fraction as F
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tritile.classifier import AnglesPi, Family, FamilyTag, Sides, classify
from tritile.constructors import (
    bisect_isosceles,
    biquadratic_tiling,
    count_case6,
    glue_append_similar,
    glue_plans,
    glue_tile_count,
    hexagonal_tiling,
    quadratic_tiling,
    tri_306090_tiling,
    triquadratic_params,
)
from tritile.geometry import Point, verify
from tritile.kernel import QuadVal, quad_sign, squarefree_part
from tritile.numtheory import (
    INFINITY,
    PAPER_CURVES,
    ECPoint,
    EllipticCurve,
    QuarticCurve,
    check_prop52,
    ec_add,
    eval_nonsquare_53,
    eval_nonsquare_54,
    eval_nonsquare_55,
    is_perfect_square,
    is_rational_square,
    quartic_point_map,
    quartic_point_unmap,
    rational_point_search,
    torsion_points,
)

P = ECPoint
R3 = QuadVal(0, 1, 3)

TORSION = {
    "eell5": {P(0, 0), P(1, 0), P(-3, 0), P(-1, 2), P(-1, -2), P(3, 6), P(3, -6), INFINITY},
    "eell3": {P(0, 0), INFINITY},
    "eell2": {P(0, 0), INFINITY},
    "eell": {P(0, 0), P(1, 2), P(1, -2), P(-3, 6), P(-3, -6), INFINITY},
}
QUARTICS = {"eell5": (-1, 1), "eell3": (-5, 6), "eell": (-3, 3), "eell2": (-9, 27)}


def curve(name):
    return EllipticCurve(*PAPER_CURVES[name][0])


@pytest.mark.acceptance(1)
def test_criterion_1_torsion_golden():
    for name, want in TORSION.items():
        rep = torsion_points(curve(name))
        assert set(rep.points) == want and len(rep.points) == len(want), name
    e = curve("eell")
    rep = torsion_points(e)
    assert rep.structure == (6,)
    g = P(-3, 6)
    q, order = g, 1
    while not q.is_infinity:
        q = ec_add(e, q, g)
        order += 1
    assert order == 6
    multiples = {INFINITY}
    q = g
    for _ in range(5):
        multiples.add(q)
        q = ec_add(e, q, g)
    assert multiples == TORSION["eell"]


@pytest.mark.acceptance(2)
def test_criterion_2_tile_counts():
    assert count_case6(5, F(1, 2)).n_expression == 77
    c, shape = triquadratic_params(2, 4)
    assert c.n_expression == 28 and shape.sides == (2, 3, 4)
    c, _ = triquadratic_params(5, 25)
    assert c.n_expression == 1225 and is_perfect_square(1225) == 35 and c.is_square_possible
    c, _ = triquadratic_params(3, 9)
    assert c.n_expression == 153


def _valid(t, n):
    rep = verify(t)
    return rep.valid and rep.n_tiles == n


@pytest.mark.acceptance(3)
def test_criterion_3_constructor_sweep():
    failures = []
    for n in range(1, 13):
        if not _valid(quadratic_tiling([(0, 0), (7, 0), (F(5, 2), 4)], n), n * n):
            failures.append(("quadratic", n))
    for k in range(1, 6):
        if not _valid(hexagonal_tiling(k), 3 * (k + 1) ** 2):
            failures.append(("hexagonal", k))
    for M, K in itertools.product(range(1, 8), repeat=2):
        if not _valid(biquadratic_tiling(M, K), M * M + K * K):
            failures.append(("biquadratic", M, K))
    for k in range(1, 6):
        if not _valid(tri_306090_tiling(k), 3 * k * k):
            failures.append(("tri306090", k))
    rng = random.Random(2024)
    for i in range(20):
        base = F(rng.randint(1, 60), rng.randint(1, 12))
        height = F(rng.randint(1, 60), rng.randint(1, 12))
        if i % 3 == 0:
            height = height * R3
        if not _valid(bisect_isosceles(base, height), 2):
            failures.append(("bisect", base, height))
    right = quadratic_tiling([(0, 0), (4, 0), (0, 3)], 2)
    if not _valid(glue_append_similar(right, 2), 8):
        failures.append(("glue", "mirror"))
    assert not failures
    assert [hexagonal_tiling(k).n_tiles for k in range(1, 6)] == [12, 27, 48, 75, 108]
    assert biquadratic_tiling(3, 2).n_tiles == 13 and biquadratic_tiling(5, 7).n_tiles == 74
    assert tri_306090_tiling(1).n_tiles == 3


@pytest.mark.acceptance(4)
def test_criterion_4_glue_arithmetic():
    assert glue_tile_count(1215, 135, 5) == 1215 + 27**2 == 1944
    assert glue_tile_count(1215, 135, 3) == 1215 + 45**2 == 3240
    # both tile sides actually close an equilateral triangle of side 135
    outer = [Point.of(0, 0), Point.of(135, 0), Point(QuadVal.of(F(135, 2)), F(135, 2) * R3)]
    plans = glue_plans(outer, 0, (9, 25, 49), 3)
    assert {(135 // p.scale, p.scale) for p in plans} == {(5, 27), (3, 45)}


@pytest.mark.acceptance(5)
def test_criterion_5_nonsquare_properties():
    hits = 0
    for a in range(1, 201):
        for b in range(1, 201):
            if gcd(a, b) == 1 and is_perfect_square(a * a + a * b + b * b) is not None:
                hits += 1
                assert is_perfect_square(a * (a + b)) is None
                check_prop52(a, b)
    assert hits > 0
    rng = random.Random(5)

    def rand_in(lo, hi):
        while True:
            t = F(rng.randint(1, 100), rng.randint(1, 100))
            if lo < t < hi:
                return t

    for _ in range(1000):
        t = F(rng.randint(-100, 100), rng.randint(1, 100))
        assert not is_rational_square(eval_nonsquare_53(t))
        assert not is_rational_square(eval_nonsquare_54(rand_in(0, 1)))
        assert not is_rational_square(eval_nonsquare_55(rand_in(0, F(1, 3))))
    for name, (a, b) in QUARTICS.items():
        q = QuarticCurve(a, b)
        for p in torsion_points(curve(name)).points:
            if p.is_infinity or p.x == 0:
                continue
            t, s = quartic_point_unmap(q, p)
            assert quartic_point_map(q, t, s) == p


@pytest.mark.acceptance(6)
def test_criterion_6_bounded_search():
    for name in sorted(TORSION):
        found = rational_point_search(curve(name), 1000)
        assert set(found) == TORSION[name] - {INFINITY}, name


@pytest.mark.acceptance(7)
def test_criterion_7_classifier_truth_table():
    def conds(spec):
        return set(classify(spec).conditions)

    assert conds(AnglesPi(F(1, 6), F(1, 2), F(1, 3))) == {3}
    assert conds(AnglesPi(F(1, 3), F(1, 3), F(1, 3))) == {1}
    assert conds(Sides.of(1, 1, 1)) == {1}
    v = classify(Sides.of(3, 4, 5))
    assert not v.conditions and not v.admits_nonsquare
    v = classify(Sides.of(1, 2, "sqrt(5)"))
    assert set(v.conditions) == {2} and v.conditions[2]["M2_plus_K2"] == 5
    v = classify(Family(FamilyTag.HALF_SUM, (2, 4)))
    assert set(v.conditions) == {7} and v.conditions[7]["family_2K2_minus_M2"] == 28
    v = classify(Family(FamilyTag.HALF_SUM, (5, 25)))
    assert 7 not in v.conditions
    assert any("2K^2 - M^2" in n and "is a square" in n for n in v.notes)
    v = classify(Family(FamilyTag.C60, (F(1, 5),)))
    assert set(v.conditions) == {4}
    a, b, c = v.tile_shapes[4].sides
    assert (a, b, c) == (5, 3, 7) and a * a + b * b + a * b == 25 + 9 + 15 == 49 == c * c


SQUAREFREE_1000 = [d for d in range(2, 1001) if squarefree_part(d)[1] == 1]


@pytest.mark.acceptance(8)
def test_criterion_8_kernel_sign_oracle():
    rng = random.Random(8)
    mpmath.mp.prec = 200
    for _ in range(10_000):
        d = rng.choice(SQUAREFREE_1000)
        a = rng.randint(-10**6, 10**6)
        b = rng.randint(-10**6, 10**6)
        v = a + b * mpmath.sqrt(d)
        assert quad_sign(QuadVal(a, b, d)) == (v > 0) - (v < 0)
    # Pell near-ties: x - y sqrt(2) with x^2 - 2y^2 = 1 shrinks like 1/x
    x, y = 3, 2
    for _ in range(40):
        assert quad_sign(QuadVal(x, -y, 2)) == 1
        x, y = 3 * x + 4 * y, 2 * x + 3 * y


fields = st.fractions(max_denominator=1000).filter(lambda f: abs(f) <= 10**6)


@pytest.mark.acceptance(8)
@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SQUAREFREE_1000[:200]), fields, fields, fields, fields, fields, fields)
def test_criterion_8_field_axioms(d, a1, b1, a2, b2, a3, b3):
    x, y, z = QuadVal(a1, b1, d), QuadVal(a2, b2, d), QuadVal(a3, b3, d)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == 0
    if x:
        assert x * x.inverse() == 1


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
