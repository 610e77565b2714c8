"""Explicit tilings and tile-count certificates.

Generated tilings use canonical placements: one vertex of the outer
triangle at the origin and one side along the positive x-axis.  Glued
tilings keep the placement of their base.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .classifier import THIRD, TileKind, TileShape, group1_tile, primitive_triple
from .geometry import Point, PlacedTile, Tiling, as_point, cross, dist_sq, orient
from .kernel import QuadVal, heron_area_sq, heron_area_sq_from_squares, rat_is_square
from .numtheory import check_prop52, eval_nonsquare_53, eval_nonsquare_54, eval_nonsquare_55, is_perfect_square

SQRT3 = QuadVal(0, 1, 3)


def _disc_of(points) -> int:
    ds = {c.d for p in points for c in p if not c.is_rational}
    if len(ds) > 1:
        raise ValueError(f"coordinates mix fields {sorted(ds)}")
    return ds.pop() if ds else 1


def _lerp_grid(P: Point, Q: Point, R: Point, n: int):
    dq = Point((Q.x - P.x) / n, (Q.y - P.y) / n)
    dr = Point((R.x - P.x) / n, (R.y - P.y) / n)

    def at(i: int, j: int) -> Point:
        return Point(P.x + i * dq.x + j * dr.x, P.y + i * dq.y + j * dr.y)

    return at


def _quadratic_tiles(P: Point, Q: Point, R: Point, n: int) -> List[PlacedTile]:
    at = _lerp_grid(P, Q, R, n)
    tiles = []
    for j in range(n):
        for i in range(n - j):
            tiles.append(PlacedTile(at(i, j), at(i + 1, j), at(i, j + 1)))
            if i + j <= n - 2:
                tiles.append(PlacedTile(at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)))
    return tiles


def _outer_side_squares(P: Point, Q: Point, R: Point):
    return [dist_sq(P, Q), dist_sq(Q, R), dist_sq(R, P)]


def _rational_squares(values) -> Tuple[Fraction, ...]:
    out = []
    for v in values:
        if not v.is_rational:
            raise ValueError("tile side lengths must have rational squares")
        out.append(v.a)
    return tuple(out)


def place_triangle(a, b, c) -> Tuple[Point, Point, Point]:
    """Canonical placement of the triangle with rational sides ``a, b, c``.

    ``c`` runs along the x-axis from the origin; the third vertex is above
    it, at distance ``b`` from the origin.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    area_sq, _ = heron_area_sq(a, b, c)
    x = (b * b + c * c - a * a) / (2 * c)
    y = 2 * QuadVal.sqrt_of(area_sq) / c
    return (Point.of(0, 0), Point.of(c, 0), Point(QuadVal.of(x), y))


def quadratic_tiling(outer, n: int) -> Tiling:
    """``n^2`` copies of the outer triangle scaled by ``1/n``."""
    if n < 1:
        raise ValueError("n must be positive")
    P, Q, R = (as_point(p) for p in outer)
    if orient(P, Q, R) == 0:
        raise ValueError("outer triangle is degenerate")
    tile_sq = _rational_squares(s / (n * n) for s in _outer_side_squares(P, Q, R))
    return Tiling(_disc_of((P, Q, R)), tile_sq, (P, Q, R), _quadratic_tiles(P, Q, R, n))


def bisect_isosceles(base, height) -> Tiling:
    """Cut the isosceles triangle with the given base and height in half."""
    base = Fraction(base)
    h = QuadVal.of(height)
    if base <= 0 or h.sign() <= 0:
        raise ValueError("base and height must be positive")
    half = base / 2
    P, Q, R = Point.of(0, 0), Point.of(base, 0), Point(QuadVal.of(half), h)
    F = Point.of(half, 0)
    tiles = [PlacedTile(P, F, R), PlacedTile(F, Q, R)]
    hyp = half * half + h * h
    tile_sq = _rational_squares([QuadVal.of(half * half), h * h, hyp])
    return Tiling(_disc_of((R,)), tile_sq, (P, Q, R), tiles)


def hexagonal_tiling(k: int) -> Tiling:
    """Equilateral triangle of side ``(k+1)*sqrt(3)`` cut into ``3(k+1)^2`` tiles.

    The tile is the ``(1, 1, sqrt(3))`` triangle with angles
    ``(pi/6, pi/6, 2pi/3)``.  The triangle is split into ``(k+1)^2`` small
    equilateral triangles of side ``sqrt(3)``, each cut into three tiles from
    its centre; every inner downward triangle together with the three tiles
    across its edges forms a regular hexagon, giving ``k(k+1)/2`` hexagons
    and ``k+1`` remaining tiles along each side.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = k + 1
    side = n * SQRT3
    P = Point.of(0, 0)
    Q = Point(side, QuadVal())
    R = Point(side / 2, QuadVal.of(Fraction(3 * n, 2)))
    at = _lerp_grid(P, Q, R, n)
    tiles = []

    def split(a: Point, b: Point, c: Point):
        g = Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)
        tiles.extend([PlacedTile(a, b, g), PlacedTile(b, c, g), PlacedTile(c, a, g)])

    for j in range(n):
        for i in range(n - j):
            split(at(i, j), at(i + 1, j), at(i, j + 1))
            if i + j <= n - 2:
                split(at(i + 1, j), at(i + 1, j + 1), at(i, j + 1))
    return Tiling(3, (Fraction(1), Fraction(1), Fraction(3)), (P, Q, R), tiles)


def biquadratic_tiling(M: int, K: int) -> Tiling:
    """Right triangle with legs in ratio ``M:K`` cut into ``M^2 + K^2`` tiles.

    The hypotenuse lies on the x-axis from ``(0, 0)`` to ``(M^2 + K^2, 0)``
    and the right angle sits at ``(M^2, MK)``, so all coordinates are
    integers.  The altitude splits the triangle into two copies of itself,
    which are tiled quadratically with ``M`` and ``K`` rows.
    """
    if M < 1 or K < 1:
        raise ValueError("M and K must be positive")
    P = Point.of(0, 0)
    Q = Point.of(M * M + K * K, 0)
    R = Point.of(M * M, M * K)
    F = Point.of(M * M, 0)
    tiles = _quadratic_tiles(F, R, P, M) + _quadratic_tiles(F, Q, R, K)
    tile_sq = (Fraction(M * M), Fraction(K * K), Fraction(M * M + K * K))
    return Tiling(1, tile_sq, (P, Q, R), tiles)


def tri_306090_tiling(k: int) -> Tiling:
    """The ``(pi/2, pi/3, pi/6)`` triangle cut into ``3k^2`` tiles ``(1, sqrt3, 2)``."""
    if k < 1:
        raise ValueError("k must be positive")
    O = Point.of(0, 0)
    B = Point.of(3 * k, 0)
    A = Point(QuadVal(), k * SQRT3)
    # bisect the angle at A, then drop the perpendicular from the foot to AB
    P = Point.of(k, 0)
    F = Point(QuadVal.of(Fraction(3 * k, 2)), k * SQRT3 / 2)
    tiles = []
    for tri in ((O, P, A), (P, F, A), (P, B, F)):
        tiles.extend(_quadratic_tiles(*tri, k))
    return Tiling(3, (Fraction(1), Fraction(3), Fraction(4)), (O, B, A), tiles)


# ---------------------------------------------------------------------------
# gluing


@dataclass(frozen=True)
class GluePlan:
    """One way to attach a scaled copy of the tile along an outer side."""

    outer_side: int
    tile_side: int
    flip: bool
    scale: int
    apex: Point
    new_outer: Tuple[Point, Point, Point]

    @property
    def added_tiles(self) -> int:
        return self.scale * self.scale


def glue_tile_count(n_base: int, side_length, tile_side) -> int:
    """Tile count after attaching a quadratic tiling along a side of length L."""
    ratio = Fraction(side_length) / Fraction(tile_side)
    if ratio.denominator != 1 or ratio < 1:
        raise ValueError(f"side {side_length} is not a positive multiple of {tile_side}")
    return n_base + int(ratio) ** 2


def glue_plans(outer, outer_side: int, tile_sq: Sequence, disc: Optional[int] = None) -> List[GluePlan]:
    """Every orientation in which gluing along ``outer_side`` yields a triangle.

    The attached triangle ``S`` is similar to the tile with one tile side
    ``e`` on the outer side ``PQ`` and ``|PQ| / e`` a positive integer.  The
    union is a triangle iff ``P`` or ``Q`` becomes a straight angle, i.e. it
    lies strictly between the opposite vertex ``R`` and the apex of ``S``.
    """
    outer = tuple(as_point(p) for p in outer)
    if outer_side not in (0, 1, 2):
        raise ValueError("outer_side must be 0, 1 or 2")
    P, Q, R = outer[outer_side], outer[(outer_side + 1) % 3], outer[(outer_side + 2) % 3]
    tile_sq = sorted(Fraction(s) for s in tile_sq)
    L_sq = dist_sq(P, Q)
    if not L_sq.is_rational:
        return []
    L_sq = L_sq.a
    tile_area = QuadVal.sqrt_of(heron_area_sq_from_squares(*tile_sq))
    d = Point(Q.x - P.x, Q.y - P.y)
    perp = Point(-d.y, d.x)
    side_R = orient(P, Q, R)
    plans = []
    for e in range(3):
        n = rat_is_square(L_sq / tile_sq[e])
        if n is None or n.denominator != 1:
            continue
        n = int(n)
        others = [tile_sq[i] for i in range(3) if i != e]
        for flip in (False, True):
            pa_sq, qa_sq = (others[1], others[0]) if flip else (others[0], others[1])
            u = (L_sq + n * n * pa_sq - n * n * qa_sq) / (2 * L_sq)
            try:
                v = 2 * n * n * tile_area / L_sq
                X = Point(P.x + u * d.x + v * perp.x, P.y + u * d.y + v * perp.y)
                if orient(P, Q, X) == side_R:
                    v = -v
                    X = Point(P.x + u * d.x + v * perp.x, P.y + u * d.y + v * perp.y)
            except ValueError:
                # tile area outside the coordinate field
                continue
            if disc is not None and _disc_of((X,)) not in (1, disc):
                continue
            new_outer = None
            if _strictly_between(R, P, X):
                new_outer = (R, Q, X)
            elif _strictly_between(R, Q, X):
                new_outer = (R, P, X)
            if new_outer is not None:
                plans.append(GluePlan(outer_side, e, flip, n, X, new_outer))
    return plans


def _strictly_between(a: Point, m: Point, b: Point) -> bool:
    if orient(a, m, b) != 0:
        return False
    dot = (m.x - a.x) * (b.x - m.x) + (m.y - a.y) * (b.y - m.y)
    return dot.sign() > 0


def glue_append_similar(
    base: Tiling, outer_side: int, tile_side: Optional[int] = None, flip: Optional[bool] = None
) -> Tiling:
    """Attach a quadratically tiled copy of the scaled tile along an outer side.

    ``tile_side`` (index into the sorted tile sides) and ``flip`` pick the
    orientation; when omitted the first feasible orientation is used.
    """
    plans = [
        p
        for p in glue_plans(base.outer, outer_side, base.tile_sq, base.disc)
        if (tile_side is None or p.tile_side == tile_side) and (flip is None or p.flip == flip)
    ]
    if not plans:
        raise ValueError(f"no orientation of the tile closes side {outer_side} into a triangle")
    plan = plans[0]
    P, Q = base.outer[outer_side], base.outer[(outer_side + 1) % 3]
    extra = _quadratic_tiles(P, Q, plan.apex, plan.scale)
    return Tiling(base.disc, base.tile_sq, plan.new_outer, list(base.tiles) + extra)


# ---------------------------------------------------------------------------
# tile counts


@dataclass(frozen=True)
class CountCertificate:
    """Tile count, or its square class when only that is determined.

    ``n_expression`` is the count itself for cases 4, 6 and 7 and a
    square-class representative for cases 5 and 8.
    """

    case_id: int
    params: dict
    n_expression: Fraction
    is_square_possible: bool
    square_class_only: bool = False
    notes: Tuple[str, ...] = ()

    def to_json(self):
        return {
            "case": self.case_id,
            "params": {k: str(v) for k, v in self.params.items()},
            "n_expression": str(self.n_expression),
            "square_class_only": self.square_class_only,
            "is_square_possible": self.is_square_possible,
            "notes": list(self.notes),
        }


def count_case4(a: int, b: int, m: int) -> CountCertificate:
    """``N = m^2 b (a + b)`` for the tile ``(a, b, c)`` with ``c^2 = a^2 + ab + b^2``.

    The formula is reported for any ``m``; it says nothing about which
    ``m`` actually admit a tiling.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise ValueError("a, b must be coprime positive integers")
    if is_perfect_square(a * a + a * b + b * b) is None:
        raise ValueError(f"({a}, {b}) is not an Eisenstein pair: {a * a + a * b + b * b} is not a square")
    rep = check_prop52(b, a)
    assert rep.product_root is None
    c = is_perfect_square(a * a + a * b + b * b)
    return CountCertificate(
        4, {"a": a, "b": b, "c": c, "m": m}, Fraction(m * m * b * (a + b)), False,
        notes=(f"b(a+b) = {rep.product} is not a square",),
    )


def count_case6(M: int, s) -> CountCertificate:
    s = Fraction(s)
    if not 0 < s < 1:
        if s == 1:
            raise ZeroDivisionError("pole at s = 1")
        raise ValueError(f"s = {s} is outside (0, 1)")
    core = eval_nonsquare_53(s)
    N = M * M * core / ((1 - s) ** 2 * (2 + s) ** 2)
    return CountCertificate(6, {"M": M, "s": s}, N, False, notes=(f"(2-s^2)(3-s^2) = {core}",))


def _t_in_range(t) -> Fraction:
    t = Fraction(t)
    if t == 1 or t == Fraction(-1, 3):
        raise ZeroDivisionError(f"pole at t = {t}")
    if not 0 < t < THIRD:
        raise ValueError(f"t = {t} is outside the open range (0, 1/3)")
    return t


def count_case5(t) -> CountCertificate:
    t = _t_in_range(t)
    return CountCertificate(5, {"t": t}, eval_nonsquare_54(t), False, square_class_only=True)


def count_case8(t) -> CountCertificate:
    t = _t_in_range(t)
    return CountCertificate(8, {"t": t}, eval_nonsquare_55(t), False, square_class_only=True)


def triquadratic_params(M: int, K: int) -> Tuple[CountCertificate, TileShape]:
    """Solution of ``M^2 + N = 2K^2`` with ``K | M^2`` and the tile it determines."""
    if M < 1 or K < 1:
        raise ValueError("M and K must be positive")
    if not M < K:
        raise ValueError(f"degenerate tile: need M < K, got M={M}, K={K}")
    if (M * M) % K:
        raise ValueError(f"K = {K} does not divide M^2 = {M * M}")
    N = 2 * K * K - M * M
    b = K - M * M // K
    notes = []
    if K % M:
        notes.append(f"M = {M} does not divide K = {K} although K | M^2")
    cert = CountCertificate(
        7,
        {"M": M, "K": K, "tile": f"{M},{b},{K}"},
        Fraction(N),
        is_perfect_square(N) is not None,
        notes=tuple(notes),
    )
    shape = TileShape(TileKind.GROUP1, group1_tile(Fraction(M, K)), "3alpha + 2beta = pi")
    return cert, shape
