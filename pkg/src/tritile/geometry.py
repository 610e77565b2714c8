"""Exact tilings of a triangle and their verification.

A tiling is certified by four exact checks: every tile is congruent to the
reference tile (side-length multisets), tile areas add up to the area of the
outer triangle, no two tiles share interior points, and every tile lies in
the outer triangle.  Area, containment and disjointness together imply that
the tiles cover the outer triangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .kernel import MixedFieldError, QuadVal, format_length, quad_sign
from .numtheory import is_perfect_square


class Point(NamedTuple):
    x: QuadVal
    y: QuadVal

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(QuadVal.of(x), QuadVal.of(y))


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    x, y = p
    return Point.of(x, y)


def cross(p: Point, q: Point, r: Point) -> QuadVal:
    """Twice the signed area of ``pqr`` (positive when counter-clockwise)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orient(p: Point, q: Point, r: Point) -> int:
    return quad_sign(cross(p, q, r))


def dist_sq(p: Point, q: Point) -> QuadVal:
    dx = q.x - p.x
    dy = q.y - p.y
    return dx * dx + dy * dy


@dataclass(frozen=True)
class PlacedTile:
    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        pts = [as_point(v) for v in (self.v0, self.v1, self.v2)]
        for name, p in zip(("v0", "v1", "v2"), pts):
            object.__setattr__(self, name, p)
        if orient(*pts) == 0:
            raise ValueError(f"degenerate tile {[tuple(map(str, p)) for p in pts]}")

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        return (self.v0, self.v1, self.v2)

    def discriminants(self) -> set:
        return {c.d for p in self.vertices for c in p if not c.is_rational}


def squared_side_lengths(t: PlacedTile) -> List[QuadVal]:
    """The three squared side lengths, sorted ascending."""
    v0, v1, v2 = t.vertices
    return sorted([dist_sq(v0, v1), dist_sq(v1, v2), dist_sq(v2, v0)])


def tile_congruent(t: PlacedTile, sides_sq: Sequence) -> bool:
    """SSS congruence against squared side lengths; mirror images count."""
    want = sorted(QuadVal.of(s) for s in sides_sq)
    return squared_side_lengths(t) == want


def _separates(a: PlacedTile, a_sign: int, b: PlacedTile) -> bool:
    # an edge line of ``a`` with all of ``b`` in the closed far half-plane
    va = a.vertices
    for e in range(3):
        p, q = va[e], va[(e + 1) % 3]
        if all(orient(p, q, w) * a_sign <= 0 for w in b.vertices):
            return True
    return False


def interiors_intersect(t1: PlacedTile, t2: PlacedTile) -> bool:
    """True iff the open interiors of the two triangles meet.

    Two convex polygons have disjoint interiors exactly when the line
    through some edge of one of them separates them, so the six edge lines
    are the only candidates.
    """
    ds = t1.discriminants() | t2.discriminants()
    if len(ds) > 1:
        raise MixedFieldError(f"tiles use different fields sqrt({sorted(ds)})")
    s1 = orient(*t1.vertices)
    s2 = orient(*t2.vertices)
    return not (_separates(t1, s1, t2) or _separates(t2, s2, t1))


@dataclass
class Tiling:
    """Outer triangle, reference tile (by squared side lengths) and tiles."""

    disc: int
    tile_sq: Tuple[Fraction, Fraction, Fraction]
    outer: Tuple[Point, Point, Point]
    tiles: List[PlacedTile]

    def __post_init__(self):
        sq = tuple(sorted(Fraction(s) for s in self.tile_sq))
        if len(sq) != 3 or sq[0] <= 0:
            raise ValueError("tile needs three positive squared side lengths")
        self.tile_sq = sq
        self.outer = tuple(as_point(p) for p in self.outer)
        if len(self.outer) != 3:
            raise ValueError("outer triangle needs three vertices")
        if orient(*self.outer) == 0:
            raise ValueError("outer triangle is degenerate")
        self.tiles = [t if isinstance(t, PlacedTile) else PlacedTile(*t) for t in self.tiles]
        if not self.tiles:
            raise ValueError("a tiling needs at least one tile")
        if self.disc not in (0, 1):
            QuadVal(0, 1, self.disc)  # validates squarefree
        seen = {c.d for p in self.outer for c in p if not c.is_rational}
        for t in self.tiles:
            seen |= t.discriminants()
        stray = seen - {self.disc}
        if stray:
            raise ValueError(f"coordinates use sqrt({sorted(stray)[0]}) but the tiling declares D = {self.disc}")

    @property
    def n_tiles(self) -> int:
        return len(self.tiles)

    @property
    def tile_sides(self) -> Tuple[str, str, str]:
        return tuple(format_length(s) for s in self.tile_sq)


@dataclass
class CheckResult:
    passed: bool
    counterexample: Optional[list] = None

    def to_json(self):
        return {"pass": self.passed, "counterexample": self.counterexample}


@dataclass
class VerifyReport:
    n_tiles: int
    checks: Dict[str, CheckResult]
    is_square_count: bool

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_json(self):
        return {
            "valid": self.valid,
            "n_tiles": self.n_tiles,
            "is_square_count": self.is_square_count,
            "checks": {k: v.to_json() for k, v in self.checks.items()},
        }


def _bbox(t: PlacedTile):
    xs = sorted(p.x for p in t.vertices)
    ys = sorted(p.y for p in t.vertices)
    return xs[0], xs[2], ys[0], ys[2]


def overlapping_pairs(tiles: Sequence[PlacedTile], first_only: bool = False) -> List[Tuple[int, int]]:
    """Index pairs ``(i, j)``, ``i < j``, of tiles with intersecting interiors.

    Bounding boxes only prune pairs that cannot overlap; the result is the
    same as checking all pairs.
    """
    boxes = [_bbox(t) for t in tiles]
    order = sorted(range(len(tiles)), key=lambda i: boxes[i][0])
    hits = []
    for pos, i in enumerate(order):
        xmax_i, ymin_i, ymax_i = boxes[i][1], boxes[i][2], boxes[i][3]
        for j in order[pos + 1:]:
            bj = boxes[j]
            if not bj[0] < xmax_i:
                break
            if not (bj[2] < ymax_i and ymin_i < bj[3]):
                continue
            if interiors_intersect(tiles[i], tiles[j]):
                hits.append((min(i, j), max(i, j)))
    hits.sort()
    return hits[:1] if first_only else hits


def verify(t: Tiling) -> VerifyReport:
    checks: Dict[str, CheckResult] = {}

    bad = [i for i, tile in enumerate(t.tiles) if not tile_congruent(tile, t.tile_sq)]
    checks["congruence"] = CheckResult(not bad, bad[:1] or None)

    outer_area = abs(cross(*t.outer))
    tile_area = sum((abs(cross(*tile.vertices)) for tile in t.tiles), QuadVal())
    ok = tile_area == outer_area
    checks["area"] = CheckResult(
        ok, None if ok else [f"tiles {tile_area / 2}", f"outer {outer_area / 2}"]
    )

    pairs = overlapping_pairs(t.tiles, first_only=True)
    checks["overlap"] = CheckResult(not pairs, list(pairs[0]) if pairs else None)

    # the outer triangle is convex, so vertex containment suffices
    s = orient(*t.outer)
    edges = [(t.outer[e], t.outer[(e + 1) % 3]) for e in range(3)]
    outside = None
    for i, tile in enumerate(t.tiles):
        if any(orient(p, q, v) * s < 0 for v in tile.vertices for p, q in edges):
            outside = i
            break
    checks["containment"] = CheckResult(outside is None, None if outside is None else [outside])

    return VerifyReport(
        n_tiles=t.n_tiles,
        checks=checks,
        is_square_count=is_perfect_square(t.n_tiles) is not None,
    )
