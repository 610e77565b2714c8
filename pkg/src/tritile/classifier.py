"""Decide which triangles admit a tiling with a non-square number of tiles.

Angles are never evaluated numerically.  A triangle with rational sides is
described by its (rational) cosines and the pairwise products of sines,
which are rational as well; every angle relation and every rationality
test below is an identity or a square test on those numbers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Dict, List, Optional, Tuple, Union

from .kernel import (
    QuadVal,
    format_length,
    heron_area_sq,
    parse_length_sq,
    rat_is_square,
)
from .numtheory import is_perfect_square

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


class DegenerateFamilyError(ValueError):
    """Family parameter on the boundary of its range (commensurable angles)."""


# ---------------------------------------------------------------------------
# input triangles


@dataclass(frozen=True)
class AnglesPi:
    """Angles ``(pA*pi, pB*pi, pC*pi)``."""

    pA: Fraction
    pB: Fraction
    pC: Fraction

    def __post_init__(self):
        ps = tuple(Fraction(p) for p in (self.pA, self.pB, self.pC))
        for name, p in zip(("pA", "pB", "pC"), ps):
            object.__setattr__(self, name, p)
        if sum(ps) != 1:
            raise ValueError(f"angles must sum to pi, got {sum(ps)}*pi")
        if any(not 0 < p < 1 for p in ps):
            raise ValueError("every angle must lie strictly between 0 and pi")

    @property
    def angles(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.pA, self.pB, self.pC)

    def to_json(self):
        return {"angles_pi": [str(p) for p in self.angles]}


@dataclass(frozen=True)
class Sides:
    """Side lengths, stored squared.

    Each side is a positive rational or the square root of one
    (``"sqrt(5)"``); general quadratic surds are rejected.
    """

    squares: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        sq = tuple(Fraction(s) for s in self.squares)
        if len(sq) != 3 or min(sq) <= 0:
            raise ValueError("a triangle needs three positive sides")
        object.__setattr__(self, "squares", sq)
        # non-degenerate iff the squared area is positive
        a2, b2, c2 = sq
        if 4 * a2 * b2 - (a2 + b2 - c2) ** 2 <= 0:
            raise ValueError("sides violate the strict triangle inequality")

    @classmethod
    def of(cls, a, b, c) -> "Sides":
        return cls(tuple(_side_square(x) for x in (a, b, c)))

    def rational_sides(self) -> Optional[Tuple[Fraction, Fraction, Fraction]]:
        roots = [rat_is_square(s) for s in self.squares]
        if any(r is None for r in roots):
            return None
        return tuple(roots)

    def commensurable_sides(self) -> Optional[Tuple[Fraction, Fraction, Fraction]]:
        """Rational sides proportional to these, if the ratios are rational."""
        a2 = self.squares[0]
        ratios = [rat_is_square(s / a2) for s in self.squares]
        if any(r is None for r in ratios):
            return None
        return tuple(ratios)

    def to_json(self):
        return {"sides": [format_length(s) for s in self.squares]}


def _side_square(x) -> Fraction:
    if isinstance(x, QuadVal):
        if not x.is_rational:
            raise ValueError(f"side {x} is a quadratic surd; give rational sides or sqrt(r)")
        x = x.a
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x <= 0:
            raise ValueError("sides must be positive")
        return x * x
    return parse_length_sq(x)


class FamilyTag(enum.Enum):
    C60 = "C60"
    B2A_TAN = "B2A_TAN"
    B2A_SIN = "B2A_SIN"
    HALF_SUM = "HALF_SUM"
    TWO_PLUS_HALF = "TWO_PLUS_HALF"


FAMILY_CONDITION = {
    FamilyTag.C60: 4,
    FamilyTag.B2A_TAN: 5,
    FamilyTag.B2A_SIN: 6,
    FamilyTag.HALF_SUM: 7,
    FamilyTag.TWO_PLUS_HALF: 8,
}


@dataclass(frozen=True)
class Family:
    tag: FamilyTag
    params: Tuple[Fraction, ...]

    def __post_init__(self):
        tag = self.tag if isinstance(self.tag, FamilyTag) else FamilyTag(self.tag)
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "params", tuple(Fraction(p) for p in self.params))
        self.sides()

    @property
    def condition(self) -> int:
        return FAMILY_CONDITION[self.tag]

    def _one(self) -> Fraction:
        if len(self.params) != 1:
            raise ValueError(f"{self.tag.value} takes exactly one parameter")
        return self.params[0]

    def half_sum_mk(self) -> Tuple[int, int]:
        if len(self.params) != 2 or any(p.denominator != 1 for p in self.params):
            raise ValueError("HALF_SUM takes two integer parameters M, K")
        M, K = (int(p) for p in self.params)
        if M < 1 or K < 1:
            raise ValueError("HALF_SUM needs positive M, K")
        return M, K

    def sides(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Rational sides ``(a, b, c)`` opposite the angles ``(A, B, C)``."""
        tag = self.tag
        if tag is FamilyTag.HALF_SUM:
            M, K = self.half_sum_mk()
            s = Fraction(M, K)
            _open_range(s, 0, 1, "2 sin(A/4) = M/K")
            return (s * (2 - s * s), 1 - s * s, Fraction(1))
        p = self._one()
        if tag is FamilyTag.B2A_SIN:
            _open_range(p, 0, 1, "s")
            cos_a = 1 - p * p / 2
            return (Fraction(1), 2 * cos_a, 4 * cos_a * cos_a - 1)
        _open_range(p, 0, THIRD, "t")
        t = p
        cos_a = (1 - 3 * t * t) / (1 + 3 * t * t)
        if tag is FamilyTag.C60:
            return (4 * t, 1 + 2 * t - 3 * t * t, 1 + 3 * t * t)
        if tag is FamilyTag.B2A_TAN:
            return (Fraction(1), 2 * cos_a, 4 * cos_a * cos_a - 1)
        # TWO_PLUS_HALF: angles (a, 2pi/3 - 2a, pi/3 + a), sides / (sqrt3/2)
        r3sin = 6 * t / (1 + 3 * t * t)
        cos2a = 2 * cos_a * cos_a - 1
        return (
            2 * r3sin / 3,
            cos2a + 2 * r3sin * cos_a / 3,
            cos_a + r3sin / 3,
        )

    def to_json(self):
        return {"family": self.tag.value, "params": [str(p) for p in self.params]}


def _open_range(p: Fraction, lo, hi, name: str):
    if p == lo or p == hi:
        raise DegenerateFamilyError(
            f"{name} = {p} lies on the boundary of ({lo}, {hi}); the triangle is "
            "degenerate or has commensurable angles"
        )
    if not lo < p < hi:
        raise ValueError(f"{name} = {p} is outside the open range ({lo}, {hi})")


TriangleSpec = Union[AnglesPi, Sides, Family]


# ---------------------------------------------------------------------------
# angle data


@dataclass(frozen=True)
class AngleData:
    cosA: Fraction
    cosB: Fraction
    cosC: Fraction
    sinprod_AB: Fraction
    sinprod_AC: Fraction
    sinprod_BC: Fraction

    def cos(self, i: int) -> Fraction:
        return (self.cosA, self.cosB, self.cosC)[i]

    def sinprod(self, i: int, j: int) -> Fraction:
        key = frozenset((i, j))
        if len(key) != 2:
            raise ValueError("sinprod needs two distinct angles")
        return {
            frozenset((0, 1)): self.sinprod_AB,
            frozenset((0, 2)): self.sinprod_AC,
            frozenset((1, 2)): self.sinprod_BC,
        }[key]


def angle_data_from_sides(a, b, c) -> AngleData:
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    area_sq, _ = heron_area_sq(a, b, c)
    # sin X = 2*area / (product of the two sides at X)
    four_area_sq = 4 * area_sq
    return AngleData(
        cosA=(b * b + c * c - a * a) / (2 * b * c),
        cosB=(a * a + c * c - b * b) / (2 * a * c),
        cosC=(a * a + b * b - c * c) / (2 * a * b),
        sinprod_AB=four_area_sq / (a * b * c * c),
        sinprod_AC=four_area_sq / (a * b * b * c),
        sinprod_BC=four_area_sq / (a * a * b * c),
    )


def _check_cos(cos_x: Fraction) -> Fraction:
    cos_x = Fraction(cos_x)
    if not -1 < cos_x < 1:
        raise ValueError(f"cosine {cos_x} is not in (-1, 1)")
    return cos_x


def test_sqrt3_tan_half(cos_x) -> Optional[Tuple[Fraction, Fraction]]:
    """``(q, t)`` with ``q = sqrt(3) tan(X/2)`` and ``t = q/3``, if q is rational."""
    cos_x = _check_cos(cos_x)
    q = rat_is_square(3 * (1 - cos_x) / (1 + cos_x))
    if q is None:
        return None
    return q, q / 3


def test_sin_half(cos_x) -> Optional[Fraction]:
    cos_x = _check_cos(cos_x)
    return rat_is_square((1 - cos_x) / 2)


def test_two_sin_quarter(cos_x) -> Optional[Tuple[int, int]]:
    """``2 sin(X/4) = M/K`` in lowest terms, if rational."""
    cos_x = _check_cos(cos_x)
    cos_half = rat_is_square((1 + cos_x) / 2)
    if cos_half is None:
        return None
    sin_quarter = rat_is_square((1 - cos_half) / 2)
    if sin_quarter is None:
        return None
    mk = 2 * sin_quarter
    return mk.numerator, mk.denominator


# keep pytest from collecting these when a test module imports them
test_sqrt3_tan_half.__test__ = False  # type: ignore[attr-defined]
test_sin_half.__test__ = False  # type: ignore[attr-defined]
test_two_sin_quarter.__test__ = False  # type: ignore[attr-defined]


class Relation(enum.Enum):
    C_60 = "C_60"
    B_2A = "B_2A"
    C_HALF_SUM = "C_HALF_SUM"
    C_TWO_PLUS_HALF = "C_TWO_PLUS_HALF"
    ISOSCELES = "ISOSCELES"
    RIGHT = "RIGHT"
    THIRTY_SIXTY_NINETY = "THIRTY_SIXTY_NINETY"


Perm = Tuple[int, int, int]
_PERMS: List[Perm] = list(permutations(range(3)))


def _holds_pi(ang: Tuple[Fraction, ...], rel: Relation, perm: Perm) -> bool:
    A, B, C = (ang[i] for i in perm)
    if rel is Relation.C_60:
        return C == THIRD
    if rel is Relation.B_2A:
        return B == 2 * A
    if rel is Relation.C_HALF_SUM:
        return C == A / 2 + B
    if rel is Relation.C_TWO_PLUS_HALF:
        return C == 2 * A + B / 2
    if rel is Relation.ISOSCELES:
        return A == B
    if rel is Relation.RIGHT:
        return C == HALF
    return (A, B, C) == (Fraction(1, 6), HALF, THIRD)


def _holds_cos(d: AngleData, rel: Relation, perm: Perm) -> bool:
    i, j, k = perm
    cA, cB, cC = d.cos(i), d.cos(j), d.cos(k)
    if rel is Relation.C_60:
        return cC == HALF
    if rel is Relation.B_2A:
        # cos is injective on (0, pi) and B = 2pi - 2A is impossible
        return cB == 2 * cA * cA - 1
    if rel is Relation.C_HALF_SUM:
        # C - B = A/2 in (0, pi/2)  <=>  C > B and cos(2(C - B)) = cos A
        if not cC < cB:
            return False
        cos_diff = cC * cB + d.sinprod(j, k)
        return 2 * cos_diff * cos_diff - 1 == cA
    if rel is Relation.C_TWO_PLUS_HALF:
        # with A + B + C = pi this is C - A = pi/3
        return cC < cA and cC * cA + d.sinprod(i, k) == HALF
    if rel is Relation.ISOSCELES:
        return cA == cB
    if rel is Relation.RIGHT:
        return cC == 0
    return False  # 30-60-90 has no rational-sided representative


def relation_permutations(data: Union[AngleData, AnglesPi], relation: Relation) -> List[Perm]:
    """Every assignment ``(A, B, C)`` of vertex indices under which ``relation`` holds."""
    relation = Relation(relation)
    if isinstance(data, AnglesPi):
        return [p for p in _PERMS if _holds_pi(data.angles, relation, p)]
    return [p for p in _PERMS if _holds_cos(data, relation, p)]


def check_angle_relation(data: Union[AngleData, AnglesPi], relation: Relation) -> Optional[Perm]:
    perms = relation_permutations(data, relation)
    return perms[0] if perms else None


# ---------------------------------------------------------------------------
# tiles


class TileKind(enum.Enum):
    GROUP1 = "GROUP1"
    GROUP2 = "GROUP2"
    RIGHT = "RIGHT"
    COMMENSURATE = "COMMENSURATE"


@dataclass(frozen=True)
class TileShape:
    kind: TileKind
    sides: Optional[Tuple[int, int, int]]
    angle_relation: str

    def to_json(self):
        return {
            "kind": self.kind.value,
            "sides": list(self.sides) if self.sides is not None else None,
            "angle_relation": self.angle_relation,
        }


def primitive_triple(a, b, c) -> Tuple[int, int, int]:
    """Scale positive rationals to coprime integers, keeping their order."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    den = a.denominator * b.denominator * c.denominator
    ints = [int(x * den) for x in (a, b, c)]
    g = gcd(gcd(ints[0], ints[1]), ints[2])
    return tuple(x // g for x in ints)


def group2_tile(t) -> Tuple[int, int, int]:
    """Tile ``(alpha, pi/3 - alpha, 2pi/3)`` with ``sqrt(3) tan(alpha/2) = 3t``."""
    t = Fraction(t)
    _open_range(t, 0, THIRD, "t")
    return primitive_triple(4 * t, 1 - 2 * t - 3 * t * t, 1 + 3 * t * t)


def group1_tile(s) -> Tuple[int, int, int]:
    """Tile with ``3 alpha + 2 beta = pi`` and ``a/c = s = 2 sin(alpha/2)``."""
    s = Fraction(s)
    _open_range(s, 0, 1, "s")
    return primitive_triple(s, 1 - s * s, 1)


def tile_shape_for(condition: int, witness) -> TileShape:
    """Tile of the non-square tiling for conditions 4 to 8.

    ``witness`` is ``t`` for 4, 5 and 8, ``s = 2 sin(A/2)`` for 6 and
    ``(M, K)`` for 7.
    """
    if condition in (4, 5, 8):
        return TileShape(TileKind.GROUP2, group2_tile(witness), "gamma = 2pi/3")
    if condition == 6:
        return TileShape(TileKind.GROUP1, group1_tile(witness), "3alpha + 2beta = pi")
    if condition == 7:
        M, K = witness
        return TileShape(TileKind.GROUP1, group1_tile(Fraction(M, K)), "3alpha + 2beta = pi")
    raise ValueError(f"tile shapes are derived for conditions 4..8, not {condition}")


# ---------------------------------------------------------------------------
# decision


@dataclass
class Verdict:
    input: dict
    conditions: Dict[int, dict] = field(default_factory=dict)
    tile_shapes: Dict[int, TileShape] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def condition_set(self) -> frozenset:
        return frozenset(self.conditions)

    @property
    def admits_nonsquare(self) -> bool:
        return bool(self.conditions)

    @property
    def witnesses(self) -> Dict[int, dict]:
        return self.conditions

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "conditions": [
                {
                    "id": cid,
                    "witness": self.conditions[cid],
                    "tile_shape": self.tile_shapes[cid].to_json() if cid in self.tile_shapes else None,
                }
                for cid in sorted(self.conditions)
            ],
            "admits_nonsquare": self.admits_nonsquare,
            "notes": list(self.notes),
        }


_CONDITION_1_TILE = TileShape(TileKind.RIGHT, None, "right (half of T)")
_CONDITION_2_TILE = TileShape(TileKind.RIGHT, None, "right (similar to T)")
_CONDITION_3_TILE = TileShape(TileKind.COMMENSURATE, None, "(pi/6, pi/3, pi/2)")


def _is_thirty_sixty_ninety(squares) -> bool:
    s = sorted(squares)
    return s[1] == 3 * s[0] and s[2] == 4 * s[0]


def _classify_angles_pi(spec: AnglesPi, v: Verdict):
    perms = relation_permutations(spec, Relation.ISOSCELES)
    if perms:
        i, j, _ = perms[0]
        v.conditions[1] = {"equal_angles": sorted((i, j))}
        v.tile_shapes[1] = _CONDITION_1_TILE
    right = relation_permutations(spec, Relation.RIGHT)
    if right:
        i, j, k = right[0]
        # tan of a rational multiple of pi is rational only at pi/4 (Niven)
        if spec.angles[i] == Fraction(1, 4):
            v.conditions[2] = {"right_angle": k, "M": 1, "K": 1, "M2_plus_K2": 2}
            v.tile_shapes[2] = _CONDITION_2_TILE
        else:
            v.notes.append("condition 2: right triangle whose legs are not in rational ratio")
    if relation_permutations(spec, Relation.THIRTY_SIXTY_NINETY):
        v.conditions[3] = {}
        v.tile_shapes[3] = _CONDITION_3_TILE
    v.notes.append("commensurable angles: only conditions 1-3 can hold")


def _right_condition(v: Verdict, squares, k: int, legs_ratio_sq: Fraction):
    ratio = rat_is_square(legs_ratio_sq)
    if ratio is None:
        v.notes.append("condition 2: right triangle whose legs are not in rational ratio")
        return
    if ratio > 1:
        ratio = 1 / ratio
    M, K = ratio.numerator, ratio.denominator
    root = is_perfect_square(M * M + K * K)
    if root is None:
        v.conditions[2] = {"right_angle": k, "M": M, "K": K, "M2_plus_K2": M * M + K * K}
        v.tile_shapes[2] = _CONDITION_2_TILE
    else:
        v.notes.append(f"condition 2 fails: legs ratio {M}/{K} but {M}^2 + {K}^2 = {root}^2")


def _classify_sides(sq: Tuple[Fraction, ...], v: Verdict):
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if sq[i] == sq[j]:
            v.conditions[1] = {"equal_angles": [i, j]}
            v.tile_shapes[1] = _CONDITION_1_TILE
            break
    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if sq[i] + sq[j] == sq[k]:
            _right_condition(v, sq, k, sq[i] / sq[j])
    if _is_thirty_sixty_ninety(sq):
        v.conditions[3] = {}
        v.tile_shapes[3] = _CONDITION_3_TILE


def _commensurable_angles(d: AngleData) -> bool:
    # a rational cosine of a rational multiple of pi is 0, +-1/2 or +-1 (Niven)
    return all(d.cos(i) in (0, HALF, -HALF) for i in range(3))


def _pick_tan_witness(d: AngleData, perms: List[Perm]):
    found = []
    for perm in perms:
        res = test_sqrt3_tan_half(d.cos(perm[0]))
        if res is not None:
            found.append((perm, res))
    in_range = [f for f in found if 0 < f[1][1] < THIRD]
    return (in_range or found or [None])[0]


def _classify_incommensurable(d: AngleData, v: Verdict):
    c60 = relation_permutations(d, Relation.C_60)
    hit = _pick_tan_witness(d, c60)
    if hit is not None:
        (i, j, k), (q, t) = hit
        v.conditions[4] = {"A": i, "B": j, "C": k, "sqrt3_tan_half_A": str(q), "t": str(t)}
        v.tile_shapes[4] = tile_shape_for(4, t)

    b2a = relation_permutations(d, Relation.B_2A)
    hit = _pick_tan_witness(d, b2a)
    if hit is not None:
        (i, j, k), (q, t) = hit
        v.conditions[5] = {"A": i, "B": j, "C": k, "sqrt3_tan_half_A": str(q), "t": str(t)}
        v.tile_shapes[5] = tile_shape_for(5, t)
    for i, j, k in b2a:
        sh = test_sin_half(d.cos(i))
        if sh is not None:
            s = 2 * sh
            v.conditions[6] = {"A": i, "B": j, "C": k, "sin_half_A": str(sh), "s": str(s)}
            v.tile_shapes[6] = tile_shape_for(6, s)
            break

    for i, j, k in relation_permutations(d, Relation.C_HALF_SUM):
        mk = test_two_sin_quarter(d.cos(i))
        if mk is None:
            continue
        M, K = mk
        N = 2 * K * K - M * M
        root = is_perfect_square(N)
        if root is None:
            v.conditions[7] = {"A": i, "B": j, "C": k, "M": M, "K": K, "2K2_minus_M2": N}
            v.tile_shapes[7] = tile_shape_for(7, (M, K))
            break
        v.notes.append(
            f"condition 7 fails: C = A/2 + B and 2 sin(A/4) = {M}/{K}, but "
            f"2K^2 - M^2 = {N} = {root}^2 is a square (only square triquadratic counts)"
        )

    hit = _pick_tan_witness(d, relation_permutations(d, Relation.C_TWO_PLUS_HALF))
    if hit is not None:
        (i, j, k), (q, t) = hit
        v.conditions[8] = {"A": i, "B": j, "C": k, "sqrt3_tan_half_A": str(q), "t": str(t)}
        v.tile_shapes[8] = tile_shape_for(8, t)


def classify(spec: TriangleSpec) -> Verdict:
    """Evaluate the eight conditions; ``admits_nonsquare`` iff any holds."""
    v = Verdict(input=spec.to_json())
    if isinstance(spec, AnglesPi):
        _classify_angles_pi(spec, v)
        return v
    if isinstance(spec, Family):
        sides = Sides.of(*spec.sides())
    elif isinstance(spec, Sides):
        sides = spec
    else:
        raise TypeError(f"not a triangle spec: {spec!r}")

    _classify_sides(sides.squares, v)
    rational = sides.commensurable_sides()
    if rational is None:
        v.notes.append("incommensurable sides: conditions 4-8 cannot hold")
    else:
        d = angle_data_from_sides(*rational)
        if _commensurable_angles(d):
            v.notes.append("commensurable angles: only conditions 1-3 can hold")
        else:
            _classify_incommensurable(d, v)

    if isinstance(spec, Family):
        cond = spec.condition
        if spec.tag is FamilyTag.HALF_SUM:
            M, K = spec.half_sum_mk()
            N = 2 * K * K - M * M
            root = is_perfect_square(N)
            v.notes.append(
                f"family parameters M={M}, K={K}: 2K^2 - M^2 = {N}"
                + (f" = {root}^2 is a square" if root is not None else " is not a square")
            )
            expected = root is None
            if 7 in v.conditions:
                v.conditions[7].update(family_M=M, family_K=K, family_2K2_minus_M2=N)
        else:
            expected = True
        if expected and cond not in v.conditions:
            raise AssertionError(f"{spec.tag.value} family did not satisfy condition {cond}")
    return v
