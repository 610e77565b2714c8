"""Perfect squares, quartic/Weierstrass transforms and torsion on y^2 = cubic.

Curves are integral models ``y^2 = x^3 + a2*x^2 + a1*x + a0``.  Torsion is
found by Nagell-Lutz candidate enumeration and certified by computing each
candidate's order with the group law, giving up after order 12 (Mazur).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from sympy import divisors, factorint

from .kernel import int_sqrt, rat_is_square

MAZUR_ORDER_BOUND = 12
SEARCH_HEIGHT_CAP = 10**6

# Curves that recur in the non-squareness arguments, keyed by a short name.
# The LMFDB labels are documentation only.
PAPER_CURVES = {
    "eell5": ((2, -3, 0), "96.b1"),
    "eell3": ((10, 1, 0), "96.b1"),
    "eell2": ((18, -27, 0), "144.a1"),
    "eell": ((6, -3, 0), "36.a2"),
}


def is_perfect_square(n: int) -> Optional[int]:
    return int_sqrt(n)


@dataclass(frozen=True)
class EllipticCurve:
    a2: int
    a1: int
    a0: int

    def __post_init__(self):
        for name in ("a2", "a1", "a0"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")
        if self.discriminant() == 0:
            raise ValueError(f"{self} is singular")

    def discriminant(self) -> int:
        """Discriminant of the cubic on the right-hand side."""
        a, b, c = self.a2, self.a1, self.a0
        return 18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c

    def rhs(self, x):
        return ((x + self.a2) * x + self.a1) * x + self.a0

    def contains(self, p: "ECPoint") -> bool:
        if p.is_infinity:
            return True
        return p.y * p.y == self.rhs(p.x)

    @property
    def coeffs(self) -> Tuple[int, int, int]:
        return (self.a2, self.a1, self.a0)

    def __str__(self):
        terms = ["x^3"]
        for coef, mono in ((self.a2, "x^2"), (self.a1, "x"), (self.a0, "")):
            if coef:
                sign = "+" if coef > 0 else "-"
                mag = abs(coef)
                body = mono if (mag == 1 and mono) else f"{mag}{mono}"
                terms.append(f"{sign} {body}")
        return "y^2 = " + " ".join(terms)


@dataclass(frozen=True)
class ECPoint:
    """Affine point ``(x, y)``; both coordinates None for the point at infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self):
        if self.is_infinity:
            return self
        return ECPoint(self.x, -self.y)

    def sort_key(self):
        if self.is_infinity:
            return (0, 0, 0)
        return (1, self.x, self.y)

    def __str__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return [str(self.x), str(self.y)]


INFINITY = ECPoint()


def _require_on(c: EllipticCurve, *points: ECPoint):
    for p in points:
        if not c.contains(p):
            raise ValueError(f"{p} is not on {c}")


def ec_add(c: EllipticCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    _require_on(c, p, q)
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y != q.y or p.y == 0:
            return INFINITY
        lam = (3 * p.x * p.x + 2 * c.a2 * p.x + c.a1) / (2 * p.y)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - c.a2 - p.x - q.x
    y3 = lam * (p.x - x3) - p.y
    return ECPoint(x3, y3)


def ec_mul(c: EllipticCurve, n: int, p: ECPoint) -> ECPoint:
    if n < 0:
        return ec_mul(c, -n, -p)
    result = INFINITY
    while n:
        if n & 1:
            result = ec_add(c, result, p)
        p = ec_add(c, p, p)
        n >>= 1
    return result


def point_order(c: EllipticCurve, p: ECPoint, bound: int = MAZUR_ORDER_BOUND) -> Optional[int]:
    """Order of ``p`` if it is at most ``bound``, else None."""
    q = p
    for n in range(1, bound + 1):
        if q.is_infinity:
            return n
        q = ec_add(c, q, p)
    return None


def _integer_roots_shifted(c: EllipticCurve, y2: int) -> List[int]:
    # integer roots of x^3 + a2 x^2 + a1 x + (a0 - y2)
    const = c.a0 - y2
    if const == 0:
        roots = {0}
        # remaining quadratic x^2 + a2 x + a1
        disc = c.a2 * c.a2 - 4 * c.a1
        r = int_sqrt(disc)
        if r is not None:
            for num in (-c.a2 + r, -c.a2 - r):
                if num % 2 == 0:
                    roots.add(num // 2)
        return sorted(roots)
    out = []
    for d in divisors(abs(const)):
        for x in (d, -d):
            if c.rhs(x) == y2:
                out.append(x)
    return sorted(out)


@dataclass(frozen=True)
class TorsionReport:
    curve: EllipticCurve
    points: Tuple[ECPoint, ...]
    orders: Tuple[int, ...]
    structure: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.points)

    def structure_name(self) -> str:
        return " x ".join(f"Z/{n}" for n in self.structure) if self.structure else "trivial"

    def generators(self) -> List[ECPoint]:
        """Points whose order equals the group order (cyclic case only)."""
        return [p for p, o in zip(self.points, self.orders) if o == self.order]


def torsion_points(c: EllipticCurve) -> TorsionReport:
    """Full rational torsion subgroup, including the point at infinity."""
    disc = c.discriminant()
    ys = [0] + _square_divisors(abs(disc))
    candidates = []
    for y in ys:
        for x in _integer_roots_shifted(c, y * y):
            candidates.append(ECPoint(x, y))
            if y:
                candidates.append(ECPoint(x, -y))
    pts = [INFINITY]
    orders = [1]
    for p in sorted(set(candidates), key=ECPoint.sort_key):
        o = point_order(c, p)
        if o is not None:
            pts.append(p)
            orders.append(o)
    n = len(pts)
    two_torsion = sum(1 for p in pts if not p.is_infinity and p.y == 0)
    if n == 1:
        structure: Tuple[int, ...] = ()
    elif two_torsion == 3:
        structure = (2, n // 2)
    else:
        structure = (n,)
    return TorsionReport(c, tuple(pts), tuple(orders), structure)


def _square_divisors(n: int):
    # all y > 0 with y^2 | n
    if n == 0:
        return []
    base = 1
    for p, e in factorint(n).items():
        base *= p ** (e // 2)
    return list(divisors(base))


def rational_point_search(c: EllipticCurve, height: int) -> List[ECPoint]:
    """Affine rational points with ``x = u/v``, ``|u| <= height``, ``1 <= v <= height``.

    Brute force; sorted by ``v``, then ``u``, then ``y`` ascending.  This is
    evidence about the rank, never a proof.
    """
    if height < 1:
        raise ValueError("height must be positive")
    if height > SEARCH_HEIGHT_CAP:
        raise ValueError(f"height {height} exceeds the cap {SEARCH_HEIGHT_CAP}")
    a2, a1, a0 = c.a2, c.a1, c.a0
    out = []
    for v in range(1, height + 1):
        v2 = v * v
        v3 = v2 * v
        for u in range(-height, height + 1):
            if gcd(u, v) != 1:
                continue
            # y^2 = num / v^3, so y is rational iff num * v is a square
            num = u * u * u + a2 * u * u * v + a1 * u * v2 + a0 * v3
            if num < 0:
                continue
            r = int_sqrt(num * v)
            if r is None:
                continue
            x = Fraction(u, v)
            y = Fraction(r, v2)
            if y == 0:
                out.append(ECPoint(x, y))
            else:
                out.append(ECPoint(x, -y))
                out.append(ECPoint(x, y))
    return out


# ---------------------------------------------------------------------------
# quartic s^2 = t^4 + a t^2 + b  <->  y^2 = x^3 - 2a x^2 + (a^2 - 4b) x


@dataclass(frozen=True)
class QuarticCurve:
    a: int
    b: int

    def contains(self, t, s) -> bool:
        t, s = Fraction(t), Fraction(s)
        return s * s == t**4 + self.a * t * t + self.b


def quartic_to_weierstrass(q: QuarticCurve) -> EllipticCurve:
    return EllipticCurve(-2 * q.a, q.a * q.a - 4 * q.b, 0)


def quartic_point_map(q: QuarticCurve, t, s) -> ECPoint:
    t, s = Fraction(t), Fraction(s)
    if not q.contains(t, s):
        raise ValueError(f"({t}, {s}) is not on s^2 = t^4 + {q.a} t^2 + {q.b}")
    x = 2 * t * t - 2 * s + q.a
    return ECPoint(x, 2 * t * x)


def quartic_point_unmap(q: QuarticCurve, p: ECPoint) -> Optional[Tuple[Fraction, Fraction]]:
    if p.is_infinity:
        raise ValueError("the point at infinity has no quartic preimage")
    _require_on(quartic_to_weierstrass(q), p)
    if p.x == 0:
        return None
    t = p.y / (2 * p.x)
    s = t * t - (p.x - q.a) / 2
    return t, s


# ---------------------------------------------------------------------------
# non-squareness predicates


@dataclass(frozen=True)
class Prop52Report:
    a: int
    b: int
    norm_form: int
    norm_form_root: Optional[int]
    product: int
    product_root: Optional[int]

    @property
    def both_square(self) -> bool:
        return self.norm_form_root is not None and self.product_root is not None


def check_prop52(a: int, b: int) -> Prop52Report:
    """Square tests for ``a^2 + ab + b^2`` and ``a(a + b)`` with coprime a, b > 0.

    The two are never both squares; a report with ``both_square`` set would
    be a counterexample and raises instead.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if gcd(a, b) != 1:
        raise ValueError(f"gcd({a}, {b}) = {gcd(a, b)}, expected coprime input")
    nf = a * a + a * b + b * b
    pr = a * (a + b)
    rep = Prop52Report(a, b, nf, is_perfect_square(nf), pr, is_perfect_square(pr))
    if rep.both_square:
        raise AssertionError(f"counterexample to the non-squareness claim at ({a}, {b})")
    return rep


def eval_nonsquare_53(t) -> Fraction:
    t = Fraction(t)
    return (t * t - 2) * (t * t - 3)


def _check_pole(t: Fraction):
    if t == 1 or t == Fraction(-1, 3):
        raise ZeroDivisionError(f"pole at t = {t}")


def eval_nonsquare_54(t) -> Fraction:
    t = Fraction(t)
    _check_pole(t)
    return Fraction(2, 3) * (3 * t * t - 1) / ((3 * t + 1) * (t - 1))


def eval_nonsquare_55(t, constant: int = -1) -> Fraction:
    """``(3t^2 - 6t + constant) / ((t - 1)(3t + 1))``.

    ``constant=-1`` is the form equal to ``(x^2 + 6x - 3)/(4x)`` under
    ``t = (x - 1)/(x + 3)``; ``constant=+1`` is kept for comparison only.
    """
    if constant not in (-1, 1):
        raise ValueError("constant must be -1 or +1")
    t = Fraction(t)
    _check_pole(t)
    return (3 * t * t - 6 * t + constant) / ((t - 1) * (3 * t + 1))


def is_rational_square(q) -> bool:
    return rat_is_square(q) is not None
