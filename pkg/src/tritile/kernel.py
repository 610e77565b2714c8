"""Exact scalars: rationals and elements of real quadratic fields Q(sqrt D).

Rationals are :class:`fractions.Fraction`, which is already kept in lowest
terms with a positive denominator.  :class:`QuadVal` adds a single square
root on top of that.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Optional, Tuple, Union

from sympy import factorint

Rational = Fraction
Scalar = Union[int, Fraction, "QuadVal"]

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class MixedFieldError(ValueError):
    """Raised when values from two different fields Q(sqrt D) are combined."""


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; non-canonical input is normalized."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def int_sqrt(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def rat_is_square(q) -> Optional[Fraction]:
    """Non-negative rational square root of ``q``, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    # lowest terms: q is a square iff numerator and denominator both are
    n = int_sqrt(q.numerator)
    if n is None:
        return None
    d = int_sqrt(q.denominator)
    if d is None:
        return None
    return Fraction(n, d)


def squarefree_part(n: int) -> Tuple[int, int]:
    """Write ``n = s * f**2`` with ``s`` squarefree; returns ``(s, f)``."""
    if n < 1:
        raise ValueError(f"squarefree_part needs n >= 1, got {n}")
    s = f = 1
    for p, e in factorint(n).items():
        f *= p ** (e // 2)
        if e % 2:
            s *= p
    return s, f


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_part(n)[1] == 1


def _check_disc(d: int) -> int:
    if not isinstance(d, int) or d < 0:
        raise ValueError(f"discriminant must be a non-negative integer, got {d!r}")
    if d > 1 and not is_squarefree(d):
        raise ValueError(f"discriminant {d} is not squarefree")
    return d


@total_ordering
class QuadVal:
    """The real number ``a + b*sqrt(D)`` with rational ``a``, ``b``.

    When ``b == 0`` the value is rational and ``D`` is stored as 1, so
    equality and hashing are structural and agree with :class:`Fraction`.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 1, *, _trusted: bool = False):
        a = Fraction(a)
        b = Fraction(b)
        if not _trusted:
            _check_disc(d)
        if d == 1:
            a, b = a + b, Fraction(0)
        elif d == 0:
            b = Fraction(0)
        if b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadVal is immutable")

    @classmethod
    def of(cls, x: Scalar) -> "QuadVal":
        if isinstance(x, QuadVal):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x, 0, 1, _trusted=True)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadVal")

    @classmethod
    def sqrt_of(cls, q) -> "QuadVal":
        """Exact square root of a non-negative rational, as ``r*sqrt(D)``."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return cls()
        s, f = squarefree_part(q.numerator * q.denominator)
        return cls(0, Fraction(f, q.denominator), s, _trusted=True)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def _coerce(self, other) -> Optional["QuadVal"]:
        if isinstance(other, QuadVal):
            o = other
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadVal(other, 0, 1, _trusted=True)
        else:
            return None
        if self.b != 0 and o.b != 0 and self.d != o.d:
            raise MixedFieldError(f"cannot combine Q(sqrt {self.d}) with Q(sqrt {o.d})")
        return o

    def _field(self, o: "QuadVal") -> int:
        return self.d if self.b != 0 else o.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadVal(self.a + o.a, self.b + o.b, self._field(o), _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return QuadVal(-self.a, -self.b, self.d, _trusted=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadVal(self.a - o.a, self.b - o.b, self._field(o), _trusted=True)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadVal(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
            _trusted=True,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def conjugate(self) -> "QuadVal":
        return QuadVal(self.a, -self.b, self.d, _trusted=True)

    def inverse(self) -> "QuadVal":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadVal division by zero")
        return QuadVal(self.a / n, -self.b / n, self.d, _trusted=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadVal(1, 0, 1, _trusted=True)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        return quad_sign(self)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, QuadVal):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad_sign(self - o) < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        from math import sqrt

        return float(self.a) + float(self.b) * sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"QuadVal({self.a})"
        return f"QuadVal({self.a}, {self.b}, D={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d})"


def quad_sign(v) -> int:
    """Exact sign of ``a + b*sqrt(D)``."""
    v = QuadVal.of(v)
    a, b = v.a, v.b
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger of a^2 and b^2*D wins
    lhs = a * a
    rhs = b * b * v.d
    if lhs > rhs:
        return sa
    if lhs < rhs:
        return sb
    return 0


def heron_area_sq(a, b, c) -> Tuple[Fraction, int]:
    """Squared area of the triangle with rational sides ``a, b, c``.

    Also returns the squarefree ``D`` with ``area`` in ``Q * sqrt(D)``.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if min(a, b, c) <= 0:
        raise ValueError("triangle sides must be positive")
    if a + b <= c or a + c <= b or b + c <= a:
        raise ValueError(f"({a}, {b}, {c}) violates the strict triangle inequality")
    area_sq = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c) / 16
    return area_sq, squarefree_part(area_sq.numerator * area_sq.denominator)[0]


def heron_area_sq_from_squares(a2, b2, c2) -> Fraction:
    """Squared area from squared side lengths (sides need not be rational)."""
    a2, b2, c2 = Fraction(a2), Fraction(b2), Fraction(c2)
    area_sq = (4 * a2 * b2 - (a2 + b2 - c2) ** 2) / 16
    if min(a2, b2, c2) <= 0 or area_sq <= 0:
        raise ValueError("squared sides do not form a non-degenerate triangle")
    return area_sq


_SIDE_RE = re.compile(r"^\s*sqrt\s*\(\s*([^()]+?)\s*\)\s*$")


def parse_length_sq(text) -> Fraction:
    """Squared length of a side written ``"p/q"`` or ``"sqrt(p/q)"``."""
    if isinstance(text, str):
        m = _SIDE_RE.match(text)
        if m is not None:
            v = parse_rational(m.group(1))
            if v <= 0:
                raise ValueError(f"side length {text!r} is not positive")
            return v
    v = parse_rational(text)
    if v <= 0:
        raise ValueError(f"side length {text!r} is not positive")
    return v * v


def format_length(sq: Fraction) -> str:
    """Inverse of :func:`parse_length_sq`."""
    r = rat_is_square(sq)
    if r is not None:
        return str(r)
    return f"sqrt({Fraction(sq)})"
