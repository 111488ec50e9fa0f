"""Exact arithmetic in Q(sqrt 2).

Every threshold of the width construction lives in this field, so case
dispatch is decided without floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class QuadNum:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, x) -> QuadNum:
        return x if isinstance(x, QuadNum) else cls(x, 0)

    def __repr__(self):
        return f"QuadNum({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt(2)"

    def __add__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadNum(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadNum(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QuadNum.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadNum(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadNum:
        return QuadNum(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def __truediv__(self, other):
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        num = self * o.conjugate()
        return QuadNum(num.a / nrm, num.b / nrm)

    def __rtruediv__(self, other):
        return QuadNum.coerce(other) / self

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == 0 or sb == 0 or sa == sb:
            return sa or sb
        # opposite signs: compare a^2 with 2b^2
        d = a * a - 2 * b * b
        return sa if d > 0 else (sb if d < 0 else 0)

    def _cmp(self, other) -> int:
        return (self - QuadNum.coerce(other)).sign()

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __floor__(self) -> int:
        # integer guess from isqrt, then settle with exact comparisons
        p, q = self.b.numerator, self.b.denominator
        r = isqrt(2 * p * p) // q
        guess = (self.a.numerator // self.a.denominator) + (r if p >= 0 else -r - 1)
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def __ceil__(self) -> int:
        f = self.__floor__()
        return f if self == f else f + 1

    def floor(self) -> int:
        return self.__floor__()

    def ceil(self) -> int:
        return self.__ceil__()

    def __float__(self):
        return float(self.a) + float(self.b) * 2 ** 0.5


SQRT2 = QuadNum(0, 1)
#: alpha = 1 + 1/sqrt(2)
ALPHA = QuadNum(1, Fraction(1, 2))
#: gamma = 1 + sqrt(2)
GAMMA = QuadNum(1, 1)


def anchor_min(k: int) -> QuadNum:
    """Smallest legal anchor size (gamma + 1)(k + 1)."""
    return (GAMMA + 1) * (k + 1)


def anchor_max(k: int, delta: int) -> QuadNum:
    """Largest legal anchor size 3(gamma + 1)(k + 1)Delta."""
    return 3 * (GAMMA + 1) * (k + 1) * delta


def case3_limit(k: int) -> QuadNum:
    return 3 * (GAMMA + 1) * (k + 1)


def lemma3_width_bound(k: int, delta: int) -> QuadNum:
    """gamma (k + 1)(3 gamma Delta - 1) as an exact value."""
    return GAMMA * (k + 1) * (3 * GAMMA * delta - 1)


def anchor_bag_limit(s_size: int, k: int) -> QuadNum:
    """alpha |S| - gamma (k + 1)."""
    return ALPHA * s_size - GAMMA * (k + 1)
