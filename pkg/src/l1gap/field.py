"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

Elements are stored as a triple of integers ``(an, bn, den)`` meaning
``(an + bn*sqrt(d)) / den`` with ``den > 0`` and ``gcd(an, bn, den) == 1``.
That triple is canonical, so equality of values is equality of triples.
"""

from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import FieldMismatch, ParseError


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


_SCALE = 1 << 64


@functools.lru_cache(maxsize=None)
def _scaled_root(d: int) -> int:
    return math.isqrt(d * _SCALE * _SCALE)


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    d: int = 0

    def __post_init__(self):
        if self.kind == "rational":
            if self.d != 0:
                raise ValueError("rational field takes no d")
        elif self.kind == "quadratic":
            if not _is_squarefree(self.d):
                raise ValueError(f"d = {self.d} must be a squarefree integer >= 2")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldDescriptor":
        return cls("rational")

    @classmethod
    def quadratic(cls, d: int) -> "FieldDescriptor":
        return cls("quadratic", d)

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def __call__(self, a=0, b=0) -> "FieldElement":
        """Build ``a + b*sqrt(d)`` from ints, Fractions or strings."""
        if isinstance(a, str) and b == 0:
            return parse_element(a, self)
        return FieldElement.from_parts(Fraction(a), Fraction(b), self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, 0, 1, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, 0, 1, self)

    def sqrt(self) -> "FieldElement":
        if self.is_rational:
            raise ValueError("Q has no adjoined square root")
        return FieldElement(0, 1, 1, self)

    def coerce(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        if isinstance(x, int):
            return FieldElement(x, 0, 1, self)
        if isinstance(x, Rational):
            return FieldElement(x.numerator, 0, x.denominator, self)
        if isinstance(x, str):
            return parse_element(x, self)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self}")

    def __str__(self):
        return "Q" if self.is_rational else f"Q(sqrt({self.d}))"


QQ = FieldDescriptor.rational()


class FieldElement:
    __slots__ = ("an", "bn", "den", "field")

    def __init__(self, an: int, bn: int, den: int, field: FieldDescriptor, _canonical=False):
        if not _canonical:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if field.is_rational and bn:
                raise ValueError("rational field element with sqrt component")
            if den < 0:
                an, bn, den = -an, -bn, -den
            g = math.gcd(an, bn, den)
            if g > 1:
                an, bn, den = an // g, bn // g, den // g
        self.an = an
        self.bn = bn
        self.den = den
        self.field = field

    @classmethod
    def from_parts(cls, a: Fraction, b: Fraction, field: FieldDescriptor) -> "FieldElement":
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        return cls(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, field)

    # -- coordinates ------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self.an, self.den)

    @property
    def b(self) -> Fraction:
        return Fraction(self.bn, self.den)

    def rational_coords(self) -> tuple[Fraction, Fraction]:
        return self.a, self.b

    def is_rational(self) -> bool:
        return self.bn == 0

    def is_zero(self) -> bool:
        return self.an == 0 and self.bn == 0

    def is_integer(self) -> bool:
        return self.bn == 0 and self.den == 1

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.an, -self.bn, self.den, self.field, _canonical=True)

    # -- arithmetic -------------------------------------------------------

    def _other(self, y) -> "FieldElement":
        if isinstance(y, FieldElement):
            if y.field != self.field:
                raise FieldMismatch(f"{self.field} vs {y.field}")
            return y
        if isinstance(y, int):
            return FieldElement(y, 0, 1, self.field, _canonical=True)
        if isinstance(y, Rational):
            return FieldElement(y.numerator, 0, y.denominator, self.field, _canonical=True)
        return NotImplemented

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        if self.den == y.den:
            return FieldElement(self.an + y.an, self.bn + y.bn, self.den, self.field)
        return FieldElement(self.an * y.den + y.an * self.den,
                            self.bn * y.den + y.bn * self.den,
                            self.den * y.den, self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.an, -self.bn, self.den, self.field, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return y + (-self)

    def __mul__(self, y):
        if isinstance(y, int):
            if y == 0:
                return self.field.zero
            return FieldElement(self.an * y, self.bn * y, self.den, self.field)
        y = self._other(y)
        if y is NotImplemented:
            return y
        if not (self.bn or y.bn):
            return FieldElement(self.an * y.an, 0, self.den * y.den, self.field)
        d = self.field.d
        return FieldElement(self.an * y.an + d * self.bn * y.bn,
                            self.an * y.bn + self.bn * y.an,
                            self.den * y.den, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # 1/((a + b r)/D) = D (a - b r) / (a^2 - d b^2)
        norm = self.an * self.an - self.field.d * self.bn * self.bn
        return FieldElement(self.den * self.an, -self.den * self.bn, norm, self.field)

    def __truediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        if y.is_zero():
            raise ZeroDivisionError("division by zero in field")
        if not y.bn:
            return FieldElement(self.an * y.den, self.bn * y.den, self.den * y.an, self.field)
        return self * y.inverse()

    def __rtruediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return y / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ------------------------------------------------------------

    def sign(self) -> int:
        """Sign of the real embedding, decided on integers only."""
        sa = (self.an > 0) - (self.an < 0)
        sb = (self.bn > 0) - (self.bn < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and d*b^2 wins (never equal, d squarefree)
        if self.an * self.an > self.field.d * self.bn * self.bn:
            return sa
        return sb

    def __eq__(self, y):
        y = self._other(y) if not isinstance(y, FieldElement) else y
        if y is NotImplemented:
            return NotImplemented
        if y.field != self.field:
            raise FieldMismatch(f"{self.field} vs {y.field}")
        return self.an == y.an and self.bn == y.bn and self.den == y.den

    def __hash__(self):
        if self.bn == 0:
            return hash(Fraction(self.an, self.den))
        return hash((self.an, self.bn, self.den, self.field.d))

    def _cmp(self, y) -> int:
        y = self._other(y)
        if y is NotImplemented:
            return y
        return (self - y).sign()

    def __lt__(self, y):
        c = self._cmp(y)
        return c if c is NotImplemented else c < 0

    def __le__(self, y):
        c = self._cmp(y)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, y):
        c = self._cmp(y)
        return c if c is NotImplemented else c > 0

    def __ge__(self, y):
        c = self._cmp(y)
        return c if c is NotImplemented else c >= 0

    def __bool__(self):
        return not self.is_zero()

    # -- rounding ---------------------------------------------------------

    def floor(self) -> int:
        if not self.bn:
            return self.an // self.den
        # integer guess from isqrt, then exact correction
        guess = (self.an * _SCALE + self.bn * _scaled_root(self.field.d)) // (self.den * _SCALE)
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return -((-self).floor())

    def nearest_integer(self) -> int:
        """Round half up."""
        return (self + Fraction(1, 2)).floor()

    def __float__(self):
        return (self.an + self.bn * math.sqrt(self.field.d)) / self.den

    # -- text -------------------------------------------------------------

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"FieldElement({format_element(self)!r}, {self.field})"


def compare(x: FieldElement, y: FieldElement) -> Ordering:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    return Ordering((x - y).sign())


def rational_coords(x: FieldElement) -> tuple[Fraction, Fraction]:
    return x.rational_coords()


def format_element(x: FieldElement) -> str:
    a, b = x.a, x.b
    if b == 0:
        return str(a)
    d = x.field.d
    if b == 1:
        tail = f"sqrt({d})"
    elif b == -1:
        tail = f"-sqrt({d})"
    else:
        tail = f"{b}*sqrt({d})"
    if a == 0:
        return tail
    if b > 0:
        return f"{a}+{tail}"
    return f"{a}{tail}"


_ELEMENT_RE = re.compile(
    r"""^\s*
    (?P<a>[+-]?\d+(?:/\d+)?(?![\d/])(?!\s*\*))?
    \s*
    (?:
      (?P<sign>[+-])?\s*
      (?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?
      sqrt\(\s*(?P<d>\d+)\s*\)
    )?
    \s*$""",
    re.VERBOSE,
)


def parse_element(text: str, field: FieldDescriptor) -> FieldElement:
    """Parse ``"p/q"`` or ``"p/q+r/s*sqrt(d)"`` (and the obvious shorthands)."""
    m = _ELEMENT_RE.match(text)
    if not m or (m.group("a") is None and m.group("d") is None):
        raise ParseError(f"malformed field element {text!r}")
    if m.group("a") is not None and m.group("d") is not None and m.group("sign") is None:
        raise ParseError(f"missing sign before sqrt term in {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(0)
    if m.group("d") is not None:
        d = int(m.group("d"))
        if field.is_rational or d != field.d:
            raise ParseError(f"sqrt({d}) does not belong to {field}")
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-":
            b = -b
    return FieldElement.from_parts(a, b, field)
