"""Exact complex scalars with rational real and imaginary parts."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def parse_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a reduced Fraction.

    Raises ValueError on anything else, including a zero denominator.
    """
    if not isinstance(text, str):
        raise ValueError(f"expected a fraction string, got {text!r}")
    s = text.strip()
    if not s:
        raise ValueError("empty fraction string")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed fraction {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_fraction(x: Fraction) -> str:
    return str(Fraction(x))


class ExactScalar:
    """An element of Q(i), stored as two reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, ExactScalar):
            re, im = re.re, re.im + Fraction(im)
        elif isinstance(re, complex):
            raise TypeError("float complex values are not exact; use ExactScalar(re, im)")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return cls(*value)
        raise TypeError(f"cannot make an exact scalar from {value!r}")

    @classmethod
    def parse(cls, pair) -> "ExactScalar":
        re, im = pair
        return cls(parse_fraction(re), parse_fraction(im))

    def to_pair(self) -> list[str]:
        return [format_fraction(self.re), format_fraction(self.im)]

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm2()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * o.conjugate() * ExactScalar(1 / n)

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) / self

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"ExactScalar({self.re})"
        return f"ExactScalar({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = ExactScalar(0, 1)
