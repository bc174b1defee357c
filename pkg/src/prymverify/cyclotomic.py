"""Exact arithmetic in Z[zeta6] and Q(zeta6).

Elements are written a + b*z in the power basis {1, z}, z = exp(pi*i/3),
with z**2 = z - 1.  The primitive cube root of unity is z**2 = z - 1.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from fractions import Fraction

ZETA6 = cmath.exp(1j * math.pi / 3)

_TEXT = re.compile(r"^\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*z6\s*$")


@dataclass(frozen=True, slots=True)
class CycZ6:
    """a + b*zeta6 with arbitrary-precision integer coefficients."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, x) -> CycZ6:
        if isinstance(x, CycZ6):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycZ6")

    def __add__(self, other):
        try:
            o = CycZ6.coerce(other)
        except TypeError:
            return NotImplemented
        return CycZ6(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycZ6(-self.a, -self.b)

    def __sub__(self, other):
        try:
            o = CycZ6.coerce(other)
        except TypeError:
            return NotImplemented
        return CycZ6(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = CycZ6.coerce(other)
        except TypeError:
            return NotImplemented
        return cyc_mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            inv = self.unit_inverse()
            return inv ** (-n)
        result, base = CycZ6(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def conj(self) -> CycZ6:
        return cyc_conj(self)

    def norm(self) -> int:
        """x * conj(x) = a^2 + ab + b^2, a non-negative integer."""
        return self.a * self.a + self.a * self.b + self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def unit_inverse(self) -> CycZ6:
        if self.norm() != 1:
            raise ZeroDivisionError(f"{self} is not a unit of Z[zeta6]")
        return self.conj()

    def embed(self) -> complex:
        return cyc_embed(self)

    def __str__(self):
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}*z6"

    @classmethod
    def parse(cls, text: str) -> CycZ6:
        m = _TEXT.match(text)
        if not m:
            raise ValueError(f"not a Z[zeta6] literal: {text!r}")
        b = int(m.group(3))
        return cls(int(m.group(1)), -b if m.group(2) == "-" else b)


def cyc_mul(x: CycZ6, y: CycZ6) -> CycZ6:
    # (a1 + b1 z)(a2 + b2 z) with z^2 = z - 1
    return CycZ6(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b)


def cyc_conj(x: CycZ6) -> CycZ6:
    # conj(z) = 1/z = 1 - z
    return CycZ6(x.a + x.b, -x.b)


def cyc_embed(x: CycZ6) -> complex:
    return complex(x.a + 0.5 * x.b, x.b * (math.sqrt(3) / 2))


_ROOTS = (CycZ6(1, 0), CycZ6(0, 1), CycZ6(-1, 1), CycZ6(-1, 0), CycZ6(0, -1), CycZ6(1, -1))


def root_of_unity(k: int) -> CycZ6:
    """zeta6**k, k taken mod 6."""
    return _ROOTS[k % 6]


ZETA3 = root_of_unity(2)


@dataclass(frozen=True, slots=True)
class CycQ6:
    """Element num/den of Q(zeta6), kept in lowest terms with den > 0."""

    num: CycZ6
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        num, den = self.num, self.den
        if den < 0:
            num, den = -num, -den
        g = math.gcd(math.gcd(num.a, num.b), den)
        if g > 1:
            num, den = CycZ6(num.a // g, num.b // g), den // g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def coerce(cls, x) -> CycQ6:
        if isinstance(x, CycQ6):
            return x
        if isinstance(x, Fraction):
            return cls(CycZ6(x.numerator), x.denominator)
        return cls(CycZ6.coerce(x), 1)

    def __add__(self, other):
        o = CycQ6.coerce(other)
        return CycQ6(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycQ6(-self.num, self.den)

    def __sub__(self, other):
        return self + (-CycQ6.coerce(other))

    def __mul__(self, other):
        o = CycQ6.coerce(other)
        return CycQ6(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CycQ6.coerce(other)
        n = o.num.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(zeta6)")
        # 1/(u/d) = d*conj(u)/N(u)
        return CycQ6(self.num * o.num.conj() * o.den, self.den * n)

    def conj(self) -> CycQ6:
        return CycQ6(self.num.conj(), self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return self.num.b == 0

    def embed(self) -> complex:
        return self.num.embed() / self.den

    def __str__(self):
        return str(self.num) if self.den == 1 else f"({self.num})/{self.den}"
