"""Effective isogeny and height constants in overflow-free log scale.

Heights and "log" inside the bounds are natural logarithms; LogScale stores
base-10 logarithms and converts on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

import mpmath

DPS = 50
LN10 = mpmath.log(10)


def _mpf(x):
    with mpmath.workdps(DPS):
        return mpmath.mpf(x)


@total_ordering
@dataclass(frozen=True)
class LogScale:
    """A positive quantity x stored as log10(x) (level 0) or log10(log10(x)) (level 1)."""

    level: int
    value: mpmath.mpf

    def __post_init__(self):
        if self.level not in (0, 1):
            raise ValueError("level must be 0 or 1")
        object.__setattr__(self, "value", _mpf(self.value))

    @classmethod
    def from_value(cls, x) -> LogScale:
        if x <= 0:
            raise ValueError("LogScale holds positive quantities only")
        with mpmath.workdps(DPS):
            return cls(0, mpmath.log10(mpmath.mpf(x)))

    def to_float(self) -> float:
        if self.level == 1:
            raise OverflowError("level-1 values do not fit in a float")
        with mpmath.workdps(DPS):
            return float(mpmath.power(10, self.value))

    def promote(self) -> LogScale:
        if self.level == 1:
            return self
        if self.value <= 0:
            raise ValueError("only quantities > 1 can be promoted")
        with mpmath.workdps(DPS):
            return LogScale(1, mpmath.log10(self.value))

    def log10(self) -> mpmath.mpf:
        """log10(x); for level 1 this is itself a huge number, returned as an mpf."""
        if self.level == 0:
            return self.value
        with mpmath.workdps(DPS):
            return mpmath.power(10, self.value)

    def ln(self) -> mpmath.mpf:
        with mpmath.workdps(DPS):
            return self.log10() * LN10

    def _common(self, other: LogScale):
        if self.level == other.level:
            return self, other
        low, high = (self, other) if self.level == 0 else (other, self)
        if low.value <= 0:
            return None
        pair = (low.promote(), high)
        return pair if low is self else pair[::-1]

    def __eq__(self, other):
        if not isinstance(other, LogScale):
            return NotImplemented
        common = self._common(other)
        return common is not None and common[0].value == common[1].value

    def __lt__(self, other):
        common = self._common(other)
        if common is None:
            # a level-0 value <= 1 against a level-1 value (> 10)
            return self.level == 0
        return common[0].value < common[1].value

    def __hash__(self):
        return hash((self.level, self.value))

    def __mul__(self, other: LogScale) -> LogScale:
        a, b = self._common(other) or (self, other)
        with mpmath.workdps(DPS):
            if a.level == 0:
                return LogScale(0, a.value + b.value)
            return LogScale(1, _log10_sum(a.value, b.value))

    def __add__(self, other: LogScale) -> LogScale:
        if self.level or other.level:
            raise TypeError("addition is only supported at level 0")
        return LogScale(0, _log10_sum(self.value, other.value))

    def __pow__(self, k) -> LogScale:
        if k <= 0:
            raise ValueError("exponent must be positive")
        with mpmath.workdps(DPS):
            if self.level == 0:
                return LogScale(0, self.value * k)
            return LogScale(1, self.value + mpmath.log10(k))

    def __str__(self):
        tag = "log10" if self.level == 0 else "log10 log10"
        return f"{tag} = {mpmath.nstr(self.value, 15)}"


def _log10_sum(a, b):
    """log10(10^a + 10^b)."""
    with mpmath.workdps(DPS):
        hi, lo = max(a, b), min(a, b)
        return hi + mpmath.log10(1 + mpmath.power(10, lo - hi))


def kappa_log(g: int, degK: int, h: float) -> LogScale:
    """kappa = ((14g)^(64g^2) [K:Q] max(h, log[K:Q], 1)^2)^(2^10 g^3), in log scale."""
    if g < 1 or degK < 1:
        raise ValueError("g and [K:Q] must be positive")
    with mpmath.workdps(DPS):
        m = max(_mpf(h), mpmath.log(degK), mpmath.mpf(1))
        inner = 64 * g**2 * mpmath.log10(14 * g) + mpmath.log10(degK) + 2 * mpmath.log10(m)
        return LogScale(0, 2**10 * g**3 * inner)


def height_diff_bound(kappa: LogScale) -> float:
    """|h(A') - h(A)| <= (1/2) ln kappa."""
    if kappa.level != 0:
        raise ValueError("height_diff_bound expects a level-0 kappa")
    return float(kappa.ln() / 2)


def bost_lower(dim: int) -> float:
    """h(A) >= -(ln(2 pi^2)/2) dim A."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    with mpmath.workdps(DPS):
        return float(-mpmath.log(2 * mpmath.pi**2) / 2 * dim)


def isogeny_factor_height_bound(g: int, degK: int, h_B: float, dim_B: int) -> float:
    """Upper bound on h(A) for an isogeny factor A of B.

    h(A) = h(A x C) - h(C) <= h(B) + (1/2) ln kappa(B) + (ln(2 pi^2)/2) dim B.
    """
    if not 1 <= dim_B <= g:
        raise ValueError("need 1 <= dim B <= g")
    return h_B + height_diff_bound(kappa_log(dim_B, degK, h_B)) - bost_lower(dim_B)


def ln_factorial(n: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Stirling value of ln n! with the 1/(12n) term, and an error bound 1/(360 n^3)."""
    if n < 1:
        raise ValueError("n must be positive")
    with mpmath.workdps(DPS):
        n = mpmath.mpf(n)
        value = n * mpmath.log(n) - n + mpmath.log(2 * mpmath.pi * n) / 2 + 1 / (12 * n)
        return value, 1 / (360 * n**3)


def log10_factorial(n: int) -> mpmath.mpf:
    with mpmath.workdps(DPS):
        return ln_factorial(n)[0] / LN10


SNOWDEN_BASE = 10**10


def snowden_constant_log(degK: int, S_norms: list[int]) -> LogScale:
    """N = (10^10)! * prod_{q in S} Nm(q)^((10^10 [K:Q])!).

    Empty S gives the level-0 value log10((10^10)!); otherwise the result is
    level 1: log10 log10 N = log10(A + 10^L * sum log10 Nm q) with A the
    first factor's log and L = log10 (10^10 [K:Q])!.
    """
    if degK < 1:
        raise ValueError("[K:Q] must be positive")
    if any(n < 2 for n in S_norms):
        raise ValueError("norms of primes are at least 2")
    with mpmath.workdps(DPS):
        first = log10_factorial(SNOWDEN_BASE)
        if not S_norms:
            return LogScale(0, first)
        exponent_log = log10_factorial(SNOWDEN_BASE * degK)
        total = mpmath.fsum(mpmath.log10(n) for n in S_norms)
        # log10(first + 10^exponent_log * total), done without forming 10^exponent_log
        head = exponent_log + mpmath.log10(total)
        return LogScale(1, head + mpmath.log10(1 + first / mpmath.power(10, head)))
