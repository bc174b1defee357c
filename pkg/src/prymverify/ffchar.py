"""Finite fields with discrete-log tables, sextic characters and character sums.

Field elements are integer codes in [0, q): the code of c_0 + c_1 t + ... +
c_{k-1} t^{k-1} (modulo the defining polynomial) is sum c_i p^i, so for prime
fields the code is just the residue.  Characters are extended by zero at 0,
the trivial character included.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import mpmath
import numpy as np

from .cyclotomic import CycQ6, CycZ6, root_of_unity
from .report import CheckResult

MAX_FIELD_SIZE = 10**6


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def _polymulmod(f, g, mod, p):
    """Product of coefficient lists f*g reduced by the monic polynomial mod."""
    k = len(mod) - 1
    prod = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                prod[i + j] = (prod[i + j] + fi * gj) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return (prod + [0] * k)[:k]


def _polypowmod(base, e, mod, p):
    k = len(mod) - 1
    result = [1] + [0] * (k - 1)
    while e:
        if e & 1:
            result = _polymulmod(result, base, mod, p)
        base = _polymulmod(base, base, mod, p)
        e >>= 1
    return result


def _is_primitive_poly(mod, p):
    k = len(mod) - 1
    q = p**k
    x = [0, 1] + [0] * (k - 2)
    one = [1] + [0] * (k - 1)
    if _polypowmod(x, q - 1, mod, p) != one:
        return False
    return all(_polypowmod(x, (q - 1) // r, mod, p) != one for r in prime_factors(q - 1))


class FqField:
    """The field with q = p**k elements, with a fixed generator and log tables.

    The generator is the smallest primitive root for k = 1; for k > 1 the
    defining polynomial is the first monic primitive polynomial in code order
    and the generator is the class of t.
    """

    def __init__(self, p: int, k: int = 1, max_size: int = MAX_FIELD_SIZE):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        q = p**k
        if q > max_size:
            raise ValueError(f"field size {q} exceeds the configured cap {max_size}")
        self.p, self.k, self.q = p, k, q
        exp = np.empty(q - 1, dtype=np.int64)
        if k == 1:
            self.modulus = None
            g = next(g for g in range(1, p) if p == 2 or all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1)))
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = x * g % p
        else:
            self.modulus = self._find_primitive_poly()
            g = p  # code of t
            low = self.modulus[:-1]
            coeffs = [1] + [0] * (k - 1)
            weights = [p**i for i in range(k)]
            for i in range(q - 1):
                exp[i] = sum(c * w for c, w in zip(coeffs, weights))
                top = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                if top:
                    coeffs = [(c - top * m) % p for c, m in zip(coeffs, low)]
        self.gen = int(g)
        self.exp = exp
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise RuntimeError("generator does not generate the multiplicative group")
        self.log = log

    def _find_primitive_poly(self):
        p, k = self.p, self.k
        for code in range(p**k):
            low = [(code // p**i) % p for i in range(k)]
            if low[0] == 0:
                continue
            mod = low + [1]
            if _is_primitive_poly(mod, p):
                return tuple(mod)
        raise RuntimeError("no primitive polynomial found")

    @classmethod
    def from_spec(cls, spec: str, **kw) -> FqField:
        """Parse 'p' or 'p^k'."""
        text = spec.strip()
        if "^" in text:
            p, k = text.split("^", 1)
            return cls(int(p), int(k), **kw)
        return cls(int(text), 1, **kw)

    def __repr__(self):
        return f"FqField({self.p}^{self.k})" if self.k > 1 else f"FqField({self.p})"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    @property
    def spec(self) -> str:
        return f"{self.p}^{self.k}"

    @cached_property
    def digits(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.k)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.k, dtype=np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def element(self, value) -> int:
        """Code of an integer (image of Z) or of a coefficient list."""
        if isinstance(value, (list, tuple)):
            if len(value) > self.k:
                raise ValueError("too many coefficients")
            return int(sum((int(c) % self.p) * self.p**i for i, c in enumerate(value)))
        return int(value) % self.p

    def coefficients(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.k)]

    # arithmetic on codes; the *_arr variants take numpy arrays

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._weights

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return ((-self.digits[a]) % self.p) @ self._weights

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        out = np.where((la < 0) | (lb < 0), 0, out)
        return out if out.ndim else int(out)

    def inv(self, a):
        la = self.log[a]
        if np.any(la < 0):
            raise ZeroDivisionError("inverse of zero")
        out = self.exp[(-la) % (self.q - 1)]
        return out if np.ndim(out) else int(out)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        la = self.log[a]
        if np.ndim(la) == 0:
            if la < 0:
                if n <= 0:
                    raise ZeroDivisionError("non-positive power of zero")
                return 0
            return int(self.exp[(int(la) * n) % (self.q - 1)])
        out = self.exp[(la * n) % (self.q - 1)]
        return np.where(la < 0, 0, out)

    def scalar(self, n: int) -> int:
        return int(n) % self.p

    def is_power(self, a: int, m: int) -> bool:
        """Whether a is an m-th power in F_q (0 counts as one)."""
        la = int(self.log[a])
        return la < 0 or la % math.gcd(m, self.q - 1) == 0

    def trace(self, a):
        """Absolute trace to F_p, returned as an integer in [0, p)."""
        if self.k == 1:
            return a
        la = self.log[a]
        total = np.zeros(np.shape(a), dtype=np.int64)
        for i in range(self.k):
            conj = np.where(la < 0, 0, self.exp[(la * self.p**i) % (self.q - 1)])
            total = self.add(total, conj)
        return total if np.ndim(total) else int(total)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return "[" + ",".join(map(str, self.coefficients(a))) + "]"


@dataclass(frozen=True)
class MultChar:
    """x -> zeta_m^(e * dlog x) on F_q^*, extended by 0 at 0."""

    field: FqField
    order: int
    exponent: int

    def __post_init__(self):
        if (self.field.q - 1) % self.order:
            raise ValueError(f"character order {self.order} does not divide q-1 = {self.field.q - 1}")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    @property
    def sextic_index(self) -> int:
        """j with chi = eta**j; only defined for orders dividing 6."""
        if 6 % self.order:
            raise ValueError("values are not sixth roots of unity")
        return self.exponent * (6 // self.order) % 6

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def __mul__(self, other: MultChar) -> MultChar:
        _same_field(self, other)
        m = math.lcm(self.order, other.order)
        return MultChar(self.field, m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def __pow__(self, n: int) -> MultChar:
        return MultChar(self.field, self.order, self.exponent * n)

    def conj(self) -> MultChar:
        return self**-1

    def __call__(self, x: int) -> CycZ6:
        la = int(self.field.log[x])
        if la < 0:
            return CycZ6(0, 0)
        return root_of_unity(self.sextic_index * la)

    def value(self, x: int) -> complex:
        la = int(self.field.log[x])
        if la < 0:
            return 0j
        return cmath.exp(2j * math.pi * ((self.exponent * la) % self.order) / self.order)

    def describe(self) -> str:
        return f"chi[{self.order}]^{self.exponent} on F_{self.field.q}"


def _same_field(*chars: MultChar):
    if len({c.field for c in chars}) != 1:
        raise ValueError("characters live on different fields")


def sextic_char(field: FqField, power: int = 1) -> MultChar:
    """The order-6 character with eta(g) = zeta6 for the field's generator g (or its power)."""
    if field.q % 6 != 1:
        raise ValueError(f"q = {field.q} is not 1 mod 6")
    return MultChar(field, 6, power)


def trivial_char(field: FqField) -> MultChar:
    return MultChar(field, 1, 0)


def sum_of_roots(indices: np.ndarray) -> CycZ6:
    """sum of zeta6**i over an integer array of exponents."""
    counts = np.bincount(np.asarray(indices, dtype=np.int64) % 6, minlength=6)
    total = CycZ6(0, 0)
    for k in range(6):
        if counts[k]:
            total = total + root_of_unity(k) * int(counts[k])
    return total


def jacobi_sum(chi: MultChar, psi: MultChar) -> CycZ6:
    """J(chi, psi) = sum_x chi(x) psi(1-x), exact in Z[zeta6]."""
    _same_field(chi, psi)
    F = chi.field
    x = F.elements()
    one_minus = F.sub(1, x)
    lx, l1 = F.log[x], F.log[one_minus]
    keep = (lx >= 0) & (l1 >= 0)
    return sum_of_roots(chi.sextic_index * lx[keep] + psi.sextic_index * l1[keep])


def additive_character_values(field: FqField, precision: int = 53):
    """exp(2 pi i Tr(x)/p) for every code x."""
    tr = np.asarray(field.trace(field.elements()))
    if precision <= 53:
        return np.exp(2j * np.pi * tr / field.p)
    with mpmath.workprec(precision):
        roots = [mpmath.expjpi(mpmath.mpf(2 * t) / field.p) for t in range(field.p)]
    return [roots[int(t)] for t in tr]


def gauss_sum(chi: MultChar, precision: int = 53):
    """G(chi) = sum_x chi(x) exp(2 pi i Tr(x)/p).

    precision <= 53 gives a Python complex; larger values use mpmath at that
    many bits and return an mpc.
    """
    F = chi.field
    if chi.is_trivial:
        return -1 if precision <= 53 else mpmath.mpc(-1)
    x = np.arange(1, F.q, dtype=np.int64)
    k = (chi.exponent * F.log[x]) % chi.order
    if precision <= 53:
        psi = additive_character_values(F)
        return complex(np.sum(np.exp(2j * np.pi * k / chi.order) * psi[x]))
    psi = additive_character_values(F, precision)
    with mpmath.workprec(precision):
        roots = [mpmath.expjpi(mpmath.mpf(2 * j) / chi.order) for j in range(chi.order)]
        total = mpmath.mpc(0)
        for xi, ki in zip(x, k):
            total += roots[int(ki)] * psi[int(xi)]
        return total


def check_hasse_davenport(field: FqField, precision: int = 53) -> CheckResult:
    """G(eta)G(eta^4) = -eta^-2(2) G(eta^2) G(triv) G(eta^3), complex and exact forms.

    The exact form divides through by G(eta^5): J(eta^2, eta^3) = eta^2(2) J(eta, eta^4).
    """
    if field.p == 2:
        raise ValueError("2 must be invertible")
    eta = sextic_char(field)
    two = field.scalar(2)
    lhs = gauss_sum(eta, precision) * gauss_sum(eta**4, precision)
    rhs = -complex((eta**-2)(two).embed()) * gauss_sum(eta**2, precision) * gauss_sum(trivial_char(field), precision) * gauss_sum(eta**3, precision)
    rel = abs(complex(lhs - rhs)) / abs(complex(lhs))
    j23 = jacobi_sum(eta**2, eta**3)
    j14 = jacobi_sum(eta, eta**4)
    exact_rhs = (eta**2)(two) * j14
    return CheckResult(
        id="hasse_davenport",
        passed=(j23 == exact_rhs) and rel < 1e-9,
        inputs={"q": field.q},
        expected=str(exact_rhs),
        actual=str(j23),
        tolerance=1e-9,
        details={"gauss_lhs": complex(lhs), "gauss_rhs": complex(rhs), "relative_error": rel, "exact": j23 == exact_rhs},
    )


def _fhyp_sum(A: MultChar, B: MultChar, C: MultChar, x: int) -> CycZ6:
    """sum_y B(y) (B^-1 C)(1-y) A^-1(1-xy), exact."""
    F = A.field
    y = F.elements()
    one_minus_y = F.sub(1, y)
    one_minus_xy = F.sub(1, F.mul(x, y))
    ly, l1, l2 = F.log[y], F.log[one_minus_y], F.log[one_minus_xy]
    keep = (ly >= 0) & (l1 >= 0) & (l2 >= 0)
    jb, jc, ja = B.sextic_index, C.sextic_index, A.sextic_index
    return sum_of_roots(jb * ly[keep] + (jc - jb) * l1[keep] - ja * l2[keep])


def fhyp_2f1(A: MultChar, B: MultChar, C: MultChar, x: int, normalization: CycZ6 = CycZ6(1, 0)) -> CycQ6:
    """Finite-field 2F1[A, B; C | x] as an exact element of (1/q) Z[zeta6].

    eps(x) * (B C^-1)(-1)/q * sum_y B(y) (B^-1 C)(1-y) A^-1(1-xy), times an
    optional unit normalization (1 unless a calibration run says otherwise).
    """
    _same_field(A, B, C)
    F = A.field
    if x == 0:
        return CycQ6(CycZ6(0, 0), 1)
    sign = (B * C.conj())(F.neg(1))
    return CycQ6(sign * _fhyp_sum(A, B, C, x) * normalization, F.q)


def hypergeometric_triple(field: FqField, conjugate: bool = False):
    """(eta, eta^2, eta^5) or its inverse (eta^-1, eta^-2, eta^-5)."""
    s = -1 if conjugate else 1
    eta = sextic_char(field)
    return eta**s, eta ** (2 * s), eta ** (5 * s)


def jacobi_ratio(field: FqField) -> CycQ6:
    """J(eta^2, eta^3) / J(eta, eta^4)."""
    eta = sextic_char(field)
    den = jacobi_sum(eta, eta**4)
    if not den:
        raise ArithmeticError("J(eta, eta^4) vanished; this cannot happen for q = 1 mod 6")
    return CycQ6(jacobi_sum(eta**2, eta**3)) / CycQ6(den)


def check_sextic_reflection(field: FqField, x: int) -> CheckResult:
    """Reflection 2F1[eta,eta^2;eta^5|x] = eta(x) eta^2(1-x) J-ratio 2F1[eta^-1,eta^-2;eta^-5|x].

    Also checks the collapsed form with eta(x ((1-x)/4)^2) in place of the
    character and Jacobi-ratio prefactor.
    """
    if x in (0, 1):
        raise ValueError("x must avoid 0 and 1")
    eta = sextic_char(field)
    lhs = fhyp_2f1(*hypergeometric_triple(field), x)
    mirror = fhyp_2f1(*hypergeometric_triple(field, conjugate=True), x)
    one_minus = field.sub(1, x)
    ratio = jacobi_ratio(field)
    rhs = CycQ6(eta(x) * (eta**2)(one_minus)) * ratio * mirror
    quarter = field.div(one_minus, field.scalar(4))
    collapsed_arg = field.mul(x, field.mul(quarter, quarter))
    rhs_collapsed = CycQ6(eta(collapsed_arg)) * mirror
    return CheckResult(
        id="sextic_reflection",
        passed=(lhs == rhs) and (lhs == rhs_collapsed),
        inputs={"q": field.q, "x": field.format(x)},
        expected=str(rhs),
        actual=str(lhs),
        details={"reflection": lhs == rhs, "sixth_power_form": lhs == rhs_collapsed, "jacobi_ratio": str(ratio)},
    )
