"""Finite-group models for trace determination and residual images.

Galois groups are stood in for by explicit finite groups. Representations
take values in a finite local ring R = GR(l^m, f): m = 1 gives the field
F_{l^f}, f = 1 gives Z/l^m. Ring elements are integer codes whose base-l^m
digits are polynomial coefficients, matching FqField codes when m = 1.
Matrices are flat row-major tuples of codes.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .ffchar import FqField, is_prime, prime_factors
from .report import CheckResult

CLOSURE_CAP = 10**5
MAX_RING_SIZE = 1024


class ClosureOverflow(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


def _prime_power(n: int) -> tuple[int, int]:
    ps = prime_factors(n)
    if len(ps) != 1:
        raise ValueError(f"{n} is not a prime power")
    p, e = ps[0], 0
    while n > 1:
        n //= p
        e += 1
    return p, e


class FiniteLocalRing:
    """GR(l^m, f) = (Z/l^m)[t]/(F), F a monic lift of a primitive polynomial mod l."""

    def __init__(self, ell: int, m: int = 1, f: int = 1):
        if not is_prime(ell) or m < 1 or f < 1:
            raise ValueError("need a prime l and positive m, f")
        n = ell**m
        size = n**f
        if size > MAX_RING_SIZE:
            raise ValueError(f"ring of size {size} exceeds the cap {MAX_RING_SIZE}")
        self.ell, self.m, self.f, self.n, self.size = ell, m, f, n, size
        if m == 1:
            self.kind = "field"
        elif f == 1:
            self.kind = "Z/l^m"
        else:
            self.kind = "galois"
        self.modulus = FqField(ell, f).modulus if f > 1 else None

        codes = np.arange(size, dtype=np.int64)
        weights = n ** np.arange(f, dtype=np.int64)
        coeffs = np.stack([(codes // w) % n for w in weights], axis=1)
        add = ((coeffs[:, None, :] + coeffs[None, :, :]) % n) @ weights
        prod = np.zeros((size, size, 2 * f - 1), dtype=np.int64)
        for i in range(f):
            for j in range(f):
                prod[:, :, i + j] += np.outer(coeffs[:, i], coeffs[:, j])
        prod %= n
        if f > 1:
            low = np.array(self.modulus[:-1], dtype=np.int64)
            for k in range(2 * f - 2, f - 1, -1):
                top = prod[:, :, k].copy()
                prod[:, :, k] = 0
                for i in range(f):
                    prod[:, :, k - f + i] -= top * low[i]
                prod %= n
        mul = prod[:, :, :f] @ weights

        vals_small = np.full(n, m, dtype=np.int64)
        for x in range(1, n):
            v, y = 0, x
            while y % ell == 0:
                y //= ell
                v += 1
            vals_small[x] = v
        val = vals_small[coeffs].min(axis=1)
        inv = np.where(val == 0, np.argmax(mul == 1, axis=1), -1)

        self._coeffs = coeffs
        self._weights = weights
        self.add_t = add.ravel().tolist()
        self.mul_t = mul.ravel().tolist()
        self.neg_t = (((-coeffs) % n) @ weights).tolist()
        self.inv_t = inv.tolist()
        self.val_t = val.tolist()
        self.residue_t = ((coeffs % ell) @ (ell ** np.arange(f, dtype=np.int64))).tolist()

    @classmethod
    def from_spec(cls, spec: str) -> FiniteLocalRing:
        """Parse 'Z/9', 'F_25', 'F25', 'GF(25)', 'GR(9,2)' or a bare prime power (a field)."""
        text = spec.replace(" ", "")
        if mt := re.fullmatch(r"Z/\(?(\d+)\)?", text):
            ell, m = _prime_power(int(mt[1]))
            return cls(ell, m, 1)
        if mt := re.fullmatch(r"GR\((\d+),(\d+)\)", text):
            ell, m = _prime_power(int(mt[1]))
            return cls(ell, m, int(mt[2]))
        if mt := re.fullmatch(r"(?:F_?|GF\()?(\d+)(?:\^(\d+))?\)?", text):
            ell, e = _prime_power(int(mt[1]))
            return cls(ell, 1, e * int(mt[2] or 1))
        raise ValueError(f"cannot parse ring {spec!r}")

    @property
    def spec(self) -> str:
        if self.kind == "field":
            return f"F_{self.size}"
        if self.kind == "Z/l^m":
            return f"Z/{self.n}"
        return f"GR({self.n},{self.f})"

    def __repr__(self):
        return f"FiniteLocalRing({self.spec})"

    def __eq__(self, other):
        return isinstance(other, FiniteLocalRing) and (self.ell, self.m, self.f) == (other.ell, other.m, other.f)

    def __hash__(self):
        return hash((self.ell, self.m, self.f))

    @property
    def residue_size(self) -> int:
        return self.ell**self.f

    def add(self, a: int, b: int) -> int:
        return self.add_t[a * self.size + b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a * self.size + b]

    def neg(self, a: int) -> int:
        return self.neg_t[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a * self.size + self.neg_t[b]]

    def inv(self, a: int) -> int:
        r = self.inv_t[a]
        if r < 0:
            raise ZeroDivisionError(f"{self.format(a)} is not a unit in {self.spec}")
        return r

    def is_unit(self, a: int) -> bool:
        return self.val_t[a] == 0

    def valuation(self, a: int) -> int:
        """Largest v with a in l^v R; m for zero."""
        return self.val_t[a]

    def divide_ell_power(self, a: int, v: int) -> int:
        """Some b with l^v b = a; requires valuation(a) >= v."""
        if self.val_t[a] < v:
            raise ValueError("not divisible")
        return int((self._coeffs[a] // self.ell**v) @ self._weights)

    def power(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def scalar(self, k: int) -> int:
        return int(k) % self.n

    def element(self, coefficients) -> int:
        if len(coefficients) > self.f:
            raise ValueError("too many coefficients")
        return int(sum((int(c) % self.n) * self.n**i for i, c in enumerate(coefficients)))

    def coefficients(self, a: int) -> list[int]:
        return [int(c) for c in self._coeffs[a]]

    def parse(self, text) -> int:
        """An integer (image of Z) or a coefficient list such as '[1,2]'."""
        if isinstance(text, int):
            return self.scalar(text)
        s = str(text).strip()
        if s.startswith("["):
            return self.element([int(c) for c in s.strip("[]").split(",") if c.strip()])
        return self.scalar(int(s))

    def format(self, a: int) -> str:
        if self.f == 1:
            return str(a)
        return "[" + ",".join(map(str, self.coefficients(a))) + "]"

    def units(self) -> list[int]:
        return [a for a in range(self.size) if self.val_t[a] == 0]

    @property
    def generator(self) -> int:
        """A generator of the multiplicative group; fields only."""
        if self.kind != "field":
            raise ValueError("only fields have a cyclic unit group here")
        return FqField(self.ell, self.f).gen


class MatrixAlgebra:
    """d x d matrices over a FiniteLocalRing, as flat tuples."""

    def __init__(self, ring: FiniteLocalRing, d: int = 2):
        self.ring, self.d = ring, d
        self.identity = tuple(1 if i == j else 0 for i in range(d) for j in range(d))

    def mul(self, A, B):
        d, s, add, mul = self.d, self.ring.size, self.ring.add_t, self.ring.mul_t
        out = []
        for i in range(d):
            row = A[i * d:(i + 1) * d]
            for j in range(d):
                acc = 0
                for k in range(d):
                    acc = add[acc * s + mul[row[k] * s + B[k * d + j]]]
                out.append(acc)
        return tuple(out)

    def scale(self, c: int, A):
        return tuple(self.ring.mul(c, a) for a in A)

    def trace(self, A) -> int:
        t = 0
        for i in range(self.d):
            t = self.ring.add(t, A[i * self.d + i])
        return t

    def det(self, A) -> int:
        R, d = self.ring, self.d
        if d == 1:
            return A[0]
        if d == 2:
            return R.sub(R.mul(A[0], A[3]), R.mul(A[1], A[2]))
        total = 0
        sub_alg = MatrixAlgebra(R, d - 1)
        for j in range(d):
            minor = tuple(A[i * d + k] for i in range(1, d) for k in range(d) if k != j)
            term = R.mul(A[j], sub_alg.det(minor))
            total = R.add(total, term) if j % 2 == 0 else R.sub(total, term)
        return total

    def is_invertible(self, A) -> bool:
        return self.ring.is_unit(self.det(A))

    def transpose(self, A):
        d = self.d
        return tuple(A[j * d + i] for i in range(d) for j in range(d))

    def inverse(self, A):
        """Adjugate over det; works over any commutative local ring."""
        R, d = self.ring, self.d
        dinv = R.inv(self.det(A))
        if d == 1:
            return (dinv,)
        minor_alg = MatrixAlgebra(R, d - 1)
        adj = [0] * (d * d)
        for i in range(d):
            for j in range(d):
                minor = tuple(A[r * d + c] for r in range(d) for c in range(d) if r != i and c != j)
                cof = minor_alg.det(minor) if d > 2 else minor[0]
                if (i + j) % 2:
                    cof = R.neg(cof)
                adj[j * d + i] = R.mul(cof, dinv)
        return tuple(adj)

    def parse(self, rows) -> tuple:
        flat = [self.ring.parse(x) for row in rows for x in row]
        if len(rows) != self.d or len(flat) != self.d**2:
            raise ValueError(f"expected a {self.d}x{self.d} matrix")
        return tuple(flat)

    def format(self, A) -> list[list[str]]:
        d = self.d
        return [[self.ring.format(A[i * d + j]) for j in range(d)] for i in range(d)]

    def projective_normalize(self, A):
        """Scale so the first nonzero entry is 1 (field case)."""
        lead = next(a for a in A if a)
        return self.scale(self.ring.inv(lead), A)

    def random_invertible(self, rng):
        while True:
            A = tuple(int(x) for x in rng.integers(0, self.ring.size, self.d**2))
            if self.is_invertible(A):
                return A


def _perm_mul(a, b):
    """(a*b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


def _perm_inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class FiniteGroup:
    """Closure of generators under a multiplication on hashable elements."""

    def __init__(self, generators, mul, identity, inverse=None, cap: int = CLOSURE_CAP):
        self.generators = tuple(generators)
        self.mul, self.identity, self._inverse, self.cap = mul, identity, inverse, cap
        elements = [identity]
        index = {identity: 0}
        i = 0
        while i < len(elements):
            x = elements[i]
            for s in self.generators:
                y = mul(x, s)
                if y not in index:
                    if len(elements) >= cap:
                        raise ClosureOverflow(f"group closure exceeds {cap} elements")
                    index[y] = len(elements)
                    elements.append(y)
            i += 1
        self.elements = elements
        self._index = index

    @classmethod
    def permutations(cls, generators, **kw) -> FiniteGroup:
        gens = [tuple(g) for g in generators]
        return cls(gens, _perm_mul, tuple(range(len(gens[0]))), _perm_inv, **kw)

    @classmethod
    def matrices(cls, algebra: MatrixAlgebra, generators, **kw) -> FiniteGroup:
        for g in generators:
            if not algebra.is_invertible(g):
                raise ValueError("generator is not invertible")
        return cls([tuple(g) for g in generators], algebra.mul, algebra.identity, algebra.inverse, **kw)

    @classmethod
    def projective(cls, algebra: MatrixAlgebra, generators, **kw) -> FiniteGroup:
        """Image in PGL_d: elements are normalized representatives."""
        norm = algebra.projective_normalize

        def mul(a, b):
            return norm(algebra.mul(a, b))

        def inv(a):
            return norm(algebra.inverse(a))

        return cls([norm(tuple(g)) for g in generators], mul, algebra.identity, inv, **kw)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def index(self, x) -> int:
        return self._index[x]

    def inverse(self, x):
        if self._inverse is not None:
            return self._inverse(x)
        prev, y = self.identity, x
        while y != self.identity:
            prev, y = y, self.mul(y, x)
        return prev

    def subgroup(self, generators) -> FiniteGroup:
        gens = [g for g in generators if g != self.identity] or [self.identity]
        return FiniteGroup(gens, self.mul, self.identity, self._inverse, self.cap)

    def element_order(self, x) -> int:
        n, y = 1, x
        while y != self.identity:
            y = self.mul(y, x)
            n += 1
        return n

    def element_orders(self) -> Counter:
        return Counter(self.element_order(x) for x in self.elements)

    def commutator(self, a, b):
        inv, mul = self.inverse, self.mul
        return mul(mul(inv(a), inv(b)), mul(a, b))

    def normal_closure(self, seeds) -> FiniteGroup:
        gens = [s for s in seeds if s != self.identity]
        sub = self.subgroup(gens)
        grew = True
        while grew:
            grew = False
            for x in list(gens):
                for g in self.generators:
                    y = self.mul(self.mul(self.inverse(g), x), g)
                    if y not in sub:
                        gens.append(y)
                        sub = self.subgroup(gens)
                        grew = True
        return sub

    def derived_subgroup(self) -> FiniteGroup:
        """Normal closure of the commutators of generators."""
        seeds = [self.commutator(a, b) for a in self.generators for b in self.generators]
        return self.normal_closure(seeds)

    def cayley_table(self) -> list[list[int]]:
        idx, els = self._index, self.elements
        return [[idx[self.mul(a, b)] for b in els] for a in els]

    def derived_subgroup_exhaustive(self) -> FiniteGroup:
        """Subgroup generated by every commutator [a, b]; O(|G|^2)."""
        T = self.cayley_table()
        n = len(self)
        inv = [row.index(0) for row in T]
        comms = {T[T[inv[a]][inv[b]]][T[a][b]] for a in range(n) for b in range(n)}
        return self.subgroup([self.elements[c] for c in sorted(comms)])

    def derived_series(self, exhaustive: bool = False) -> list[int]:
        orders, G = [len(self)], self
        while True:
            D = G.derived_subgroup_exhaustive() if exhaustive else G.derived_subgroup()
            if len(D) == len(G):
                return orders
            orders.append(len(D))
            if len(D) == 1:
                return orders
            G = D

    def is_solvable(self, exhaustive: bool = False) -> bool:
        return self.derived_series(exhaustive)[-1] == 1

    def is_perfect(self, exhaustive: bool = False) -> bool:
        D = self.derived_subgroup_exhaustive() if exhaustive else self.derived_subgroup()
        return len(D) == len(self)


class GroupRep:
    """A homomorphism group -> GL_d(R), given on generators.

    The images of all group elements are built along the closure; every
    edge x -> x*s is checked against images[x] * images[s], so a
    successful build proves the generator images define a homomorphism.
    """

    def __init__(self, group: FiniteGroup, algebra: MatrixAlgebra, images):
        images = [tuple(m) for m in images]
        if len(images) != len(group.generators):
            raise ValueError("one image per group generator is required")
        for m in images:
            if not algebra.is_invertible(m):
                raise ValueError("generator image has non-unit determinant")
        self.group, self.algebra, self.images = group, algebra, images
        mats = [None] * len(group)
        mats[0] = algebra.identity
        for i, x in enumerate(group.elements):
            for s, img in zip(group.generators, images):
                k = group.index(group.mul(x, s))
                M = algebra.mul(mats[i], img)
                if mats[k] is None:
                    mats[k] = M
                elif mats[k] != M:
                    raise ValueError("generator images do not define a homomorphism")
        self.matrices = mats

    @property
    def ring(self) -> FiniteLocalRing:
        return self.algebra.ring

    @property
    def d(self) -> int:
        return self.algebra.d

    def __call__(self, g):
        return self.matrices[self.group.index(g)]

    def trace(self, g) -> int:
        return self.algebra.trace(self(g))

    def traces(self) -> list[int]:
        return [self.algebra.trace(M) for M in self.matrices]

    @classmethod
    def defining(cls, group: FiniteGroup, algebra: MatrixAlgebra) -> GroupRep:
        """The tautological representation of a matrix group."""
        return cls(group, algebra, group.generators)

    def conjugate(self, P) -> GroupRep:
        A = self.algebra
        Pinv = A.inverse(P)
        return GroupRep(self.group, A, [A.mul(A.mul(P, m), Pinv) for m in self.images])

    def twist(self, character_values) -> GroupRep:
        """rho tensor chi, with chi given by its values (units) on generators."""
        A = self.algebra
        return GroupRep(self.group, A, [A.scale(c, m) for c, m in zip(character_values, self.images)])

    def contragredient(self) -> GroupRep:
        A = self.algebra
        return GroupRep(self.group, A, [A.transpose(A.inverse(m)) for m in self.images])


# ---------------------------------------------------------------- spans


def _smith_valuations(ring: FiniteLocalRing, rows):
    """Elementary-divisor valuations of the row module, and the pivot row ids.

    R is a chain ring, so a pivot of minimal valuation divides every other
    entry of its column; eliminating it leaves the rest of its row divisible
    too, and column operations would clear that without touching other rows.
    """
    M = [list(r) for r in rows]
    ids = list(range(len(M)))
    vals, pivots = [], []
    m = ring.m
    while M:
        best = None
        for r, row in enumerate(M):
            for c, a in enumerate(row):
                v = ring.val_t[a]
                if v < m and (best is None or v < best[0]):
                    best = (v, r, c)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, r, c = best
        prow = M.pop(r)
        pivots.append(ids.pop(r))
        unit_inv = ring.inv(ring.divide_ell_power(prow[c], v))
        for row in M:
            a = row[c]
            if a:
                t = ring.mul(ring.divide_ell_power(a, v), unit_inv)
                for j, b in enumerate(prow):
                    if b:
                        row[j] = ring.sub(row[j], ring.mul(t, b))
        for row in M:
            del row[c]
        vals.append(v)
    return vals, pivots


def module_size_log(ring: FiniteLocalRing, vals) -> int:
    """log_l of the size of a module with elementary divisors l^v."""
    return sum(ring.f * (ring.m - v) for v in vals)


@dataclass
class SpanCertificate:
    spans: bool
    basis: list  # group elements whose images generate the span
    size_log_frob: int  # log_l |R-span of the Frobenius images|
    size_log_full: int  # log_l |R-span of the full image|
    divisors_frob: list[int]
    divisors_full: list[int]
    residue_rank_frob: int
    residue_rank_full: int

    def __bool__(self):
        return self.spans


def _sum_vectors(rho: GroupRep, rho2: GroupRep, indices):
    return [rho.matrices[i] + rho2.matrices[i] for i in indices]


def span_check(rho: GroupRep, rho2: GroupRep, frob_set) -> SpanCertificate:
    """Does the R-span of (rho + rho')(frob_set) equal the R-span of the whole image?

    Module sizes are compared exactly via elementary divisors; the residue
    ranks are reported too, though equal residue ranks alone do not decide
    the question when m > 1.
    """
    if rho.group is not rho2.group or rho.ring != rho2.ring:
        raise ValueError("representations must share the group and the ring")
    frob = list(frob_set)
    if not frob:
        raise ValueError("frob_set is empty")
    ring, G = rho.ring, rho.group
    idx = [G.index(g) for g in frob]
    vf, piv = _smith_valuations(ring, _sum_vectors(rho, rho2, idx))
    va, _ = _smith_valuations(ring, _sum_vectors(rho, rho2, range(len(G))))
    sf, sa = module_size_log(ring, vf), module_size_log(ring, va)
    return SpanCertificate(
        spans=sf == sa,
        basis=[frob[i] for i in piv],
        size_log_frob=sf,
        size_log_full=sa,
        divisors_frob=vf,
        divisors_full=va,
        residue_rank_frob=vf.count(0),
        residue_rank_full=va.count(0),
    )


def trace_conclusion_check(rho: GroupRep, rho2: GroupRep, frob_set) -> CheckResult:
    """Equal traces on a spanning set force equal traces on the whole group."""
    G = rho.group
    frob = list(frob_set)
    inputs = {"ring": rho.ring.spec, "order": len(G), "frob_size": len(frob)}
    differ = [g for g in frob if rho.trace(g) != rho2.trace(g)]
    if differ:
        return CheckResult("trace_conclusion", False, inputs, skipped="traces differ on frob_set")
    cert = span_check(rho, rho2, frob)
    if not cert.spans:
        return CheckResult(
            "trace_conclusion", False, inputs, skipped="set not spanning",
            details={"size_log_frob": cert.size_log_frob, "size_log_full": cert.size_log_full},
        )
    t1, t2 = rho.traces(), rho2.traces()
    bad = sum(a != b for a, b in zip(t1, t2))
    return CheckResult(
        "trace_conclusion", bad == 0, inputs, expected=0, actual=bad,
        details={"basis_size": len(cert.basis), "size_log": cert.size_log_full},
    )


# ---------------------------------------------------------------- instances


def random_faltings_serre_instance(rng, ring: FiniteLocalRing, max_order: int = 2000):
    """A random (rho, rho', frob_set, kind) over ring with |G| <= max_order.

    G is a random 2x2 matrix group over the ring, rho its defining
    representation, and rho' a conjugate, a twist by a power of det, a
    twisted conjugate, or the contragredient.
    """
    A = MatrixAlgebra(ring, 2)
    group = None
    for attempt in range(40):
        ngens = 2 if attempt < 30 else 1
        gens = [A.random_invertible(rng) for _ in range(ngens)]
        try:
            group = FiniteGroup.matrices(A, gens, cap=max_order)
            break
        except ClosureOverflow:
            continue
    if group is None:
        raise RuntimeError("no small random group found")
    rho = GroupRep.defining(group, A)
    kind = str(rng.choice(["conjugate", "twist", "twisted-conjugate", "contragredient"]))
    if kind == "conjugate":
        rho2 = rho.conjugate(A.random_invertible(rng))
    elif kind == "contragredient":
        rho2 = rho.contragredient()
    else:
        k = int(rng.integers(1, 4))
        chi = [ring.power(A.det(g), k) for g in group.generators]
        rho2 = rho.twist(chi)
        if kind == "twisted-conjugate":
            rho2 = rho2.conjugate(A.random_invertible(rng))
    n = len(group)
    size = int(rng.choice([1, 2, 3, 4, 6, 8, 12, max(1, n // 4), n]))
    size = min(size, n)
    picks = rng.choice(n, size=size, replace=False)
    frob = [group.elements[int(i)] for i in picks]
    return rho, rho2, frob, kind


# ---------------------------------------------------------------- Dickson


@dataclass(frozen=True)
class DicksonClass:
    tag: str  # ContainsSL2 | Reducible | Dihedral | SmallExceptional | ProjectivelySmall
    order: int  # |PH|
    q0: int | None = None
    name: str | None = None
    certificate: dict = field(default_factory=dict, compare=False, hash=False)

    def __str__(self):
        if self.tag == "ContainsSL2":
            return f"ContainsSL2(q0={self.q0})"
        if self.tag == "SmallExceptional":
            return f"SmallExceptional({self.name})"
        if self.tag == "ProjectivelySmall":
            return f"ProjectivelySmall({self.order})"
        return self.tag


EXCEPTIONAL_FINGERPRINTS = {
    "A4": {1: 1, 2: 3, 3: 8},
    "S4": {1: 1, 2: 9, 3: 8, 4: 6},
    "A5": {1: 1, 2: 15, 3: 20, 5: 24},
}


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def pgl2_order(q: int) -> int:
    return q * (q * q - 1)


def _check_dickson_ring(ring: FiniteLocalRing):
    if ring.kind != "field":
        raise ValueError("Dickson classification needs a field")
    if ring.ell < 3:
        raise ValueError("characteristic 2 is not supported")


def algebra_dimension(algebra: MatrixAlgebra, generators) -> int:
    """F_q-dimension of the algebra spanned by the group generated by generators."""
    basis_rows = [list(algebra.identity)]
    frontier = [algebra.identity]
    rank = 1
    while frontier:
        new = []
        for X in frontier:
            for g in generators:
                Y = algebra.mul(X, g)
                vals, _ = _smith_valuations(algebra.ring, basis_rows + [list(Y)])
                if len(vals) > rank:
                    basis_rows.append(list(Y))
                    rank += 1
                    new.append(Y)
        frontier = new
    return rank


def dickson_classify(generators, ring: FiniteLocalRing) -> DicksonClass:
    """Classify H = <generators> in GL_2(F_q) by its projective image."""
    _check_dickson_ring(ring)
    A = MatrixAlgebra(ring, 2)
    gens = [tuple(g) for g in generators]
    H = FiniteGroup.matrices(A, gens)
    PH = FiniteGroup.projective(A, gens)
    n = len(PH)
    # Burnside: absolutely irreducible iff H spans M_2(F_q)
    dim = algebra_dimension(A, gens)
    if dim < 4:
        return DicksonClass("Reducible", n, certificate={"algebra_dim": dim, "order_H": len(H)})
    series = PH.derived_series()
    if series[-1] > 1:
        p, f = ring.ell, ring.f
        for e in sorted(e for e in range(1, f + 1) if f % e == 0):
            q0 = p**e
            for label, size in (("PSL", psl2_order(q0)), ("PGL", pgl2_order(q0))):
                if n == size:
                    return DicksonClass(
                        "ContainsSL2", n, q0=q0,
                        certificate={"match": label, "derived_series": series, "order_H": len(H)},
                    )
    orders = PH.element_orders()
    if n % 2 == 0 and orders.get(n // 2, 0) > 0 and n >= 4:
        return DicksonClass("Dihedral", n, certificate={"cyclic_index_2": n // 2})
    for name, fp in EXCEPTIONAL_FINGERPRINTS.items():
        if dict(orders) == fp:
            return DicksonClass("SmallExceptional", n, name=name, certificate={"element_orders": dict(orders)})
    return DicksonClass("ProjectivelySmall", n, certificate={"element_orders": dict(orders)})


def _subfield_embedding(ring: FiniteLocalRing, big: FqField) -> np.ndarray:
    """Codes of F_q inside F_{q^2}, via a root of F_q's defining polynomial."""
    if ring.f == 1:
        return np.arange(ring.size)
    xs = big.elements()
    acc = np.zeros_like(xs)
    for c in reversed(ring.modulus):
        acc = big.add(big.mul(acc, xs), c)
    root = int(xs[np.flatnonzero(acc == 0)[0]])
    powers = [big.power(root, i) for i in range(ring.f)]
    table = np.zeros(ring.size, dtype=np.int64)
    for a in range(ring.size):
        v = 0
        for c, pw in zip(ring.coefficients(a), powers):
            v = big.add(v, big.mul(c, pw))
        table[a] = v
    return table


def has_common_eigenline(generators, ring: FiniteLocalRing) -> bool:
    """Search P^1(F_{q^2}) for a line fixed by every generator."""
    big = FqField(ring.ell, 2 * ring.f)
    emb = _subfield_embedding(ring, big)
    ts = big.elements()
    alive = np.ones(big.q, dtype=bool)  # lines [1 : t]
    infinity = True  # the line [0 : 1]
    for g in generators:
        a, b, c, d = (int(emb[x]) for x in g)
        # g (1, t) is proportional to (1, t) iff (a + b t) t = c + d t
        lhs = big.mul(big.add(a, big.mul(b, ts)), ts)
        alive &= lhs == big.add(c, big.mul(d, ts))
        infinity &= b == 0
    return bool(alive.any() or infinity)


def _field_of_definition(ring: FiniteLocalRing, values) -> int:
    """Smallest subfield F_{p^e} containing all the given values."""
    p, f = ring.ell, ring.f
    F = FqField(p, f)
    for e in range(1, f + 1):
        if f % e == 0 and all(F.power(v, p**e) == v for v in values):
            return p**e
    return p**f


def dickson_oracle(generators, ring: FiniteLocalRing) -> DicksonClass:
    """Independent classification by enumeration.

    Eigenline search over F_{q^2}, derived series from all commutator
    pairs, and the subfield generated by tr^2/det. Cost is O(|PH|^2).
    """
    _check_dickson_ring(ring)
    A = MatrixAlgebra(ring, 2)
    gens = [tuple(g) for g in generators]
    PH = FiniteGroup.projective(A, gens)
    n = len(PH)
    if has_common_eigenline(gens, ring):
        return DicksonClass("Reducible", n)
    series = PH.derived_series(exhaustive=True)
    if series[-1] > 1:
        H = FiniteGroup.matrices(A, gens)
        invariants = {ring.mul(ring.power(A.trace(h), 2), ring.inv(A.det(h))) for h in H}
        q0 = _field_of_definition(ring, invariants)
        if psl2_order(q0) in series:
            return DicksonClass("ContainsSL2", n, q0=q0)
    orders = PH.element_orders()
    if n >= 4 and n % 2 == 0 and orders.get(n // 2, 0):
        return DicksonClass("Dihedral", n)
    shapes = {(12, 4, 1): "A4", (24, 12, 4, 1): "S4", (60,): "A5"}
    name = shapes.get(tuple(series))
    if name:
        return DicksonClass("SmallExceptional", n, name=name)
    return DicksonClass("ProjectivelySmall", n)


def taylor_wiles_check(generators, ring: FiniteLocalRing, cyclotomic_character=None) -> bool:
    """Perfectness of the SL_2 witness and irreducibility on the cyclotomic kernel.

    cyclotomic_character maps a matrix to a unit of F_q and must be a
    homomorphism on H; it defaults to det.
    """
    cls = dickson_classify(generators, ring)
    if cls.tag != "ContainsSL2":
        raise PreconditionError(f"classification is {cls}, not ContainsSL2")
    A = MatrixAlgebra(ring, 2)
    chi = cyclotomic_character or A.det
    H = FiniteGroup.matrices(A, [tuple(g) for g in generators])
    W = H.derived_subgroup()
    q0 = cls.q0
    if len(W) != q0 * (q0 * q0 - 1) or any(A.det(w) != 1 for w in W.generators):
        return False
    if not W.is_perfect(exhaustive=len(W) <= 2000):
        return False
    kernel = [h for h in H if chi(h) == 1]
    if len(H.subgroup(kernel)) != len(kernel):
        raise ValueError("cyclotomic_character is not a homomorphism on H")
    return algebra_dimension(A, kernel) == 4


# ---------------------------------------------------------------- standard subgroups


def subfield_basis(ring: FiniteLocalRing, e: int) -> list[int]:
    """An F_p-basis of F_{p^e} inside the field; e must be 1 or f."""
    if e == 1:
        return [1]
    if e != ring.f:
        raise ValueError("only the prime field and the whole field are supported")
    return [ring.ell**i for i in range(ring.f)]


def sl2_generators(ring: FiniteLocalRing, e: int | None = None):
    """Elementary matrices generating SL_2(F_{p^e}) inside GL_2(F_q)."""
    basis = subfield_basis(ring, ring.f if e is None else e)
    return [(1, x, 0, 1) for x in basis] + [(1, 0, x, 1) for x in basis]


def gl2_generators(ring: FiniteLocalRing):
    return sl2_generators(ring) + [(ring.generator, 0, 0, 1)]


def borel_generators(ring: FiniteLocalRing):
    g = ring.generator
    return [(g, 1, 0, 1), (1, 0, 0, g)]


def split_normalizer_generators(ring: FiniteLocalRing):
    g = ring.generator
    return [(g, 0, 0, 1), (1, 0, 0, g), (0, 1, 1, 0)]


def nonsplit_normalizer_generators(ring: FiniteLocalRing):
    """Multiplication by a generator of F_{q^2} and the Frobenius, in the basis (1, alpha)."""
    A = MatrixAlgebra(ring, 2)
    q = ring.size
    for t in range(q):
        for N in range(1, q):
            if any(ring.add(ring.sub(ring.mul(x, x), ring.mul(t, x)), N) == 0 for x in range(q)):
                continue
            r = (0, ring.neg(N), 1, t)
            if projective_order(A, r, q + 1) == q + 1:
                return [r, (1, t, 0, ring.neg(1))]
    raise RuntimeError("no nonsplit torus generator found")


def projective_order(algebra: MatrixAlgebra, m, limit: int = CLOSURE_CAP) -> int | None:
    """Order of m in PGL_d, or None if it exceeds limit."""
    norm = algebra.projective_normalize
    start = norm(m)
    y, n = start, 1
    while y != algebra.identity:
        if n >= limit:
            return None
        y = norm(algebra.mul(y, start))
        n += 1
    return n


def triangle_generators(ring: FiniteLocalRing, k: int):
    """a, b with projective orders 2, 3 and ab of order k (A4, S4, A5 for k = 3, 4, 5)."""
    A = MatrixAlgebra(ring, 2)
    b = (0, ring.neg(1), 1, ring.neg(1))
    q = ring.size
    for x in range(q):
        for y in range(q):
            for z in range(q):
                a = (x, y, z, ring.neg(x))
                if not A.is_invertible(a) or projective_order(A, a, 2) != 2:
                    continue
                if projective_order(A, A.mul(a, b), k) == k:
                    return [a, b]
    raise ValueError(f"no (2,3,{k}) triangle generators over {ring.spec}")


def curated_subgroups():
    """Twenty labelled subgroups of GL_2(F_q), q in {5, 7, 9, 25, 49}, spanning every class."""
    out = []

    def add(label, spec, gens):
        out.append((label, FiniteLocalRing.from_spec(spec), gens))

    for spec in ("F_5", "F_7", "F_9", "F_25", "F_49"):
        R = FiniteLocalRing.from_spec(spec)
        q = R.size
        if q in (5, 7, 9):
            add(f"SL2(F_{q})", spec, sl2_generators(R))
        if q in (25, 49):
            add(f"SL2(F_{R.ell}) in GL2(F_{q})", spec, sl2_generators(R, 1))
        if q == 5:
            add("GL2(F_5)", spec, gl2_generators(R))
        if q in (5, 7):
            add(f"Borel(F_{q})", spec, borel_generators(R))
        if q in (5, 7, 25):
            add(f"N(split torus)(F_{q})", spec, split_normalizer_generators(R))
        if q in (7, 9, 49):
            add(f"N(nonsplit torus)(F_{q})", spec, nonsplit_normalizer_generators(R))
        if q == 9:
            add("SL2(F_3) in GL2(F_9)", spec, sl2_generators(R, 1))
        if q in (5, 25):
            add(f"S4 in PGL2(F_{q})", spec, triangle_generators(R, 4))
        if q == 7:
            add("A4 in PGL2(F_7)", spec, triangle_generators(R, 3))
        if q in (9, 49):
            add(f"A5 in PGL2(F_{q})", spec, triangle_generators(R, 5))
    return out
