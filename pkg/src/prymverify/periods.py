"""Periods of X_lambda, the QM endomorphism M and related numerics.

All hypergeometric and Gamma evaluations run in mpmath at WORKING_DPS
decimal digits; results are handed back as Python complex numbers unless a
function says otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
from scipy import integrate

from .cyclotomic import CycZ6, root_of_unity
from .report import CheckResult

WORKING_DPS = 34
SERIES_RADIUS = 0.7
MAX_RADIUS = 0.95

mp = mpmath.mp


class ConvergenceError(ArithmeticError):
    """No transformation brings the argument into a convergent region."""


class SchwarzPoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class HypParams:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c.denominator == 1 and self.c <= 0:
            raise ValueError(f"c = {self.c} is a non-positive integer")

    @property
    def excess(self) -> Fraction:
        """c - a - b."""
        return self.c - self.a - self.b

    def shifted(self) -> HypParams:
        """(a-c+1, b-c+1; 2-c): the second local solution at 0."""
        return HypParams(self.a - self.c + 1, self.b - self.c + 1, 2 - self.c)

    def mp(self):
        return tuple(mpmath.mpf(x.numerator) / x.denominator for x in (self.a, self.b, self.c))


TRIPLE_MU1 = HypParams(Fraction(1, 6), Fraction(1, 3), Fraction(5, 6))
TRIPLE_MU5 = HypParams(Fraction(5, 6), Fraction(2, 3), Fraction(7, 6))


def _series(a, b, c, z, max_terms=20000):
    term = total = mpmath.mpc(1)
    eps = mpmath.mpf(10) ** (-mp.dps - 2)
    n = 0
    while True:
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        n += 1
        if abs(term) <= eps * abs(total) and n > 2:
            return total
        if n > max_terms:
            raise ConvergenceError(f"series did not converge at |z| = {float(abs(z)):.3g}")


def _is_nonpositive_int(x) -> bool:
    return x <= 0 and mpmath.isint(x)


def _connection_one(a, b, c, z, w=None):
    """Continuation from z = 1; w = 1 - z may be supplied exactly."""
    if w is None:
        w = 1 - z
    s = c - a - b
    if mpmath.isint(s):
        raise ConvergenceError("c - a - b is an integer; the z -> 1-z connection degenerates")
    first = second = mpmath.mpc(0)
    if not (_is_nonpositive_int(c - a) or _is_nonpositive_int(c - b)):
        first = mpmath.gamma(c) * mpmath.gamma(s) / (mpmath.gamma(c - a) * mpmath.gamma(c - b)) * _series(a, b, a + b + 1 - c, w)
    if not (_is_nonpositive_int(a) or _is_nonpositive_int(b)):
        second = (
            mpmath.gamma(c) * mpmath.gamma(-s) / (mpmath.gamma(a) * mpmath.gamma(b))
            * mpmath.power(w, s) * _series(c - a, c - b, 1 + s, w)
        )
    return first + second


def _connection_inf(a, b, c, z):
    d = b - a
    if mpmath.isint(d):
        raise ConvergenceError("a - b is an integer; the z -> 1/z connection degenerates")
    out = mpmath.mpc(0)
    for x, y, sign in ((a, b, 1), (b, a, -1)):
        if _is_nonpositive_int(y) or _is_nonpositive_int(c - x):
            continue
        out += (
            mpmath.gamma(c) * mpmath.gamma(sign * d) / (mpmath.gamma(y) * mpmath.gamma(c - x))
            * mpmath.power(-z, -x) * _series(x, x - c + 1, x - y + 1, 1 / z)
        )
    return out


def hyp2f1_mp(params: HypParams, z, method: str = "auto"):
    """Principal-branch 2F1(a, b; c; z) as an mpc at the current mpmath precision.

    method is one of auto, series, connection, pfaff, inversion.
    """
    a, b, c = params.mp()
    z = mpmath.mpc(z)
    if z == 0:
        return mpmath.mpc(1)
    if method == "auto":
        if abs(z) <= SERIES_RADIUS:
            method = "series"
        elif abs(1 - z) <= SERIES_RADIUS:
            method = "connection"
        else:
            if z.imag == 0 and z.real >= 1:
                raise ValueError("z lies on the branch cut [1, inf)")
            options = {"pfaff": abs(z / (z - 1)), "inversion": abs(1 / z), "series": abs(z), "connection": abs(1 - z)}
            method, radius = min(options.items(), key=lambda kv: kv[1])
            if radius > MAX_RADIUS:
                raise ConvergenceError(f"no convergent region for z = {complex(z)}")
    if method == "series":
        return _series(a, b, c, z)
    if method == "connection":
        return _connection_one(a, b, c, z)
    if method == "pfaff":
        return mpmath.power(1 - z, -a) * _series(a, c - b, c, z / (z - 1))
    if method == "inversion":
        return _connection_inf(a, b, c, z)
    raise ValueError(f"unknown method {method!r}")


def hyp2f1(params: HypParams, z: complex, precision: int = WORKING_DPS, method: str = "auto") -> complex:
    with mpmath.workdps(precision):
        return complex(hyp2f1_mp(params, z, method))


def euler_integral(params: HypParams, z: float) -> float:
    """Oracle: int_0^1 x^(b-1) (1-x)^(c-b-1) (1-zx)^(-a) dx = B(b, c-b) 2F1(a, b; c; z).

    Real z < 1 only.  Endpoint singularities are handled by quad's algebraic weight.
    """
    a, b, c = (float(x) for x in (params.a, params.b, params.c))
    value, _ = integrate.quad(
        lambda x: (1 - z * x) ** (-a), 0.0, 1.0, weight="alg", wvar=(b - 1, c - b - 1), epsabs=1e-13, epsrel=1e-12, limit=200
    )
    return value


def beta(x, y):
    return mpmath.beta(x, y)


def _q(num, den=1):
    return mpmath.mpf(num) / den


def zeta6_mp():
    return mpmath.expjpi(_q(1, 3))


def minus_one_power(num: int, den: int, branch_sign: int = 1):
    """(-1)^(num/den) on the principal branch exp(i pi num/den), or its conjugate."""
    return mpmath.expjpi(branch_sign * _q(num, den))


@dataclass(frozen=True)
class PeriodVector:
    kind: str
    lam: complex
    components: tuple[complex, complex, complex]

    def __iter__(self):
        return iter(self.components)

    def array(self) -> np.ndarray:
        return np.array(self.components, dtype=complex)


def period_vectors_mp(lam, t: int | None = None, X=None, branch_sign: int = 1):
    """(mu, nu) as mpc triples.

    With X given, lambda = X^6 and lambda^(1/6) is replaced by zeta6^t X;
    otherwise the principal sixth root of lambda is used.
    """
    z6 = zeta6_mp()
    z3 = z6**2
    if X is not None:
        X = mpmath.mpc(X)
        lam = X**6
        root6 = z6 ** (t or 0) * X
    else:
        lam = mpmath.mpc(lam)
        root6 = mpmath.power(lam, _q(1, 6))
    if lam == 0 or lam == 1:
        raise ValueError("lambda must avoid 0 and 1")
    e = lambda x: mpmath.expjpi(2 * x)  # noqa: E731
    mu1 = (1 - e(_q(2, 3))) * (1 - e(_q(1, 2))) * beta(_q(1, 3), _q(1, 2)) * hyp2f1_mp(TRIPLE_MU1, lam)
    # the (1 - e(0)) factor is an exact zero
    mu4 = mpmath.mpc(0) * (1 - e(_q(2, 3)))
    mu5 = (1 - e(_q(1, 3))) * (1 - e(_q(1, 2))) * beta(_q(2, 3), _q(1, 2)) * hyp2f1_mp(TRIPLE_MU5, lam)
    m23 = minus_one_power(-2, 3, branch_sign)
    m43 = minus_one_power(-4, 3, branch_sign)
    nu1 = (1 - z6) * (1 - z3) * m23 * beta(_q(1, 3), _q(5, 6)) * root6 * hyp2f1_mp(HypParams(Fraction(1, 2), Fraction(1, 3), Fraction(7, 6)), lam)
    nu4 = (1 - z3**2) * (1 - z3) * m23 * beta(_q(1, 3), _q(1, 3)) * root6**-2
    nu5 = (1 - z6**5) * (1 - z3**2) * m43 * beta(_q(2, 3), _q(1, 6)) / root6 * hyp2f1_mp(HypParams(Fraction(1, 2), Fraction(2, 3), Fraction(5, 6)), lam)
    return (mu1, mu4, mu5), (nu1, nu4, nu5)


def period_vectors(lam: complex = None, t: int | None = None, X: complex | None = None, branch_sign: int = 1, precision: int = WORKING_DPS):
    with mpmath.workdps(precision):
        mu, nu = period_vectors_mp(lam, t, X, branch_sign)
        lam_value = complex(X) ** 6 if X is not None else complex(lam)
        return (
            PeriodVector("mu", lam_value, tuple(complex(v) for v in mu)),
            PeriodVector("nu", lam_value, tuple(complex(v) for v in nu)),
        )


# Z-span of diag(z^k, z^4k, z^5k): exact relations among the diagonal matrices.

def diag_power(k: int) -> tuple[CycZ6, CycZ6, CycZ6]:
    return root_of_unity(k), root_of_unity(4 * k), root_of_unity(5 * k)


def _diag_combo(*terms):
    out = [CycZ6(0, 0)] * 3
    for coeff, diag in terms:
        out = [o + coeff * d for o, d in zip(out, diag)]
    return tuple(out)


IDENTITY = (CycZ6(1), CycZ6(1), CycZ6(1))
MIDDLE_TWO = (CycZ6(0), CycZ6(2), CycZ6(0))
MIDDLE_TWO_ZETA = (CycZ6(0), CycZ6(0, 2), CycZ6(0))


def diagonal_relations() -> dict[str, bool]:
    """Exact checks of the relations reducing diag(z^k, z^4k, z^5k) to the four-element basis."""
    d1 = diag_power(1)
    return {
        "square_with_minus_sign": diag_power(2) == _diag_combo((-1, IDENTITY), (1, d1), (-1, MIDDLE_TWO_ZETA)),
        "square": diag_power(2) == _diag_combo((-1, IDENTITY), (1, d1), (1, MIDDLE_TWO_ZETA)),
        "cube": diag_power(3) == _diag_combo((-1, IDENTITY), (1, MIDDLE_TWO)),
    }


def _as_real(vectors) -> np.ndarray:
    """Columns are the real coordinates of the complex vectors."""
    arr = np.array(vectors, dtype=complex)
    return np.concatenate([arr.real, arr.imag], axis=1).T


@dataclass
class PeriodLattice:
    generators: list[np.ndarray]
    labels: list[str]
    relations: dict[str, bool] = field(default_factory=dict)

    @property
    def real_basis(self) -> np.ndarray:
        return _as_real(self.generators)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.real_basis, compute_uv=False)

    def rank(self, tol: float = 1e-8) -> int:
        s = self.singular_values()
        return int((s > tol * s[0]).sum())

    def coordinates(self, v) -> tuple[np.ndarray, float]:
        """Real coefficients expressing v in the generators, and the residual."""
        target = _as_real([np.asarray(v, dtype=complex)])[:, 0]
        coeffs, *_ = np.linalg.lstsq(self.real_basis, target, rcond=None)
        residual = float(np.linalg.norm(self.real_basis @ coeffs - target) / max(np.linalg.norm(target), 1e-300))
        return coeffs, residual

    def contains(self, v, tol: float = 1e-7) -> bool:
        coeffs, residual = self.coordinates(v)
        return residual < 1e-8 and float(np.max(np.abs(coeffs - np.round(coeffs)))) < tol


D3 = np.array([complex(root_of_unity(k).embed()) for k in (1, 4, 5)])
D2 = np.array([complex(root_of_unity(k).embed()) for k in (1, 5)])


def lattice_build(mu: PeriodVector, nu: PeriodVector) -> PeriodLattice:
    """The rank-6 period lattice: mu, nu, D mu, D nu, diag(0,2,0) nu, diag(0,2 z6,0) nu."""
    rel = diagonal_relations()
    if not (rel["square"] and rel["cube"]):
        raise ArithmeticError(f"diagonal relations failed: {rel}")
    m, n = mu.array(), nu.array()
    z6 = complex(root_of_unity(1).embed())
    gens = [m, n, D3 * m, D3 * n, np.array([0, 2, 0]) * n, np.array([0, 2 * z6, 0]) * n]
    lattice = PeriodLattice(gens, ["mu", "nu", "D mu", "D nu", "2 e2 nu", "2 z6 e2 nu"], rel)
    if lattice.rank() < 6:
        raise ArithmeticError(f"period lattice is degenerate: singular values {lattice.singular_values()}")
    return lattice


def projected_lattice(mu: PeriodVector, nu: PeriodVector) -> PeriodLattice:
    """pi(mu), D pi(mu), pi(nu), D pi(nu) with pi(x, y, z) = (x, z)."""
    pm = mu.array()[[0, 2]]
    pn = nu.array()[[0, 2]]
    return PeriodLattice([pm, D2 * pm, pn, D2 * pn], ["pi mu", "D pi mu", "pi nu", "D pi nu"])


def schwarz_s_mp(params: HypParams, z):
    den = hyp2f1_mp(params, z)
    if abs(den) < mpmath.mpf(10) ** (-mp.dps + 4):
        raise SchwarzPoleError(f"2F1{params} vanishes at z = {complex(z)}")
    one_minus_c = params.c
    return mpmath.power(z, 1 - mpmath.mpf(one_minus_c.numerator) / one_minus_c.denominator) * hyp2f1_mp(params.shifted(), z) / den


def schwarz_s(params: HypParams, z: complex, precision: int = WORKING_DPS) -> complex:
    """s_{a,b;c}(z) = z^(1-c) 2F1(a-c+1, b-c+1; 2-c; z) / 2F1(a, b; c; z)."""
    with mpmath.workdps(precision):
        return complex(schwarz_s_mp(params, z))


def _leading_at_one(params: HypParams):
    """Leading coefficient of 2F1 as z -> 1: F(1) if c-a-b > 0, else the (1-z)^(c-a-b) coefficient."""
    a, b, c = params.mp()
    s = c - a - b
    if s > 0:
        return mpmath.gamma(c) * mpmath.gamma(s) / (mpmath.gamma(c - a) * mpmath.gamma(c - b))
    return mpmath.gamma(c) * mpmath.gamma(-s) / (mpmath.gamma(a) * mpmath.gamma(b))


def schwarz_limit_at_one(params: HypParams) -> complex:
    """lim s(z) as z -> 1 predicted from the Gamma connection coefficients."""
    with mpmath.workdps(WORKING_DPS):
        return complex(_leading_at_one(params.shifted()) / _leading_at_one(params))


def schwarz_s_in_Y(params: HypParams, Y):
    """s(1 - 4Y^3) continued analytically in Y through the connection formula.

    (1-z)^(1/3) is taken to be 4^(1/3) Y, so the result is holomorphic in Y
    across the preimage of [1, inf) when 3(c-a-b) is an integer.
    """
    Y = mpmath.mpc(Y)
    w = 4 * Y**3
    z = 1 - w
    cube = mpmath.cbrt(4) * Y

    def continued(p: HypParams):
        k = p.excess * 3
        if k.denominator != 1:
            raise ValueError("c - a - b must lie in Z/3")
        a, b, c = p.mp()
        s = c - a - b
        first = mpmath.gamma(c) * mpmath.gamma(s) / (mpmath.gamma(c - a) * mpmath.gamma(c - b)) * _series(a, b, a + b + 1 - c, w)
        second = mpmath.gamma(c) * mpmath.gamma(-s) / (mpmath.gamma(a) * mpmath.gamma(b)) * cube ** int(k) * _series(c - a, c - b, 1 + s, w)
        return first + second

    c = mpmath.mpf(params.c.numerator) / params.c.denominator
    return mpmath.power(z, 1 - c) * continued(params.shifted()) / continued(params)


def check_extension_on_curve(params_list=(TRIPLE_MU1, TRIPLE_MU5), digits: int = 6) -> CheckResult:
    """Boundedness of the Schwarz functions on C_1 as f_1 -> 0 and f_1 -> 1.

    Near X = 0 the rescaled values X^(c-1) s(X^6) must settle to `digits`
    significant digits along X = 10^-k.  Near Y = 0 the Y-continued values
    must approach the Gamma-ratio limit and have bounded second differences
    on a small circle, including across the cut (Y < 0).
    """
    tol = 10.0 ** (-digits)
    details = {}
    ok = True
    with mpmath.workdps(WORKING_DPS):
        for p in params_list:
            key = f"{p.a},{p.b};{p.c}"
            if p.excess * 3 != int(p.excess * 3):
                ok = False
            # X -> 0
            power = 1 - p.c  # s ~ X^(6(1-c))
            seq = []
            for k in range(2, 7):
                X = mpmath.mpf(10) ** (-k)
                seq.append(complex(schwarz_s_mp(p, X**6) / X ** (6 * (mpmath.mpf(power.numerator) / power.denominator))))
            x_spread = max(abs(seq[-1] - v) for v in seq[-3:]) / abs(seq[-1])
            # Y -> 0
            limit = schwarz_limit_at_one(p)
            yseq = [complex(schwarz_s_in_Y(p, mpmath.mpf(10) ** (-k))) for k in range(2, 9)]
            y_err = abs(yseq[-1] - limit) / abs(limit)
            h = mpmath.mpf("1e-3")
            ring = [complex(schwarz_s_in_Y(p, h * mpmath.expjpi(mpmath.mpf(j) / 6))) for j in range(12)]
            centre = complex(schwarz_s_in_Y(p, mpmath.mpf("1e-30")))
            second = max(abs(ring[j] + ring[(j + 6) % 12] - 2 * centre) / float(h) ** 2 for j in range(12))
            cut = complex(schwarz_s_in_Y(p, -h))
            principal = complex(schwarz_s_mp(p, 1 - 4 * h**3))
            agrees = abs(complex(schwarz_s_in_Y(p, h)) - principal) < 1e-12 * abs(principal)
            passed = x_spread < tol and y_err < tol and second < 1e4 and agrees and np.isfinite(cut).all()
            ok = ok and passed
            details[key] = {
                "x_sequence": seq,
                "x_spread": x_spread,
                "y_sequence": yseq,
                "y_limit": limit,
                "y_error": y_err,
                "second_difference": second,
                "value_across_cut": cut,
                "matches_principal_branch": agrees,
                "excess": str(p.excess),
            }
    return CheckResult("schwarz_extension", ok, {"digits": digits}, tolerance=tol, details=details)


@dataclass
class QMatrix:
    matrix: np.ndarray
    X: complex
    Y: complex
    t_prime: int

    def __matmul__(self, other):
        return self.matrix @ other


def curve_point(X: complex) -> tuple[complex, complex]:
    """(X, Y) on X^6 + 4Y^3 = 1 with the real cube root when 1 - X^6 > 0."""
    w = (1 - X**6) / 4
    if np.isreal(w) and w.real > 0:
        return X, float(np.cbrt(w.real))
    return X, complex(w) ** (1 / 3)


def qm_matrix_mp(X, Y, t_prime: int, branch_sign: int = 1):
    z6 = zeta6_mp()
    z3 = z6**2
    X, Y = mpmath.mpc(X), mpmath.mpc(Y)
    cube = mpmath.cbrt(4) * Y
    m12 = (1 - z6) * (1 - z3) * minus_one_power(-2, 3, branch_sign) * beta(_q(1, 3), _q(5, 6)) * z6**t_prime * X * cube / ((1 - z3) * beta(_q(2, 3), _q(1, 2)))
    m21 = (1 - z6**5) * (1 - z3**2) * minus_one_power(-4, 3, branch_sign) * beta(_q(2, 3), _q(1, 6)) * z6 ** (-t_prime) / (X * cube) / ((1 - z3**2) * beta(_q(1, 3), _q(1, 2)))
    return m12, m21


def qm_matrix(point: tuple[complex, complex], t_prime: int, branch_sign: int = 1) -> QMatrix:
    X, Y = point
    if X == 0 or Y == 0:
        raise ValueError("X and Y must be nonzero")
    with mpmath.workdps(WORKING_DPS):
        m12, m21 = qm_matrix_mp(X, Y, t_prime % 6, branch_sign)
        mat = np.array([[0, complex(m12)], [complex(m21), 0]], dtype=complex)
    return QMatrix(mat, complex(X), complex(Y), t_prime % 6)


def beta_identity() -> complex:
    """[(1-z6)(1-z6^5)][(1-z3)(1-z3^2)] B(2/3,1/6) B(1/3,5/6) / ([(1-z3)(1-z3^2)] B(1/3,1/2) B(2/3,1/2))."""
    with mpmath.workdps(WORKING_DPS):
        z6 = zeta6_mp()
        z3 = z6**2
        unit = (1 - z3) * (1 - z3**2)
        num = (1 - z6) * (1 - z6**5) * unit * beta(_q(2, 3), _q(1, 6)) * beta(_q(1, 3), _q(5, 6))
        return complex(num / (unit * beta(_q(1, 3), _q(1, 2)) * beta(_q(2, 3), _q(1, 2))))


# coefficients of M g in the basis (pi mu, D pi mu, pi nu, D pi nu), g running over the same basis
EXPECTED_QM_COEFFICIENTS = np.array(
    [
        [0, 0, 2, 0],
        [0, 0, 2, -2],
        [1, 0, 0, 0],
        [1, -1, 0, 0],
    ],
    dtype=float,
)


def qm_coefficients(lattice: PeriodLattice, M: QMatrix):
    rows, residuals = [], []
    for g in lattice.generators:
        coeffs, res = lattice.coordinates(M.matrix @ g)
        rows.append(coeffs)
        residuals.append(res)
    return np.array(rows), residuals


def check_qm_stabilizes(lattice: PeriodLattice, M: QMatrix, tol: float = 1e-7) -> CheckResult:
    """M maps every projected generator to the predicted integral combination."""
    coeffs, residuals = qm_coefficients(lattice, M)
    integral_err = float(np.max(np.abs(coeffs - np.round(coeffs))))
    pattern_err = float(np.max(np.abs(coeffs - EXPECTED_QM_COEFFICIENTS)))
    max_res = max(residuals)
    return CheckResult(
        id="qm_stabilizes",
        passed=pattern_err < tol and max_res < 1e-8,
        inputs={"X": M.X, "t_prime": M.t_prime},
        expected=EXPECTED_QM_COEFFICIENTS.tolist(),
        actual=np.round(coeffs, 9).tolist(),
        tolerance=tol,
        details={"integrality_error": integral_err, "pattern_error": pattern_err, "residual": max_res, "stabilizes": integral_err < tol and max_res < 1e-8},
    )


def projected_lattice_at(X: complex) -> PeriodLattice:
    """Projected lattice at lambda = X^6, with principal branches (independent of t')."""
    mu, nu = period_vectors(complex(X) ** 6)
    return projected_lattice(mu, nu)


def calibrate_t_prime(X: complex = 0.5) -> int:
    """The unique t' in Z/6 for which M reproduces the predicted coefficient patterns at X."""
    point = curve_point(X)
    lattice = projected_lattice_at(X)
    good = [t for t in range(6) if check_qm_stabilizes(lattice, qm_matrix(point, t))]
    if len(good) != 1:
        raise ArithmeticError(f"t' calibration is not unique at X = {X}: candidates {good}")
    return good[0]


def hilbert_symbol(a: int, b: int, p) -> int:
    """(a, b)_p for nonzero integers a, b; p a prime or 'inf'."""
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1

    def split(x):
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v, x

    alpha, u = split(a)
    beta_, v = split(b)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2  # noqa: E731
        omega = lambda x: ((x * x - 1) // 8) % 2  # noqa: E731
        e = eps(u) * eps(v) + alpha * omega(v) + beta_ * omega(u)
        return -1 if e % 2 else 1

    def legendre(x):
        r = pow(x % p, (p - 1) // 2, p)
        return -1 if r == p - 1 else r

    sign = (-1) ** ((alpha * beta_ * ((p - 1) // 2)) % 2)
    return sign * legendre(u) ** beta_ * legendre(v) ** alpha


def quaternion_discriminant(a: int, b: int) -> int:
    """Product of the finite primes where (a, b | Q) ramifies."""
    from .ffchar import prime_factors

    primes = sorted(set([2] + prime_factors(abs(a)) + prime_factors(abs(b))))
    disc = 1
    for p in primes:
        if hilbert_symbol(a, b, p) == -1:
            disc *= p
    return disc


def check_quaternion_relations(point: tuple[complex, complex], t_prime: int, tol: float = 1e-10) -> CheckResult:
    """I = diag(1+2 z3, 1+2 conj z3) and M satisfy I^2 = -3, M^2 = 2, IM = -MI."""
    z3 = complex(root_of_unity(2).embed())
    eye = np.eye(2)
    I = np.diag([1 + 2 * z3, 1 + 2 * np.conj(z3)])
    M = qm_matrix(point, t_prime).matrix
    errs = {
        "I^2+3": float(np.max(np.abs(I @ I + 3 * eye))),
        "M^2-2": float(np.max(np.abs(M @ M - 2 * eye))) / 2,
        "IM+MI": float(np.max(np.abs(I @ M + M @ I))) / max(float(np.max(np.abs(M))), 1e-300),
    }
    # I = id + 2 D^2 with D = diag(z6, z6^5), so I lies in Z[D]
    in_order = bool(np.allclose(I, eye + 2 * np.diag(D2**2), atol=tol))
    disc = quaternion_discriminant(-3, 2)
    return CheckResult(
        id="quaternion_relations",
        passed=all(v < tol for v in errs.values()) and in_order and disc == 6,
        inputs={"X": complex(point[0]), "t_prime": t_prime},
        expected={"discriminant": 6},
        actual={"discriminant": disc, **errs},
        tolerance=tol,
        details={"I_in_Z[D]": in_order},
    )


def schwarz_constants(branch_sign: int = 1) -> tuple[complex, complex]:
    """(const, const~) with nu1/mu1 = const s_{1/6,1/3;5/6} and nu5/mu5 = const~ s_{5/6,2/3;7/6}."""
    with mpmath.workdps(WORKING_DPS):
        z6 = zeta6_mp()
        z3 = z6**2
        c1 = (1 - z6) * (1 - z3) * minus_one_power(-2, 3, branch_sign) * beta(_q(1, 3), _q(5, 6)) / (2 * (1 - z3**2) * beta(_q(1, 3), _q(1, 2)))
        c2 = (1 - z6**5) * (1 - z3**2) * minus_one_power(-4, 3, branch_sign) * beta(_q(2, 3), _q(1, 6)) / (2 * (1 - z3) * beta(_q(2, 3), _q(1, 2)))
        return complex(c1), complex(c2)


def check_homothetic_basis(X: complex, tol: float = 1e-9) -> CheckResult:
    """After rescaling by diag(1/mu1, 1/nu4, 1/mu5) the moving generators are (const s1, 1, const~ s2)."""
    mu, nu = period_vectors(complex(X) ** 6)
    c1, c2 = schwarz_constants()
    lam = complex(X) ** 6
    predicted = (c1 * schwarz_s(TRIPLE_MU1, lam), 1.0, c2 * schwarz_s(TRIPLE_MU5, lam))
    actual = (nu.components[0] / mu.components[0], nu.components[1] / nu.components[1], nu.components[2] / mu.components[2])
    err = max(abs(a - p) / abs(p) for a, p in zip(actual, predicted))
    return CheckResult(
        "homothetic_basis",
        err < tol,
        {"X": complex(X)},
        expected=list(predicted),
        actual=list(actual),
        tolerance=tol,
        details={"const": c1, "const_tilde": c2, "relative_error": err},
    )
