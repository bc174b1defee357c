"""
Sextic characters, Jacobi sums and point counts
===============================================

"""

# exact arithmetic in Z[zeta_6]; zeta_6 = z6 satisfies z6^2 = z6 - 1
from prymverify.cyclotomic import CycZ6, root_of_unity
z = root_of_unity(1)
print(z * z, z ** 6, CycZ6(2, 3).norm())

# a field with q = 1 mod 6, and its sextic character eta
from prymverify.ffchar import FqField, sextic_char, jacobi_sum
F = FqField(13)
eta = sextic_char(F)
print([str(eta(x)) for x in range(1, 13)])

# Jacobi sums have norm q
J = jacobi_sum(eta, eta ** 4)
print(J, J.norm())

# J(eta^2, eta^3) = eta^2(2) J(eta, eta^4), exactly
from prymverify.ffchar import check_hasse_davenport
print(check_hasse_davenport(F).passed)

# the curve X_lambda and the trace pair of its Prym part
from prymverify.curves import CurveXLambda, count_X_smooth, prym_trace_pair, check_trace_additivity
X = CurveXLambda(F, 5)
print(count_X_smooth(X), prym_trace_pair(X))
r = check_trace_additivity(X)
print(r.passed, r.expected, r.actual)

# every lambda at once, over F_25 this time
F25 = FqField(5, 2)
print(all(check_trace_additivity(CurveXLambda(F25, lam)).passed for lam in range(2, 25)))

# Weil numbers from counts over F_13, F_169, F_2197
from prymverify.curves import frobenius_eigenvalues
import numpy as np
alpha = frobenius_eigenvalues(13, 5)
print(np.round(np.abs(alpha) ** 2, 9))
