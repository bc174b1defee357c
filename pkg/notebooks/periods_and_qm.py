"""
Period lattice and the QM matrix
================================

"""

import numpy as np

# 2F1 at working precision, with the connection formulas past |z| = 1
from prymverify.periods import TRIPLE_MU1, hyp2f1
for z in (0.3, 0.95, -4.0):
    print(z, hyp2f1(TRIPLE_MU1, z))

# period vectors at X = 0.5 (lambda = X^6); the mu_4 slot is exactly zero
from prymverify import periods as P
mu, nu = P.period_vectors(0.5 ** 6)
print(mu.components[1])

# the lattice they generate has full rank in C^3
lat = P.lattice_build(mu, nu)
print(lat.rank(), np.round(lat.singular_values(), 6))

# M squares to 2 and sends the projected lattice into itself
M = P.qm_matrix(P.curve_point(0.5), 0)
print(np.round(M.matrix @ M.matrix, 12))
print(P.check_qm_stabilizes(P.projected_lattice_at(0.5), M).actual)

# the quaternion algebra (-3, 2) has discriminant 6
print(P.quaternion_discriminant(-3, 2))

# the Beta-function identity behind M^2 = 2
print(P.beta_identity())
