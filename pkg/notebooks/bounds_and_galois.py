"""
Effective bounds and small Galois images
========================================

"""

# astronomically large constants live as log10 (or log10 log10)
from prymverify import bounds as B
kappa = B.kappa_log(1, 1, 1.0)
print(kappa.level, float(kappa.value))
print(B.height_diff_bound(kappa), B.bost_lower(1))

# the Snowden-type constant needs the second level
N = B.snowden_constant_log(1, [2, 3])
print(N.level, float(N.value))

# finite local rings: fields, Z/l^m and Galois rings
from prymverify.galrep import FiniteLocalRing, MatrixAlgebra, FiniteGroup
R = FiniteLocalRing.from_spec("GR(9,2)")
print(R.size, R.residue_size, len(R.units()))

# SL2(F_5) sits inside GL2(F_25); Dickson's list recognises it
from prymverify import galrep as G
F25 = FiniteLocalRing.from_spec("F_25")
gens = G.sl2_generators(F25, 1)
print(G.dickson_classify(gens, F25))

# it is perfect: the commutator subgroup is everything
F5 = FiniteLocalRing.from_spec("F_5")
S = FiniteGroup.matrices(MatrixAlgebra(F5, 2), G.sl2_generators(F5))
print(len(S), len(S.derived_subgroup_exhaustive()))

# a random Faltings-Serre instance over Z/9
import numpy as np
rho, rho2, frob, kind = G.random_faltings_serre_instance(np.random.default_rng(1), FiniteLocalRing.from_spec("Z/9"))
cert = G.span_check(rho, rho2, frob)
print(kind, len(rho.group), cert.spans, G.trace_conclusion_check(rho, rho2, frob).status)
