"""Exact and high-precision checks for a genus-3 family with a sextic Prym.

Modules: cyclotomic (Z[zeta_6]), ffchar (finite fields, characters, Jacobi
and Gauss sums, finite 2F1), curves (point counts and trace pairs), periods
(2F1 periods, lattices, QM), bounds (log-scale effective constants), galrep
(finite-group models of Galois representations) and cli.
"""

__version__ = "0.1.0"
