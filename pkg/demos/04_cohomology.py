"""
H^1 of a cyclic group, and the rank / kernel table
===================================================

The kernel of WC(E/K) -> WC(E/K') is H^1(G, E(K')).  For the surfaces here it
is computed either from rank counts or from explicit sections.
"""

from mwlat.cli.tables import format_summary, summary_table
from mwlat.cohomology import (
    GModule,
    coboundary_solve,
    cyclotomic_module,
    direct_sum,
    h1_cyclic,
    regular_module,
)

# the two building blocks: Z[G] has no cohomology, Z[zeta_p] has Z/p
print("H1(Z[C5])      =", h1_cyclic(regular_module(5)))
print("H1(Z[zeta_5])  =", h1_cyclic(cyclotomic_module(5)))
print("H1(Z[zeta_5]^2)=", h1_cyclic(cyclotomic_module(5, 2)))

# any module given by a matrix; here Z with sigma = -1 plus Z/4 with trivial action
M = direct_sum(GModule(2, 1, [], [[-1]]), GModule(2, 0, [4], [[1]]))
print("H1(sign + Z/4) =", h1_cyclic(M))

# a trace-zero combination sum a_l sigma^l Q is a coboundary: here is the witness
a = [1, -1, 0, 0, 0]
print("\ncoboundary of", a, "->", coboundary_solve(a))

# the full table: ranks by Shioda-Tate, kernels by rank counts or by sections
print()
print(format_summary(summary_table()))
