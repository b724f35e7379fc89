"""
Periodic modules over a truncated polynomial ring
=================================================

Over k[x]/(x^3) the syzygy of k[x]/(x) is k[x]/(x^2) and back again, so every
non-projective indecomposable is Omega-periodic.  Its stable self-extensions
never vanish, which is the reason such modules have infinite extension degree.
"""

from stabext import GF, detect_syzygy_period, ext_deg, ext_hat, omega, stable_dim
from stabext.corpus import truncated_module, truncated_polynomial

A = truncated_polynomial(GF(3), 3)
M1, M2 = truncated_module(A, 1), truncated_module(A, 2)

# Syzygies alternate between the two uniserial modules.
print("dims of Omega^n M1, n = -3..3:", [omega(M1, n).dim for n in range(-3, 4)])

period, iso = detect_syzygy_period(M1)
print("Omega-period of M1:", period)

# The stable self-extensions repeat with the period and equal stable End.
print("Ext^i(M1, M1), i = 1..6:", [ext_hat(M1, M1, i) for i in range(1, 7)])
print("stable End(M1):", stable_dim(M1, M1))

for M in (M1, M2):
    print(M.name, "->", ext_deg(M, window=20, guard=8))
