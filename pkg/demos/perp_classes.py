"""
Two out of three for Ext-orthogonality
======================================

Write X perp T when Ext^i(X, T) vanishes for all large i.  For a short exact
sequence 0 -> X -> Y -> Z -> 0 the long exact sequence shows that if two of
X, Y, Z are perp to T, so is the third.  Within a finite window the third
term is only forced to vanish one degree in from each end of the tail.
"""

from stabext import ar_sequence, ext_deg, two_of_three_check
from stabext.workbench import load_corpus

entry = load_corpus()["qext-q2"]
M = entry.module("M")
seq = ar_sequence(M)
print("almost split sequence: dims", seq.left.dim, "->", seq.middle.dim, "->", seq.right.dim)

for T in entry.modules.values():
    for side in ("left", "right"):
        res = two_of_three_check(seq.left, seq.middle, seq.right, T, side)
        print(f"T={T.name:2s} {side:5s} holds={res['holds']} consistent={res['consistent']}")

print("ext_deg of the middle term:", ext_deg(seq.middle))
