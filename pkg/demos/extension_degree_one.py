"""
A module of extension degree one and its component
==================================================

The quantum exterior algebra on three generators (x_i^2 = 0 and
x_(i+1) x_i = -q x_i x_(i+1), here q = 2 over Q) has a 4-dimensional module M
whose only nonvanishing self-extension sits in degree 1.  Walking up its
stable Auslander-Reiten component, the extension degree grows by two per
row: 1, 3, 5, 7.

This takes about a minute.
"""

from stabext import build_component, certify_quasi_length, cone_layers, ext_deg
from stabext.workbench import load_corpus

entry = load_corpus()["qext-q2"]
M = entry.module("M")
print(entry.expected["fixture"]["selection"], entry.expected["fixture"]["chosen"])
print("ext_deg(M) =", ext_deg(M, window=20, guard=10))

G = build_component(M, radius=3)
print(f"component fragment: {len(G.vertices)} vertices, max valence {G.max_alpha()}")

# C^d: modules reached from M by d steps backwards along irreducible maps.
layers = cone_layers(M, 3, registry=G.registry)
# The largest member of C^d sits d rows above the boundary.
for L in layers:
    X = max(L.members, key=lambda Y: Y.dim)
    ql = certify_quasi_length(G, G.registry.lookup(X))
    print(f"d={L.d}  dims={[Y.dim for Y in L.members]}  ql(largest)={ql}  "
          f"ext_deg(C^d)={ext_deg(L.members, 20, 8)}  ext_deg(largest)={ext_deg(X, 20, 8)}")

print("(the shape is observed on a finite fragment only; it is not a proof of the global shape)")
