"""Built-in algebras and modules used by the verification suites.

Everything here is hand-derivable: truncated polynomial rings, small
group algebras, a symmetric Nakayama algebra with two simples, the path
algebra of a single arrow (a non-symmetric control), and the
eight-dimensional quantum exterior algebra in three generators.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import AlgebraPresentation
from .modcat import FDModule
from .xfield import QQ, Field, GF


def _table_from_product(F: Field, basis: list, product) -> list:
    """Build c[i][j] from ``product(i, j) -> {k: coeff}``."""
    n = len(basis)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [F.zero] * n
            for k, c in product(i, j).items():
                v[k] = F.add(v[k], F(c))
            row.append(v)
        table.append(row)
    return table


def _unit_vec(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return v


def truncated_polynomial(F: Field, n: int) -> AlgebraPresentation:
    """k[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    table = _table_from_product(F, labels, lambda i, j: {i + j: 1} if i + j < n else {})
    fname = f"F{F.p}" if F.p else "Q"
    return AlgebraPresentation(
        field=F, dim=n, basis_labels=labels, table=table,
        unit=_unit_vec(F, n, 0), idempotents=[_unit_vec(F, n, 0)],
        radical_basis=[_unit_vec(F, n, i) for i in range(1, n)],
        name=f"{fname}[x]/(x^{n})",
        provenance="generated: truncated polynomial ring",
    )


def group_algebra_c2(p: int = 2) -> AlgebraPresentation:
    F = GF(p)
    table = _table_from_product(F, ["1", "g"], lambda i, j: {(i + j) % 2: 1})
    rad = [[1, 1]] if p == 2 else []
    if p != 2:
        raise ValueError("only the modular case p = 2 is a local algebra")
    return AlgebraPresentation(
        field=F, dim=2, basis_labels=["1", "g"], table=table, unit=[1, 0],
        idempotents=[[1, 0]], radical_basis=rad, name="F2[C2]",
        provenance="generated: group algebra of the cyclic group of order 2",
    )


def group_algebra_klein(p: int = 2) -> AlgebraPresentation:
    """F_2[C2 x C2], basis 1, a, b, ab."""
    if p != 2:
        raise ValueError("only p = 2 is supported")
    F = GF(2)
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    index = {e: i for i, e in enumerate(elems)}

    def prod(i, j):
        a, b = elems[i], elems[j]
        return {index[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)]: 1}

    table = _table_from_product(F, ["1", "a", "b", "ab"], prod)
    return AlgebraPresentation(
        field=F, dim=4, basis_labels=["1", "a", "b", "ab"], table=table,
        unit=[1, 0, 0, 0], idempotents=[[1, 0, 0, 0]],
        radical_basis=[[1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]],
        name="F2[C2xC2]",
        provenance="generated: group algebra of the Klein four group",
    )


def symmetric_nakayama(F: Field) -> AlgebraPresentation:
    """Two-vertex quiver with arrows a: 1->2, b: 2->1, relations aba = bab = 0.

    Basis e1, e2, a, b, ab (= a.b, a loop at 2), ba (= b.a, a loop at 1).
    Left modules, so a = e2 a e1.
    """
    labels = ["e1", "e2", "a", "b", "ab", "ba"]
    # each basis element as (path as a tuple of arrows read left to right, start, end)
    # start = vertex of the right idempotent, end = vertex of the left one
    paths = {
        0: ((), 1, 1), 1: ((), 2, 2),
        2: (("a",), 1, 2), 3: (("b",), 2, 1),
        4: (("a", "b"), 2, 2), 5: (("b", "a"), 1, 1),
    }
    lookup = {(w, s): k for k, (w, s, _) in paths.items()}

    def prod(i, j):
        wi, si, ti = paths[i]
        wj, sj, tj = paths[j]
        if si != tj:
            return {}
        w = wi + wj
        if len(w) >= 3:
            return {}
        key = (w, sj)
        return {lookup[key]: 1} if key in lookup else {}

    table = _table_from_product(F, labels, prod)
    n = 6
    return AlgebraPresentation(
        field=F, dim=n, basis_labels=labels, table=table,
        unit=[1, 1, 0, 0, 0, 0],
        idempotents=[_unit_vec(F, n, 0), _unit_vec(F, n, 1)],
        radical_basis=[_unit_vec(F, n, i) for i in range(2, 6)],
        name=f"Nak2-{'F%d' % F.p if F.p else 'Q'}",
        provenance="generated: symmetric Nakayama algebra, quiver 1<->2, relations aba=bab=0",
    )


def path_algebra_a2(F: Field) -> AlgebraPresentation:
    """Path algebra of 1 -> 2: basis e1, e2, a.  Not symmetric."""
    labels = ["e1", "e2", "a"]
    paths = {0: ((), 1, 1), 1: ((), 2, 2), 2: (("a",), 1, 2)}
    lookup = {(w, s): k for k, (w, s, _) in paths.items()}

    def prod(i, j):
        wi, si, ti = paths[i]
        wj, sj, tj = paths[j]
        if si != tj:
            return {}
        key = (wi + wj, sj)
        return {lookup[key]: 1} if key in lookup else {}

    table = _table_from_product(F, labels, prod)
    return AlgebraPresentation(
        field=F, dim=3, basis_labels=labels, table=table, unit=[1, 1, 0],
        idempotents=[[1, 0, 0], [0, 1, 0]], radical_basis=[[0, 0, 1]],
        name=f"A2-{'F%d' % F.p if F.p else 'Q'}",
        provenance="generated: path algebra of a single arrow (not symmetric)",
    )


# -- quantum exterior algebra ---------------------------------------------------

QEXT_LABELS = ["1", "x0", "x1", "x2", "x0x1", "x1x2", "x2x0", "x0x1x2"]
_QEXT_WORDS = [(), (0,), (1,), (2,), (0, 1), (1, 2), (2, 0), (0, 1, 2)]


def _qext_normal_form(word, q):
    """Scalar and basis index of a word in x0, x1, x2 (or None if zero).

    Relations: x_i^2 = 0 and x_{i+1} x_i = -q x_i x_{i+1} (indices mod 3).
    """
    if len(set(word)) < len(word):
        return None
    w = list(word)
    coeff = Fraction(1)
    # swap coefficient for moving a left of b when the word reads (b, a)
    def swap(b, a):
        if (b, a) in ((1, 0), (2, 1), (0, 2)):
            return -q
        return -1 / Fraction(q)

    if len(w) == 2:
        target = {frozenset((0, 1)): (0, 1), frozenset((1, 2)): (1, 2), frozenset((0, 2)): (2, 0)}[frozenset(w)]
        if tuple(w) != target:
            coeff *= swap(w[0], w[1])
        return coeff, _QEXT_WORDS.index(target)
    changed = True
    while changed:
        changed = False
        for t in range(len(w) - 1):
            if w[t] > w[t + 1]:
                coeff *= swap(w[t], w[t + 1])
                w[t], w[t + 1] = w[t + 1], w[t]
                changed = True
    return coeff, _QEXT_WORDS.index(tuple(w))


def quantum_exterior_algebra(q=2, F: Field = QQ) -> AlgebraPresentation:
    """k<x0,x1,x2>/(x_i^2, x_{i+1} x_i + q x_i x_{i+1}), dimension 8, local symmetric."""
    q = Fraction(q)

    def prod(i, j):
        nf = _qext_normal_form(_QEXT_WORDS[i] + _QEXT_WORDS[j], q)
        if nf is None:
            return {}
        c, k = nf
        return {k: c}

    table = _table_from_product(F, QEXT_LABELS, prod)
    n = 8
    return AlgebraPresentation(
        field=F, dim=n, basis_labels=QEXT_LABELS, table=table,
        unit=_unit_vec(F, n, 0), idempotents=[_unit_vec(F, n, 0)],
        radical_basis=[_unit_vec(F, n, i) for i in range(1, n)],
        name=f"QExt3-q{q}",
        provenance=(
            "generated: local algebra on x0,x1,x2 with x_i^2 = 0 and "
            f"x_(i+1) x_i = -q x_i x_(i+1), q = {q}"
        ),
    )


# -- standard modules ---------------------------------------------------------------


def truncated_module(A: AlgebraPresentation, i: int) -> FDModule:
    """k[x]/(x^i) as a module over k[x]/(x^n): the left ideal x^(n-i) A."""
    n = A.dim
    basis = [_unit_vec(A.field, n, j) for j in range(n - i, n)]
    M = FDModule.from_subspace_of_regular(A, basis, name=f"M{i}")
    return M


def cyclic_left_ideal(A: AlgebraPresentation, u, name: str = "") -> FDModule:
    """The left ideal A u as a module."""
    from .xfield import Subspace

    sp = Subspace(A.field, A.dim)
    for i in range(A.dim):
        sp.add(A.multiply(A.basis_vector(i), u))
    return FDModule.from_subspace_of_regular(A, sp.basis(), name=name)
