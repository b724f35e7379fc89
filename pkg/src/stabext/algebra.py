"""Finite-dimensional algebras given by structure constants.

An algebra is handed to us "pre-digested": multiplication table, unit,
a complete set of primitive orthogonal idempotents and a basis of the
Jacobson radical.  We check the checkable parts of that contract; radical
maximality is the caller's responsibility (only nilpotency and ideal
closure are verified).

Only split basic algebras are supported: ``dim A - dim J`` must equal the
number of idempotents, so every simple module is one-dimensional.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

from .xfield import Field, Matrix, Subspace, kernel_basis, rank, rank_of_vectors, sparse_kernel


class SearchBudgetExceeded(RuntimeError):
    """A bounded search ended without an answer (distinct from 'certified absent')."""


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    field: Field
    dim: int
    basis_labels: tuple
    table: tuple  # table[i][j] = coordinates of b_i * b_j
    unit: tuple
    idempotents: tuple
    radical_basis: tuple
    name: str = ""
    provenance: str = ""

    def __post_init__(self):
        F = self.field
        conv = lambda v: tuple(F(x) for x in v)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        object.__setattr__(self, "table", tuple(tuple(conv(c) for c in row) for row in self.table))
        object.__setattr__(self, "unit", conv(self.unit))
        object.__setattr__(self, "idempotents", tuple(conv(e) for e in self.idempotents))
        object.__setattr__(self, "radical_basis", tuple(conv(r) for r in self.radical_basis))
        if len(self.basis_labels) != self.dim:
            raise ValueError("basis_labels length differs from dim")
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise ValueError("multiplication table must be dim x dim")
        for row in self.table:
            for c in row:
                if len(c) != self.dim:
                    raise ValueError("table entries must be coordinate vectors of length dim")
        for v in (self.unit,) + self.idempotents + self.radical_basis:
            if len(v) != self.dim:
                raise ValueError("coordinate vector of wrong length")

    def _key(self):
        return (self.field, self.dim, self.basis_labels, self.table, self.unit,
                self.idempotents, self.radical_basis, self.name, self.provenance)

    def __eq__(self, other):
        return self is other or (isinstance(other, AlgebraPresentation) and self._key() == other._key())

    def __hash__(self):
        return hash((self.name, self.dim, self.table))

    def same_structure(self, other: "AlgebraPresentation") -> bool:
        """Equality ignoring name and provenance."""
        return self is other or self._key()[:7] == other._key()[:7]

    def __repr__(self):
        return f"<AlgebraPresentation {self.name or '?'} dim={self.dim} over {self.field!r}>"

    # -- arithmetic -------------------------------------------------------

    def multiply(self, u: Sequence, v: Sequence) -> list:
        F = self.field
        p = F.p
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        out[k] += ab * c
        if p:
            out = [x % p for x in out]
        return out

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    @cached_property
    def left_mult(self) -> tuple:
        """Matrix of x -> b_i x for each basis element (acts on columns)."""
        return tuple(
            Matrix._raw(self.field, [[self.table[i][j][k] for j in range(self.dim)] for k in range(self.dim)], self.dim)
            for i in range(self.dim)
        )

    @cached_property
    def right_mult(self) -> tuple:
        """Matrix of x -> x b_j."""
        return tuple(
            Matrix._raw(self.field, [[self.table[i][j][k] for i in range(self.dim)] for k in range(self.dim)], self.dim)
            for j in range(self.dim)
        )

    def left_mult_by(self, u: Sequence) -> Matrix:
        return _combine(self.field, self.left_mult, u, self.dim)

    def right_mult_by(self, u: Sequence) -> Matrix:
        return _combine(self.field, self.right_mult, u, self.dim)

    @cached_property
    def radical_square(self) -> list:
        sp = Subspace(self.field, self.dim)
        for r in self.radical_basis:
            for s in self.radical_basis:
                sp.add(self.multiply(r, s))
        return sp.basis()

    @cached_property
    def generators(self) -> tuple:
        """Idempotents plus radical elements spanning J/J^2; these generate A."""
        sp = Subspace(self.field, self.dim, self.radical_square)
        gens = [tuple(e) for e in self.idempotents]
        for r in self.radical_basis:
            if sp.add(r):
                gens.append(tuple(r))
        return tuple(gens)

    def is_local(self) -> bool:
        return len(self.idempotents) == 1

    # -- IO -----------------------------------------------------------------

    def to_json(self) -> dict:
        enc = lambda v: [self.field.encode(x) for x in v]
        return {
            "name": self.name,
            "provenance": self.provenance,
            "field": self.field.to_json(),
            "dim": self.dim,
            "basis": list(self.basis_labels),
            "unit": enc(self.unit),
            "table": [[enc(c) for c in row] for row in self.table],
            "idempotents": [enc(e) for e in self.idempotents],
            "radical": [enc(r) for r in self.radical_basis],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraPresentation":
        for key in ("field", "dim", "basis", "unit", "table", "idempotents", "radical"):
            if key not in obj:
                raise ValueError(f"algebra file: missing field '{key}'")
        F = Field.from_json(obj["field"])
        dec = lambda v: tuple(F.decode(x) for x in v)
        return cls(
            field=F,
            dim=obj["dim"],
            basis_labels=tuple(obj["basis"]),
            table=tuple(tuple(dec(c) for c in row) for row in obj["table"]),
            unit=dec(obj["unit"]),
            idempotents=tuple(dec(e) for e in obj["idempotents"]),
            radical_basis=tuple(dec(r) for r in obj["radical"]),
            name=obj.get("name", ""),
            provenance=obj.get("provenance", ""),
        )

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path) -> "AlgebraPresentation":
        return cls.from_json(json.loads(Path(path).read_text()))


def _combine(F: Field, mats: Sequence[Matrix], coeffs: Sequence, n: int) -> Matrix:
    out = Matrix.zero(F, n, n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    algebra: str
    failures: list = dc_field(default_factory=list)
    checks: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, detail: str):
        self.failures.append({"check": check, "detail": detail})

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "ok": self.ok, "checks": self.checks, "failures": self.failures}


def validate_algebra(A: AlgebraPresentation) -> ValidationReport:
    """Check associativity, unit, idempotents, radical contract, basicness."""
    rep = ValidationReport(A.name)
    F, n = A.field, A.dim
    L = A.left_mult

    rep.checks.append("associativity")
    # L is a representation iff (b_i b_j) b_k = b_i (b_j b_k) on every triple
    bad = None
    for i, j in itertools.product(range(n), repeat=2):
        lhs = L[i] @ L[j]
        rhs = _combine(F, L, A.table[i][j], n)
        if lhs != rhs:
            for k in range(n):
                if lhs.column(k) != rhs.column(k):
                    bad = (i, j, k)
                    break
            break
    if bad:
        i, j, k = bad
        lab = A.basis_labels
        rep.fail("associativity", f"(b_{i} b_{j}) b_{k} != b_{i} (b_{j} b_{k}) for ({lab[i]}, {lab[j]}, {lab[k]})")

    rep.checks.append("unit")
    for i in range(n):
        bi = A.basis_vector(i)
        if A.multiply(A.unit, bi) != bi or A.multiply(bi, A.unit) != bi:
            rep.fail("unit", f"unit is not a two-sided identity on basis element {A.basis_labels[i]}")
            break

    rep.checks.append("idempotents")
    es = A.idempotents
    if not es:
        rep.fail("idempotents", "no idempotents given")
    for a, e in enumerate(es):
        if A.multiply(e, e) != list(e):
            rep.fail("idempotents", f"e_{a} is not idempotent")
        for b, f in enumerate(es):
            if a != b and any(A.multiply(e, f)):
                rep.fail("idempotents", f"e_{a} e_{b} != 0")
    if es:
        total = [F.zero] * n
        for e in es:
            total = [F.add(x, y) for x, y in zip(total, e)]
        if tuple(total) != A.unit:
            rep.fail("idempotents", "idempotents do not sum to the unit")

    rep.checks.append("radical")
    J = A.radical_basis
    if rank_of_vectors(F, J) != len(J):
        rep.fail("radical", "radical basis vectors are linearly dependent")
    span = Subspace(F, n, J)
    for a, r in enumerate(J):
        for i in range(n):
            bi = A.basis_vector(i)
            if not span.contains(A.multiply(bi, r)) or not span.contains(A.multiply(r, bi)):
                rep.fail("radical", f"radical is not a two-sided ideal: basis element {A.basis_labels[i]} times radical vector {a}")
                break
        else:
            continue
        break
    power = [list(r) for r in J]
    k = 1
    while power and k <= n:
        nxt = Subspace(F, n)
        for u in power:
            for r in J:
                nxt.add(A.multiply(u, r))
        power = nxt.basis()
        k += 1
    if power:
        rep.fail("radical", f"radical is not nilpotent within {n} steps")

    rep.checks.append("basic")
    if n - len(J) != len(es):
        rep.fail("basic", f"dim A - dim J = {n - len(J)} but {len(es)} idempotents given (split basic algebras only)")
    return rep


# ---------------------------------------------------------------------------
# symmetry


@dataclass(frozen=True)
class SymmetrizingForm:
    functional: tuple

    def gram(self, A: AlgebraPresentation) -> Matrix:
        return gram_matrix(A, self.functional)


def gram_matrix(A: AlgebraPresentation, lam: Sequence) -> Matrix:
    F = A.field
    p = F.p
    rows = []
    for i in range(A.dim):
        row = []
        for j in range(A.dim):
            s = sum((c * l for c, l in zip(A.table[i][j], lam) if c and l), F.zero)
            row.append(s % p if p else s)
        rows.append(row)
    return Matrix._raw(F, rows, A.dim)


def trace_form_space(A: AlgebraPresentation) -> list:
    """Basis of functionals lambda with lambda(ab) = lambda(ba) on all basis pairs."""
    F = A.field
    rows = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            r = {}
            for k, (x, y) in enumerate(zip(A.table[i][j], A.table[j][i])):
                d = F.sub(x, y)
                if d:
                    r[k] = d
            if r:
                rows.append(r)
    return sparse_kernel(F, rows, A.dim)


def find_symmetrizing_form(
    A: AlgebraPresentation,
    *,
    lattice_bound: int = 1,
    random_trials: int = 200,
    enumeration_limit: int = 4096,
    seed: int = 0,
) -> Optional[SymmetrizingForm]:
    """Search for a nondegenerate trace functional.

    Returns None only when nonexistence is certified; raises
    :class:`SearchBudgetExceeded` when the budget runs out otherwise.
    """
    F = A.field
    V = trace_form_space(A)
    h = len(V)
    if h == 0:
        return None

    def combo(coeffs):
        lam = [F.zero] * A.dim
        for c, v in zip(coeffs, V):
            if c:
                lam = [F.add(x, F.mul(F(c), y)) for x, y in zip(lam, v)]
        return lam

    def accept(lam):
        return any(lam) and rank(gram_matrix(A, lam)) == A.dim

    # basis vectors first, then the small lattice
    for idx in range(h):
        coeffs = [0] * h
        coeffs[idx] = 1
        lam = combo(coeffs)
        if accept(lam):
            return SymmetrizingForm(tuple(lam))
    values = range(-lattice_bound, lattice_bound + 1)
    if (2 * lattice_bound + 1) ** h <= enumeration_limit:
        for coeffs in itertools.product(values, repeat=h):
            lam = combo(coeffs)
            if accept(lam):
                return SymmetrizingForm(tuple(lam))
    rng = random.Random(seed)
    for _ in range(random_trials):
        if F.p:
            coeffs = [rng.randrange(F.p) for _ in range(h)]
        else:
            coeffs = [rng.randint(-5, 5) for _ in range(h)]
        lam = combo(coeffs)
        if accept(lam):
            return SymmetrizingForm(tuple(lam))
    # certification: exhaustive over F_p, or a degree-bounded grid over Q
    if F.p and F.p ** h <= enumeration_limit:
        for coeffs in itertools.product(range(F.p), repeat=h):
            if accept(combo(coeffs)):
                return SymmetrizingForm(tuple(combo(coeffs)))
        return None
    if not F.p and (A.dim + 1) ** h <= enumeration_limit:
        # det(Gram) has degree <= dim in each coordinate; vanishing on the
        # grid {0..dim}^h forces it to be identically zero
        for coeffs in itertools.product(range(A.dim + 1), repeat=h):
            if accept(combo(coeffs)):
                return SymmetrizingForm(tuple(combo(coeffs)))
        return None
    raise SearchBudgetExceeded(f"no nondegenerate trace form found for {A.name} within budget")


def is_symmetric(A: AlgebraPresentation) -> bool:
    try:
        return find_symmetrizing_form(A) is not None
    except SearchBudgetExceeded:
        return False


# ---------------------------------------------------------------------------
# derived algebras and modules


def opposite_algebra(A: AlgebraPresentation) -> AlgebraPresentation:
    """Transpose the multiplication table; cached so that op(op(A)) is A itself."""
    cached = A.__dict__.get("_opposite")
    if cached is not None:
        return cached
    op = _build_opposite(A)
    A.__dict__["_opposite"] = op
    op.__dict__["_opposite"] = A
    return op


def _build_opposite(A: AlgebraPresentation) -> AlgebraPresentation:
    name = A.name[:-3] if A.name.endswith("^op") else (A.name + "^op" if A.name else "")
    return AlgebraPresentation(
        field=A.field,
        dim=A.dim,
        basis_labels=A.basis_labels,
        table=tuple(tuple(A.table[j][i] for j in range(A.dim)) for i in range(A.dim)),
        unit=A.unit,
        idempotents=A.idempotents,
        radical_basis=A.radical_basis,
        name=name,
        provenance=A.provenance,
    )


def projective_indecomposables(A: AlgebraPresentation) -> list:
    """P_i = A e_i with the left regular action, one per idempotent."""
    from .modcat import FDModule

    out = []
    for idx, e in enumerate(A.idempotents):
        Re = A.right_mult_by(e)
        cols = Re.columns()
        keep = _independent_columns(A.field, cols)
        basis = [cols[j] for j in keep]
        mod = FDModule.from_subspace_of_regular(A, basis, name=f"P{idx}" if len(A.idempotents) > 1 else "A")
        out.append(mod)
    return out


def _independent_columns(F: Field, cols) -> list:
    from .xfield import independent_subset

    return independent_subset(F, cols)


def simple_modules(A: AlgebraPresentation) -> list:
    """S_i = P_i / J P_i."""
    from .modcat import top_of

    out = []
    for idx, P in enumerate(projective_indecomposables(A)):
        S, _ = top_of(P)
        out.append(S.renamed(f"S{idx}" if len(A.idempotents) > 1 else "S"))
    return out
