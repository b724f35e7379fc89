"""Left modules, morphisms, Hom and stable Hom.

A module is a vector space ``k^dim`` with one action matrix per algebra
basis element.  Morphisms are ``target.dim x source.dim`` matrices.

Maps factoring through a projective are detected by factoring through the
projective cover ``pi: P(N) -> N`` of the target: if ``f = b a`` with
``a: M -> Q`` and ``b: Q -> N``, ``Q`` projective, then ``b`` lifts along
the epimorphism ``pi`` because ``Q`` is projective, so ``f`` already
factors through ``pi``.
"""

from __future__ import annotations

import json
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

from .algebra import AlgebraPresentation, opposite_algebra, projective_indecomposables
from .xfield import Matrix, Subspace, independent_subset, kernel_basis, rank, solve_many, sparse_kernel


class AlgebraMismatch(ValueError):
    pass


class FDModule:
    """A finite-dimensional left module given by action matrices."""

    def __init__(self, algebra: AlgebraPresentation, dim: int, action: Sequence[Matrix], name: str = ""):
        if len(action) != algebra.dim:
            raise ValueError(f"need {algebra.dim} action matrices, got {len(action)}")
        for m in action:
            if m.shape != (dim, dim):
                raise ValueError(f"action matrix of shape {m.shape}, expected {(dim, dim)}")
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"<FDModule {self.name or '?'} dim={self.dim} over {self.algebra.name or '?'}>"

    @property
    def field(self):
        return self.algebra.field

    def renamed(self, name: str) -> "FDModule":
        return FDModule(self.algebra, self.dim, self.action, name)

    def act(self, u: Sequence) -> Matrix:
        """Action matrix of an arbitrary algebra element (coordinate vector)."""
        F = self.field
        nz = [i for i, c in enumerate(u) if c]
        if len(nz) == 1:
            m = self.action[nz[0]]
            return m if u[nz[0]] == F.one else m.scale(u[nz[0]])
        out = Matrix.zero(F, self.dim, self.dim)
        for c, m in zip(u, self.action):
            if c:
                out = out + m.scale(c)
        return out

    @cached_property
    def generator_action(self) -> tuple:
        return tuple(self.act(g) for g in self.algebra.generators)

    @cached_property
    def radical_action(self) -> tuple:
        return tuple(self.act(r) for r in self.algebra.radical_basis)

    def check(self) -> list:
        """Module axioms; returns a list of failure strings (empty if valid)."""
        A = self.algebra
        errs = []
        if self.act(A.unit) != Matrix.identity(self.field, self.dim):
            errs.append("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                if self.action[i] @ self.action[j] != self.act(A.table[i][j]):
                    errs.append(f"rho(b_{i}) rho(b_{j}) != rho(b_{i} b_{j})")
                    return errs
        return errs

    def is_zero(self) -> bool:
        return self.dim == 0

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, algebra: AlgebraPresentation) -> "FDModule":
        z = Matrix.zero(algebra.field, 0, 0)
        return cls(algebra, 0, [z] * algebra.dim, "0")

    @classmethod
    def regular(cls, algebra: AlgebraPresentation) -> "FDModule":
        return cls(algebra, algebra.dim, algebra.left_mult, "A")

    @classmethod
    def from_subspace_of_regular(cls, algebra: AlgebraPresentation, basis: Sequence, name: str = "") -> "FDModule":
        """Left ideal of A spanned by ``basis`` (must be closed under left mult)."""
        R = FDModule.regular(algebra)
        sub, _ = R.submodule(basis)
        sub.name = name
        sub._cache["regular_basis"] = [list(b) for b in basis]
        return sub

    # -- sub and quotient -------------------------------------------------------

    def submodule(self, basis: Sequence) -> tuple:
        """Submodule spanned by the given column vectors (linearly independent).

        Returns ``(S, inclusion)``.
        """
        F = self.field
        k = len(basis)
        if k == 0:
            Z = FDModule.zero(self.algebra)
            return Z, Morphism(Z, self, Matrix.zero(F, self.dim, 0))
        B = Matrix.from_columns(F, basis, self.dim)
        if k == self.dim:
            rows_idx = list(range(k))
        else:
            rows_idx = independent_subset(F, B.rows)
        Bsq = B.submatrix(rows_idx, range(k))
        stacked = Matrix._raw(F, [[] for _ in range(len(rows_idx))], 0)
        imgs = [m @ B for m in self.action]
        rhs = stacked.hstack(*[img.submatrix(rows_idx, range(k)) for img in imgs])
        X = solve_many(Bsq, rhs)
        if X is None:
            raise ValueError("basis is not independent")
        acts = [X.submatrix(range(k), range(i * k, (i + 1) * k)) for i in range(self.algebra.dim)]
        for img, a in zip(imgs, acts):
            if B @ a != img:
                raise ValueError("subspace is not a submodule")
        S = FDModule(self.algebra, k, acts, "")
        return S, Morphism(S, self, B)

    def quotient(self, basis: Sequence) -> tuple:
        """Quotient by the submodule spanned by ``basis``; returns ``(Q, projection)``."""
        F = self.field
        n = self.dim
        sp = Subspace(F, n, basis)
        red = sp.basis()  # rref rows
        pivots = [next(j for j, v in enumerate(r) if v) for r in red]
        pivset = set(pivots)
        free = [j for j in range(n) if j not in pivset]
        pos = {j: t for t, j in enumerate(free)}
        # projection: e_j -> e_j (free), e_c -> -(r_c restricted to free)
        proj = [[F.zero] * n for _ in free]
        for j in free:
            proj[pos[j]][j] = F.one
        for c, r in zip(pivots, red):
            for j in free:
                if r[j]:
                    proj[pos[j]][c] = F.neg(r[j])
        Pm = Matrix._raw(F, proj, n)
        section = Matrix.from_columns(F, [_unit(F, n, j) for j in free], n) if free else Matrix.zero(F, n, 0)
        acts = [Pm @ m @ section for m in self.action]
        Q = FDModule(self.algebra, len(free), acts, "")
        return Q, Morphism(self, Q, Pm)

    # -- IO -----------------------------------------------------------------------

    def to_json(self) -> dict:
        enc = self.field.encode
        return {
            "algebra": self.algebra.name,
            "dim": self.dim,
            "name": self.name,
            "action": [[[enc(x) for x in row] for row in m.rows] for m in self.action],
        }

    @classmethod
    def from_json(cls, obj: dict, algebra: AlgebraPresentation) -> "FDModule":
        for key in ("algebra", "dim", "action"):
            if key not in obj:
                raise ValueError(f"module file: missing field '{key}'")
        if obj["algebra"] != algebra.name:
            raise AlgebraMismatch(f"module refers to algebra '{obj['algebra']}', got '{algebra.name}'")
        F = algebra.field
        d = obj["dim"]
        acts = []
        for m in obj["action"]:
            acts.append(Matrix._raw(F, [[F.decode(x) for x in row] for row in m], d))
        M = cls(algebra, d, acts, obj.get("name", ""))
        errs = M.check()
        if errs:
            raise ValueError(f"module file: action is not a module ({errs[0]})")
        return M

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1) + "\n")

    @classmethod
    def load(cls, path, algebra: AlgebraPresentation) -> "FDModule":
        return cls.from_json(json.loads(Path(path).read_text()), algebra)


def _unit(F, n, j):
    v = [F.zero] * n
    v[j] = F.one
    return v


def _same_algebra(M: FDModule, N: FDModule):
    # structural comparison: a commutative algebra and its opposite agree
    if not M.algebra.same_structure(N.algebra):
        raise AlgebraMismatch("modules over different algebras")


class Morphism:
    """A module homomorphism given by a ``target.dim x source.dim`` matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FDModule, target: FDModule, matrix: Matrix):
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"morphism matrix shape {matrix.shape} != {(target.dim, source.dim)}")
        self.source = source
        self.target = target
        self.matrix = matrix

    def __repr__(self):
        return f"<Morphism {self.source.name or '?'} -> {self.target.name or '?'} rank={self.rank}>"

    def is_homomorphism(self) -> bool:
        return all(
            self.matrix @ a == b @ self.matrix
            for a, b in zip(self.source.action, self.target.action)
        )

    def compose(self, first: "Morphism") -> "Morphism":
        """``self o first``."""
        return Morphism(first.source, self.target, self.matrix @ first.matrix)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return self.compose(other)

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, self.matrix + other.matrix)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.matrix.scale(c))

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_mono(self) -> bool:
        return self.rank == self.source.dim

    def is_epi(self) -> bool:
        return self.rank == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_mono()

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    @classmethod
    def identity(cls, M: FDModule) -> "Morphism":
        return cls(M, M, Matrix.identity(M.field, M.dim))

    @classmethod
    def zero(cls, M: FDModule, N: FDModule) -> "Morphism":
        return cls(M, N, Matrix.zero(M.field, N.dim, M.dim))


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    def __init__(self, source: FDModule, target: FDModule, basis: list):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coeffs: Sequence) -> Morphism:
        F = self.source.field
        mat = Matrix.zero(F, self.target.dim, self.source.dim)
        for c, f in zip(coeffs, self.basis):
            if c:
                mat = mat + f.matrix.scale(c)
        return Morphism(self.source, self.target, mat)

    def __repr__(self):
        return f"<HomSpace dim={self.dim}>"


def _intertwining_rows(M: FDModule, N: FDModule) -> list:
    """Sparse equations N_g X - X M_g = 0 in the entries of X (row-major)."""
    F = M.field
    p = F.p
    m, n = M.dim, N.dim
    rows = []
    for Mg, Ng in zip(M.generator_action, N.generator_action):
        Nrows = [[(k, v) for k, v in enumerate(r) if v] for r in Ng.rows]
        Mcols = [[(k, Mg.rows[k][c]) for k in range(m) if Mg.rows[k][c]] for c in range(m)]
        for r in range(n):
            nr = Nrows[r]
            for c in range(m):
                eq = {}
                for k, v in nr:
                    idx = k * m + c
                    eq[idx] = eq.get(idx, 0) + v
                for k, v in Mcols[c]:
                    idx = r * m + k
                    eq[idx] = eq.get(idx, 0) - v
                if p:
                    eq = {i: x % p for i, x in eq.items() if x % p}
                else:
                    eq = {i: x for i, x in eq.items() if x}
                if eq:
                    rows.append(eq)
    return rows


def hom_basis(M: FDModule, N: FDModule) -> HomSpace:
    """Basis of Hom_A(M, N) from the intertwining equations (free-column order)."""
    _same_algebra(M, N)
    F = M.field
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return HomSpace(M, N, [])
    vecs = sparse_kernel(F, _intertwining_rows(M, N), m * n)
    basis = [Morphism(M, N, Matrix._raw(F, [v[r * m:(r + 1) * m] for r in range(n)], m)) for v in vecs]
    return HomSpace(M, N, basis)


def end_basis(M: FDModule) -> HomSpace:
    key = "end"
    if key not in M._cache:
        M._cache[key] = hom_basis(M, M)
    return M._cache[key]


class StableHomSpace:
    def __init__(self, homspace: HomSpace, projective_subspace_basis: list):
        self.homspace = homspace
        self.projective_subspace_basis = projective_subspace_basis

    @property
    def stable_dim(self) -> int:
        return self.homspace.dim - len(self.projective_subspace_basis)

    @cached_property
    def _proj_space(self) -> Subspace:
        F = self.homspace.source.field
        n = self.homspace.source.dim * self.homspace.target.dim
        return Subspace(F, n, [f.matrix.flat() for f in self.projective_subspace_basis])

    def factors_through_projective(self, f: Morphism) -> bool:
        return self._proj_space.contains(f.matrix.flat())

    def stable_representatives(self) -> list:
        """Hom basis elements whose classes form a basis of the stable Hom space."""
        sp = Subspace(self.homspace.source.field, self.homspace.source.dim * self.homspace.target.dim,
                      [f.matrix.flat() for f in self.projective_subspace_basis])
        return [f for f in self.homspace.basis if sp.add(f.matrix.flat())]

    def __repr__(self):
        return f"<StableHomSpace dim={self.homspace.dim} stable_dim={self.stable_dim}>"


def hom_to_projective(M: FDModule, idx: int) -> HomSpace:
    """Hom(M, P_idx), cached on M."""
    key = ("hom_to_P", idx)
    if key not in M._cache:
        P = indecomposable_projectives(M.algebra)[idx]
        M._cache[key] = hom_basis(M, P)
    return M._cache[key]


def indecomposable_projectives(A: AlgebraPresentation) -> list:
    cached = A.__dict__.get("_projectives")
    if cached is None:
        cached = projective_indecomposables(A)
        A.__dict__["_projectives"] = cached
    return cached


def projectively_trivial_span(M: FDModule, N: FDModule) -> list:
    """Basis (as flattened matrices) of maps M -> N factoring through a projective."""
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return []
    cover = projective_cover(N)
    sp = Subspace(F, M.dim * N.dim)
    for idx, pi_j in cover.component_maps():
        for h in hom_to_projective(M, idx).basis:
            sp.add((pi_j.matrix @ h.matrix).flat())
    return sp.basis()


def stable_hom(M: FDModule, N: FDModule) -> StableHomSpace:
    _same_algebra(M, N)
    H = hom_basis(M, N)
    F = M.field
    triv = projectively_trivial_span(M, N)
    basis = [Morphism(M, N, Matrix._raw(F, [v[r * M.dim:(r + 1) * M.dim] for r in range(N.dim)], M.dim)) for v in triv]
    return StableHomSpace(H, basis)


def stable_dim(M: FDModule, N: FDModule) -> int:
    if M.dim == 0 or N.dim == 0:
        return 0
    return hom_dim(M, N) - len(projectively_trivial_span(M, N))


def hom_dim(M: FDModule, N: FDModule) -> int:
    _same_algebra(M, N)
    if M.dim == 0 or N.dim == 0:
        return 0
    from .xfield import _echelon

    return M.dim * N.dim - len(_echelon(_intertwining_rows(M, N), M.field.p))


# ---------------------------------------------------------------------------
# radical, top, socle, covers


def radical_of(M: FDModule) -> tuple:
    """(J M, inclusion)."""
    sp = Subspace(M.field, M.dim)
    for r in M.radical_action:
        for c in r.columns():
            sp.add(c)
    return M.submodule(sp.basis())


def top_of(M: FDModule) -> tuple:
    """(M / J M, projection)."""
    sp = Subspace(M.field, M.dim)
    for r in M.radical_action:
        for c in r.columns():
            sp.add(c)
    return M.quotient(sp.basis())


def socle_of(M: FDModule) -> tuple:
    """(annihilator of J in M, inclusion)."""
    if M.dim == 0:
        return M.submodule([])
    if not M.radical_action:
        return M, Morphism.identity(M)
    stacked = M.radical_action[0].vstack(*M.radical_action[1:])
    return M.submodule(kernel_basis(stacked))


def radical_layers(M: FDModule) -> list:
    """Dimensions of J^k M / J^{k+1} M."""
    dims = []
    cur = M
    while cur.dim:
        R, _ = radical_of(cur)
        dims.append(cur.dim - R.dim)
        cur = R
    return dims


def socle_layers(M: FDModule) -> list:
    """Dimensions of the socle series layers."""
    dims = []
    cur = M
    while cur.dim:
        S, inc = socle_of(cur)
        dims.append(S.dim)
        cur, _ = cur.quotient(inc.matrix.columns())
    return dims


def composition_length(M: FDModule) -> int:
    # split basic: every simple is one-dimensional, so each radical layer
    # contributes its dimension
    return sum(radical_layers(M))


class ProjectiveCover:
    """Minimal projective cover ``epi: P -> M`` with P = sum of P_i copies."""

    def __init__(self, P: FDModule, epi: Morphism, summands: list):
        self.P = P
        self.epi = epi
        self.summands = summands  # list of (projective index, generator vector in M)

    def component_maps(self):
        """Yield ``(i, pi_j)`` with ``pi_j: P_i -> M`` the restriction to copy j."""
        projs = indecomposable_projectives(self.epi.target.algebra)
        off = 0
        for idx, _ in self.summands:
            d = projs[idx].dim
            cols = range(off, off + d)
            yield idx, Morphism(projs[idx], self.epi.target, self.epi.matrix.submatrix(range(self.epi.target.dim), cols))
            off += d

    @property
    def multiplicities(self) -> list:
        counts = [0] * len(self.epi.target.algebra.idempotents)
        for idx, _ in self.summands:
            counts[idx] += 1
        return counts


def projective_cover(M: FDModule) -> ProjectiveCover:
    key = "cover"
    if key in M._cache:
        return M._cache[key]
    A = M.algebra
    F = M.field
    projs = indecomposable_projectives(A)
    jm = Subspace(F, M.dim)
    for r in M.radical_action:
        for c in r.columns():
            jm.add(c)
    summands = []
    for idx, e in enumerate(A.idempotents):
        for c in M.act(e).columns():
            if jm.add(c):
                summands.append((idx, c))
    blocks = []
    for idx, m in summands:
        Pi = projs[idx]
        # basis vector a of P_i (a in A e_i) maps to a . m
        cols = [M.act(_embed_coords(Pi, j)).apply(m) for j in range(Pi.dim)]
        blocks.append(Matrix.from_columns(F, cols, M.dim))
    if summands:
        P = direct_sum([projs[idx] for idx, _ in summands])
        mat = blocks[0].hstack(*blocks[1:])
    else:
        P = FDModule.zero(A)
        mat = Matrix.zero(F, M.dim, 0)
    P.name = "P(" + (M.name or "?") + ")"
    cov = ProjectiveCover(P, Morphism(P, M, mat), summands)
    M._cache[key] = cov
    return cov


def _embed_coords(Pi: FDModule, j: int):
    """Coordinates in A of the j-th basis vector of P_i = A e_i."""
    return Pi._cache["regular_basis"][j]


def is_projective(M: FDModule) -> bool:
    """M is projective iff its projective cover is an isomorphism (dimension count)."""
    if M.dim == 0:
        return True
    return projective_cover(M).P.dim == M.dim


# ---------------------------------------------------------------------------
# duality, sums, kernels


def dual_module(M: FDModule) -> FDModule:
    """D M = Hom_k(M, k) as a left module over the opposite algebra."""
    Aop = opposite_algebra(M.algebra)
    D = FDModule(Aop, M.dim, [a.transpose() for a in M.action], f"D({M.name})" if M.name else "")
    return D


def dual_morphism(f: Morphism, Dsource: Optional[FDModule] = None, Dtarget: Optional[FDModule] = None) -> Morphism:
    """D f : D(target) -> D(source)."""
    Dt = Dtarget or dual_module(f.target)
    Ds = Dsource or dual_module(f.source)
    return Morphism(Dt, Ds, f.matrix.transpose())


def direct_sum(Ms: Sequence[FDModule], name: str = "") -> FDModule:
    Ms = list(Ms)
    if not Ms:
        raise ValueError("direct_sum of an empty list needs an algebra; use FDModule.zero")
    A = Ms[0].algebra
    for M in Ms[1:]:
        _same_algebra(Ms[0], M)
    F = A.field
    acts = [Matrix.block_diagonal(F, [M.action[i] for M in Ms]) for i in range(A.dim)]
    S = FDModule(A, sum(M.dim for M in Ms), acts, name or "+".join(M.name or "?" for M in Ms))
    return S


def direct_sum_maps(Ms: Sequence[FDModule], S: FDModule) -> tuple:
    """Canonical inclusions and projections for ``S = direct_sum(Ms)``."""
    F = S.field
    incs, projs = [], []
    off = 0
    for M in Ms:
        inc = [[F.zero] * M.dim for _ in range(S.dim)]
        for j in range(M.dim):
            inc[off + j][j] = F.one
        I = Matrix._raw(F, inc, M.dim)
        incs.append(Morphism(M, S, I))
        projs.append(Morphism(S, M, I.transpose()))
        off += M.dim
    return incs, projs


def kernel_of(f: Morphism) -> tuple:
    """(K, inclusion K -> source)."""
    return f.source.submodule(kernel_basis(f.matrix))


def image_of(f: Morphism) -> tuple:
    """(im f, inclusion into target)."""
    F = f.source.field
    cols = f.matrix.columns()
    keep = independent_subset(F, cols)
    return f.target.submodule([cols[j] for j in keep])


def cokernel_of(f: Morphism) -> tuple:
    """(coker f, projection from target)."""
    return f.target.quotient(f.matrix.columns())
