"""Krull-Schmidt decomposition and isomorphism testing.

Splitting uses the Fitting lemma: an endomorphism that is neither
nilpotent nor invertible gives ``M = ker f^d (+) im f^d`` with ``d = dim M``.
A leaf is certified indecomposable when End(M) = k.1 (+) R with R a
nilpotent subspace of codimension one (checked by R^d = 0), which makes
End(M) local with residue field k.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Optional

import sympy

from .modcat import (
    FDModule,
    HomSpace,
    Morphism,
    _same_algebra,
    end_basis,
    hom_basis,
    indecomposable_projectives,
    radical_layers,
    socle_layers,
    socle_of,
)
from .xfield import Matrix, Subspace, charpoly, inverse, poly_eval_matrix, rank, solve


class IsoUndecided(RuntimeError):
    """The isomorphism search ran out of budget without a certificate either way."""


DEFAULT_BUDGET = 256


# ---------------------------------------------------------------------------
# small matrix predicates


def is_nilpotent(f: Matrix) -> bool:
    n = f.nrows
    if n == 0:
        return True
    return f.power(n).is_zero()


def _pure_eigenvalue(f: Matrix):
    """The scalar c if charpoly(f) = (t - c)^n, else None."""
    F = f.field
    n = f.nrows
    cp = charpoly(f)
    # coefficient of t^(n-k) in (t - c)^n is (-1)^k C(n,k) c^k; use the first
    # k with C(n,k) invertible (over F_p it is a power of p, and c^(p^j) = c)
    c = None
    for k in range(1, n + 1):
        binom = F(math.comb(n, k))
        if binom:
            ck = F.mul(cp[n - k], F.inv(F.mul(F((-1) ** k), binom)))
            if F.p:
                c = ck
            elif k == 1:
                c = ck
            break
    if c is None:
        return None
    expected = _binomial_power(F, c, n)
    return c if expected == cp else None


def _binomial_power(F, c, n):
    """Coefficients of (t - c)^n, t^0 upwards."""
    coeffs = [F.one]
    for _ in range(n):
        new = [F.zero] * (len(coeffs) + 1)
        for j, a in enumerate(coeffs):
            new[j + 1] = F.add(new[j + 1], a)
            new[j] = F.sub(new[j], F.mul(c, a))
        coeffs = new
    return coeffs


def _splitting_polynomial(f: Matrix):
    """A factor g of charpoly(f) with g(f) singular but not nilpotent, or None."""
    F = f.field
    cp = charpoly(f)
    t = sympy.Symbol("t")
    coeffs = [sympy.Rational(int(x.numerator), int(x.denominator)) if not F.p else int(x) for x in reversed(cp)]
    if F.p:
        poly = sympy.Poly(coeffs, t, modulus=F.p)
    else:
        poly = sympy.Poly(coeffs, t, domain=sympy.QQ)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    g = factors[0][0]
    gc = [F(str(sympy.Rational(c))) if not F.p else F(int(c)) for c in reversed(g.all_coeffs())]
    return gc


# ---------------------------------------------------------------------------
# endomorphism ring analysis


@dataclass
class EndAnalysis:
    local: bool  # certified local with residue field k
    radical: list = dc_field(default_factory=list)  # basis (Matrices) of rad End when local
    splitter: Optional[Matrix] = None  # endo that is neither nilpotent nor invertible


def _fitting_candidate(f: Matrix):
    """If some f - cI (or g(f)) is neither nilpotent nor invertible, return it."""
    c = _pure_eigenvalue(f)
    if c is not None:
        return None
    g = _splitting_polynomial(f)
    if g is None:
        return None
    return poly_eval_matrix(g, f)


def analyse_end(M: FDModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> EndAnalysis:
    key = ("end_analysis", seed, budget)
    if key in M._cache:
        return M._cache[key]
    res = _analyse_end(M, seed, budget)
    M._cache[key] = res
    return res


def _analyse_end(M: FDModule, seed: int, budget: int) -> EndAnalysis:
    F = M.field
    n = M.dim
    E = end_basis(M)
    mats = [f.matrix for f in E.basis]
    rng = random.Random(seed)

    def random_combination():
        f = Matrix.zero(F, n, n)
        for m in mats:
            c = rng.randrange(F.p) if F.p else rng.randint(-3, 3)
            if c:
                f = f + m.scale(c)
        return f

    # deterministic sweep over basis elements
    pures = []
    for f in mats:
        cand = _fitting_candidate(f)
        if cand is not None:
            return EndAnalysis(False, splitter=cand)
        pures.append(_pure_eigenvalue(f))
    if all(c is not None for c in pures):
        rad = Subspace(F, n * n)
        nil = []
        for f, c in zip(mats, pures):
            r = f - Matrix.identity(F, n).scale(c)
            if rad.add(r.flat()):
                nil.append(r)
        if len(nil) == len(mats) - 1 and _nilpotent_span(nil, n):
            return EndAnalysis(True, radical=nil)
    # small integer combinations of pairs, then seeded random combinations
    for i, j in itertools.combinations(range(len(mats)), 2):
        for c in (1, -1):
            cand = _fitting_candidate(mats[i] + mats[j].scale(c))
            if cand is not None:
                return EndAnalysis(False, splitter=cand)
    for _ in range(budget):
        cand = _fitting_candidate(random_combination())
        if cand is not None:
            return EndAnalysis(False, splitter=cand)
    return EndAnalysis(False)


def _nilpotent_span(basis: list, n: int) -> bool:
    """True iff the span of ``basis`` generates a nilpotent algebra (R^n = 0)."""
    if not basis:
        return True
    F = basis[0].field
    power = basis
    for _ in range(n):
        sp = Subspace(F, n * n)
        nxt = []
        for a in power:
            for b in basis:
                prod = a @ b
                if sp.add(prod.flat()):
                    nxt.append(prod)
        if not nxt:
            return True
        power = nxt
    return False


def is_locally_certified(M: FDModule, seed: int = 0) -> bool:
    return M.dim > 0 and analyse_end(M, seed).local


# ---------------------------------------------------------------------------
# Fitting splitting


def fitting_split(M: FDModule, seed: int = 0, budget: int = DEFAULT_BUDGET):
    """Return ``((M1, inc1, proj1), (M2, inc2, proj2))`` or None if no split found."""
    if M.dim < 2:
        return None
    res = analyse_end(M, seed, budget)
    if res.splitter is None:
        return None
    F = M.field
    h = res.splitter.power(M.dim)
    from .xfield import independent_subset, kernel_basis

    ker = kernel_basis(h)
    cols = h.columns()
    img = [cols[j] for j in independent_subset(F, cols)]
    K, incK = M.submodule(ker)
    I, incI = M.submodule(img)
    B = incK.matrix.hstack(incI.matrix)
    Binv = inverse(B)
    pK = Binv.submatrix(range(K.dim), range(M.dim))
    pI = Binv.submatrix(range(K.dim, M.dim), range(M.dim))
    return (K, incK, Morphism(M, K, pK)), (I, incI, Morphism(M, I, pI))


# ---------------------------------------------------------------------------
# invariants and isomorphism


def canonical_key(M: FDModule) -> tuple:
    """Cheap isomorphism invariant used as a prefilter before :func:`is_iso`."""
    if "key" not in M._cache:
        A = M.algebra
        dimvec = tuple(rank(M.act(e)) for e in A.idempotents)
        M._cache["key"] = (
            M.dim,
            dimvec,
            tuple(radical_layers(M)),
            tuple(socle_layers(M)),
            end_basis(M).dim,
        )
    return M._cache["key"]


def is_iso(M: FDModule, N: FDModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> Optional[Morphism]:
    """An isomorphism M -> N, or None if none exists.

    Raises :class:`IsoUndecided` when neither outcome can be certified.
    """
    _same_algebra(M, N)
    F = M.field
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return Morphism(M, N, Matrix.zero(F, 0, 0))
    if canonical_key(M) != canonical_key(N):
        return None
    H = hom_basis(M, N)
    if H.dim == 0:
        return None
    for f in H.basis:
        if f.is_iso():
            return f
    # exact criterion for a local End(M): M ~ N iff some g o f is not
    # nilpotent, and then f is a split mono between equal dimensions
    if is_locally_certified(M, seed):
        lam = _residue_functional(M, seed)
        HNM = hom_basis(N, M)
        # lam(g f) = sum_jk (lam^T g)_jk f_kj, so precompute lam^T g once per g
        weights = [(lam.transpose() @ g.matrix).transpose().flat() for g in HNM.basis]
        for f in H.basis:
            fl = f.matrix.flat()
            for w in weights:
                if _dot(F, w, fl):
                    return f
        return None
    for i, j in itertools.combinations(range(H.dim), 2):
        for c in (1, -1):
            f = H.basis[i] + H.basis[j].scale(c)
            if f.is_iso():
                return f
    rng = random.Random(seed)
    for _ in range(budget):
        coeffs = [rng.randrange(F.p) if F.p else rng.randint(-3, 3) for _ in range(H.dim)]
        f = H.combination(coeffs)
        if f.is_iso():
            return f
    if is_locally_certified(N, seed):
        g = is_iso(N, M, seed, budget)
        return None if g is None else _invert(g)
    if F.p and F.p ** H.dim <= 4 * budget * 16:
        for coeffs in itertools.product(range(F.p), repeat=H.dim):
            f = H.combination(coeffs)
            if f.is_iso():
                return f
        return None
    raise IsoUndecided(f"could not decide whether {M.name or M!r} and {N.name or N!r} are isomorphic")


def _dot(F, u, v):
    s = F.zero
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s % F.p if F.p else s


def _residue_functional(M: FDModule, seed: int = 0) -> Matrix:
    """Matrix L with <L, r> = 0 on rad End(M) and <L, 1> = 1, <L, X> = sum L_ij X_ij.

    For a certified local End(M) = k.1 (+) R this reads off the scalar part,
    so an endomorphism is invertible iff the pairing is nonzero.
    """
    key = ("residue_functional", seed)
    if key not in M._cache:
        F = M.field
        n = M.dim
        rad = analyse_end(M, seed).radical
        rows = [r.flat() for r in rad] + [Matrix.identity(F, n).flat()]
        rhs = [F.zero] * len(rad) + [F.one]
        x = solve(Matrix(F, rows, n * n), rhs)
        if x is None:
            raise AssertionError("identity lies in the radical")
        M._cache[key] = Matrix(F, [x[i * n:(i + 1) * n] for i in range(n)], n)
    return M._cache[key]


def _invert(f: Morphism) -> Morphism:
    return Morphism(f.target, f.source, inverse(f.matrix))


# ---------------------------------------------------------------------------
# decomposition


@dataclass
class Leaf:
    module: FDModule
    inclusion: Morphism  # leaf -> input
    projection: Morphism  # input -> leaf
    certified: bool

    @property
    def status(self) -> str:
        return "indecomposable (certified)" if self.certified else "indecomposable (probable)"


@dataclass
class Decomposition:
    source: FDModule
    leaves: list
    summands: list  # list of (FDModule, multiplicity)
    iso_class_keys: list
    seed: int

    @property
    def certified(self) -> bool:
        return all(l.certified for l in self.leaves)

    def multiset(self) -> list:
        return [(M.dim, m) for M, m in self.summands]

    def total_dim(self) -> int:
        return sum(M.dim * m for M, m in self.summands)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "summands": [
                {"dim": M.dim, "multiplicity": m, "key": repr(k)}
                for (M, m), k in zip(self.summands, self.iso_class_keys)
            ],
            "certified": self.certified,
        }


def decompose(M: FDModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> Decomposition:
    """Recursive Fitting splitting into indecomposable summands."""
    F = M.field
    leaves = []
    stack = [(M, Morphism.identity(M), Morphism.identity(M))]
    while stack:
        X, inc, proj = stack.pop()
        if X.dim == 0:
            continue
        split = fitting_split(X, seed, budget)
        if split is None:
            leaves.append(Leaf(X, inc, proj, analyse_end(X, seed, budget).local))
            continue
        # push in reverse so the kernel part is processed first
        for Y, incY, projY in reversed(split):
            stack.append((Y, inc.compose(incY), projY.compose(proj)))
    leaves.sort(key=lambda l: (canonical_key(l.module), l.module.dim))
    summands, keys = [], []
    for leaf in leaves:
        for idx, (S, mult) in enumerate(summands):
            if keys[idx] == canonical_key(leaf.module) and is_iso(S, leaf.module, seed, budget) is not None:
                summands[idx] = (S, mult + 1)
                break
        else:
            summands.append((leaf.module, 1))
            keys.append(canonical_key(leaf.module))
    return Decomposition(M, leaves, summands, keys, seed)


def same_multiset(D1: Decomposition, D2: Decomposition, seed: int = 0) -> bool:
    """Summand multisets agree up to isomorphism."""
    if len(D1.summands) != len(D2.summands):
        return False
    used = set()
    for S, m in D1.summands:
        for idx, (T, k) in enumerate(D2.summands):
            if idx in used or k != m:
                continue
            if is_iso(S, T, seed) is not None:
                used.add(idx)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# projective summands


def socle_elements(A) -> list:
    """For each P_i, an algebra element spanning soc(P_i)."""
    cached = A.__dict__.get("_socle_elements")
    if cached is not None:
        return cached
    out = []
    for P in indecomposable_projectives(A):
        S, inc = socle_of(P)
        reg = P._cache["regular_basis"]
        vecs = inc.matrix.columns()
        if len(vecs) != 1:
            raise ValueError("projective indecomposable with non-simple socle: algebra is not self-injective")
        v = vecs[0]
        elt = [A.field.zero] * A.dim
        for c, b in zip(v, reg):
            if c:
                elt = [A.field.add(x, A.field.mul(c, y)) for x, y in zip(elt, b)]
        out.append(elt)
    A.__dict__["_socle_elements"] = out
    return out


def split_off_projectives(M: FDModule) -> tuple:
    """Return ``(M', counts)`` with M ~ M' (+) (sum P_i^counts[i]) and M' projective-free.

    Uses that P_i is injective: any m with soc(P_i) m != 0 gives an embedding
    P_i -> M, which splits.  Valid for self-injective basic algebras.
    """
    A = M.algebra
    projs = indecomposable_projectives(A)
    socs = socle_elements(A)
    counts = [0] * len(projs)
    cur = M
    changed = True
    while changed and cur.dim:
        changed = False
        for idx, (P, w) in enumerate(zip(projs, socs)):
            Wm = cur.act(w)
            cols = Wm.columns()
            j = next((j for j, c in enumerate(cols) if any(c)), None)
            if j is None:
                continue
            e = cur.act(A.idempotents[idx])
            m = e.column(j)
            reg = P._cache["regular_basis"]
            img = [cur.act(b).apply(m) for b in reg]
            cur, _ = cur.quotient(img)
            counts[idx] += 1
            changed = True
            break
    if cur is not M:
        cur.name = M.name
    return cur, counts


def has_projective_summand(M: FDModule) -> bool:
    A = M.algebra
    return any(not M.act(w).is_zero() for w in socle_elements(A))
