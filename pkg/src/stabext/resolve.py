"""Syzygies, cosyzygies and stable cohomology over a symmetric algebra.

``omega(M, n)`` is the n-th syzygy for n > 0 (kernel of a minimal
projective cover, iterated), the n-th cosyzygy for n < 0, and the
projective-free part of M for n = 0.  Cosyzygies are computed through the
duality D over the opposite algebra, which sends projectives to
injectives; for a symmetric algebra those are again projective.

The stable cohomology in degree i is ``stable_dim(omega(M, i), N)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .decomp import IsoUndecided, is_iso, split_off_projectives
from .modcat import (
    FDModule,
    Morphism,
    dual_module,
    indecomposable_projectives,
    kernel_of,
    projective_cover,
    stable_dim,
    stable_hom,
)
from .xfield import Matrix, Subspace

DEFAULT_WINDOW = 20


def syzygy(M: FDModule) -> FDModule:
    """Kernel of the minimal projective cover of M (projective-free)."""
    if "syzygy" in M._cache:
        return M._cache["syzygy"]
    if M.dim == 0:
        out = M
    else:
        cover = projective_cover(M)
        K, inc = kernel_of(cover.epi)
        # the kernel of a minimal cover over a self-injective algebra has no
        # projective summand; the split below is a guard that is a no-op then
        out, counts = split_off_projectives(K)
        if any(counts):
            raise AssertionError("kernel of a minimal cover has a projective summand")
        M._cache["syzygy_inclusion"] = inc
    out.name = f"Om({M.name})" if M.name else ""
    M._cache["syzygy"] = out
    return out


def cosyzygy(M: FDModule) -> FDModule:
    """D Omega D M, computed over the opposite algebra."""
    if "cosyzygy" in M._cache:
        return M._cache["cosyzygy"]
    if M.dim == 0:
        out = M
    else:
        DM = dual_module(M)
        out = dual_module(syzygy(DM))
    out.name = f"Om^-1({M.name})" if M.name else ""
    M._cache["cosyzygy"] = out
    return out


def projective_free_part(M: FDModule) -> FDModule:
    if "pfree" not in M._cache:
        M._cache["pfree"] = split_off_projectives(M)[0]
    return M._cache["pfree"]


def omega(M: FDModule, n: int) -> FDModule:
    """Omega^n M for any integer n, with projective summands removed."""
    key = ("omega", n)
    if key in M._cache:
        return M._cache[key]
    if n == 0:
        out = projective_free_part(M)
    elif n > 0:
        out = syzygy(omega(M, n - 1))
    else:
        out = cosyzygy(omega(M, n + 1))
    M._cache[key] = out
    return out


def ext_hat(M: FDModule, N: FDModule, i: int) -> int:
    """dim of the stable cohomology group in degree i (any integer i)."""
    return stable_dim(omega(M, i), N)


def ext_hat_basis(M: FDModule, N: FDModule, i: int) -> list:
    """Morphisms Omega^i M -> N representing a basis of the degree-i group."""
    return stable_hom(omega(M, i), N).stable_representatives()


def verify_dimension_shift(M: FDModule, N: FDModule, i: int, m: int, n: int) -> bool:
    return ext_hat(M, N, i) == ext_hat(omega(M, m), omega(N, n), i - m + n)


@dataclass
class ExtTable:
    M: FDModule
    N: FDModule
    dims: dict

    def to_json(self) -> dict:
        return {str(i): d for i, d in sorted(self.dims.items())}


def ext_table(M: FDModule, N: FDModule, degrees) -> ExtTable:
    return ExtTable(M, N, {i: ext_hat(M, N, i) for i in degrees})


def betti(M: FDModule, degrees) -> dict:
    """Number of indecomposable projective summands in the cover of Omega^i M."""
    out = {}
    for i in degrees:
        X = omega(M, i)
        out[i] = sum(projective_cover(X).multiplicities) if X.dim else 0
    return out


@dataclass
class ResolutionWindow:
    center: FDModule
    lo: int
    hi: int
    syzygies: dict = dc_field(default_factory=dict)
    covers: dict = dc_field(default_factory=dict)  # i -> cover epi onto syzygies[i], i >= 0

    def dims(self) -> dict:
        return {i: X.dim for i, X in sorted(self.syzygies.items())}


def resolution_window(M: FDModule, bound: int = DEFAULT_WINDOW) -> ResolutionWindow:
    W = ResolutionWindow(M, -bound, bound)
    for i in range(-bound, bound + 1):
        W.syzygies[i] = omega(M, i)
        if i >= 0 and W.syzygies[i].dim:
            W.covers[i] = projective_cover(W.syzygies[i]).epi
    return W


def detect_syzygy_period(M: FDModule, bound: int = DEFAULT_WINDOW, seed: int = 0) -> Optional[tuple]:
    """Smallest n <= bound with Omega^n M ~ M, as ``(n, isomorphism)``."""
    base = omega(M, 0)
    if base.dim == 0:
        return None
    for n in range(1, bound + 1):
        X = omega(M, n)
        if X.dim != base.dim:
            continue
        try:
            f = is_iso(X, base, seed)
        except IsoUndecided:
            continue
        if f is not None:
            return n, f
    return None


# ---------------------------------------------------------------------------
# independent oracle: classical Ext through cocycles


def _greedy_generators(M: FDModule) -> list:
    """(idempotent index, vector) pairs generating M, chosen greedily.

    Independent of the minimal-cover machinery; the result need not be minimal.
    """
    A = M.algebra
    gens = []
    span = Subspace(M.field, M.dim)
    for idx, e in enumerate(A.idempotents):
        for v in M.act(e).columns():
            if not any(v) or span.contains(v):
                continue
            gens.append((idx, v))
            for b in M.action:
                span.add(b.apply(v))
    if span.rank != M.dim:
        raise AssertionError("greedy generators do not generate the module")
    return gens


def _free_presentation(M: FDModule, gens: list):
    """Projective P = sum A e_i over gens and the map P -> M."""
    projs = indecomposable_projectives(M.algebra)
    F = M.field
    blocks = []
    for idx, v in gens:
        reg = projs[idx]._cache["regular_basis"]
        blocks.append(Matrix.from_columns(F, [M.act(b).apply(v) for b in reg], M.dim))
    from .modcat import direct_sum

    P = direct_sum([projs[idx] for idx, _ in gens])
    return P, Morphism(P, M, blocks[0].hstack(*blocks[1:]))


def classical_ext_dims(M: FDModule, N: FDModule, max_degree: int) -> dict:
    """dim Ext^i(M, N) for 0 <= i <= max_degree from Hom(P_., N) cohomology."""
    A = M.algebra
    F = M.field
    projs = indecomposable_projectives(A)
    # resolution: list of (gens of P_i, differential d_i: P_i -> P_{i-1} as
    # algebra-element matrix)
    levels = []
    cur = M
    prev_gens = None
    for _ in range(max_degree + 2):
        if cur.dim == 0:
            levels.append(([], None))
            break
        gens = _greedy_generators(cur)
        P, eps = _free_presentation(cur, gens)
        levels.append((gens, cur))
        K, inc = kernel_of(eps)
        # express generators of the next level in P coordinates later
        cur_next = K
        cur_next._cache["oracle_inclusion"] = inc
        cur_next._cache["oracle_P"] = (P, gens)
        cur = cur_next
    # images of generators of level i+1 inside P_i, as algebra elements per summand
    def boundary(level_idx):
        gens_next, K = levels[level_idx + 1]
        if K is None or not gens_next:
            return []
        inc = K._cache["oracle_inclusion"]
        P, gens = K._cache["oracle_P"]
        out = []
        for _, v in gens_next:
            w = inc.matrix.apply(v)
            comps = []
            off = 0
            for idx, _g in gens:
                reg = projs[idx]._cache["regular_basis"]
                seg = w[off:off + len(reg)]
                elt = [F.zero] * A.dim
                for c, b in zip(seg, reg):
                    if c:
                        elt = [F.add(x, F.mul(c, y)) for x, y in zip(elt, b)]
                comps.append(elt)
                off += len(reg)
            out.append(comps)
        return out

    # cochains: Hom(P_i, N) = sum over gens of e_idx N
    def cochain_basis(gens):
        out = []
        for t, (idx, _) in enumerate(gens):
            cols = N.act(A.idempotents[idx]).columns()
            sp = Subspace(F, N.dim)
            for c in cols:
                if sp.add(c):
                    out.append((t, c))
        return out

    bases = [cochain_basis(levels[i][0]) for i in range(len(levels))]

    def coboundary_rank(i):
        # d^i : C^i -> C^{i+1}, phi -> phi o boundary
        if i + 1 >= len(levels):
            return 0
        bd = boundary(i)
        if not bd or not bases[i]:
            return 0
        vecs = []
        for t, c in bases[i]:
            img = []
            for comps in bd:
                img.extend(N.act(comps[t]).apply(c))
            vecs.append(img)
        from .xfield import rank_of_vectors

        return rank_of_vectors(F, vecs)

    dims = {}
    ranks = {}
    for i in range(max_degree + 1):
        if i >= len(levels):
            dims[i] = 0
            continue
        r_out = ranks.setdefault(i, coboundary_rank(i))
        r_in = ranks.setdefault(i - 1, coboundary_rank(i - 1)) if i > 0 else 0
        dims[i] = len(bases[i]) - r_out - r_in
    return dims
