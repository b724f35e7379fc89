"""Almost split sequences and the stable Auslander-Reiten quiver.

For a symmetric algebra the translate is ``tau = Omega^2``.  The almost
split sequence ending at an indecomposable non-projective M is built as a
pushout of ``0 -> Omega M -> P(M) -> M -> 0`` along a map
``h: Omega M -> tau M`` whose class spans the socle of Ext^1(M, tau M)
under the right action of End(M).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .decomp import (
    DEFAULT_BUDGET,
    IsoUndecided,
    analyse_end,
    canonical_key,
    decompose,
    is_iso,
)
from .modcat import (
    FDModule,
    Morphism,
    direct_sum,
    direct_sum_maps,
    hom_basis,
    indecomposable_projectives,
    is_projective,
    projective_cover,
)
from .resolve import omega, syzygy
from .xfield import Matrix, Subspace, kernel_basis, solve, solve_many


class NotApplicable(ValueError):
    """Raised for projective or non-certified-indecomposable input."""


def tau(M: FDModule) -> FDModule:
    return omega(M, 2)


def tau_inverse(M: FDModule) -> FDModule:
    return omega(M, -2)


# ---------------------------------------------------------------------------
# lifting through projective covers


def _lift_to_cover(f: Morphism, src_cover, tgt_cover) -> Morphism:
    """A map P(M) -> P(N) over ``f: M -> N`` (exists since P(M) is projective)."""
    M, N = f.source, f.target
    A = M.algebra
    F = M.field
    projs = indecomposable_projectives(A)
    PN = tgt_cover.P
    piN = tgt_cover.epi.matrix
    blocks = []
    for idx, m in src_cover.summands:
        target_vec = f.matrix.apply(m)
        x = solve(piN, target_vec)
        if x is None:
            raise AssertionError("cover map is not surjective")
        x = PN.act(A.idempotents[idx]).apply(x)
        reg = projs[idx]._cache["regular_basis"]
        blocks.append(Matrix.from_columns(F, [PN.act(b).apply(x) for b in reg], PN.dim))
    mat = blocks[0].hstack(*blocks[1:]) if blocks else Matrix.zero(F, PN.dim, 0)
    return Morphism(src_cover.P, PN, mat)


def _syzygy_inclusion(M: FDModule) -> Morphism:
    syzygy(M)
    return M._cache["syzygy_inclusion"]


def induced_syzygy_map(f: Morphism) -> Morphism:
    """Omega f: Omega M -> Omega N, restricting a lift of f to the kernels.

    Inputs are expected to be projective-free so that ``Omega M`` is the
    kernel of the minimal cover itself.
    """
    M, N = f.source, f.target
    if M.dim == 0 or N.dim == 0:
        return Morphism.zero(syzygy(M), syzygy(N))
    lift = _lift_to_cover(f, projective_cover(M), projective_cover(N))
    iM = _syzygy_inclusion(M)
    iN = _syzygy_inclusion(N)
    X = solve_many(iN.matrix, lift.matrix @ iM.matrix)
    if X is None:
        raise AssertionError("lifted map does not preserve the syzygies")
    return Morphism(syzygy(M), syzygy(N), X)


# ---------------------------------------------------------------------------
# almost split sequences


@dataclass
class MiddleSummand:
    module: FDModule
    f: Morphism  # tau M -> E_i
    g: Morphism  # E_i -> M
    projective: bool
    certified: bool


@dataclass
class AlmostSplitSequence:
    left: FDModule  # tau M
    middle: FDModule
    right: FDModule  # M
    f: Morphism
    g: Morphism
    summands: list  # MiddleSummand

    @property
    def nonprojective(self) -> list:
        return [s for s in self.summands if not s.projective]

    @property
    def alpha(self) -> int:
        """Number of non-projective indecomposable middle summands, with multiplicity."""
        return len(self.nonprojective)

    @property
    def certified(self) -> bool:
        return all(s.certified for s in self.summands)

    def is_exact(self) -> bool:
        f, g = self.f, self.g
        return (
            f.is_mono() and g.is_epi() and (g.matrix @ f.matrix).is_zero()
            and self.middle.dim == self.left.dim + self.right.dim
        )

    def is_split(self) -> bool:
        """True iff some s: M -> E has g s = id_M."""
        H = hom_basis(self.right, self.middle)
        if H.dim == 0:
            return False
        cols = [(self.g.matrix @ s.matrix).flat() for s in H.basis]
        A = Matrix.from_columns(self.right.field, cols, self.right.dim ** 2)
        return solve(A, Matrix.identity(self.right.field, self.right.dim).flat()) is not None

    def lifting_holds(self, X: FDModule) -> bool:
        """Every non-split-epi map X -> M factors through g (X indecomposable)."""
        M = self.right
        HXM = hom_basis(X, M)
        if HXM.dim == 0:
            return True
        HXE = hom_basis(X, self.middle)
        F = M.field
        images = Subspace(F, X.dim * M.dim, [(self.g.matrix @ s.matrix).flat() for s in HXE.basis])
        phi = is_iso(X, M) if X.dim == M.dim else None
        if phi is not None:
            # only the non-isomorphisms must lift: r o phi with r in rad End(M)
            rad = analyse_end(M).radical
            return all(images.contains((r @ phi.matrix).flat()) for r in rad)
        return all(images.contains(h.matrix.flat()) for h in HXM.basis)


def _complement_projection(F, n: int, vectors) -> Matrix:
    """Linear map k^n -> k^n / span(vectors) in free coordinates."""
    sp = Subspace(F, n, vectors)
    red = sp.basis()
    pivots = [next(j for j, v in enumerate(r) if v) for r in red]
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    pos = {j: t for t, j in enumerate(free)}
    rows = [[F.zero] * n for _ in free]
    for j in free:
        rows[pos[j]][j] = F.one
    for c, r in zip(pivots, red):
        for j in free:
            if r[j]:
                rows[pos[j]][c] = F.neg(r[j])
    return Matrix._raw(F, rows, n)


def _lift_endomorphisms(M: FDModule, radical: list) -> list:
    """Omega(r) for each r in a basis of rad End(M)."""
    out = []
    for r in radical:
        out.append(induced_syzygy_map(Morphism(M, M, r)))
    return out


def ar_sequence(M: FDModule, seed: int = 0, budget: int = DEFAULT_BUDGET, accept_probable: bool = False) -> AlmostSplitSequence:
    """The almost split sequence ``0 -> tau M -> E -> M -> 0``."""
    key = ("ar", seed, budget)
    if key in M._cache:
        return M._cache[key]
    if M.dim == 0 or is_projective(M):
        raise NotApplicable("M is projective; there is no almost split sequence ending at it")
    end = analyse_end(M, seed, budget)
    if not end.local:
        if end.splitter is not None or not accept_probable:
            raise NotApplicable("M is not certified indecomposable")
    F = M.field
    cover = projective_cover(M)
    P = cover.P
    pi = cover.epi
    OmM = syzygy(M)
    iota = _syzygy_inclusion(M)
    tM = syzygy(OmM)
    if tM.dim == 0:
        raise NotApplicable("tau M vanishes")

    H = hom_basis(OmM, tM)
    n_h = OmM.dim * tM.dim
    # maps Omega M -> tau M extending over P: the classes of split extensions
    boundaries = [(g.matrix @ iota.matrix).flat() for g in hom_basis(P, tM).basis]
    Q = _complement_projection(F, n_h, boundaries)
    if Q.nrows == 0:
        raise AssertionError("Ext^1(M, tau M) vanishes for a non-projective indecomposable")
    # h in the socle: h o Omega(r) is a boundary for all r in rad End(M)
    lifts = _lift_endomorphisms(M, end.radical)
    rows = []
    for lr in lifts:
        cols = [Q.apply((h.matrix @ lr.matrix).flat()) for h in H.basis]
        rows.extend(Matrix.from_columns(F, cols, Q.nrows).rows if cols else [])
    cond = Matrix._raw(F, [list(r) for r in rows], H.dim) if rows else Matrix.zero(F, 0, H.dim)
    candidates = kernel_basis(cond) if rows else [[F.one if i == j else F.zero for i in range(H.dim)] for j in range(H.dim)]
    h = None
    for coeffs in candidates:
        cand = H.combination(coeffs)
        if any(Q.apply(cand.matrix.flat())):
            h = cand
            break
    if h is None:
        raise AssertionError("no nonzero socle element in Ext^1(M, tau M)")

    # pushout E = (P + tau M) / {(iota x, -h x)}
    S = direct_sum([P, tM])
    rel = []
    for j in range(OmM.dim):
        a = iota.matrix.column(j)
        b = [F.neg(x) for x in h.matrix.column(j)]
        rel.append(list(a) + b)
    E, q = S.quotient(rel)
    E.name = f"E({M.name})" if M.name else ""
    incs, projs_ = direct_sum_maps([P, tM], S)
    f = Morphism(tM, E, q.matrix @ incs[1].matrix)
    # g: E -> M induced by (pi, 0); E's basis is a set of free coordinates of S
    pi0 = pi.matrix.hstack(Matrix.zero(F, M.dim, tM.dim))
    section = solve_many(q.matrix, Matrix.identity(F, E.dim))
    g = Morphism(E, M, pi0 @ section)
    if g.matrix @ q.matrix != pi0:
        raise AssertionError("pushout map is not well defined")

    D = decompose(E, seed, budget)
    summands = []
    for leaf in D.leaves:
        X = leaf.module
        summands.append(MiddleSummand(
            module=X,
            f=Morphism(tM, X, leaf.projection.matrix @ f.matrix),
            g=Morphism(X, M, g.matrix @ leaf.inclusion.matrix),
            projective=is_projective(X),
            certified=leaf.certified,
        ))
    seq = AlmostSplitSequence(tM, E, M, f, g, summands)
    M._cache[key] = seq
    return seq


def verify_ar_sequence(seq: AlmostSplitSequence) -> dict:
    """Exactness, non-splitness and the lifting property on every middle summand."""
    out = {
        "exact": seq.is_exact(),
        "non_split": not seq.is_split(),
        "lifting": all(seq.lifting_holds(s.module) for s in seq.summands),
        "f_components_nonzero": all(not s.f.is_zero() for s in seq.summands),
        "g_components_nonzero": all(not s.g.is_zero() for s in seq.summands),
    }
    out["ok"] = all(out.values())
    return out


def valence(M: FDModule, seed: int = 0, budget: int = DEFAULT_BUDGET) -> int:
    return ar_sequence(M, seed, budget).alpha


# ---------------------------------------------------------------------------
# components of the stable quiver


class ModuleRegistry:
    """Isomorphism classes seen so far, keyed by ``canonical_key`` then ``is_iso``."""

    def __init__(self, seed: int = 0, budget: int = DEFAULT_BUDGET):
        self.modules: list = []
        self.keys: list = []
        self.seed = seed
        self.budget = budget

    def lookup(self, X: FDModule) -> Optional[int]:
        k = canonical_key(X)
        for idx, (Y, ky) in enumerate(zip(self.modules, self.keys)):
            if ky == k and is_iso(Y, X, self.seed, self.budget) is not None:
                return idx
        return None

    def add(self, X: FDModule) -> int:
        idx = self.lookup(X)
        if idx is not None:
            return idx
        self.modules.append(X)
        self.keys.append(canonical_key(X))
        return len(self.modules) - 1


@dataclass
class ComponentGraph:
    """A finite piece of a stable AR component around a root vertex."""

    registry: ModuleRegistry
    root: int
    radius: int
    distance: dict = dc_field(default_factory=dict)  # vertex -> undirected distance to root
    edges: set = dc_field(default_factory=set)  # (u, v): irreducible map u -> v
    alpha: dict = dc_field(default_factory=dict)  # vertex -> number of non-projective middle summands
    tau_of: dict = dc_field(default_factory=dict)  # vertex -> index of tau vertex
    expanded: set = dc_field(default_factory=set)

    @property
    def vertices(self) -> list:
        return sorted(self.distance)

    @property
    def frontier(self) -> list:
        return sorted(v for v in self.distance if v not in self.expanded)

    def module(self, v: int) -> FDModule:
        return self.registry.modules[v]

    def neighbours(self, v: int) -> set:
        return {b for a, b in self.edges if a == v} | {a for a, b in self.edges if b == v}

    def predecessors(self, v: int) -> list:
        return sorted(a for a, b in self.edges if b == v)

    def successors(self, v: int) -> list:
        return sorted(b for a, b in self.edges if a == v)

    def max_alpha(self) -> int:
        """Largest stable valence among vertices whose sequence was computed."""
        return max(self.alpha.values(), default=0)

    def _ql_search(self, v: int) -> tuple:
        """(nearest valence-1 distance or None, [(bound, u)] for unexpanded vertices u)."""
        dist = {v: 0}
        queue = deque([v])
        found = None
        blockers = []
        while queue:
            u = queue.popleft()
            if self.alpha.get(u) == 1:
                found = dist[u] if found is None else min(found, dist[u])
                continue
            if u not in self.expanded:
                # neighbours of u are unknown: a path through u has length
                # at least dist(u), plus one if u itself is known not to be on the boundary
                blockers.append((dist[u] + (1 if u in self.alpha else 0), u))
                continue
            for w in sorted(self.neighbours(u)):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found, sorted(blockers)

    def quasi_length(self, v: int) -> Optional[int]:
        """Distance from v to the nearest valence-1 vertex, or None when the frontier blocks it.

        The answer is certified: no path through an unexplored vertex can be shorter.
        """
        found, blockers = self._ql_search(v)
        if found is None or any(b < found for b, _ in blockers):
            return None
        return found

    def to_json(self) -> dict:
        verts = []
        for v in self.vertices:
            X = self.module(v)
            entry = {"key": repr(canonical_key(X)), "id": v, "dim": X.dim, "distance": self.distance[v]}
            if v in self.alpha:
                entry["alpha"] = self.alpha[v]
            ql = self.quasi_length(v)
            if ql is not None:
                entry["ql"] = ql
            verts.append(entry)
        return {
            "vertices": verts,
            "edges": [list(e) for e in sorted(self.edges)],
            "radius": self.radius,
            "frontier": self.frontier,
        }

    def edge_list(self) -> str:
        lines = []
        for a, b in sorted(self.edges):
            lines.append(f"{a} -> {b}  ({self.module(a).dim} -> {self.module(b).dim})")
        return "\n".join(lines) + ("\n" if lines else "")

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _expand(G: ComponentGraph, v: int):
    """Add arrows into v (from the sequence ending at v) and out of v (from the one ending at tau^-1 v)."""
    reg = G.registry
    X = reg.modules[v]
    seq = ar_sequence(X, reg.seed, reg.budget)
    G.alpha[v] = seq.alpha
    G.tau_of[v] = reg.add(seq.left)
    new = []
    for s in seq.nonprojective:
        u = reg.add(s.module)
        G.edges.add((u, v))
        new.append(u)
    Y = tau_inverse(X)
    w = reg.add(Y)
    seq2 = ar_sequence(reg.modules[w], reg.seed, reg.budget)
    G.tau_of[w] = v
    for s in seq2.nonprojective:
        u = reg.add(s.module)
        G.edges.add((v, u))
        new.append(u)
    G.expanded.add(v)
    return new


def build_component(M: FDModule, radius: int = 3, seed: int = 0, budget: int = DEFAULT_BUDGET,
                    registry: Optional[ModuleRegistry] = None) -> ComponentGraph:
    """Breadth-first exploration of the stable component of M up to ``radius`` arrows."""
    reg = registry or ModuleRegistry(seed, budget)
    root = reg.add(omega(M, 0))
    G = ComponentGraph(reg, root, radius)
    G.distance[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        if G.distance[v] >= radius:
            # valence only: no new vertices beyond the radius
            G.alpha[v] = ar_sequence(reg.modules[v], seed, budget).alpha
            continue
        for u in _expand(G, v):
            if u not in G.distance:
                G.distance[u] = G.distance[v] + 1
                queue.append(u)
    return G


def certify_quasi_length(G: ComponentGraph, v: int, max_expansions: int = 16) -> Optional[int]:
    """Grow G around v until its quasi-length is certified (or the budget runs out)."""
    reg = G.registry
    spent = 0
    while True:
        found, blockers = G._ql_search(v)
        pending = [(b, u) for b, u in blockers if found is None or b < found]
        if found is not None and not pending:
            return found
        if spent >= max_expansions or not pending:
            return None
        _, u = pending[0]
        if u not in G.alpha:
            G.alpha[u] = ar_sequence(reg.modules[u], reg.seed, reg.budget).alpha
            continue
        for w in _expand(G, u):
            if w not in G.distance:
                G.distance[w] = G.distance[u] + 1
        spent += 1


def quasi_length(M: FDModule, G: ComponentGraph, max_expansions: int = 0) -> Optional[int]:
    """Quasi-length of M in G; with ``max_expansions`` > 0 the graph may be grown to certify it."""
    v = G.registry.lookup(M)
    if v is None or v not in G.distance:
        return None
    if max_expansions:
        return certify_quasi_length(G, v, max_expansions)
    return G.quasi_length(v)


# ---------------------------------------------------------------------------
# Omega-perfect maps


@dataclass
class OmegaPerfectVerdict:
    verdict: str  # all-mono | all-epi | mixed | stable-by-periodicity | inconclusive
    steps: list  # classification of Omega^n f, n = 0..bound: "mono" | "epi" | "iso" | "neither"
    bound: int
    certified: bool = False
    first_flip: Optional[int] = None
    period: Optional[int] = None
    perfect: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "steps": self.steps, "bound": self.bound, "certified": self.certified}
        for k in ("first_flip", "period", "perfect"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        return out


def _classify(f: Morphism) -> str:
    r = f.rank
    mono = r == f.source.dim
    epi = r == f.target.dim
    if mono and epi:
        return "iso"
    if mono:
        return "mono"
    if epi:
        return "epi"
    return "neither"


def _orbit_period(X: FDModule, bound: int, seed: int) -> Optional[int]:
    from .resolve import detect_syzygy_period

    res = detect_syzygy_period(X, bound, seed)
    return res[0] if res else None


def omega_perfect_test(f: Morphism, bound: int = 10, seed: int = 0) -> OmegaPerfectVerdict:
    """Track whether Omega^n f stays a monomorphism (or an epimorphism)."""
    steps = []
    cur = f
    for n in range(bound + 1):
        steps.append(_classify(cur))
        if n < bound:
            cur = induced_syzygy_map(cur)
    base = steps[0]
    flip = next((n for n, s in enumerate(steps) if s != base), None)
    pM = _orbit_period(f.source, bound, seed)
    pN = _orbit_period(f.target, bound, seed)
    if pM is not None and pN is not None:
        from math import lcm

        L = lcm(pM, pN)
        return OmegaPerfectVerdict("stable-by-periodicity", steps, bound, certified=True,
                                   first_flip=flip, period=L, perfect=flip is None and base in ("mono", "epi"))
    if flip is not None:
        return OmegaPerfectVerdict("mixed", steps, bound, certified=True, first_flip=flip)
    if base == "mono":
        return OmegaPerfectVerdict("all-mono", steps, bound)
    if base == "epi":
        return OmegaPerfectVerdict("all-epi", steps, bound)
    return OmegaPerfectVerdict("inconclusive", steps, bound)


def module_omega_perfect(M: FDModule, bound: int = 10, seed: int = 0) -> dict:
    """Test the irreducible maps tau M -> E_i and E_i -> M of the sequence ending at M."""
    seq = ar_sequence(M, seed)
    results = []
    for s in seq.nonprojective:
        results.append(("in", omega_perfect_test(s.f, bound, seed)))
        results.append(("out", omega_perfect_test(s.g, bound, seed)))
    flagged = [r for _, r in results if r.verdict == "mixed" or r.perfect is False]
    return {
        "maps": [{"side": side, **r.to_json()} for side, r in results],
        "omega_perfect": None if any(r.verdict == "inconclusive" for _, r in results) else not flagged,
    }
