"""Extension degree of a module from a finite window of stable cohomology.

``ext_deg(M)`` looks at ``d_i = dim Ext^i(M, M)`` for ``1 <= i <= window``:

* projective-free part zero: MinusInfinity
* last nonzero index m with at least ``guard`` zeros after it: Finite(m)
  (m = 0 when the window is all zero)
* Omega-periodic (an explicit isomorphism Omega^n M ~ M with n <= window)
  together with a nonzero stable endomorphism: Infinite
* anything else: Unknown

Finite verdicts are window-limited: a module whose cohomology returns
after more than ``guard`` zeros is misread.  Infinite verdicts carry a
certificate and are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .modcat import FDModule, direct_sum, stable_dim
from .resolve import DEFAULT_WINDOW, detect_syzygy_period, ext_hat, omega

DEFAULT_GUARD = 8


@dataclass
class ExtDegResult:
    verdict: str  # Finite | Infinite | Unknown | MinusInfinity
    window: int
    guard: int
    dims: list = dc_field(default_factory=list)  # d_1 .. d_window
    m: Optional[int] = None
    period: Optional[int] = None
    stable_endo: Optional[int] = None  # dim of stable End when Infinite

    def __str__(self):
        if self.verdict == "Finite":
            return f"Finite({self.m})"
        if self.verdict == "Infinite":
            return f"Infinite(period {self.period})"
        if self.verdict == "Unknown":
            return f"Unknown(window {self.window})"
        return "MinusInfinity"

    @property
    def value(self):
        """m for Finite, inf / -inf for the infinite verdicts, None for Unknown."""
        if self.verdict == "Finite":
            return self.m
        if self.verdict == "Infinite":
            return float("inf")
        if self.verdict == "MinusInfinity":
            return float("-inf")
        return None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "window": self.window, "guard": self.guard, "dims": list(self.dims)}
        if self.m is not None:
            out["m"] = self.m
        if self.period is not None:
            out["period"] = self.period
        if self.stable_endo is not None:
            out["stable_endo"] = self.stable_endo
        return out


def _sum_dims(Ms: Sequence[FDModule], Ns: Sequence[FDModule], i: int) -> int:
    return sum(ext_hat(X, Y, i) for X in Ms for Y in Ns)


def classify_dims(dims: Sequence[int], window: int, guard: int) -> tuple:
    """('Finite', m) when the tail after the last nonzero has >= guard zeros, else ('Unknown', None)."""
    last = max((i + 1 for i, d in enumerate(dims) if d), default=0)
    if window - last >= guard:
        return "Finite", last
    return "Unknown", None


def ext_deg(M, window: int = DEFAULT_WINDOW, guard: int = DEFAULT_GUARD, seed: int = 0) -> ExtDegResult:
    """Extension degree of M, or of the direct sum of a list of modules.

    A list is handled summand-wise: Ext of a sum is the sum of pairwise Ext,
    and periodicity is only attempted for a single module.
    """
    Ms = list(M) if isinstance(M, (list, tuple)) else [M]
    Ms = [omega(X, 0) for X in Ms]
    Ms = [X for X in Ms if X.dim]
    if not Ms:
        return ExtDegResult("MinusInfinity", window, guard)
    dims = [_sum_dims(Ms, Ms, i) for i in range(1, window + 1)]
    verdict, m = classify_dims(dims, window, guard)
    if verdict == "Finite":
        return ExtDegResult("Finite", window, guard, dims, m=m)
    if len(Ms) == 1:
        per = detect_syzygy_period(Ms[0], window, seed)
        if per is not None:
            s = stable_dim(Ms[0], Ms[0])
            if s > 0:
                return ExtDegResult("Infinite", window, guard, dims, period=per[0], stable_endo=s)
    else:
        pers = [detect_syzygy_period(X, window, seed) for X in Ms]
        if all(pers) and any(stable_dim(X, X) for X in Ms):
            from math import lcm

            L = 1
            for p in pers:
                L = lcm(L, p[0])
            return ExtDegResult("Infinite", window, guard, dims, period=L,
                                stable_endo=sum(stable_dim(X, X) for X in Ms))
    return ExtDegResult("Unknown", window, guard, dims)


@dataclass
class PerpResult:
    holds: bool
    tail: tuple  # (first, last) degree inspected
    witness: Optional[int] = None  # first nonzero degree in the tail

    def to_json(self) -> dict:
        out = {"holds": self.holds, "tail": list(self.tail)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def perp_tail(window: int, guard: int = DEFAULT_GUARD) -> tuple:
    """Degrees treated as 'sufficiently large' for a window: the last ``guard`` ones."""
    return (max(1, window - guard + 1), window)


def perp(M: FDModule, N: FDModule, window: int = DEFAULT_WINDOW, guard: int = DEFAULT_GUARD) -> PerpResult:
    """M perp N within the window: Ext^i(M, N) = 0 on the tail degrees."""
    lo, hi = perp_tail(window, guard)
    for i in range(lo, hi + 1):
        if ext_hat(M, N, i):
            return PerpResult(False, (lo, hi), i)
    return PerpResult(True, (lo, hi))


def two_of_three_check(X: FDModule, Y: FDModule, Z: FDModule, T: FDModule, side: str = "left",
                       window: int = DEFAULT_WINDOW, guard: int = DEFAULT_GUARD) -> dict:
    """Two-out-of-three for perp on a short exact sequence 0 -> X -> Y -> Z -> 0.

    ``side="left"`` tests W perp T, ``side="right"`` tests T perp W.  When two
    terms vanish on the tail [lo, hi], the long exact sequence forces the
    third to vanish on [lo + 1, hi - 1]; that one-degree slack at each end is
    what gets checked.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    lo, hi = perp_tail(window, guard)

    def dims(W):
        if side == "left":
            return [ext_hat(W, T, i) for i in range(lo, hi + 1)]
        return [ext_hat(T, W, i) for i in range(lo, hi + 1)]

    table = {name: dims(W) for name, W in (("X", X), ("Y", Y), ("Z", Z))}
    holds = {name: not any(d) for name, d in table.items()}
    report = {"side": side, "tail": [lo, hi], "holds": holds, "dims": table}
    if sum(holds.values()) < 2:
        report.update(consistent=True, vacuous=True)
        return report
    ok = True
    for name, d in table.items():
        if not holds[name]:
            inner = d[1:-1]
            ok = ok and not any(inner)
    report.update(consistent=ok, vacuous=False)
    return report


def fed_estimate(modules: Sequence[FDModule], window: int = DEFAULT_WINDOW, guard: int = DEFAULT_GUARD) -> dict:
    """Sup of the Finite verdicts over indecomposable modules: an estimate, not a certificate.

    ``estimate`` is an integer, "MinusInfinity" when every module is
    projective, or None when no module received a Finite verdict.
    """
    verdicts = [ext_deg(X, window, guard) for X in modules]
    finite = [r.m for r in verdicts if r.verdict == "Finite"]
    if finite:
        est = max(finite)
    elif verdicts and all(r.verdict == "MinusInfinity" for r in verdicts):
        est = "MinusInfinity"
    else:
        est = None
    return {
        "estimate": est,
        "unknown": sum(r.verdict == "Unknown" for r in verdicts),
        "infinite": sum(r.verdict == "Infinite" for r in verdicts),
        "verdicts": [str(r) for r in verdicts],
        "window": window,
        "guard": guard,
    }


# ---------------------------------------------------------------------------
# cones


@dataclass
class ConeLayer:
    root: FDModule
    d: int
    members: list  # modules, one per isomorphism class
    distances: list  # d_M(X): first layer in which each member occurs

    def to_json(self) -> dict:
        return {"d": self.d, "dims": [X.dim for X in self.members], "distances": list(self.distances)}


def cone_layers(M: FDModule, depth: int, seed: int = 0, registry=None) -> list:
    """C^0 = {M}; C^(d+1) = non-projective immediate predecessors of members of C^d.

    Layers may overlap; ``distances`` records the smallest layer index of each member.
    """
    from .arquiver import ModuleRegistry, ar_sequence

    reg = registry or ModuleRegistry(seed)
    root = omega(M, 0)
    layer = [reg.add(root)]
    first_seen = {layer[0]: 0}
    out = [ConeLayer(root, 0, [reg.modules[layer[0]]], [0])]
    for d in range(1, depth + 1):
        nxt = []
        for v in layer:
            for s in ar_sequence(reg.modules[v], seed, reg.budget).nonprojective:
                u = reg.add(s.module)
                if u not in nxt:
                    nxt.append(u)
        for u in nxt:
            first_seen.setdefault(u, d)
        layer = nxt
        out.append(ConeLayer(root, d, [reg.modules[u] for u in layer], [first_seen[u] for u in layer]))
    return out


def cone_ext_deg(M: FDModule, d: int, window: int = DEFAULT_WINDOW, guard: int = DEFAULT_GUARD,
                 seed: int = 0, layers: Optional[list] = None) -> ExtDegResult:
    """ext_deg of the direct sum of the members of C^d."""
    layers = layers or cone_layers(M, d, seed)
    return ext_deg(list(layers[d].members), window, guard)
