"""Exact scalar fields (F_p and Q) and dense exact linear algebra.

Matrices are immutable row-major tables of field elements.  Prime-field
elements are plain ``int`` values in ``range(p)``; rationals are
``gmpy2.mpq`` values, which are always stored in lowest terms.

Elimination runs on sparse dictionary rows internally: the intertwining
systems produced by Hom computations are very sparse, and the reduced row
echelon form is unique, so the sparse path still gives the canonical
leftmost-pivot answer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Either the prime field F_p or the rationals Q."""

    __slots__ = ("p",)

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            if not isinstance(p, int) or not _is_prime(p):
                raise ValueError(f"field characteristic must be prime, got {p!r}")
        object.__setattr__(self, "p", p)

    def __setattr__(self, key, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def __call__(self, x):
        """Coerce an int, str ("3/7"), Fraction or mpq into the field."""
        if self.p:
            if isinstance(x, str):
                x = Fraction(x)
            if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
                num, den = int(x.numerator), int(x.denominator)
                if den % self.p == 0:
                    raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
                return num * pow(den, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return 1 / a

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def encode(self, a):
        """JSON scalar: ints for F_p, strings like "3/7" for Q."""
        if self.p:
            return int(a)
        a = mpq(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def decode(self, v):
        if self.p:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"expected integer coordinate for F_{self.p}, got {v!r}")
            return v % self.p
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise ValueError(f"expected rational coordinate string, got {v!r}")
        return mpq(v)

    def to_json(self):
        return {"prime": self.p} if self.p else "rational"

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj == "rational":
            return cls(None)
        if isinstance(obj, dict) and set(obj) == {"prime"}:
            return cls(obj["prime"])
        raise ValueError(f"unrecognised field spec {obj!r}")

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# sparse row elimination (shared by everything below)


def _echelon(rows: Iterable[dict], p: Optional[int]) -> dict:
    """Reduce sparse rows into a dict ``pivot_col -> row`` with leading 1s.

    The result is in echelon form but not yet back-substituted.
    """
    pivots: dict = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                lead = r[c]
                if lead != 1:
                    inv = pow(lead, -1, p) if p else 1 / lead
                    if p:
                        r = {k: v * inv % p for k, v in r.items()}
                    else:
                        r = {k: v * inv for k, v in r.items()}
                pivots[c] = r
                break
            f = r[c]
            if p:
                for k, v in piv.items():
                    nv = (r.get(k, 0) - f * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                for k, v in piv.items():
                    nv = r.get(k, 0) - f * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
    return pivots


def _back_substitute(pivots: dict, p: Optional[int]) -> list:
    """Turn an echelon pivot dict into RREF rows, ordered by pivot column."""
    cols = sorted(pivots)
    done: dict = {}
    for c in reversed(cols):
        r = dict(pivots[c])
        for k in sorted(k for k in r if k != c and k in done):
            f = r.get(k)
            if not f:
                continue
            for kk, v in done[k].items():
                if p:
                    nv = (r.get(kk, 0) - f * v) % p
                else:
                    nv = r.get(kk, 0) - f * v
                if nv:
                    r[kk] = nv
                else:
                    r.pop(kk, None)
        done[c] = r
    return [(c, done[c]) for c in cols]


def _dense_to_sparse(rows: Sequence[Sequence]) -> list:
    return [{j: v for j, v in enumerate(row) if v} for row in rows]


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows, ncols: Optional[int] = None, *, _trusted=False):
        if _trusted:
            data = rows
        else:
            data = tuple(tuple(field(x) for x in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(data[0])
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", data)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field, rows, ncols):
        return cls(field, tuple(tuple(r) for r in rows), ncols, _trusted=True)

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls._raw(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def block_diagonal(cls, field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[field.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._raw(field, out, m)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(map(str, r)) for r in self.rows]})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if not self.nrows:
            return Matrix.zero(self.field, self.ncols, 0)
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)], self.nrows)

    T = property(transpose)

    def is_zero(self) -> bool:
        return all(not v for row in self.rows for v in row)

    def _check_same(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        p = self.field.p
        if p:
            data = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            data = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, data, self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        p = self.field.p
        if p:
            data = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            data = [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, data, self.ncols)

    def __neg__(self):
        return self.scale(self.field(-1))

    def scale(self, c) -> "Matrix":
        p = self.field.p
        c = self.field(c)
        if p:
            data = [[a * c % p for a in r] for r in self.rows]
        else:
            data = [[a * c for a in r] for r in self.rows]
        return Matrix._raw(self.field, data, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        zero = self.field.zero
        m = other.ncols
        orows = other.rows
        out = []
        for row in self.rows:
            acc = [zero] * m
            for k, a in enumerate(row):
                if not a:
                    continue
                ok = orows[k]
                for j in range(m):
                    b = ok[j]
                    if b:
                        acc[j] += a * b
            if p:
                acc = [v % p for v in acc]
            out.append(acc)
        return Matrix._raw(self.field, out, m)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        p = self.field.p
        nz = [(j, b) for j, b in enumerate(vec) if b]
        out = []
        for row in self.rows:
            s = self.field.zero
            for j, b in nz:
                a = row[j]
                if a:
                    s += a * b
            out.append(s % p if p else s)
        return out

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in others:
            if m.nrows != self.nrows:
                raise ValueError("row count mismatch")
        data = [sum((list(m.rows[i]) for m in mats), []) for i in range(self.nrows)]
        return Matrix._raw(self.field, data, sum(m.ncols for m in mats))

    def vstack(self, *others: "Matrix") -> "Matrix":
        for m in others:
            if m.ncols != self.ncols:
                raise ValueError("column count mismatch")
        data = list(self.rows) + [r for m in others for r in m.rows]
        return Matrix._raw(self.field, data, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def flat(self) -> list:
        return [v for r in self.rows for v in r]


# ---------------------------------------------------------------------------
# public linear algebra


def rref(A: Matrix):
    """Reduced row echelon form with leftmost pivots.

    Returns ``(R, pivots, rank)`` where ``pivots`` lists pivot columns.
    """
    p = A.field.p
    reduced = _back_substitute(_echelon(_dense_to_sparse(A.rows), p), p)
    zero = A.field.zero
    out = []
    for _, r in reduced:
        dense = [zero] * A.ncols
        for k, v in r.items():
            dense[k] = v
        out.append(dense)
    out.extend([zero] * A.ncols for _ in range(A.nrows - len(reduced)))
    pivots = [c for c, _ in reduced]
    return Matrix._raw(A.field, out, A.ncols), pivots, len(pivots)


def rank(A: Matrix) -> int:
    return len(_echelon(_dense_to_sparse(A.rows), A.field.p))


def rank_of_vectors(field: Field, vectors: Iterable[Sequence]) -> int:
    return len(_echelon(_dense_to_sparse(vectors), field.p))


def _kernel_from_sparse(field: Field, rows: list, ncols: int) -> list:
    p = field.p
    reduced = _back_substitute(_echelon(rows, p), p)
    pivset = {c for c, _ in reduced}
    free = [j for j in range(ncols) if j not in pivset]
    zero, one = field.zero, field.one
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for c, r in reduced:
            a = r.get(f)
            if a:
                v[c] = (-a) % p if p else -a
        basis.append(v)
    return basis


def kernel_basis(A: Matrix) -> list:
    """Column vectors spanning ker(A), one per free column (ascending)."""
    return _kernel_from_sparse(A.field, _dense_to_sparse(A.rows), A.ncols)


def sparse_kernel(field: Field, rows: list, ncols: int) -> list:
    """Kernel of a matrix given as sparse dict rows."""
    return _kernel_from_sparse(field, rows, ncols)


def solve(A: Matrix, b: Sequence) -> Optional[list]:
    """Some x with A x = b (free variables zero), or None if inconsistent."""
    if len(b) != A.nrows:
        raise ValueError(f"dimension mismatch: {A.nrows} rows vs rhs of length {len(b)}")
    p = A.field.p
    n = A.ncols
    rows = []
    for row, bi in zip(A.rows, b):
        r = {j: v for j, v in enumerate(row) if v}
        bi = A.field(bi)
        if bi:
            r[n] = bi
        rows.append(r)
    reduced = _back_substitute(_echelon(rows, p), p)
    zero = A.field.zero
    x = [zero] * n
    for c, r in reduced:
        if c == n:
            return None
        x[c] = r.get(n, zero)
    return x


def solve_many(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """Solve A X = B column by column in one elimination; None if any column fails."""
    if A.nrows != B.nrows:
        raise ValueError("dimension mismatch")
    p = A.field.p
    n, k = A.ncols, B.ncols
    rows = []
    for row, brow in zip(A.rows, B.rows):
        r = {j: v for j, v in enumerate(row) if v}
        for j, v in enumerate(brow):
            if v:
                r[n + j] = v
        rows.append(r)
    reduced = _back_substitute(_echelon(rows, p), p)
    zero = A.field.zero
    X = [[zero] * k for _ in range(n)]
    for c, r in reduced:
        if c >= n:
            return None
        for j in range(k):
            X[c][j] = r.get(n + j, zero)
    return Matrix._raw(A.field, X, k)


def inverse(A: Matrix) -> Matrix:
    if A.nrows != A.ncols:
        raise ValueError("inverse of a non-square matrix")
    X = solve_many(A, Matrix.identity(A.field, A.nrows))
    if X is None or rank(A) < A.nrows:
        raise ZeroDivisionError("matrix is singular")
    return X


def independent_subset(field: Field, vectors: Sequence[Sequence]) -> list:
    """Indices of a maximal independent subset, greedy in the given order."""
    p = field.p
    pivots: dict = {}
    keep = []
    for idx, v in enumerate(vectors):
        before = len(pivots)
        pivots = _echelon_add(pivots, {j: x for j, x in enumerate(v) if x}, p)
        if len(pivots) > before:
            keep.append(idx)
    return keep


def _echelon_add(pivots: dict, row: dict, p) -> dict:
    extra = _echelon([row], p) if not pivots else None
    if extra is not None:
        return extra
    # reuse _echelon's loop by feeding a single row against existing pivots
    r = row
    while r:
        c = min(r)
        piv = pivots.get(c)
        if piv is None:
            lead = r[c]
            inv = pow(lead, -1, p) if p else 1 / lead
            pivots[c] = {k: (v * inv % p if p else v * inv) for k, v in r.items()}
            break
        f = r[c]
        for k, v in piv.items():
            nv = (r.get(k, 0) - f * v) % p if p else r.get(k, 0) - f * v
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return pivots


class Subspace:
    """Incrementally built span with membership tests and coordinates."""

    def __init__(self, field: Field, dim: int, vectors: Iterable[Sequence] = ()):
        self.field = field
        self.dim = dim
        self._pivots: dict = {}
        for v in vectors:
            self.add(v)

    def add(self, v: Sequence) -> bool:
        before = len(self._pivots)
        self._pivots = _echelon_add(self._pivots, {j: x for j, x in enumerate(v) if x}, self.field.p)
        return len(self._pivots) > before

    def contains(self, v: Sequence) -> bool:
        p = self.field.p
        r = {j: x for j, x in enumerate(v) if x}
        while r:
            c = min(r)
            piv = self._pivots.get(c)
            if piv is None:
                return False
            f = r[c]
            for k, x in piv.items():
                nv = (r.get(k, 0) - f * x) % p if p else r.get(k, 0) - f * x
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return True

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def basis(self) -> list:
        """Canonical (RREF) basis of the span."""
        zero = self.field.zero
        out = []
        for _, r in _back_substitute(self._pivots, self.field.p):
            v = [zero] * self.dim
            for k, x in r.items():
                v[k] = x
            out.append(v)
        return out


def charpoly(A: Matrix) -> list:
    """Characteristic polynomial det(tI - A), coefficients from t^0 upwards.

    Hessenberg reduction followed by the standard recurrence; O(n^3).
    """
    F = A.field
    p = F.p
    n = A.nrows
    if n != A.ncols:
        raise ValueError("charpoly of a non-square matrix")
    H = [list(r) for r in A.rows]

    def red(x):
        return x % p if p else x

    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = red(H[i][m - 1] * inv)
            if not u:
                continue
            for j in range(n):
                H[i][j] = red(H[i][j] - u * H[m][j])
            for row in H:
                row[m] = red(row[m] + u * row[i])
    # polys[k] = charpoly of the leading k x k block
    polys = [[F.one]]
    for k in range(1, n + 1):
        # t * polys[k-1] - H[k-1][k-1] * polys[k-1]
        prev = polys[k - 1]
        new = [F.zero] + list(prev)
        for j, c in enumerate(prev):
            new[j] = red(new[j] - H[k - 1][k - 1] * c)
        prod = F.one
        for i in range(1, k):
            prod = red(prod * H[k - i][k - i - 1])
            coef = red(prod * H[k - i - 1][k - 1])
            if not coef:
                continue
            for j, c in enumerate(polys[k - i - 1]):
                new[j] = red(new[j] - coef * c)
        polys.append(new)
    return polys[n]


def det(A: Matrix):
    cp = charpoly(A)
    c0 = cp[0]
    if A.nrows % 2:
        return A.field.neg(c0)
    return c0


def poly_eval_matrix(coeffs: Sequence, A: Matrix) -> Matrix:
    """Evaluate a polynomial (coefficients t^0 upwards) at a square matrix."""
    F = A.field
    result = Matrix.zero(F, A.nrows, A.ncols)
    for c in reversed(coeffs):
        result = result @ A + Matrix.identity(F, A.nrows).scale(c)
    return result
