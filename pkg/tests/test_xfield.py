import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stabext.xfield import (
    GF,
    QQ,
    Matrix,
    Subspace,
    charpoly,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
)

FIELDS = [GF(2), GF(3), GF(5), QQ]


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.mul(F(3), F.inv(F(3))) == 1
    assert F(-1) == 6
    assert F.add(F(5), F(4)) == 2
    with pytest.raises(ValueError):
        GF(6)


def test_rational_parsing():
    assert QQ("3/7") * 7 == 3
    assert QQ.decode(QQ.encode(QQ("-2/5"))) == QQ("-2/5")


def test_rref_examples():
    I = Matrix.identity(GF(3), 3)
    R, piv, r = rref(I)
    assert R == I and r == 3 and piv == [0, 1, 2]
    Z = Matrix.zero(QQ, 2, 4)
    R, piv, r = rref(Z)
    assert R == Z and r == 0
    R, _, r = rref(Matrix(QQ, [[1, 2], [2, 4]]))
    assert R.tolist() == [[1, 2], [0, 0]] and r == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(GF(5), 4)) == []
    assert len(kernel_basis(Matrix.zero(QQ, 2, 3))) == 3
    # every v in F_2^2 with v0 + v1 = 0, by enumeration
    K = kernel_basis(Matrix(GF(2), [[1, 1]]))
    enumerated = [v for v in itertools.product(range(2), repeat=2) if any(v) and (v[0] + v[1]) % 2 == 0]
    assert [tuple(v) for v in K] == enumerated == [(1, 1)]


def test_solve_examples():
    F = GF(5)
    assert solve(Matrix.identity(F, 2), [F(3), F(4)]) == [3, 4]
    assert solve(Matrix.zero(F, 2, 2), [F(1), F(0)]) is None
    # back substitution: x1 = 1, x0 = 3 - 2 = 1
    assert solve(Matrix(F, [[1, 2], [0, 1]]), [F(3), F(1)]) == [1, 1]


def test_charpoly_nilpotent():
    N = Matrix(QQ, [[0, 1], [0, 0]])
    assert charpoly(N) == [0, 0, 1]


def _matrices(max_dim=5):
    @st.composite
    def build(draw):
        F = draw(st.sampled_from(FIELDS))
        r = draw(st.integers(0, max_dim))
        c = draw(st.integers(0, max_dim))
        rows = [[F(draw(st.integers(-4, 4))) for _ in range(c)] for _ in range(r)]
        return Matrix(F, rows, c)

    return build()


@settings(max_examples=80, deadline=None)
@given(_matrices())
def test_rank_nullity_and_transpose(A):
    K = kernel_basis(A)
    assert rank(A) + len(K) == A.ncols
    assert rank(A) == rank(A.transpose())
    for v in K:
        assert not any(A.apply(v))


@settings(max_examples=80, deadline=None)
@given(_matrices(), st.data())
def test_solve_contract(A, data):
    F = A.field
    b = [F(data.draw(st.integers(-4, 4))) for _ in range(A.nrows)]
    x = solve(A, b)
    if x is None:
        aug = A.hstack(Matrix.from_columns(F, [b], A.nrows))
        assert rank(aug) > rank(A)
    else:
        assert A.apply(x) == b


@settings(max_examples=60, deadline=None)
@given(_matrices(4))
def test_inverse_when_square_and_full_rank(A):
    if A.nrows != A.ncols or rank(A) < A.ncols:
        return
    assert A @ inverse(A) == Matrix.identity(A.field, A.ncols)


@settings(max_examples=60, deadline=None)
@given(_matrices(4))
def test_subspace_rank_matches_matrix_rank(A):
    sp = Subspace(A.field, A.ncols, A.rows)
    assert sp.rank == rank(A)
    for row in A.rows:
        assert sp.contains(row)
