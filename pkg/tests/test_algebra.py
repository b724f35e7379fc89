import pytest

from stabext.algebra import (
    AlgebraPresentation,
    SearchBudgetExceeded,
    find_symmetrizing_form,
    gram_matrix,
    opposite_algebra,
    projective_indecomposables,
    simple_modules,
    validate_algebra,
)
from stabext.corpus import (
    group_algebra_c2,
    group_algebra_klein,
    path_algebra_a2,
    quantum_exterior_algebra,
    symmetric_nakayama,
)
from stabext.xfield import GF, rank


def test_truncated_validates(A3):
    rep = validate_algebra(A3)
    assert rep.ok, rep.failures


def test_corrupted_table_names_associativity(A3):
    obj = A3.to_json()
    obj["table"][1][1] = [1, 0, 0]  # x * x = 1, so (x x) x^2 = x^2 but x (x x^2) = 0
    rep = validate_algebra(AlgebraPresentation.from_json(obj))
    assert not rep.ok
    assert any(f["check"] == "associativity" for f in rep.failures)


def test_missing_field_is_reported(A3):
    obj = A3.to_json()
    del obj["table"]
    with pytest.raises(ValueError, match="table"):
        AlgebraPresentation.from_json(obj)


def test_symmetrizing_forms():
    lam = find_symmetrizing_form(group_algebra_c2())
    assert lam is not None
    # coefficient of g up to scalar; the Gram matrix has full rank 2
    assert rank(gram_matrix(group_algebra_c2(), lam.functional)) == 2


def test_truncated_form_is_top_coefficient(A3):
    G = gram_matrix(A3, [0, 0, 1])
    assert G.tolist() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert find_symmetrizing_form(A3) is not None


def test_path_algebra_not_symmetric():
    A = path_algebra_a2(GF(2))
    assert validate_algebra(A).ok
    assert find_symmetrizing_form(A) is None


def test_projectives_and_simples(A3):
    assert [P.dim for P in projective_indecomposables(A3)] == [3]
    assert [P.dim for P in projective_indecomposables(group_algebra_klein())] == [4]
    nak = symmetric_nakayama(GF(3))
    Ps = projective_indecomposables(nak)
    assert len(Ps) == 2 and sum(P.dim for P in Ps) == nak.dim
    assert len(simple_modules(nak)) == 2
    assert [S.dim for S in simple_modules(A3)] == [1]


@pytest.mark.parametrize("build", [lambda: symmetric_nakayama(GF(3)), group_algebra_klein,
                                   lambda: quantum_exterior_algebra(2)])
def test_radical_kills_simples(build):
    A = build()
    for S in simple_modules(A):
        assert all(r.is_zero() for r in S.radical_action)


def test_opposite(A3):
    assert opposite_algebra(A3).table == A3.table
    R = quantum_exterior_algebra(2)
    op = opposite_algebra(R)
    assert op.table != R.table
    assert all(op.table[i][j] == R.table[j][i] for i in range(R.dim) for j in range(R.dim))
    assert opposite_algebra(op).table == R.table


def test_qext_validates_and_is_symmetric():
    R = quantum_exterior_algebra(2)
    assert validate_algebra(R).ok
    lam = find_symmetrizing_form(R)
    G = gram_matrix(R, lam.functional)
    assert rank(G) == R.dim and G == G.transpose()
