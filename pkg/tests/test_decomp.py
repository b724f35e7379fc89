from hypothesis import given, settings, strategies as st

from stabext.algebra import simple_modules
from stabext.corpus import group_algebra_klein, truncated_module, truncated_polynomial
from stabext.decomp import canonical_key, decompose, fitting_split, is_iso, same_multiset
from stabext.modcat import FDModule, direct_sum, dual_module, end_basis
from stabext.resolve import syzygy
from stabext.xfield import GF


def test_is_iso_examples(trunc3):
    A, M1, M2, P = trunc3
    f = is_iso(M2, M2)
    assert f is not None and f.is_iso()
    assert is_iso(M1, P) is None
    D = dual_module(M2)
    g = is_iso(M2, FDModule(A, D.dim, D.action))
    assert g is not None and g.is_homomorphism() and g.is_iso()


def test_is_iso_rejects_same_dimension(trunc3):
    A, M1, M2, P = trunc3
    assert is_iso(direct_sum([M1, M1]), M2) is None


def test_fitting_split_examples(trunc3):
    A, M1, M2, P = trunc3
    assert fitting_split(M1) is None
    assert fitting_split(M2) is None
    S = simple_modules(A)[0]
    assert fitting_split(direct_sum([S, S])) is not None
    (X, _, _), (Y, _, _) = fitting_split(direct_sum([P, S]))
    assert sorted([X.dim, Y.dim]) == [1, 3]


def test_decompose_examples(trunc3):
    A, M1, M2, P = trunc3
    D = decompose(direct_sum([P, M1, M1]))
    assert sorted(D.multiset()) == [(1, 2), (3, 1)]
    assert decompose(FDModule.zero(A)).summands == []
    D = decompose(M2)
    assert D.multiset() == [(2, 1)] and D.certified


def test_klein_syzygies_indecomposable():
    A = group_algebra_klein()
    X = simple_modules(A)[0]
    for _ in range(3):
        X = syzygy(X)
        D = decompose(X)
        assert D.multiset() == [(X.dim, 1)] and D.certified
    assert X.dim == 7


def test_end_of_local_module_is_local(trunc3):
    A, M1, M2, P = trunc3
    assert end_basis(M2).dim == 2


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 5))
def test_decompose_sum_recovers_parts(parts, seed):
    A = truncated_polynomial(GF(3), 3)
    mods = [truncated_module(A, i) for i in parts]
    D = decompose(direct_sum(mods), seed)
    expected = {}
    for i in parts:
        expected[i] = expected.get(i, 0) + 1
    assert sorted(D.multiset()) == sorted(expected.items())
    assert D.total_dim() == sum(parts)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 50), st.integers(0, 50))
def test_seed_independence(s1, s2):
    A = truncated_polynomial(GF(3), 3)
    M = direct_sum([truncated_module(A, 2), truncated_module(A, 1), truncated_module(A, 2)])
    assert same_multiset(decompose(M, s1), decompose(M, s2))


def test_canonical_key_is_iso_invariant(trunc3):
    A, M1, M2, P = trunc3
    D = dual_module(M2)
    assert canonical_key(M2) == canonical_key(FDModule(A, D.dim, D.action))
    assert canonical_key(M1) != canonical_key(M2)
