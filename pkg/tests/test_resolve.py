from hypothesis import given, settings, strategies as st

from stabext.algebra import simple_modules
from stabext.corpus import truncated_module, truncated_polynomial
from stabext.decomp import is_iso
from stabext.modcat import stable_dim
from stabext.resolve import (
    betti,
    classical_ext_dims,
    cosyzygy,
    detect_syzygy_period,
    ext_hat,
    ext_table,
    omega,
    syzygy,
)
from stabext.xfield import GF

A2 = truncated_polynomial(GF(2), 2)
S2 = simple_modules(A2)[0]


def test_syzygy_examples(trunc3):
    A, M1, M2, P = trunc3
    assert is_iso(syzygy(S2), S2) is not None
    assert syzygy(P).dim == 0
    assert is_iso(syzygy(M1), M2) is not None
    assert is_iso(syzygy(M2), M1) is not None
    assert is_iso(cosyzygy(S2), S2) is not None
    assert is_iso(omega(M1, 2), M1) is not None
    assert all(omega(P, n).dim == 0 for n in range(-3, 4))


def test_ext_examples(trunc3):
    A, M1, M2, P = trunc3
    assert ext_hat(M1, M1, 1) == 1
    assert [ext_hat(S2, S2, i) for i in range(-10, 11)] == [1] * 21
    assert ext_table(M1, M1, range(1, 7)).to_json() == {str(i): 1 for i in range(1, 7)}
    assert set(ext_table(P, P, range(-2, 3)).dims.values()) == {0}
    assert betti(S2, range(6)) == {i: 1 for i in range(6)}


def test_periods(trunc3, corpus):
    A, M1, M2, P = trunc3
    assert detect_syzygy_period(S2)[0] == 1
    n, iso = detect_syzygy_period(M1)
    assert n == 2 and iso.is_iso()
    assert detect_syzygy_period(corpus["qext-q2"].module("M"), 20) is None


def test_oracle_matches_stable_ext(corpus):
    nak = corpus["nak2-F3"]
    for a in ("S0", "S1", "U0"):
        for b in ("S0", "S1"):
            M, N = nak.module(a), nak.module(b)
            oracle = classical_ext_dims(M, N, 4)
            assert [oracle[i] for i in range(1, 5)] == [ext_hat(M, N, i) for i in range(1, 5)]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8))
def test_dimension_shift(a, b, i, m, n):
    A = truncated_polynomial(GF(3), 3)
    M, N = truncated_module(A, a), truncated_module(A, b)
    assert ext_hat(M, N, i) == ext_hat(omega(M, m), omega(N, n), i - m + n)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["S0", "S1", "U0", "U1"]), st.integers(1, 3))
def test_periodic_degrees_match_stable_end(corpus, name, k):
    M = corpus["nak2-F3"].module(name)
    n, _ = detect_syzygy_period(M)
    assert ext_hat(M, M, k * n) == stable_dim(M, M)
