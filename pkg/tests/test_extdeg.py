import pytest
from hypothesis import given, strategies as st

from stabext.extdeg import (
    classify_dims,
    cone_ext_deg,
    cone_layers,
    ext_deg,
    fed_estimate,
    perp,
    perp_tail,
    two_of_three_check,
)
from stabext.modcat import direct_sum, projective_cover
from stabext.resolve import syzygy


def test_ext_deg_examples(trunc3, corpus):
    A, M1, M2, P = trunc3
    assert ext_deg(P).verdict == "MinusInfinity"
    r = ext_deg(M1, 20, 8)
    assert (r.verdict, r.period, r.stable_endo) == ("Infinite", 2, 1)
    r = ext_deg(corpus["qext-q2"].module("M"), 20, 10)
    assert (r.verdict, r.m) == ("Finite", 1)
    assert str(r) == "Finite(1)"


def test_classify_dims():
    assert classify_dims([0] * 10, 10, 8) == ("Finite", 0)
    assert classify_dims([1, 0, 0], 3, 2) == ("Finite", 1)
    assert classify_dims([1, 0, 1], 3, 1) == ("Unknown", None)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=25), st.integers(1, 10))
def test_classify_guard_property(dims, guard):
    window = len(dims)
    verdict, m = classify_dims(dims, window, guard)
    if verdict == "Finite":
        assert not any(dims[m:]) and window - m >= guard
        assert m == 0 or dims[m - 1]


def test_perp_examples(trunc3, corpus):
    A, M1, M2, P = trunc3
    assert perp(P, M1).holds
    res = perp(M1, M1)
    assert not res.holds and res.witness == perp_tail(20)[0]
    M = corpus["qext-q2"].module("M")
    assert perp(M, M).holds


def test_two_of_three_examples(trunc3, corpus):
    A, M1, M2, P = trunc3
    split = two_of_three_check(M1, direct_sum([M1, P]), P, M2)
    assert split["consistent"]
    res = two_of_three_check(syzygy(M1), projective_cover(M1).P, M1, M1)
    assert res["consistent"] and res["vacuous"]
    assert res["holds"] == {"X": False, "Y": True, "Z": False}


def test_fed_examples(trunc3, corpus):
    A, M1, M2, P = trunc3
    assert fed_estimate([P])["estimate"] == "MinusInfinity"
    est = fed_estimate([M1, M2, P])
    assert est["estimate"] is None and est["infinite"] == 2


def test_cone_examples(trunc3, corpus):
    A, M1, M2, P = trunc3
    layers = cone_layers(M1, 1)
    assert [X.dim for X in layers[0].members] == [1]
    assert [X.dim for X in layers[1].members] == [2]
    M = corpus["qext-q2"].module("M")
    layers = cone_layers(M, 2)
    assert [len(L.members) for L in layers] == [1, 1, 2]
    assert str(cone_ext_deg(M, 0, layers=layers)) == "Finite(1)"
    assert str(cone_ext_deg(M, 1, layers=layers)) == "Finite(3)"
    assert str(cone_ext_deg(M, 2, layers=layers)) == "Finite(5)"


def test_bad_side(trunc3):
    A, M1, M2, P = trunc3
    with pytest.raises(ValueError):
        two_of_three_check(M1, M1, M1, M1, side="middle")
