from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sts_einstein import catalog
from sts_einstein.catalog import (
    ACCEPTANCE_KEYS,
    EXCEPTIONAL,
    HomogeneousPoly,
    expected_dims,
    from_key,
    make_g2_type,
    make_orthogonal_type,
    make_special_type,
    make_symplectic_type,
    transvection,
)
from sts_einstein.exactnum import mat_rank, random_vector
from sts_einstein.lie import build_enveloping
from sts_einstein.sts import check_axioms, form_eval, inder_basis, is_simple

X3, X2Y, XY2, Y3 = (HomogeneousPoly.monomial(3, k) for k in range(4))
coef = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def cubic():
    return st.lists(coef, min_size=4, max_size=4).map(lambda c: HomogeneousPoly(3, tuple(c)))


# classical dimensions, independent of expected_dims
def dim_sp(k2):
    return k2 // 2 * (k2 + 1)


def dim_so(p):
    return p * (p - 1) // 2


def dim_sl(k):
    return k * k - 1


# -- transvection --------------------------------------------------------------


def test_transvection_q0_is_product():
    x, y = HomogeneousPoly.monomial(1, 0), HomogeneousPoly.monomial(1, 1)
    assert transvection(x, y, 0) == HomogeneousPoly(2, (0, 1, 0))


def test_transvection_hand_values():
    # (X^3, Y^3)_3: only i = 0 survives, (1/36) * 6 * 6 = 1
    assert transvection(X3, Y3, 3).coeffs == (1,)
    # (X^2Y, XY^2)_3: only i = 1 survives, (1/36) * (-3) * 2 * 2 = -1/3
    assert transvection(X2Y, XY2, 3).coeffs == (Fraction(-1, 3),)
    # (X, Y)_1 = 1
    assert transvection(HomogeneousPoly.monomial(1, 0), HomogeneousPoly.monomial(1, 1), 1).coeffs == (1,)


def test_transvection_above_min_is_zero():
    res = transvection(HomogeneousPoly.monomial(1, 0), X3, 2)
    assert all(c == 0 for c in res.coeffs)


def test_transvection_degree():
    assert transvection(X3, X2Y, 2).degree == 2
    assert transvection(X3, HomogeneousPoly.monomial(2, 1), 1).degree == 3


def test_homogeneous_poly_validation():
    with pytest.raises(ValueError):
        HomogeneousPoly(2, (1, 2))


@settings(max_examples=30, deadline=None)
@given(cubic(), cubic(), cubic(), coef, coef, st.integers(0, 3))
def test_transvection_bilinear(f, f2, g, a, b, q):
    lhs = transvection(f.scale(a) + f2.scale(b), g, q)
    rhs = transvection(f, g, q).scale(a) + transvection(f2, g, q).scale(b)
    assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(cubic())
def test_cubic_form_alternating(f):
    assert transvection(f, f, 3).coeffs == (0,)


# -- constructors --------------------------------------------------------------


@pytest.mark.parametrize("key", ACCEPTANCE_KEYS)
def test_catalog_instances_pass_axioms(key):
    ts = from_key(key)
    assert all(check_axioms(ts))
    assert is_simple(ts)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symplectic_dims(n):
    ts = make_symplectic_type(n)
    assert ts.dim == 2 * n
    assert len(inder_basis(ts)) == dim_sp(2 * n)
    assert build_enveloping(ts).dim == dim_sp(2 * n + 2)


@pytest.mark.parametrize("n", [1, 2])
def test_orthogonal_dims(n):
    ts = make_orthogonal_type(n)
    assert ts.dim == 4 * n
    assert len(inder_basis(ts)) == 3 + dim_so(2 * n)
    assert build_enveloping(ts).dim == dim_so(2 * n + 4)
    assert mat_rank(ts.form) == 4 * n


@pytest.mark.parametrize("n", [1, 2, 3])
def test_special_dims(n):
    ts = make_special_type(n)
    assert ts.dim == 2 * n
    assert len(inder_basis(ts)) == n * n
    assert build_enveloping(ts).dim == dim_sl(n + 2)


def test_g2_system():
    ts = make_g2_type()
    assert ts.dim == 4
    assert ts.form[0, 3] == 1 and ts.form[3, 0] == -1
    assert ts.form[1, 2] == Fraction(-1, 3)
    assert mat_rank(ts.form) == 4
    assert len(inder_basis(ts)) == 3
    assert build_enveloping(ts).dim == 14


def test_g2_product_from_transvections():
    # [X^3, Y^3, X^3] = 6 ((X^3, Y^3)_2, X^3)_1, evaluated from scratch
    ts = make_g2_type()
    inner = transvection(X3, Y3, 2)
    want = transvection(inner, X3, 1).scale(6)
    assert list(ts.product[0, 3, 0]) == list(want.coeffs)


def test_expected_dims_consistent():
    for key in ACCEPTANCE_KEYS:
        dims = expected_dims(key)
        assert dims["dim_g"] == 3 + dims["dim_inder"] + 2 * dims["dim_t"]
        assert dims["dim_m"] == 3 + 2 * dims["dim_t"]


def test_constructors_reject_bad_n():
    for make in (make_symplectic_type, make_orthogonal_type, make_special_type):
        with pytest.raises(ValueError):
            make(0)


def test_from_key_validation():
    assert from_key("g2").name == "g2"
    assert from_key("special:2").dim == 4
    for bad in ("nope", "symplectic:0", "symplectic:x", "g3"):
        with pytest.raises(KeyError):
            from_key(bad)
    with pytest.raises(KeyError):
        from_key("symplectic:5")
    assert from_key("symplectic:5", max_n=5).dim == 10


def test_catalog_metadata():
    pairs = {e.key: e.pair for e in catalog.ENTRIES}
    assert "sp_{2n+2}" in pairs["symplectic:n"] and "sp_{2n}" in pairs["symplectic:n"]
    assert pairs["g2"] == "(g_{2,2}, sl_2(R))"
    assert len(EXCEPTIONAL) == 4
    assert all(e.note == catalog.METADATA_ONLY for e in EXCEPTIONAL)
    assert [e.dim_t for e in EXCEPTIONAL] == ["14", "20", "32", "56"]


def test_random_rational_vectors_obey_g2_form():
    ts = make_g2_type()
    rng = random.Random(1)
    for _ in range(5):
        v = random_vector(rng, 4)
        f = HomogeneousPoly(3, tuple(v))
        w = random_vector(rng, 4)
        g = HomogeneousPoly(3, tuple(w))
        assert form_eval(ts, v, w) == transvection(f, g, 3).coeffs[0]
