from __future__ import annotations

import itertools
import json
import random

import numpy as np
import pytest

from sts_einstein.catalog import make_g2_type, make_orthogonal_type, make_special_type, make_symplectic_type
from sts_einstein.exactnum import contract, frac_array, identity, mat_rank, random_vector, solve, unit, zeros
from sts_einstein.sts import (
    TripleSystem,
    check_axiom_1,
    check_axiom_2,
    check_axiom_3,
    check_axiom_4,
    check_ideal,
    form_eval,
    from_json,
    inder_basis,
    inner_derivation,
    is_derivation,
    is_simple,
    symplectic_basis,
    to_json,
    triple_product,
)

STD_FORM = frac_array([[0, 1], [-1, 0]])


def _from_callable(form, prod):
    # oracle-side constructor: tabulate a Python product on basis vectors
    d = form.shape[0]
    c = zeros(d, d, d, d)
    for i, j, k in itertools.product(range(d), repeat=3):
        c[i, j, k] = prod(unit(d, i), unit(d, j), unit(d, k))
    return TripleSystem(d, form, c)


@pytest.fixture(scope="module")
def sym1():
    return make_symplectic_type(1)


# -- products and forms ------------------------------------------------------


def test_triple_product_examples(sym1):
    x, y = frac_array([1, 0]), frac_array([0, 1])
    assert list(triple_product(sym1, 0 * x, y, x)) == [0, 0]
    # [x,y,x] = (x,x)y + (y,x)x = -x
    assert list(triple_product(sym1, x, y, x)) == [-1, 0]
    # [x,x,y] = 2(x,y)x
    assert list(triple_product(sym1, x, x, y)) == [2, 0]


def test_triple_product_dimension_mismatch(sym1):
    with pytest.raises(ValueError):
        triple_product(sym1, [1, 0, 0], [0, 1], [1, 0])
    with pytest.raises(ValueError):
        form_eval(sym1, [1], [0, 1])


def test_form_eval(sym1):
    rng = random.Random(3)
    x, y = random_vector(rng, 2), random_vector(rng, 2)
    assert form_eval(sym1, x, x) == 0
    assert form_eval(sym1, [1, 0], [0, 1]) == 1
    assert form_eval(sym1, y, x) == -form_eval(sym1, x, y)
    # x_1 y_2 - x_2 y_1
    assert form_eval(sym1, x, y) == x[0] * y[1] - x[1] * y[0]


def test_triple_product_trilinear():
    ts = make_g2_type()
    rng = random.Random(11)
    x, x2, y, z = (random_vector(rng, 4) for _ in range(4))
    a = frac_array(["3/2"])[0]
    lhs = triple_product(ts, a * x + x2, y, z)
    rhs = a * triple_product(ts, x, y, z) + triple_product(ts, x2, y, z)
    assert (lhs == rhs).all()


def test_non_alternating_form_rejected():
    with pytest.raises(ValueError):
        TripleSystem(2, frac_array([[0, 1], [1, 0]]), zeros(2, 2, 2, 2))
    with pytest.raises(ValueError):
        TripleSystem(2, STD_FORM, zeros(2, 2, 2))


# -- axioms ------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_axiom_1_symplectic(n):
    assert check_axiom_1(make_symplectic_type(n))


def test_axiom_1_perturbed_witness(sym1):
    bad = sym1.perturbed((0, 1, 0, 0))
    res = check_axiom_1(bad)
    assert not res
    assert res.witness["indices"] == [0, 1, 0]
    assert res.witness["lhs"] == ["0", "0"] and res.witness["rhs"] == ["-1", "0"]


def test_axiom_1_zero_product():
    assert check_axiom_1(TripleSystem(2, STD_FORM, zeros(2, 2, 2, 2)))


def test_axiom_2_examples(sym1):
    assert check_axiom_2(sym1)
    assert check_axiom_2(make_special_type(1))
    res = check_axiom_2(TripleSystem(2, STD_FORM, zeros(2, 2, 2, 2)))
    assert not res and res.witness is not None


def test_axiom_2_special_hand_triple():
    # special type n = 1, x = y = b0, z = b1 versus x = b0, y = b1, z = b0:
    # [b0,b0,b1] = 0 (every term carries z1 or x2 or y1);
    # [b0,b1,b0]: s = 1, top = -2(z1 y2)x1 - s z1 = -3, bottom = 0
    ts = make_special_type(1)
    b0, b1 = unit(2, 0), unit(2, 1)
    assert list(triple_product(ts, b0, b0, b1)) == [0, 0]
    assert list(triple_product(ts, b0, b1, b0)) == [-3, 0]
    # axiom (2) with x = b0, y = b0, z = b1: lhs (3, 0), rhs (x,z)y - (x,y)z + 2(y,z)x = 3 b0
    lhs = triple_product(ts, b0, b0, b1) - triple_product(ts, b0, b1, b0)
    assert list(lhs) == [3, 0]


def test_axiom_3_examples(sym1):
    assert check_axiom_3(sym1)
    # cross-check with is_derivation on every d_{b_i, b_j}
    for i, j in itertools.product(range(2), repeat=2):
        assert is_derivation(sym1, inner_derivation(sym1, unit(2, i), unit(2, j)))
    assert check_axiom_3(make_g2_type())


def test_axiom_3_random_tensor_fails():
    rng = random.Random(5)
    c = zeros(2, 2, 2, 2)
    for idx in itertools.product(range(2), repeat=4):
        c[idx] = frac_array([rng.randint(-3, 3)])[0]
    res = check_axiom_3(TripleSystem(2, STD_FORM, c))
    assert not res
    i, j, u, v, w = res.witness["indices"]
    # recompute the two sides of the witness directly
    ts = TripleSystem(2, STD_FORM, c)
    x, y, bu, bv, bw = (unit(2, k) for k in (i, j, u, v, w))
    p = lambda a, b, e: triple_product(ts, a, b, e)  # noqa: E731
    lhs = p(x, y, p(bu, bv, bw))
    rhs = p(p(x, y, bu), bv, bw) + p(bu, p(x, y, bv), bw) + p(bu, bv, p(x, y, bw))
    assert (lhs != rhs).any()
    assert res.witness["lhs"] == [str(v) for v in lhs]


def test_axiom_4_examples(sym1):
    assert check_axiom_4(sym1)
    assert check_axiom_4(make_orthogonal_type(1))
    identity_like = _from_callable(STD_FORM, lambda x, y, z: z)
    assert not check_axiom_4(identity_like)


def test_all_violations_flag(sym1):
    bad = sym1.perturbed((0, 1, 0, 0))
    res = check_axiom_1(bad, all_violations=True)
    assert res.violations == [(0, 1, 0), (1, 0, 0)]


def test_axioms_random_vectors():
    # redundant spot check of the axioms away from basis vectors
    ts = make_orthogonal_type(1)
    rng = random.Random(2)
    f = lambda a, b: form_eval(ts, a, b)  # noqa: E731
    p = lambda a, b, c: triple_product(ts, a, b, c)  # noqa: E731
    for _ in range(5):
        x, y, z, u, v = (random_vector(rng, 4) for _ in range(5))
        assert (p(x, y, z) == p(y, x, z)).all()
        assert (p(x, y, z) - p(x, z, y) == f(x, z) * y - f(x, y) * z + 2 * f(y, z) * x).all()
        assert f(p(x, y, u), v) == -f(u, p(x, y, v))


# -- simplicity and ideals ------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symplectic_type_is_simple(n):
    assert is_simple(make_symplectic_type(n))


def test_simplicity_negative_cases():
    degenerate = frac_array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert not is_simple(TripleSystem(4, degenerate, make_symplectic_type(2).product))
    assert not is_simple(TripleSystem(2, STD_FORM, zeros(2, 2, 2, 2)))


def test_ideals(sym1):
    assert check_ideal(sym1, [unit(2, 0), unit(2, 1)])
    assert check_ideal(sym1, [])
    for v in ([1, 0], [0, 1], [1, 1], [2, -3]):
        assert not check_ideal(sym1, [frac_array(v)])


def test_coordinate_subspaces_not_ideals():
    ts = make_orthogonal_type(1)
    for r in range(1, 4):
        for idx in itertools.combinations(range(4), r):
            assert not check_ideal(ts, [unit(4, i) for i in idx])


# -- derivations --------------------------------------------------------------


def test_inner_derivation_examples(sym1):
    assert not inner_derivation(sym1, [0, 0], [0, 1]).any()
    d = inner_derivation(sym1, [1, 0], [0, 1])
    assert d.tolist() == [[-1, 0], [0, 1]]
    rng = random.Random(8)
    ts = make_g2_type()
    x, y = random_vector(rng, 4), random_vector(rng, 4)
    assert (inner_derivation(ts, x, y) == inner_derivation(ts, y, x)).all()


def test_is_derivation(sym1):
    assert is_derivation(sym1, zeros(2, 2))
    assert not is_derivation(sym1, identity(2))


def test_commutator_closure_identity():
    ts = make_special_type(2)
    d = ts.dim
    b = [unit(d, i) for i in range(d)]
    D = lambda x, y: inner_derivation(ts, x, y)  # noqa: E731
    for i, j, u, v in itertools.product(range(d), repeat=4):
        lhs = D(b[i], b[j]) @ D(b[u], b[v]) - D(b[u], b[v]) @ D(b[i], b[j])
        rhs = D(triple_product(ts, b[i], b[j], b[u]), b[v]) + D(b[u], triple_product(ts, b[i], b[j], b[v]))
        assert (lhs == rhs).all()


@pytest.mark.parametrize("ts, size", [
    (make_symplectic_type(1), 3),
    (make_special_type(1), 1),
    (make_g2_type(), 3),
])
def test_inder_basis_sizes(ts, size):
    mats = inder_basis(ts)
    assert len(mats) == size
    flat = np.stack([m.reshape(-1) for m in mats])
    assert mat_rank(flat) == size
    # span closed under commutators
    for a, b in itertools.product(mats, repeat=2):
        assert solve(flat.T, (a @ b - b @ a).reshape(-1)) is not None


# -- symplectic basis -----------------------------------------------------------


def _assert_symplectic(ts, sb):
    m = ts.dim // 2
    assert len(sb.pairs) == m
    for i in range(m):
        for j in range(m):
            assert form_eval(ts, sb.xs[i], sb.ys[j]) == (1 if i == j else 0)
            assert form_eval(ts, sb.xs[i], sb.xs[j]) == 0
            assert form_eval(ts, sb.ys[i], sb.ys[j]) == 0


def test_symplectic_basis_standard():
    ts = make_symplectic_type(2)
    sb = symplectic_basis(ts)
    assert [list(x) for x in sb.xs] == [list(unit(4, 0)), list(unit(4, 1))]
    assert [list(y) for y in sb.ys] == [list(unit(4, 2)), list(unit(4, 3))]


def test_symplectic_basis_doubled_form():
    base = make_symplectic_type(2)
    ts = TripleSystem(4, 2 * base.form, base.product)
    sb = symplectic_basis(ts)
    _assert_symplectic(ts, sb)
    assert sb.is_valid(ts)


def test_symplectic_basis_orthogonal_and_g2():
    for ts in (make_orthogonal_type(1), make_g2_type(), make_orthogonal_type(2)):
        sb = symplectic_basis(ts)
        _assert_symplectic(ts, sb)


def test_symplectic_basis_degenerate():
    degenerate = frac_array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    with pytest.raises(ValueError):
        symplectic_basis(TripleSystem(4, degenerate, zeros(4, 4, 4, 4)))


# -- JSON ------------------------------------------------------------------------


def test_json_round_trip_dense_and_sparse():
    ts = make_g2_type()
    for sparse in (False, True):
        back = from_json(json.loads(json.dumps(to_json(ts, sparse=sparse))))
        assert (back.product == ts.product).all() and (back.form == ts.form).all()
        assert back.name == "g2"


@pytest.mark.parametrize("payload", [
    [],
    {"dim": 2},
    {"dim": -1, "form": [], "product": []},
    {"dim": 2, "form": [["0", "1"], ["-1", "0"]], "product": [[1]]},
    {"dim": 2, "form": [["0", "1"], ["-1", "0"]], "product": [{"i": 0, "j": 5, "k": 0, "l": 0, "value": "1"}]},
    {"dim": 2, "form": [["0", "x"], ["-1", "0"]], "product": []},
    {"dim": 2, "form": [["0", 0.5], ["-1", "0"]], "product": []},
])
def test_from_json_rejects_malformed(payload):
    with pytest.raises(ValueError):
        from_json(payload)


def test_contract_agrees_with_triple_product():
    ts = make_orthogonal_type(1)
    rng = random.Random(4)
    x, y, z = (random_vector(rng, 4) for _ in range(3))
    assert (contract("ijkl,i,j,k->l", ts.product, x, y, z) == triple_product(ts, x, y, z)).all()
