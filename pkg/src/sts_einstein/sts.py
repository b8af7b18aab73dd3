"""Symplectic triple systems stored as structure tensors.

A system on ``T = R^dim`` is given by the Gram matrix ``form[i, j] = (b_i, b_j)``
of its alternating form and the tensor ``product[i, j, k, l]`` with
``[b_i, b_j, b_k] = sum_l product[i, j, k, l] b_l``.  Every identity is swept
over basis index tuples; multilinearity makes that equivalent to the
universally quantified statement.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .exactnum import (
    ONE,
    add_integer_terms,
    as_rational,
    bilinear,
    contract,
    frac_array,
    identity,
    independent_subset,
    integer_contract,
    is_zero,
    mat_rank,
    prepare,
    to_strings,
    unit,
    zeros,
)
from .results import CheckResult, failed, passed


@dataclass(frozen=True, eq=False)
class TripleSystem:
    dim: int
    form: np.ndarray
    product: np.ndarray
    name: str = ""

    def __post_init__(self):
        form = frac_array(self.form)
        product = frac_array(self.product)
        d = self.dim
        if d <= 0:
            raise ValueError("dimension must be positive")
        if form.shape != (d, d):
            raise ValueError(f"form must be {d}x{d}, got {form.shape}")
        if product.shape != (d, d, d, d):
            raise ValueError(f"product tensor must have shape {(d,) * 4}, got {product.shape}")
        if np.any(form != -form.T):
            raise ValueError("form is not alternating")
        form.setflags(write=False)
        product.setflags(write=False)
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "product", product)

    @cached_property
    def prepared_product(self):
        return prepare(self.product)

    def basis(self) -> list[np.ndarray]:
        return [unit(self.dim, i) for i in range(self.dim)]

    def perturbed(self, index: tuple[int, int, int, int], delta=1, name: str | None = None) -> "TripleSystem":
        """Copy with one structure constant shifted by ``delta``."""
        product = self.product.copy()
        product[index] += as_rational(delta)
        return TripleSystem(self.dim, self.form, product, name if name is not None else self.name + "*")


def _check_vec(ts: TripleSystem, v, label: str) -> np.ndarray:
    v = frac_array(v)
    if v.shape != (ts.dim,):
        raise ValueError(f"{label} has length {v.shape}, expected {ts.dim}")
    return v


def triple_product(ts: TripleSystem, x, y, z) -> np.ndarray:
    x, y, z = (_check_vec(ts, v, n) for v, n in ((x, "x"), (y, "y"), (z, "z")))
    return contract("ijkl,i,j,k->l", ts.prepared_product, x, y, z)


def form_eval(ts: TripleSystem, x, y):
    return bilinear(ts.form, _check_vec(ts, x, "x"), _check_vec(ts, y, "y"))


# ---------------------------------------------------------------------------
# axiom sweeps


def _sweep(name: str, lhs: np.ndarray, rhs: np.ndarray, nidx: int, labels: str,
           all_violations: bool, vector_sides: bool = True) -> CheckResult:
    """Compare two arrays whose leading ``nidx`` axes are the basis indices."""
    bad = np.asarray(lhs != rhs)
    if bad.ndim > nidx:
        bad = bad.reshape(bad.shape[:nidx] + (-1,)).any(axis=-1)
    hits = np.argwhere(bad)
    if not len(hits):
        return passed(name)
    first = tuple(int(i) for i in hits[0])
    side = (lambda a: to_strings(a[first])) if vector_sides else (lambda a: str(a[first]))
    witness = {"indices": list(first), "labels": labels, "lhs": side(lhs), "rhs": side(rhs)}
    result = failed(name, witness, detail=f"{len(hits)} violating tuple(s)")
    if all_violations:
        result.violations = [tuple(int(i) for i in h) for h in hits]
    return result


def check_axiom_1(ts: TripleSystem, all_violations: bool = False) -> CheckResult:
    """[x, y, z] = [y, x, z]."""
    c = ts.product
    return _sweep("axiom_1", c, c.transpose(1, 0, 2, 3), 3, "i,j,k", all_violations)


def check_axiom_2(ts: TripleSystem, all_violations: bool = False) -> CheckResult:
    """[x, y, z] - [x, z, y] = (x, z) y - (x, y) z + 2 (y, z) x."""
    c, f = ts.product, ts.form
    eye = identity(ts.dim)
    lhs = c - c.transpose(0, 2, 1, 3)
    rhs = (f[:, None, :, None] * eye[None, :, None, :]
           - f[:, :, None, None] * eye[None, None, :, :]
           + 2 * f[None, :, :, None] * eye[:, None, None, :])
    return _sweep("axiom_2", lhs, rhs, 3, "i,j,k", all_violations)


def check_axiom_3(ts: TripleSystem, all_violations: bool = False) -> CheckResult:
    """d_{x,y} = [x, y, .] is a derivation of the triple product.

    Indices are (i, j, u, v, w) for x = b_i, y = b_j.  The sweep is chunked
    over i to bound memory.
    """
    c = ts.product
    hits: list[tuple[int, ...]] = []
    first = None
    for i in range(ts.dim):
        ci = c[i]
        diff, _ = add_integer_terms(
            integer_contract("uvwm,jml->juvwl", c, ci),
            integer_contract("jum,mvwl->juvwl", ci, c),
            integer_contract("jvm,umwl->juvwl", ci, c),
            integer_contract("jwm,uvml->juvwl", ci, c),
            signs=(1, -1, -1, -1),
        )
        bad = diff.any(axis=-1)
        for idx in np.argwhere(bad):
            tup = (i,) + tuple(int(k) for k in idx)
            if first is None:
                first = tup
            hits.append(tup)
            if not all_violations:
                break
        if hits and not all_violations:
            break
    if not hits:
        return passed("axiom_3")
    tup = first
    i, j, u, v, w = tup
    x, y = unit(ts.dim, i), unit(ts.dim, j)
    bu, bv, bw = unit(ts.dim, u), unit(ts.dim, v), unit(ts.dim, w)
    lhs_vec = triple_product(ts, x, y, triple_product(ts, bu, bv, bw))
    rhs_vec = (triple_product(ts, triple_product(ts, x, y, bu), bv, bw)
               + triple_product(ts, bu, triple_product(ts, x, y, bv), bw)
               + triple_product(ts, bu, bv, triple_product(ts, x, y, bw)))
    witness = {"indices": list(tup), "labels": "i,j,u,v,w",
               "lhs": to_strings(lhs_vec), "rhs": to_strings(rhs_vec)}
    result = failed("axiom_3", witness)
    if all_violations:
        result.violations = hits
        result.detail = f"{len(hits)} violating tuple(s)"
    return result


def check_axiom_4(ts: TripleSystem, all_violations: bool = False) -> CheckResult:
    """([x, y, u], v) = -(u, [x, y, v])."""
    c, f = ts.product, ts.form
    lhs = contract("ijul,lv->ijuv", c, f)
    rhs = -contract("ul,ijvl->ijuv", f, c)
    return _sweep("axiom_4", lhs, rhs, 4, "i,j,u,v", all_violations, vector_sides=False)


def check_axioms(ts: TripleSystem, all_violations: bool = False) -> list[CheckResult]:
    return [check(ts, all_violations) for check in
            (check_axiom_1, check_axiom_2, check_axiom_3, check_axiom_4)]


# ---------------------------------------------------------------------------
# ideals, simplicity, derivations


def is_simple(ts: TripleSystem) -> bool:
    """Non-degenerate form and non-zero product.

    Only meaningful for systems satisfying the axioms, where non-degeneracy
    of the form is equivalent to the absence of proper ideals.
    """
    return mat_rank(ts.form) == ts.dim and not is_zero(ts.product)


def check_ideal(ts: TripleSystem, subspace) -> bool:
    """Whether span(subspace) is closed under [T, T, I] and [T, I, T]."""
    vecs = [_check_vec(ts, v, "subspace vector") for v in subspace]
    if not vecs:
        return True
    S = np.stack(vecs)
    k = mat_rank(S)
    images = []
    for s in vecs:
        images.append(contract("ijkl,k->ijl", ts.product, s).reshape(-1, ts.dim))
        images.append(contract("ijkl,j->ikl", ts.product, s).reshape(-1, ts.dim))
    return mat_rank(np.concatenate([S] + images, axis=0)) == k


def inner_derivation(ts: TripleSystem, x, y) -> np.ndarray:
    """Matrix of z -> [x, y, z] acting on column vectors."""
    x, y = _check_vec(ts, x, "x"), _check_vec(ts, y, "y")
    return contract("ijkl,i,j->lk", ts.product, x, y)


def is_derivation(ts: TripleSystem, d) -> bool:
    d = frac_array(d)
    if d.shape != (ts.dim, ts.dim):
        raise ValueError("derivation matrix has the wrong shape")
    c = ts.product
    lhs = contract("uvwm,lm->uvwl", c, d)
    rhs = (contract("mu,mvwl->uvwl", d, c)
           + contract("mv,umwl->uvwl", d, c)
           + contract("mw,uvml->uvwl", d, c))
    return not np.any(lhs != rhs)


def inder_basis(ts: TripleSystem, with_pairs: bool = False):
    """Maximal independent subset of {d_{b_i, b_j} : i <= j}, in lexicographic order.

    With ``with_pairs`` the index pairs (i, j) of the kept derivations are
    returned alongside the matrices.
    """
    pairs = [(i, j) for i in range(ts.dim) for j in range(i, ts.dim)]
    mats = [ts.product[i, j].T.copy() for i, j in pairs]
    keep = independent_subset([m.reshape(-1) for m in mats])
    basis = [mats[k] for k in keep]
    if with_pairs:
        return basis, [pairs[k] for k in keep]
    return basis


# ---------------------------------------------------------------------------
# symplectic basis


@dataclass
class SymplecticBasis:
    pairs: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)

    @property
    def xs(self) -> list[np.ndarray]:
        return [x for x, _ in self.pairs]

    @property
    def ys(self) -> list[np.ndarray]:
        return [y for _, y in self.pairs]

    def is_valid(self, ts: TripleSystem) -> bool:
        m = len(self.pairs)
        if 2 * m != ts.dim:
            return False
        for i in range(m):
            for j in range(m):
                if form_eval(ts, self.xs[i], self.ys[j]) != (ONE if i == j else 0):
                    return False
                if form_eval(ts, self.xs[i], self.xs[j]) != 0:
                    return False
                if form_eval(ts, self.ys[i], self.ys[j]) != 0:
                    return False
        return True


def symplectic_basis(ts: TripleSystem) -> SymplecticBasis:
    """Symplectic Gram-Schmidt on the standard basis.

    The pivot pair is the lexicographically first (i, j), i < j, among the
    remaining vectors with non-zero pairing; the hyperbolic plane it spans is
    projected out of the rest.
    """
    if mat_rank(ts.form) != ts.dim:
        raise ValueError("form is degenerate; no symplectic basis exists")
    work = ts.basis()
    out = SymplecticBasis()
    while work:
        pivot = next(((i, j) for i, j in itertools.combinations(range(len(work)), 2)
                      if form_eval(ts, work[i], work[j]) != 0), None)
        if pivot is None:
            raise ValueError("form is degenerate on the remaining subspace")
        i, j = pivot
        x = work[i]
        y = work[j] / form_eval(ts, work[i], work[j])
        out.pairs.append((x, y))
        rest = [w for k, w in enumerate(work) if k not in pivot]
        work = [w - form_eval(ts, w, y) * x + form_eval(ts, w, x) * y for w in rest]
    return out


# ---------------------------------------------------------------------------
# JSON


def to_json(ts: TripleSystem, sparse: bool = False) -> dict:
    data: dict = {"dim": ts.dim, "form": to_strings(ts.form)}
    if sparse:
        data["product"] = [
            {"i": int(i), "j": int(j), "k": int(k), "l": int(l), "value": str(ts.product[i, j, k, l])}
            for i, j, k, l in np.argwhere(ts.product != 0)
        ]
    else:
        data["product"] = to_strings(ts.product)
    if ts.name:
        data["name"] = ts.name
    return data


def from_json(data: dict) -> TripleSystem:
    """Parse the dense or sparse JSON encoding; raises ValueError when malformed."""
    if not isinstance(data, dict):
        raise ValueError("triple system JSON must be an object")
    try:
        dim = data["dim"]
        form = data["form"]
        product = data["product"]
    except KeyError as exc:
        raise ValueError(f"missing key {exc}") from None
    if not isinstance(dim, int) or isinstance(dim, bool) or dim <= 0:
        raise ValueError("dim must be a positive integer")
    try:
        if isinstance(product, list) and product and isinstance(product[0], dict):
            tensor = zeros(dim, dim, dim, dim)
            for entry in product:
                idx = tuple(entry[key] for key in "ijkl")
                if not all(isinstance(v, int) and 0 <= v < dim for v in idx):
                    raise ValueError(f"index out of range in sparse entry {entry}")
                tensor[idx] += as_rational(entry["value"])
        elif product == []:
            tensor = zeros(dim, dim, dim, dim)
        else:
            tensor = frac_array(product)
        return TripleSystem(dim, frac_array(form), tensor, str(data.get("name", "")))
    except (TypeError, KeyError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed triple system: {exc}") from None


def dumps(ts: TripleSystem, sparse: bool = False) -> str:
    return json.dumps(to_json(ts, sparse), indent=2)


def load(path: str | Path) -> TripleSystem:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid JSON: {exc}") from None
    return from_json(data)
