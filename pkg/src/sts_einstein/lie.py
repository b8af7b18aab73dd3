"""The standard enveloping Lie algebra of a symplectic triple system.

``g(T) = sp(V) + inder(T) + V (x) T`` with ``V = R e1 + R e2``, ``<e1, e2> = 1``.
Basis order: ``gamma_{e1,e2}, gamma_{e1,e1}, gamma_{e2,e2}``, then the inner
derivation basis, then ``e1 (x) b_0 .. e1 (x) b_{d-1}, e2 (x) b_0 .. e2 (x) b_{d-1}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .exactnum import (
    ONE,
    add_integer_terms,
    as_rational,
    contract,
    frac_array,
    integer_contract,
    mat_inverse,
    mat_rank,
    row_reduce,
    to_strings,
    zeros,
)
from .results import CheckResult, ConstructionError, failed, passed
from .sts import TripleSystem, inder_basis

# <e_a, e_b>
V_FORM = frac_array([[0, 1], [-1, 0]])
E1 = frac_array([1, 0])
E2 = frac_array([0, 1])


def gamma_op(a, b) -> np.ndarray:
    """Matrix of gamma_{a,b} = <a, .> b + <b, .> a on V (columns are images)."""
    a, b = frac_array(a), frac_array(b)
    out = zeros(2, 2)
    for col in range(2):
        c = E1 if col == 0 else E2
        out[:, col] = (a @ V_FORM @ c) * b + (b @ V_FORM @ c) * a
    return out


SP_BASIS = (gamma_op(E1, E2), gamma_op(E1, E1), gamma_op(E2, E2))
SP_LABELS = ("g(e1,e2)", "g(e1,e1)", "g(e2,e2)")


def sp_coordinates(mat) -> np.ndarray:
    """Coordinates of a traceless 2x2 matrix in SP_BASIS."""
    mat = frac_array(mat)
    if mat[0, 0] + mat[1, 1] != 0:
        raise ValueError("matrix is not in sl_2")
    return frac_array([-mat[0, 0], mat[0, 1] / 2, -mat[1, 0] / 2])


def _gamma_index(a: int, b: int) -> int:
    # gamma_{e_a, e_b} for a, b in {0, 1}
    return {(0, 1): 0, (1, 0): 0, (0, 0): 1, (1, 1): 2}[(a, b)]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``sc[i, j, k]``: ``[b_i, b_j] = sum_k sc[i, j, k] b_k``."""

    dim: int
    labels: tuple[str, ...]
    sc: np.ndarray

    def __post_init__(self):
        sc = frac_array(self.sc)
        if sc.shape != (self.dim,) * 3:
            raise ValueError(f"structure constants must have shape {(self.dim,) * 3}")
        if len(self.labels) != self.dim:
            raise ValueError("one label per basis vector required")
        sc.setflags(write=False)
        object.__setattr__(self, "sc", sc)
        object.__setattr__(self, "labels", tuple(self.labels))

    def bracket(self, x, y) -> np.ndarray:
        return contract("ijk,i,j->k", self.sc, frac_array(x), frac_array(y))

    def ad(self, i: int) -> np.ndarray:
        """Matrix of ad(b_i) on column coordinate vectors."""
        return self.sc[i].T.copy()


class _SpanCoordinates:
    """Coordinates of matrices in the span of a fixed independent family."""

    def __init__(self, basis: list[np.ndarray]):
        self.shape = basis[0].shape if basis else (0, 0)
        self.rows = np.stack([b.reshape(-1) for b in basis]) if basis else zeros(0, 0)
        if basis:
            _, pivots = row_reduce(self.rows)
            self.pivots = pivots
            self.inverse = mat_inverse(self.rows[:, pivots])
        else:
            self.pivots = []

    def __call__(self, mat: np.ndarray, what: str = "") -> np.ndarray:
        flat = frac_array(mat).reshape(-1)
        if not self.pivots:
            if np.any(flat != 0):
                raise ConstructionError(f"{what} is not in the (zero) span")
            return zeros(0)
        coords = contract("p,pk->k", flat[self.pivots], self.inverse)
        if np.any(contract("k,kn->n", coords, self.rows) != flat):
            raise ConstructionError(f"{what} lies outside the inner derivation span",
                                    {"matrix": to_strings(mat)})
        return coords


@dataclass(frozen=True, eq=False)
class EnvelopingAlgebra:
    ts: TripleSystem
    algebra: LieAlgebra
    sp_indices: tuple[int, ...]
    h_indices: tuple[int, ...]
    odd_indices: tuple[int, ...]
    killing: np.ndarray
    inder: list[np.ndarray] = field(default_factory=list)
    inder_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def m_indices(self) -> tuple[int, ...]:
        return self.sp_indices + self.odd_indices

    @property
    def n_param(self) -> int:
        return self.ts.dim // 2

    def odd_index(self, a: int, i: int) -> int:
        """Index of e_{a+1} (x) b_i in g."""
        return self.odd_indices[a * self.ts.dim + i]


def build_enveloping(ts: TripleSystem) -> EnvelopingAlgebra:
    """Structure constants of g(T) from the three bracket rules."""
    d = ts.dim
    inder, pairs = inder_basis(ts, with_pairs=True)
    r = len(inder)
    coords = _SpanCoordinates(inder)
    dim = 3 + r + 2 * d
    sp = tuple(range(3))
    h = tuple(range(3, 3 + r))
    odd = tuple(range(3 + r, dim))

    def oi(a, i):
        return 3 + r + a * d + i

    N = zeros(dim, dim, dim)
    # [gamma, gamma']
    for p in range(3):
        for q in range(3):
            a, b = SP_BASIS[p], SP_BASIS[q]
            N[p, q, :3] = sp_coordinates(a @ b - b @ a)
    # [d, d']
    for p in range(r):
        for q in range(r):
            a, b = inder[p], inder[q]
            N[3 + p, 3 + q, 3:3 + r] = coords(a @ b - b @ a, f"[d{p}, d{q}]")
    # [gamma, a (x) x] = gamma(a) (x) x
    for p in range(3):
        g = SP_BASIS[p]
        for a in range(2):
            for i in range(d):
                for b in range(2):
                    if g[b, a] != 0:
                        N[p, oi(a, i), oi(b, i)] = g[b, a]
                        N[oi(a, i), p, oi(b, i)] = -g[b, a]
    # [d, a (x) x] = a (x) d(x)
    for p in range(r):
        D = inder[p]
        for a in range(2):
            for i in range(d):
                for l in range(d):
                    if D[l, i] != 0:
                        N[3 + p, oi(a, i), oi(a, l)] = D[l, i]
                        N[oi(a, i), 3 + p, oi(a, l)] = -D[l, i]
    # [a (x) x, b (x) y] = (x, y) gamma_{a,b} + <a, b> d_{x,y}
    dxy = {}
    for i in range(d):
        for j in range(d):
            dxy[i, j] = coords(ts.product[i, j].T, f"d_(b{i}, b{j})")
    for a in range(2):
        for b in range(2):
            for i in range(d):
                for j in range(d):
                    row = N[oi(a, i), oi(b, j)]
                    if ts.form[i, j] != 0:
                        row[_gamma_index(a, b)] += ts.form[i, j]
                    if V_FORM[a, b] != 0:
                        row[3:3 + r] += V_FORM[a, b] * dxy[i, j]

    labels = list(SP_LABELS)
    labels += [f"d(b{i},b{j})" for i, j in pairs]
    labels += [f"e{a + 1}*b{i}" for a in range(2) for i in range(d)]
    algebra = LieAlgebra(dim, tuple(labels), N)
    return EnvelopingAlgebra(ts, algebra, sp, h, odd, killing_form(algebra), inder, pairs)


# ---------------------------------------------------------------------------
# checks


def check_antisymmetry(L: LieAlgebra) -> CheckResult:
    bad = np.argwhere((L.sc != -L.sc.transpose(1, 0, 2)).any(axis=-1))
    if not len(bad):
        return passed("antisymmetry")
    i, j = (int(v) for v in bad[0])
    return failed("antisymmetry", {"indices": [i, j], "labels": "i,j",
                                   "ij": to_strings(L.sc[i, j]), "ji": to_strings(L.sc[j, i])})


def check_jacobi(L: LieAlgebra) -> CheckResult:
    """[[a, b], c] + [[b, c], a] + [[c, a], b] = 0 on all basis triples.

    Antisymmetry is checked first; a failure there is reported under the
    ``jacobi`` name with the antisymmetry witness.
    """
    anti = check_antisymmetry(L)
    if not anti:
        return failed("jacobi", anti.witness, detail="antisymmetry pre-check failed")
    N = L.sc
    for a in range(L.dim):
        total, _ = add_integer_terms(
            integer_contract("bl,lcm->bcm", N[a], N),
            integer_contract("bcl,lm->bcm", N, N[:, a, :]),
            integer_contract("cl,lbm->bcm", N[:, a, :], N),
        )
        hits = np.argwhere(total.any(axis=-1))
        if len(hits):
            b, c = (int(v) for v in hits[0])
            ea, eb, ec = (np.eye(1, L.dim, k, dtype=int)[0].astype(object) for k in (a, b, c))
            value = (L.bracket(L.bracket(ea, eb), ec) + L.bracket(L.bracket(eb, ec), ea)
                     + L.bracket(L.bracket(ec, ea), eb))
            return failed("jacobi", {"indices": [a, b, c], "labels": "a,b,c",
                                     "jacobiator": to_strings(value)})
    return passed("jacobi")


def killing_form(L: LieAlgebra) -> np.ndarray:
    """kappa(b_i, b_j) = tr(ad b_i ad b_j)."""
    return contract("ikl,jlk->ij", L.sc, L.sc)


def check_semisimple(L: LieAlgebra | EnvelopingAlgebra) -> bool:
    """Cartan's criterion: the Killing form is non-degenerate."""
    if isinstance(L, EnvelopingAlgebra):
        return mat_rank(L.killing) == L.dim
    return mat_rank(killing_form(L)) == L.dim


def check_grading(E: EnvelopingAlgebra) -> list[CheckResult]:
    """Z2-grading of the bracket and the odd-odd bracket rule."""
    N = E.algebra.sc
    odd = np.zeros(E.dim, dtype=bool)
    odd[list(E.odd_indices)] = True
    results = []
    bad = None
    for i in range(E.dim):
        for j in range(E.dim):
            target_odd = odd[i] != odd[j]
            wrong = [k for k in range(E.dim) if N[i, j, k] != 0 and odd[k] != target_odd]
            if wrong:
                bad = (i, j, wrong[0])
                break
        if bad:
            break
    if bad:
        results.append(failed("grading", {"indices": list(bad), "labels": "i,j,k",
                                          "value": str(N[bad])}))
    else:
        results.append(passed("grading"))

    # [e1 x, e2 y] - [e2 x, e1 y] = 2 d_{x,y} (no sp part, no odd part)
    d = E.ts.dim
    coords = _SpanCoordinates(E.inder)
    h = list(E.h_indices)
    res = passed("odd_bracket_rule")
    for i in range(d):
        for j in range(d):
            diff = N[E.odd_index(0, i), E.odd_index(1, j)] - N[E.odd_index(1, i), E.odd_index(0, j)]
            want = zeros(E.dim)
            want[h] = 2 * coords(E.ts.product[i, j].T)
            if np.any(diff != want):
                res = failed("odd_bracket_rule", {"indices": [i, j], "labels": "i,j",
                                                  "got": to_strings(diff), "want": to_strings(want)})
                break
        if not res:
            break
    results.append(res)
    return results


@dataclass(frozen=True, eq=False)
class ReductiveSplit:
    h_indices: tuple[int, ...]
    m_indices: tuple[int, ...]
    proj_h: np.ndarray
    proj_m: np.ndarray


def reductive_split(E: EnvelopingAlgebra) -> ReductiveSplit:
    """g = h + m with m the Killing-orthogonal complement of h = inder(T).

    Raises ConstructionError if kappa(h, m) != 0, [h, m] is not inside m, or
    [sp(V), V (x) T] is not inside V (x) T.
    """
    K = E.killing
    h, m = list(E.h_indices), list(E.m_indices)
    for i in h:
        for j in m:
            if K[i, j] != 0:
                raise ConstructionError("kappa(h, m) != 0",
                                        {"indices": [i, j], "value": str(K[i, j])})
    N = E.algebra.sc
    for i in h:
        for j in m:
            if any(N[i, j, k] != 0 for k in h):
                raise ConstructionError("[h, m] leaves m", {"indices": [i, j]})
    odd = set(E.odd_indices)
    for i in E.sp_indices:
        for j in E.odd_indices:
            if any(N[i, j, k] != 0 for k in range(E.dim) if k not in odd):
                raise ConstructionError("[sp(V), V(x)T] leaves V(x)T", {"indices": [i, j]})
    ph, pm = zeros(E.dim, E.dim), zeros(E.dim, E.dim)
    for i in h:
        ph[i, i] = ONE
    for i in m:
        pm[i, i] = ONE
    return ReductiveSplit(tuple(h), tuple(m), ph, pm)


def check_killing_consistency(E: EnvelopingAlgebra) -> list[CheckResult]:
    """kappa on sp(V) is (4 + dim T) tr(xi xi'); on V(x)T it is -4(n+2)<a,b>(x,y)."""
    K = E.killing
    d = E.ts.dim
    n = E.n_param
    results = []

    res = passed("killing_sp_block")
    for p in range(3):
        for q in range(3):
            want = (4 + d) * np.trace(SP_BASIS[p] @ SP_BASIS[q])
            got = K[E.sp_indices[p], E.sp_indices[q]]
            if got != want:
                res = failed("killing_sp_block", {"indices": [p, q], "got": str(got), "want": str(want)})
                break
        if not res:
            break
    results.append(res)

    res = passed("killing_odd_block")
    for a in range(2):
        for b in range(2):
            for i in range(d):
                for j in range(d):
                    want = -4 * (n + 2) * V_FORM[a, b] * E.ts.form[i, j]
                    got = K[E.odd_index(a, i), E.odd_index(b, j)]
                    if got != want:
                        res = failed("killing_odd_block", {"indices": [a, i, b, j], "labels": "a,i,b,j",
                                                           "got": str(got), "want": str(want)})
                        break
                if not res:
                    break
            if not res:
                break
        if not res:
            break
    results.append(res)

    cross = [(i, j) for i in E.sp_indices for j in E.odd_indices if K[i, j] != 0]
    cross += [(i, j) for i in E.h_indices for j in E.m_indices if K[i, j] != 0]
    if cross:
        i, j = cross[0]
        results.append(failed("killing_orthogonality", {"indices": [i, j], "value": str(K[i, j])}))
    else:
        results.append(passed("killing_orthogonality"))
    return results


# ---------------------------------------------------------------------------
# JSON


def lie_to_json(L: LieAlgebra, killing: np.ndarray | None = None) -> dict:
    data = {
        "dim": L.dim,
        "labels": list(L.labels),
        "sc": [{"i": int(i), "j": int(j), "k": int(k), "value": str(L.sc[i, j, k])}
               for i, j, k in np.argwhere(L.sc != 0)],
    }
    if killing is not None:
        data["killing"] = to_strings(killing)
    return data


def lie_from_json(data: dict) -> LieAlgebra:
    try:
        dim = int(data["dim"])
        sc = zeros(dim, dim, dim)
        for entry in data["sc"]:
            sc[entry["i"], entry["j"], entry["k"]] += as_rational(entry["value"])
        labels = data.get("labels") or [f"b{i}" for i in range(dim)]
        return LieAlgebra(dim, tuple(labels), sc)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise ValueError(f"malformed Lie algebra JSON: {exc}") from None


def lie_dumps(E: EnvelopingAlgebra) -> str:
    return json.dumps(lie_to_json(E.algebra, E.killing), indent=2)


__all__ = [
    "E1", "E2", "SP_BASIS", "SP_LABELS", "V_FORM",
    "EnvelopingAlgebra", "LieAlgebra", "ReductiveSplit",
    "build_enveloping", "check_antisymmetry", "check_grading", "check_jacobi",
    "check_killing_consistency", "check_semisimple", "gamma_op", "killing_form",
    "lie_dumps", "lie_from_json", "lie_to_json", "reductive_split", "sp_coordinates",
]
