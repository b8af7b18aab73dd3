"""Invariant metric and curvature data on the reductive complement.

Everything lives on ``m = sp(V) + V (x) T`` with coordinates ordered as
``gamma_{e1,e2}, gamma_{e1,e1}, gamma_{e2,e2}, e1 (x) b_0..b_{d-1}, e2 (x) b_0..b_{d-1}``.
Tensors use the conventions

* ``G[x, y]``: the metric;
* ``A[x, y, k]``: ``alpha(E_x, E_y) = sum_k A[x, y, k] E_k``;
* ``R[x, y, z, l]``: ``R(E_x, E_y) E_z = sum_l R[x, y, z, l] E_l``;
* ``Q[x, y, z, l]``: likewise for ``Q(E_x, E_y, E_z)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactnum import (
    ZERO,
    Signature,
    contract,
    contract_sum,
    frac_array,
    identity,
    mat_inverse,
    mat_rank,
    random_vector,
    signature_of_symmetric,
    to_strings,
    trace_wrt_orthogonal_basis,
    unit,
    zeros,
)
from .lie import E1, E2, SP_BASIS, V_FORM, EnvelopingAlgebra, gamma_op, sp_coordinates
from .results import CheckResult, ConstructionError, failed, passed
from .sts import SymplecticBasis, TripleSystem, form_eval, symplectic_basis, triple_product

_EV = (E1, E2)


def m_labels(E: EnvelopingAlgebra) -> list[str]:
    return [E.algebra.labels[i] for i in E.m_indices]


def _first_mismatch(a: np.ndarray, b: np.ndarray, nidx: int):
    bad = np.asarray(a != b)
    if bad.ndim > nidx:
        bad = bad.reshape(bad.shape[:nidx] + (-1,)).any(axis=-1)
    hits = np.argwhere(bad)
    return None if not len(hits) else tuple(int(i) for i in hits[0])


def _odd_vector(E: EnvelopingAlgebra, v, t) -> np.ndarray:
    """m-coordinates of v (x) t for v in V, t in T."""
    d = E.ts.dim
    out = zeros(3 + 2 * d)
    for a in range(2):
        if v[a] != 0:
            out[3 + a * d:3 + (a + 1) * d] += v[a] * t
    return out


def odd_element(E: EnvelopingAlgebra, z, t) -> np.ndarray:
    """m-coordinates of e1 (x) z + e2 (x) t."""
    return _odd_vector(E, E1, frac_array(z)) + _odd_vector(E, E2, frac_array(t))


# ---------------------------------------------------------------------------
# metric


@dataclass(frozen=True, eq=False)
class MetricData:
    G: np.ndarray
    n_param: int
    signature: Signature
    labels: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.G.shape[0]


def metric_from_killing(E: EnvelopingAlgebra) -> np.ndarray:
    """-kappa/(4(n+2)) on sp(V), -kappa/(8(n+2)) on V(x)T, zero across, n = dim T / 2."""
    n = E.n_param
    K = E.killing
    mi = list(E.m_indices)
    G = zeros(len(mi), len(mi))
    for x, i in enumerate(mi):
        for y, j in enumerate(mi):
            if x < 3 and y < 3:
                G[x, y] = -K[i, j] / (4 * (n + 2))
            elif x >= 3 and y >= 3:
                G[x, y] = -K[i, j] / (8 * (n + 2))
    return G


def metric_closed_form(ts: TripleSystem) -> np.ndarray:
    """-1/2 tr(xi xi') on sp(V) and 1/2 <a, b>(x, y) on V(x)T."""
    d = ts.dim
    G = zeros(3 + 2 * d, 3 + 2 * d)
    for p in range(3):
        for q in range(3):
            G[p, q] = -np.trace(SP_BASIS[p] @ SP_BASIS[q]) / 2
    for a in range(2):
        for b in range(2):
            G[3 + a * d:3 + (a + 1) * d, 3 + b * d:3 + (b + 1) * d] = V_FORM[a, b] * ts.form / 2
    return G


def build_metric(E: EnvelopingAlgebra) -> MetricData:
    """The invariant metric, computed from the Killing form and certified against
    the closed form; raises ConstructionError when the two disagree."""
    G = metric_from_killing(E)
    G2 = metric_closed_form(E.ts)
    where = _first_mismatch(G, G2, 2)
    if where is not None:
        raise ConstructionError("Killing-rescaled metric disagrees with the closed form",
                                {"indices": list(where), "killing_route": str(G[where]),
                                 "closed_form": str(G2[where])})
    if mat_rank(G) != G.shape[0]:
        raise ConstructionError("metric is degenerate")
    G.setflags(write=False)
    return MetricData(G, E.n_param, signature_of_symmetric(G), m_labels(E))


# ---------------------------------------------------------------------------
# brackets restricted to m


@dataclass(frozen=True, eq=False)
class _Brackets:
    Bm: np.ndarray  # [E_x, E_y]_m
    Bh: np.ndarray  # [E_x, E_y]_h, coordinates in h
    Hm: np.ndarray  # [h_p, E_z] in m
    even: np.ndarray


def _brackets(E: EnvelopingAlgebra) -> _Brackets:
    N = E.algebra.sc
    mi, hi = list(E.m_indices), list(E.h_indices)
    even = np.array([k < 3 for k in range(len(mi))])
    return _Brackets(N[np.ix_(mi, mi, mi)], N[np.ix_(mi, mi, hi)], N[np.ix_(hi, mi, mi)], even)


# ---------------------------------------------------------------------------
# connection map


def build_alpha(E: EnvelopingAlgebra, metric: MetricData) -> np.ndarray:
    """The Levi-Civita map alpha: m x m -> m by parity cases.

    0 on (even, odd); half the m-bracket on (even, even) and (odd, odd); the
    full m-bracket on (odd, even).  Torsion, metric compatibility and
    h-invariance are verified afterwards (ConstructionError on failure).
    """
    br = _brackets(E)
    mm = len(br.even)
    A = zeros(mm, mm, mm)
    for x in range(mm):
        for y in range(mm):
            if br.even[x] and not br.even[y]:
                continue
            if br.even[x] == br.even[y]:
                A[x, y] = br.Bm[x, y] / 2
            else:
                A[x, y] = br.Bm[x, y]
    bad = [r for r in check_alpha(E, metric, A) if not r]
    if bad:
        raise ConstructionError(f"alpha violates {bad[0].name}", bad[0].witness)
    return A


def check_alpha(E: EnvelopingAlgebra, metric: MetricData, A: np.ndarray) -> list[CheckResult]:
    br = _brackets(E)
    G = metric.G
    out = []

    torsion = A - A.transpose(1, 0, 2)
    where = _first_mismatch(torsion, br.Bm, 2)
    out.append(passed("alpha_torsion") if where is None else failed(
        "alpha_torsion", {"indices": list(where), "labels": "x,y",
                          "lhs": to_strings(torsion[where]), "rhs": to_strings(br.Bm[where])}))

    compat = contract_sum((1, "xyp,pz->xyz", A, G), (1, "xzp,yp->xyz", A, G))
    hits = np.argwhere(compat != 0)
    out.append(passed("alpha_metric") if not len(hits) else failed(
        "alpha_metric", {"indices": [int(i) for i in hits[0]], "labels": "x,y,z",
                         "value": str(compat[tuple(hits[0])])}))

    # [h, alpha(X, Y)] = alpha([h, X], Y) + alpha(X, [h, Y])
    if br.Hm.shape[0]:
        lhs = contract("xyp,hpl->hxyl", A, br.Hm)
        rhs = contract_sum((1, "hxp,pyl->hxyl", br.Hm, A), (1, "hyp,xpl->hxyl", br.Hm, A))
        where = _first_mismatch(lhs, rhs, 3)
    else:
        where = None
    out.append(passed("alpha_h_invariant") if where is None else failed(
        "alpha_h_invariant", {"indices": list(where), "labels": "h,x,y"}))
    return out


# ---------------------------------------------------------------------------
# curvature


def curvature_via_alpha(E: EnvelopingAlgebra, metric: MetricData, A: np.ndarray) -> np.ndarray:
    """R(X,Y)Z = a(X, a(Y,Z)) - a(Y, a(X,Z)) - a([X,Y]_m, Z) - [[X,Y]_h, Z]."""
    br = _brackets(E)
    terms = [
        (1, "yzp,xpl->xyzl", A, A),
        (-1, "xzp,ypl->xyzl", A, A),
        (-1, "xyp,pzl->xyzl", br.Bm, A),
    ]
    if br.Hm.shape[0]:
        terms.append((-1, "xyh,hzl->xyzl", br.Bh, br.Hm))
    return contract_sum(*terms)


def curvature_closed_form(E: EnvelopingAlgebra, metric: MetricData,
                          reference: np.ndarray | None = None) -> np.ndarray:
    """Curvature from its closed expression in the triple product and the forms.

    R(xi, xi') (xi'' + a x)    = -1/4 [[xi, xi'], xi'']
    R(a x, xi) (xi' + b y)     = -1/2 (x, y)<a, b> xi + g(xi, xi') a x
    R(a x, b y) (xi + c z)     = 1/2 (gamma_{a,c}(b) (x,z) y - gamma_{b,c}(a) (y,z) x) - <a,b> c [x,y,z]

    with R(xi, a x) = -R(a x, xi).  When ``reference`` is given, any entry
    differing from it raises ConstructionError.
    """
    ts = E.ts
    d = ts.dim
    mm = 3 + 2 * d
    G = metric.G
    eye_t = identity(d)
    sp_br = zeros(3, 3, 3)
    for p in range(3):
        for q in range(3):
            sp_br[p, q] = sp_coordinates(SP_BASIS[p] @ SP_BASIS[q] - SP_BASIS[q] @ SP_BASIS[p])

    def odd(k):
        return divmod(k - 3, d)

    R = zeros(mm, mm, mm, mm)
    for x in range(3):
        for y in range(3):
            for z in range(3):
                R[x, y, z, :3] = -contract("k,kl->l", sp_br[x, y], sp_br[:, z]) / 4
    for x in range(3, mm):
        a, i = odd(x)
        for y in range(3):
            for z in range(3):
                if G[y, z] != 0:
                    R[x, y, z] = G[y, z] * unit(mm, x)
            for z in range(3, mm):
                b, j = odd(z)
                coef = -ts.form[i, j] * V_FORM[a, b] / 2
                if coef != 0:
                    R[x, y, z, y] = coef
            R[y, x] = -R[x, y]
    for x in range(3, mm):
        a, i = odd(x)
        for y in range(3, mm):
            b, j = odd(y)
            for z in range(3, mm):
                c, k = odd(z)
                ga = gamma_op(_EV[a], _EV[c]) @ _EV[b]
                gb = gamma_op(_EV[b], _EV[c]) @ _EV[a]
                R[x, y, z] = (_odd_vector(E, ga, ts.form[i, k] * eye_t[j]) / 2
                              - _odd_vector(E, gb, ts.form[j, k] * eye_t[i]) / 2
                              - V_FORM[a, b] * _odd_vector(E, _EV[c], ts.product[i, j, k]))
    if reference is not None:
        res = compare_curvatures(reference, R)
        if not res:
            raise ConstructionError("closed-form curvature disagrees with the alpha route", res.witness)
    return R


def compare_curvatures(R_alpha: np.ndarray, R_closed: np.ndarray) -> CheckResult:
    where = _first_mismatch(R_alpha, R_closed, 3)
    if where is None:
        return passed("curvature_equivalence")
    return failed("curvature_equivalence", {"indices": list(where), "labels": "x,y,z",
                                            "alpha_route": to_strings(R_alpha[where]),
                                            "closed_form": to_strings(R_closed[where])})


# ---------------------------------------------------------------------------
# Q tensor and brace product


def brace(ts: TripleSystem, x, y, z) -> np.ndarray:
    """{x, y, z} = (x, z) y + (y, z) x - [x, y, z]."""
    x, y, z = frac_array(x), frac_array(y), frac_array(z)
    return form_eval(ts, x, z) * y + form_eval(ts, y, z) * x - triple_product(ts, x, y, z)


def brace_tensor(ts: TripleSystem) -> np.ndarray:
    f, eye = ts.form, identity(ts.dim)
    return f[:, None, :, None] * eye[None, :, None, :] + f[None, :, :, None] * eye[:, None, None, :] - ts.product


def q_closed_form(E: EnvelopingAlgebra) -> np.ndarray:
    """Q(a x, b y, c z) = <a, b> c (x) {x, y, z}; zero on any sp(V) slot."""
    d = E.ts.dim
    mm = 3 + 2 * d
    Bt = brace_tensor(E.ts)
    Q = zeros(mm, mm, mm, mm)
    for a in range(2):
        for b in range(2):
            if V_FORM[a, b] == 0:
                continue
            for c in range(2):
                Q[3 + a * d:3 + (a + 1) * d, 3 + b * d:3 + (b + 1) * d,
                  3 + c * d:3 + (c + 1) * d, 3 + c * d:3 + (c + 1) * d] = V_FORM[a, b] * Bt
    return Q


def metric_part(G: np.ndarray) -> np.ndarray:
    """The tensor of g(Y, Z) X - g(X, Z) Y."""
    eye = identity(G.shape[0])
    return G[None, :, :, None] * eye[:, None, None, :] - G[:, None, :, None] * eye[None, :, None, :]


def build_q_tensor(E: EnvelopingAlgebra, metric: MetricData, R: np.ndarray) -> np.ndarray:
    """Q = R - (g(Y, -) X - g(X, -) Y), certified against the brace closed form."""
    Q = R - metric_part(metric.G)
    closed = q_closed_form(E)
    where = _first_mismatch(Q, closed, 3)
    if where is not None:
        raise ConstructionError("Q from the curvature disagrees with the brace closed form",
                                {"indices": list(where), "labels": "x,y,z",
                                 "from_curvature": to_strings(Q[where]),
                                 "closed_form": to_strings(closed[where])})
    return Q


def check_q_sp_vanishing(Q: np.ndarray) -> CheckResult:
    sp = [slice(None)] * 3
    for slot in range(3):
        idx = list(sp)
        idx[slot] = slice(0, 3)
        hits = np.argwhere(Q[tuple(idx)] != 0)
        if len(hits):
            where = [int(v) for v in hits[0]]
            return failed("q_sp_vanishing", {"slot": slot, "indices": where})
    return passed("q_sp_vanishing")


def q_nonzero_witness(Q: np.ndarray):
    hits = np.argwhere(Q != 0)
    if not len(hits):
        return None
    idx = tuple(int(v) for v in hits[0])
    return {"indices": list(idx), "value": str(Q[idx])}


# ---------------------------------------------------------------------------
# traces


def orthogonal_basis(E: EnvelopingAlgebra, sb: SymplecticBasis | None = None) -> list[np.ndarray]:
    """A g-orthogonal basis of m without isotropic vectors.

    gamma_{e1,e2}, gamma_{e1,e1} +- gamma_{e2,e2} on sp(V); on V(x)T, from a
    symplectic basis {x_i, y_i}: e1 x_i + e2 y_i, e1 y_i - e2 x_i,
    e1 y_i + e2 x_i, e1 x_i - e2 y_i.
    """
    sb = sb or symplectic_basis(E.ts)
    mm = 3 + 2 * E.ts.dim
    sp = [unit(mm, 0), unit(mm, 1) + unit(mm, 2), unit(mm, 1) - unit(mm, 2)]
    xs, ys = sb.xs, sb.ys
    odd = ([odd_element(E, x, y) for x, y in zip(xs, ys)]
           + [odd_element(E, y, -x) for x, y in zip(xs, ys)]
           + [odd_element(E, y, x) for x, y in zip(xs, ys)]
           + [odd_element(E, x, -y) for x, y in zip(xs, ys)])
    return sp + odd


def q_slice(Q: np.ndarray, X, Y=None) -> np.ndarray:
    """Matrix of Z -> Q(X, Z, Y) (Y defaults to X); ``Q`` may be prepared."""
    X = frac_array(X)
    Y = X if Y is None else frac_array(Y)
    return contract("xzyl,x,y->lz", Q, X, Y)


def trace_q_direct(E: EnvelopingAlgebra, metric: MetricData, Q: np.ndarray, X,
                   basis: list[np.ndarray] | None = None) -> Fraction:
    """tr Q(X, -, X) through an orthogonal basis of m."""
    basis = basis if basis is not None else orthogonal_basis(E)
    return trace_wrt_orthogonal_basis(q_slice(Q, X), basis, metric.G)


def trace_q_formula_parts(ts: TripleSystem, z, t, sb: SymplecticBasis | None = None) -> tuple[Fraction, Fraction]:
    """The two sub-sums of tr Q(X, -, X) for X = e1 (x) z + e2 (x) t.

    Returns (sum of triple-product pairings, sum of form products)::

        sum_i ([t,x_i,z],y_i) - ([t,y_i,z],x_i) + ([z,y_i,t],x_i) - ([z,x_i,t],y_i)
        sum_i -4(t,z)(x_i,y_i) + 2(x_i,z)(y_i,t) - 2(y_i,z)(x_i,t)
    """
    sb = sb or symplectic_basis(ts)
    z, t = frac_array(z), frac_array(t)

    def f(u, v):
        return form_eval(ts, u, v)

    def p(u, v, w):
        return triple_product(ts, u, v, w)

    brackets = ZERO
    pairings = ZERO
    for x, y in sb.pairs:
        brackets += f(p(t, x, z), y) - f(p(t, y, z), x) + f(p(z, y, t), x) - f(p(z, x, t), y)
        pairings += -4 * f(t, z) * f(x, y) + 2 * f(x, z) * f(y, t) - 2 * f(y, z) * f(x, t)
    return brackets, pairings


def trace_q_formula(ts: TripleSystem, z, t, sb: SymplecticBasis | None = None) -> Fraction:
    b, p = trace_q_formula_parts(ts, z, t, sb)
    return b + p


def trace_metric_operator(metric: MetricData, basis: list[np.ndarray], X, Y) -> Fraction:
    """tr of Z -> g(X, Z) Y, through an orthogonal basis."""
    X, Y = frac_array(X), frac_array(Y)
    op = Y[:, None] * contract("x,xz->z", X, metric.G)[None, :]
    return trace_wrt_orthogonal_basis(op, basis, metric.G)


# ---------------------------------------------------------------------------
# Ricci and the Einstein condition


def ricci(R: np.ndarray) -> np.ndarray:
    """Ric(E_j, E_k) = tr(X -> R(X, E_j) E_k)."""
    return contract("ijki->jk", R)


def scalar_curvature(metric: MetricData, Ric: np.ndarray, basis: list[np.ndarray]) -> Fraction:
    """sum_i Ric(E_i, E_i) / g(E_i, E_i) over an orthogonal basis."""
    return trace_wrt_orthogonal_basis(contract("ij,jk->ik", mat_inverse(metric.G), Ric), basis, metric.G)


@dataclass
class EinsteinCertificate:
    dim_m: int
    einstein_constant: int
    scalar_curvature: Fraction | None
    signature: Signature
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(self.checks)

    def __bool__(self) -> bool:
        return self.ok


def einstein_certify(E: EnvelopingAlgebra, metric: MetricData | None = None,
                     curvature: np.ndarray | None = None) -> EinsteinCertificate:
    """Certify Ric = (dim m - 1) g entry by entry and s = (dim m - 1) dim m.

    ``metric`` and ``curvature`` default to the constructed ones; passing
    others lets a caller certify (or refute) arbitrary data.
    """
    metric = metric or build_metric(E)
    if curvature is None:
        curvature = curvature_via_alpha(E, metric, build_alpha(E, metric))
    dim = metric.dim
    const = dim - 1
    Ric = ricci(curvature)
    checks = []

    where = _first_mismatch(Ric, Ric.T, 2)
    checks.append(passed("ricci_symmetric") if where is None else failed(
        "ricci_symmetric", {"indices": list(where), "ij": str(Ric[where]), "ji": str(Ric[where[::-1]])}))

    target = const * metric.G
    where = _first_mismatch(Ric, target, 2)
    checks.append(passed("einstein") if where is None else failed(
        "einstein", {"indices": list(where), "labels": "j,k", "ricci": str(Ric[where]),
                     "expected": str(target[where])}))

    s = None
    try:
        basis = orthogonal_basis(E)
        s = scalar_curvature(metric, Ric, basis)
        s_plain = np.trace(contract("ij,jk->ik", mat_inverse(metric.G), Ric))
    except ValueError as exc:
        checks.append(failed("scalar_curvature", detail=str(exc)))
    else:
        want = const * dim
        if s == want and s_plain == s and s > 0:
            checks.append(passed("scalar_curvature"))
        else:
            checks.append(failed("scalar_curvature", {"orthogonal_basis": str(s), "plain_trace": str(s_plain),
                                                      "expected": str(want)}))
    return EinsteinCertificate(dim, const, s, metric.signature, checks)


# ---------------------------------------------------------------------------
# bundle


@dataclass(frozen=True, eq=False)
class Geometry:
    env: EnvelopingAlgebra
    metric: MetricData
    alpha: np.ndarray
    curvature: np.ndarray
    curvature_closed: np.ndarray
    q: np.ndarray
    ricci: np.ndarray


def build_geometry(E: EnvelopingAlgebra) -> Geometry:
    """Metric, alpha, both curvature routes (certified equal), Q and Ricci."""
    metric = build_metric(E)
    A = build_alpha(E, metric)
    R = curvature_via_alpha(E, metric, A)
    Rc = curvature_closed_form(E, metric, reference=R)
    Q = build_q_tensor(E, metric, R)
    return Geometry(E, metric, A, R, Rc, Q, ricci(R))


def random_odd_elements(E: EnvelopingAlgebra, count: int, seed: int, height: int = 5):
    """Seeded random (z, t, X) with X = e1 (x) z + e2 (x) t."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        z = random_vector(rng, E.ts.dim, height)
        t = random_vector(rng, E.ts.dim, height)
        out.append((z, t, odd_element(E, z, t)))
    return out
