"""Ordered verification pipeline and its deterministic JSON report.

Check groups run in dependency order.  Selecting a group pulls in its
prerequisites; once a group fails, everything downstream of it is reported
as ``skipped`` instead of being evaluated on broken data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geometry as geo
from .exactnum import contract, mat_rank, prepare, rational_str
from .lie import EnvelopingAlgebra, build_enveloping, check_grading, check_jacobi, check_killing_consistency, \
    check_semisimple, reductive_split
from .results import FAIL, PASS, SKIPPED, CheckResult, ConstructionError, failed, passed
from .sts import TripleSystem, check_axioms, is_simple, symplectic_basis

CHECKS = (
    "axioms",
    "simple",
    "jacobi",
    "grading",
    "killing-consistency",
    "metric",
    "alpha",
    "curvature-equivalence",
    "q-trace",
    "einstein",
)

PREREQUISITES = {
    "axioms": (),
    "simple": ("axioms",),
    "jacobi": ("simple",),
    "grading": ("simple",),
    "killing-consistency": ("simple",),
    "metric": ("jacobi", "grading", "killing-consistency"),
    "alpha": ("metric",),
    "curvature-equivalence": ("alpha",),
    "q-trace": ("curvature-equivalence",),
    "einstein": ("curvature-equivalence",),
}

DEFAULT_SAMPLES = 100
DEFAULT_SEED = 0


def close_selection(selected) -> list[str]:
    """The selected groups plus all their prerequisites, in pipeline order."""
    unknown = [c for c in selected if c not in PREREQUISITES]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    keep = set()
    stack = list(selected)
    while stack:
        c = stack.pop()
        if c not in keep:
            keep.add(c)
            stack.extend(PREREQUISITES[c])
    return [c for c in CHECKS if c in keep]


@dataclass
class GroupResult:
    group: str
    status: str
    checks: list[CheckResult] = field(default_factory=list)


@dataclass
class Report:
    instance: str
    dim_t: int
    dim_m: int
    seed: int
    samples: int
    groups: list[GroupResult] = field(default_factory=list)
    signature: list[int] | None = None
    einstein_constant: int | None = None
    scalar_curvature: Fraction | None = None
    q_witness: dict | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(g.status == PASS for g in self.groups)

    def checks(self) -> list[CheckResult]:
        out = []
        for g in self.groups:
            if g.status == SKIPPED:
                out.append(CheckResult(g.group, SKIPPED))
            else:
                out.extend(g.checks)
        return out

    def to_json(self) -> dict:
        s = self.scalar_curvature
        if s is not None:
            s = int(s) if s.denominator == 1 else rational_str(s)
        data = {
            "instance": self.instance,
            "dim_m": self.dim_m,
            "signature": self.signature,
            "einstein_constant": self.einstein_constant,
            "scalar_curvature": s,
            "checks": [c.to_json() for c in self.checks()],
            "seed": self.seed,
            "samples": self.samples,
        }
        if self.q_witness is not None:
            data["q_nonzero_witness"] = self.q_witness
        if self.flags:
            data["flags"] = list(self.flags)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def table(self) -> str:
        rows = [(c.name, c.status, _short_witness(c)) for c in self.checks()]
        width = max([len(r[0]) for r in rows] + [5])
        lines = [f"instance: {self.instance}  dim T = {self.dim_t}  dim m = {self.dim_m}"]
        if self.signature is not None:
            lines.append(f"signature (+, -, 0): {tuple(self.signature)}")
        if self.einstein_constant is not None:
            lines.append(f"Ric = {self.einstein_constant} g   scalar curvature = {self.scalar_curvature}")
        if self.q_witness is not None:
            lines.append(f"Q nonzero at {self.q_witness['indices']} (value {self.q_witness['value']})")
        for flag in self.flags:
            lines.append(f"note: {flag}")
        lines.append("")
        lines.append(f"{'check':<{width}}  status   witness")
        lines.append(f"{'-' * width}  -------  -------")
        for name, status, wit in rows:
            lines.append(f"{name:<{width}}  {status:<7}  {wit}")
        lines.append("")
        lines.append("ALL PASS" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"


def _short_witness(c: CheckResult) -> str:
    if c.witness is None:
        return c.detail
    text = json.dumps(c.witness, separators=(",", ":"))
    return text if len(text) <= 80 else text[:77] + "..."


class _State:
    """Lazily built intermediate objects shared by the groups."""

    def __init__(self, ts: TripleSystem):
        self.ts = ts
        self.E: EnvelopingAlgebra | None = None
        self.metric = None
        self.alpha = None
        self.R = None
        self.Q = None
        self.certificate = None


def _run_axioms(st: _State, samples, seed):
    return check_axioms(st.ts)


def _run_simple(st: _State, samples, seed):
    ok = is_simple(st.ts)
    if not ok:
        return [failed("simple", {"form_rank": mat_rank(st.ts.form), "dim": st.ts.dim,
                                  "product_nonzero": bool(np.any(st.ts.product != 0))})]
    st.E = build_enveloping(st.ts)
    reductive_split(st.E)
    return [passed("simple"), passed("reductive_split")]


def _run_jacobi(st: _State, samples, seed):
    return [check_jacobi(st.E.algebra)]


def _run_grading(st: _State, samples, seed):
    return check_grading(st.E)


def _run_killing(st: _State, samples, seed):
    res = check_killing_consistency(st.E)
    res.append(passed("semisimple") if check_semisimple(st.E) else failed("semisimple", detail="Killing form degenerate"))
    return res


def _run_metric(st: _State, samples, seed):
    st.metric = geo.build_metric(st.E)
    return [passed("metric_two_routes")]


def _run_alpha(st: _State, samples, seed):
    st.alpha = geo.build_alpha(st.E, st.metric)
    return geo.check_alpha(st.E, st.metric, st.alpha)


def _run_curvature(st: _State, samples, seed):
    st.R = geo.curvature_via_alpha(st.E, st.metric, st.alpha)
    closed = geo.curvature_closed_form(st.E, st.metric)
    res = [geo.compare_curvatures(st.R, closed)]
    anti = st.R + st.R.transpose(1, 0, 2, 3)
    hits = np.argwhere(anti != 0)
    res.append(passed("curvature_antisymmetry") if not len(hits) else failed(
        "curvature_antisymmetry", {"indices": [int(v) for v in hits[0]]}))
    return res


def check_q_trace(E: EnvelopingAlgebra, metric: geo.MetricData, Q: np.ndarray,
                  samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Trace identities of g and Q: basis pairs, odd basis vectors, random X, polarization."""
    G = metric.G
    mm = G.shape[0]
    d = E.ts.dim
    sb = symplectic_basis(E.ts)
    basis = geo.orthogonal_basis(E, sb)
    eye = np.eye(mm, dtype=int)
    Qp = prepare(Q)
    out = []

    bad = None
    for x in range(mm):
        for y in range(mm):
            got = geo.trace_metric_operator(metric, basis, eye[x], eye[y])
            if got != G[x, y]:
                bad = {"indices": [x, y], "trace": str(got), "g": str(G[x, y])}
                break
        if bad:
            break
    out.append(passed("trace_metric") if bad is None else failed("trace_metric", bad))

    def both_routes(z, t, X):
        direct = geo.trace_q_direct(E, metric, Qp, X, basis)
        plain = np.trace(geo.q_slice(Qp, X))
        formula = geo.trace_q_formula(E.ts, z, t, sb)
        return direct, plain, formula

    bad = None
    for k in range(2 * d):
        z = eye[k, 3:3 + d]
        t = eye[k, 3 + d:]
        direct, plain, formula = both_routes(z, t, eye[3 + k])
        if direct != 0 or plain != 0 or formula != 0:
            bad = {"odd_index": k, "direct": str(direct), "plain": str(plain), "formula": str(formula)}
            break
    out.append(passed("trace_q_odd_basis") if bad is None else failed("trace_q_odd_basis", bad))

    bad = None
    for n, (z, t, X) in enumerate(geo.random_odd_elements(E, samples, seed)):
        direct, plain, formula = both_routes(z, t, X)
        if direct != 0 or plain != 0 or formula != 0:
            bad = {"sample": n, "seed": seed, "z": [str(v) for v in z], "t": [str(v) for v in t],
                   "direct": str(direct), "formula": str(formula)}
            break
    out.append(passed("trace_q_random", detail=f"{samples} samples, seed {seed}") if bad is None
               else failed("trace_q_random", bad))

    pol = contract("xzyz->xy", Q)
    hits = np.argwhere(pol != 0)
    out.append(passed("trace_q_polarized") if not len(hits) else failed(
        "trace_q_polarized", {"indices": [int(v) for v in hits[0]], "value": str(pol[tuple(hits[0])])}))
    return out


def _run_q_trace(st: _State, samples, seed):
    st.Q = geo.build_q_tensor(st.E, st.metric, st.R)
    res = [passed("q_decomposition"), geo.check_q_sp_vanishing(st.Q)]
    return res + check_q_trace(st.E, st.metric, st.Q, samples, seed)


def _run_einstein(st: _State, samples, seed):
    cert = geo.einstein_certify(st.E, st.metric, st.R)
    st.certificate = cert
    return cert.checks


_RUNNERS = {
    "axioms": _run_axioms,
    "simple": _run_simple,
    "jacobi": _run_jacobi,
    "grading": _run_grading,
    "killing-consistency": _run_killing,
    "metric": _run_metric,
    "alpha": _run_alpha,
    "curvature-equivalence": _run_curvature,
    "q-trace": _run_q_trace,
    "einstein": _run_einstein,
}


def verify(ts: TripleSystem, checks=CHECKS, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
           instance: str | None = None) -> Report:
    """Run the selected check groups (closed under prerequisites) on ``ts``."""
    selected = close_selection(checks)
    report = Report(instance or ts.name or "<unnamed>", ts.dim, 3 + 2 * ts.dim, seed, samples)
    if ts.dim == 2:
        report.flags.append("dim T = 2: simplicity taken from the non-degeneracy criterion without the dim > 2 hypothesis")
    st = _State(ts)
    status: dict[str, str] = {}
    for group in selected:
        if any(status.get(p) != PASS for p in PREREQUISITES[group]):
            status[group] = SKIPPED
            report.groups.append(GroupResult(group, SKIPPED))
            continue
        try:
            res = list(_RUNNERS[group](st, samples, seed))
        except ConstructionError as exc:
            res = [failed(group, exc.witness, detail=str(exc))]
        except ValueError as exc:
            res = [failed(group, detail=str(exc))]
        status[group] = PASS if all(res) else FAIL
        report.groups.append(GroupResult(group, status[group], res))

    if st.metric is not None:
        report.signature = st.metric.signature.as_list()
    cert = st.certificate
    if cert is not None and status.get("einstein") == PASS:
        report.einstein_constant = cert.einstein_constant
        report.scalar_curvature = cert.scalar_curvature
    if st.Q is not None:
        report.q_witness = geo.q_nonzero_witness(st.Q)
    return report
