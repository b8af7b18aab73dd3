"""Metric on m and the curvature tensor computed by two routes."""
from __future__ import annotations

from sts_einstein import catalog
from sts_einstein.exactnum import to_strings
from sts_einstein.geometry import (
    build_alpha,
    build_metric,
    check_alpha,
    compare_curvatures,
    curvature_closed_form,
    curvature_via_alpha,
    m_labels,
    q_closed_form,
    q_nonzero_witness,
)
from sts_einstein.lie import build_enveloping


def main():
    E = build_enveloping(catalog.make_g2_type())
    metric = build_metric(E)
    labels = m_labels(E)
    print("g2: m has basis", ", ".join(labels))
    print("metric diagonal of the sp part:", to_strings(metric.G.diagonal()[:3]))
    print("signature (p, q, z):", metric.signature.as_list())

    A = build_alpha(E, metric)
    for c in check_alpha(E, metric, A):
        print(f"    {c.name:<18} {c.status}")

    R = curvature_via_alpha(E, metric, A)
    Rc = curvature_closed_form(E, metric)
    print("curvature routes:", compare_curvatures(R, Rc).status, f"on {metric.dim ** 3} triples")

    for key in ("symplectic:2", "g2"):
        w = q_nonzero_witness(q_closed_form(build_enveloping(catalog.from_key(key))))
        print(f"Q tensor of {key}:", "identically zero" if w is None else f"nonzero, e.g. Q{w['indices']} = {w['value']}")


if __name__ == "__main__":
    main()
