"""Certify Ric = (dim m - 1) g exactly, then show a corrupted curvature being refused."""
from __future__ import annotations

from sts_einstein import catalog
from sts_einstein.geometry import build_alpha, build_metric, curvature_via_alpha, einstein_certify
from sts_einstein.lie import build_enveloping


def main():
    print(f"{'instance':<14}{'dim m':>6}{'lambda':>8}{'s':>6}  signature  certified")
    for key in catalog.ACCEPTANCE_KEYS:
        cert = einstein_certify(build_enveloping(catalog.from_key(key)))
        print(f"{key:<14}{cert.dim_m:>6}{cert.einstein_constant:>8}{str(cert.scalar_curvature):>6}  "
              f"{str(cert.signature.as_list()):<10} {cert.ok}")

    E = build_enveloping(catalog.make_symplectic_type(1))
    metric = build_metric(E)
    R = curvature_via_alpha(E, metric, build_alpha(E, metric)).copy()
    R[4, 5, 6, 4] += 1
    cert = einstein_certify(E, metric, R)
    failed = next(c for c in cert.checks if c.name == "einstein")
    print("\ncorrupted curvature:", failed.name, failed.status, failed.witness)


if __name__ == "__main__":
    main()
