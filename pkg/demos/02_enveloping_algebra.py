"""The enveloping Lie algebra sp(V) + inder(T) + V(x)T and its Killing form."""
from __future__ import annotations

from sts_einstein import catalog
from sts_einstein.exactnum import signature_of_symmetric
from sts_einstein.lie import build_enveloping, check_grading, check_jacobi, check_killing_consistency, reductive_split


def main():
    for key in ("symplectic:1", "special:1", "orthogonal:1", "g2"):
        E = build_enveloping(catalog.from_key(key))
        split = reductive_split(E)
        checks = [check_jacobi(E.algebra)] + check_grading(E) + check_killing_consistency(E)
        print(f"{key:<13} dim g = {E.dim:<3} dim h = {len(E.h_indices):<2} dim m = {len(split.m_indices):<3} "
              f"Killing signature = {signature_of_symmetric(E.killing).as_list()}")
        for c in checks:
            print(f"    {c.name:<24} {c.status}")

    E = build_enveloping(catalog.make_symplectic_type(1))
    print("\nsymplectic:1 basis labels:", ", ".join(E.algebra.labels))


if __name__ == "__main__":
    main()
