"""Catalog triple systems and their axiom checks."""
from __future__ import annotations

from sts_einstein import catalog
from sts_einstein.exactnum import to_strings, unit
from sts_einstein.sts import check_axioms, inder_basis, is_simple, symplectic_basis, triple_product


def main():
    for key in catalog.ACCEPTANCE_KEYS:
        ts = catalog.from_key(key)
        results = check_axioms(ts)
        status = " ".join(f"{r.name}={r.status}" for r in results)
        print(f"{key:<14} dim T = {ts.dim:<2} dim inder = {len(inder_basis(ts)):<3} simple = {is_simple(ts)}  {status}")

    g2 = catalog.make_g2_type()
    x, y = unit(4, 0), unit(4, 3)
    print("\ng2 basis X^3, X^2Y, XY^2, Y^3 with form")
    for row in g2.form:
        print("   ", to_strings(row))
    print("[X^3, Y^3, X^3] =", to_strings(triple_product(g2, x, y, x)))
    sb = symplectic_basis(g2)
    print("symplectic basis valid:", sb.is_valid(g2))

    broken = catalog.make_symplectic_type(1).perturbed((0, 1, 0, 0))
    res = check_axioms(broken)[0]
    print("\nperturbed symplectic:1, axiom 1:", res.status, res.witness)


if __name__ == "__main__":
    main()
