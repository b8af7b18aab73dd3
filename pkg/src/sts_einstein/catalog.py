"""Split simple symplectic triple systems with explicit products.

Basis conventions:

* symplectic and special type on ``R^{2n}``: block order ``(x_1..x_n | x_{n+1}..x_{2n})``
  with ``(x, y) = x_1.y_2 - x_2.y_1``;
* orthogonal type on ``R^{4n}``: stacked ``(x | x')`` with ``x, x' in R^{2n}`` and
  ``b`` the neutral form with Gram matrix ``[[0, I_n], [I_n, 0]]``;
* the binary-cubic system on ``V_3``: monomials ``X^3, X^2Y, XY^2, Y^3``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exactnum import ONE, ZERO, as_rational, frac_array, unit, zeros
from .sts import TripleSystem

DEFAULT_MAX_N = 4


@dataclass(frozen=True)
class HomogeneousPoly:
    """``sum_k coeffs[k] X^(degree-k) Y^k``."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if self.degree < 0 or len(coeffs) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPoly":
        return cls(degree, (ZERO,) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, k: int) -> "HomogeneousPoly":
        """X^(degree-k) Y^k."""
        return cls(degree, tuple(ONE if i == k else ZERO for i in range(degree + 1)))

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return HomogeneousPoly(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, s) -> "HomogeneousPoly":
        s = as_rational(s)
        return HomogeneousPoly(self.degree, tuple(s * a for a in self.coeffs))

    def __mul__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return HomogeneousPoly(self.degree + other.degree, tuple(out))

    def derivative(self, nx: int, ny: int) -> "HomogeneousPoly":
        """d^(nx+ny) / dX^nx dY^ny; zero polynomial of degree 0 if nx + ny > degree."""
        deg = self.degree - nx - ny
        if deg < 0:
            return HomogeneousPoly.zero(0)
        out = [ZERO] * (deg + 1)
        for k, a in enumerate(self.coeffs):
            px, py = self.degree - k, k
            if a and px >= nx and py >= ny:
                out[k - ny] += a * math.perm(px, nx) * math.perm(py, ny)
        return HomogeneousPoly(deg, tuple(out))

    def as_vector(self) -> np.ndarray:
        return frac_array(list(self.coeffs))


def transvection(f: HomogeneousPoly, g: HomogeneousPoly, q: int) -> HomogeneousPoly:
    """The q-th transvectant of binary forms of degrees n = deg f, m = deg g.

    ((n-q)!/n!) ((m-q)!/m!) sum_i (-1)^i C(q,i) d^q f/dX^(q-i)dY^i * d^q g/dX^i dY^(q-i);
    zero when q > min(n, m).
    """
    n, m = f.degree, g.degree
    if q < 0:
        raise ValueError("q must be non-negative")
    if q > min(n, m):
        return HomogeneousPoly.zero(max(n + m - 2 * q, 0))
    total = HomogeneousPoly.zero(n + m - 2 * q)
    for i in range(q + 1):
        term = f.derivative(q - i, i) * g.derivative(i, q - i)
        total = total + term.scale((-1) ** i * math.comb(q, i))
    norm = Fraction(math.factorial(n - q), math.factorial(n)) * Fraction(math.factorial(m - q), math.factorial(m))
    return total.scale(norm)


# ---------------------------------------------------------------------------
# constructors


def _tensor(dim: int, product: Callable) -> np.ndarray:
    c = zeros(dim, dim, dim, dim)
    basis = [unit(dim, i) for i in range(dim)]
    for i, j, k in itertools.product(range(dim), repeat=3):
        c[i, j, k] = product(basis[i], basis[j], basis[k])
    return c


def _standard_form(n: int) -> np.ndarray:
    form = zeros(2 * n, 2 * n)
    for i in range(n):
        form[i, n + i] = ONE
        form[n + i, i] = -ONE
    return form


def make_symplectic_type(n: int) -> TripleSystem:
    """[x, y, z] = (x, z) y + (y, z) x on R^{2n}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    form = _standard_form(n)

    def prod(x, y, z):
        return (x @ form @ z) * y + (y @ form @ z) * x

    return TripleSystem(2 * n, form, _tensor(2 * n, prod), f"symplectic:{n}")


def make_orthogonal_type(n: int) -> TripleSystem:
    if n < 1:
        raise ValueError("n must be >= 1")
    half = 2 * n
    b = zeros(half, half)
    for i in range(n):
        b[i, n + i] = ONE
        b[n + i, i] = ONE

    def B(u, v):
        return u @ b @ v

    def split(v):
        return v[:half], v[half:]

    form = zeros(4 * n, 4 * n)
    basis = [unit(4 * n, i) for i in range(4 * n)]
    for i, j in itertools.product(range(4 * n), repeat=2):
        (x, xp), (y, yp) = split(basis[i]), split(basis[j])
        form[i, j] = Fraction(1, 2) * (B(x, yp) - B(xp, y))

    def prod(X, Y, Z):
        (x, xp), (y, yp), (z, zp) = split(X), split(Y), split(Z)
        s = B(x, yp) + B(xp, y)
        top = (-Fraction(1, 2) * s * z + B(x, y) * zp + B(x, z) * yp
               - B(yp, z) * x - B(xp, z) * y + B(y, z) * xp)
        bottom = (Fraction(1, 2) * s * zp - B(xp, yp) * z + B(x, zp) * yp
                  - B(yp, zp) * x - B(xp, zp) * y + B(y, zp) * xp)
        return np.concatenate([top, bottom])

    return TripleSystem(4 * n, form, _tensor(4 * n, prod), f"orthogonal:{n}")


def make_special_type(n: int) -> TripleSystem:
    if n < 1:
        raise ValueError("n must be >= 1")
    form = _standard_form(n)

    def prod(x, y, z):
        x1, x2, y1, y2, z1, z2 = x[:n], x[n:], y[:n], y[n:], z[:n], z[n:]
        s = x1 @ y2 + x2 @ y1
        top = -2 * (z1 @ y2) * x1 - 2 * (z1 @ x2) * y1 - s * z1
        bottom = 2 * (z2 @ y1) * x2 + 2 * (z2 @ x1) * y2 + s * z2
        return np.concatenate([top, bottom])

    return TripleSystem(2 * n, form, _tensor(2 * n, prod), f"special:{n}")


def make_g2_type() -> TripleSystem:
    """V_3 with (f, g) = (f, g)_3 and [f, g, h] = 6 ((f, g)_2, h)_1."""
    mono = [HomogeneousPoly.monomial(3, k) for k in range(4)]
    form = zeros(4, 4)
    for i, j in itertools.product(range(4), repeat=2):
        form[i, j] = transvection(mono[i], mono[j], 3).coeffs[0]
    c = zeros(4, 4, 4, 4)
    for i, j, k in itertools.product(range(4), repeat=3):
        out = transvection(transvection(mono[i], mono[j], 2), mono[k], 1).scale(6)
        c[i, j, k] = out.as_vector()
    return TripleSystem(4, form, c, "g2")


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    dim_t: str
    dim_g: str
    dim_m: str
    pair: str
    note: str = ""


FAMILIES = {
    "symplectic": make_symplectic_type,
    "orthogonal": make_orthogonal_type,
    "special": make_special_type,
}

ENTRIES = [
    CatalogEntry("symplectic:n", "2n", "(n+1)(2n+3)", "4n+3", "(sp_{2n+2}(R), sp_{2n}(R))"),
    CatalogEntry("orthogonal:n", "4n", "(n+2)(2n+3)", "8n+3", "(so_{n+2,n+2}(R), sl_2(R) + so_{n,n}(R))"),
    CatalogEntry("special:n", "2n", "(n+2)^2-1", "4n+3", "(sl_{n+2}(R), gl_n(R))"),
    CatalogEntry("g2", "4", "14", "11", "(g_{2,2}, sl_2(R))"),
]

METADATA_ONLY = "metadata only (product not in scope)"

EXCEPTIONAL = [
    CatalogEntry("exceptional:H3(R)", "14", "52", "31", "(f_{4,4}, sp_6(R))", METADATA_ONLY),
    CatalogEntry("exceptional:H3(R^2)", "20", "78", "43", "(e_{6,6}, sl_6(R))", METADATA_ONLY),
    CatalogEntry("exceptional:H3(Mat2(R))", "32", "133", "67", "(e_{7,7}, so_{6,6}(R))", METADATA_ONLY),
    CatalogEntry("exceptional:H3(O_s)", "56", "248", "115", "(e_{8,8}, e_{7,7})", METADATA_ONLY),
]

_KEY = re.compile(r"^(symplectic|orthogonal|special):(\d+)$")


def expected_dims(key: str) -> dict[str, int]:
    """Classical dimensions (T, inder, g, m) for a concrete catalog key."""
    if key == "g2":
        return {"dim_t": 4, "dim_inder": 3, "dim_g": 14, "dim_m": 11}
    match = _KEY.match(key)
    if not match:
        raise KeyError(key)
    family, n = match.group(1), int(match.group(2))
    if family == "symplectic":
        t, inder = 2 * n, n * (2 * n + 1)
    elif family == "orthogonal":
        t, inder = 4 * n, 3 + n * (2 * n - 1)
    else:
        t, inder = 2 * n, n * n
    return {"dim_t": t, "dim_inder": inder, "dim_g": 3 + inder + 2 * t, "dim_m": 3 + 2 * t}


def is_catalog_key(key: str) -> bool:
    return key == "g2" or bool(_KEY.match(key))


def from_key(key: str, max_n: int = DEFAULT_MAX_N) -> TripleSystem:
    """Build the system named by ``"symplectic:n"``, ``"orthogonal:n"``, ``"special:n"`` or ``"g2"``."""
    if key == "g2":
        return make_g2_type()
    match = _KEY.match(key)
    if not match:
        raise KeyError(f"unknown catalog key {key!r}")
    n = int(match.group(2))
    if n < 1:
        raise KeyError(f"n must be >= 1 in {key!r}")
    if n > max_n:
        raise KeyError(f"n = {n} exceeds the configured cap {max_n}")
    return FAMILIES[match.group(1)](n)


ACCEPTANCE_KEYS = [
    "symplectic:1", "symplectic:2", "symplectic:3",
    "orthogonal:1", "orthogonal:2",
    "special:1", "special:2", "special:3",
    "g2",
]
