"""Exact rational scalars and dense linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices and higher tensors are
numpy arrays of ``dtype=object`` holding ``Fraction`` entries, so that every
numpy indexing/reshaping idiom is available while arithmetic stays exact.

Heavy contractions go through :func:`contract`, which rescales its operands
to integers, runs ``numpy.einsum`` in int64 when an a-priori bound rules out
overflow (arbitrary-precision Python ints otherwise) and divides back.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_INT64_SAFE = 2**62


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: they would silently import rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, float, np.floating)):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_str(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(q)


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def frac_array(data) -> np.ndarray:
    """Build an object array of Fractions from nested sequences or an array."""
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for idx in range(flat.size):
        flat[idx] = as_rational(flat[idx])
    return arr


matrix = frac_array


def vector(entries: Iterable) -> np.ndarray:
    arr = frac_array(list(entries))
    if arr.ndim != 1:
        raise ValueError("vector() expects a flat sequence")
    return arr


def unit(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def is_zero(arr) -> bool:
    return not np.any(np.asarray(arr, dtype=object) != 0)


def to_strings(arr) -> list:
    """Nested lists of ``"p/q"`` strings, the JSON encoding of matrices/tensors."""
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return rational_str(arr.item())
    return [to_strings(sub) for sub in arr]


def from_strings(data) -> np.ndarray:
    return frac_array(data)


# ---------------------------------------------------------------------------
# exact contractions


def _integerize(arr: np.ndarray) -> tuple[np.ndarray, int, int]:
    """Return (integer object array, common denominator, max |entry|)."""
    flat = arr.reshape(-1)
    den = 1
    for x in flat:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = math.lcm(den, x.denominator)
    ints = np.empty(flat.size, dtype=object)
    biggest = 0
    for idx, x in enumerate(flat):
        if isinstance(x, Fraction):
            v = x.numerator * (den // x.denominator)
        else:
            v = int(x) * den
        ints[idx] = v
        if abs(v) > biggest:
            biggest = abs(v)
    return ints.reshape(arr.shape), den, biggest


@dataclass(frozen=True, eq=False)
class Prepared:
    """An operand already scaled to integers, reusable across contractions."""

    ints: np.ndarray
    den: int
    biggest: int

    @property
    def shape(self) -> tuple[int, ...]:
        return self.ints.shape


def prepare(arr) -> Prepared:
    """Integerize once a tensor that will be contracted many times."""
    if isinstance(arr, Prepared):
        return arr
    ints, den, biggest = _integerize(np.asarray(arr, dtype=object))
    if biggest < _INT64_SAFE:
        ints = ints.astype(np.int64)
    return Prepared(ints, den, biggest)


def _from_integers(ints: np.ndarray, den: int) -> np.ndarray:
    out = zeros(*ints.shape)
    for idx in zip(*np.nonzero(ints)):
        out[idx] = Fraction(int(ints[idx]), den)
    return out


def integer_contract(subscripts: str, *operands) -> tuple[np.ndarray, int]:
    """Exact einsum returning ``(integer array, denominator)``.

    The true result is ``ints / den``.  Useful when only the zero pattern of
    the result matters (identity sweeps), since it skips the conversion back
    to Fractions.
    """
    inputs, output = subscripts.split("->")
    terms = inputs.split(",")
    if len(terms) != len(operands):
        raise ValueError("operand count does not match subscripts")
    sizes: dict[str, int] = {}
    converted = []
    den = 1
    bound = 1
    for term, op in zip(terms, operands):
        if isinstance(op, Prepared):
            ints, d, biggest = op.ints, op.den, op.biggest
        else:
            ints, d, biggest = _integerize(np.asarray(op, dtype=object))
        for letter, size in zip(term, ints.shape):
            sizes[letter] = size
        converted.append(ints)
        den *= d
        bound *= biggest
    for letter in set("".join(terms)) - set(output):
        bound *= sizes[letter]
    if bound < _INT64_SAFE:
        converted = [c if c.dtype == np.int64 else c.astype(np.int64) for c in converted]
    else:
        converted = [c.astype(object) for c in converted]
    result = np.einsum(subscripts, *converted, optimize=len(operands) > 2)
    return np.asarray(result), den


def add_integer_terms(*terms: tuple[np.ndarray, int], signs=None) -> tuple[np.ndarray, int]:
    """Signed sum of ``(ints, den)`` pairs over their least common denominator."""
    signs = signs or (1,) * len(terms)
    den = math.lcm(*(d for _, d in terms))
    scaled = []
    for (ints, d), sign in zip(terms, signs):
        factor = sign * (den // d)
        if ints.dtype != object and (int(np.abs(ints).max(initial=0)) * abs(factor) * len(terms)) >= _INT64_SAFE:
            ints = ints.astype(object)
        scaled.append(ints * factor)
    if any(a.dtype == object for a in scaled):
        scaled = [a.astype(object) for a in scaled]
    total = scaled[0]
    for a in scaled[1:]:
        total = total + a
    return total, den


def contract(subscripts: str, *operands) -> np.ndarray:
    """Exact ``numpy.einsum`` over Fraction arrays (explicit ``->`` form only)."""
    ints, den = integer_contract(subscripts, *operands)
    if ints.ndim == 0:
        return np.asarray(Fraction(int(ints), den), dtype=object)
    return _from_integers(ints, den)


def contract_sum(*terms) -> np.ndarray:
    """Exact signed sum of contractions, converted to Fractions once.

    Each term is ``(sign, subscripts, *operands)``; all must share the output shape.
    """
    parts = [integer_contract(sub, *ops) for _, sub, *ops in terms]
    ints, den = add_integer_terms(*parts, signs=tuple(sign for sign, *_ in terms))
    return _from_integers(np.asarray(ints), den)


def matmul(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if b.ndim == 1:
        return contract("ij,j->i", a, b)
    return contract("ij,jk->ik", a, b)


def bilinear(g, x, y) -> Fraction:
    """x^T g y."""
    return contract("i,ij,j->", x, g, y).item()


# ---------------------------------------------------------------------------
# elimination


def row_reduce(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry at or below the current row,
    which makes the output deterministic.
    """
    a = frac_array(m).copy()
    if a.ndim != 2:
        raise ValueError("row_reduce expects a matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, c]
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def mat_rank(m) -> int:
    return len(row_reduce(m)[1])


def mat_kernel(m) -> list[np.ndarray]:
    """A basis of the right null space ``{v : m v = 0}``."""
    a = frac_array(m)
    cols = a.shape[1]
    rref, pivots = row_reduce(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = ONE
        for row, p in enumerate(pivots):
            v[p] = -rref[row, f]
        basis.append(v)
    return basis


def mat_inverse(m) -> np.ndarray:
    a = frac_array(m)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("mat_inverse expects a square matrix")
    aug = np.concatenate([a, identity(n)], axis=1)
    rref, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return rref[:, n:]


def independent_subset(vectors: Sequence) -> list[int]:
    """Indices of a maximal linearly independent subset, greedy in input order."""
    if not len(vectors):
        return []
    _, pivots = row_reduce(np.stack([frac_array(v) for v in vectors], axis=1))
    return pivots


def solve(a, b) -> np.ndarray | None:
    """One exact solution of ``a x = b``, or None if inconsistent."""
    a = frac_array(a)
    b = frac_array(b)
    n = a.shape[1]
    rref, pivots = row_reduce(np.concatenate([a, b.reshape(-1, 1)], axis=1))
    if n in pivots:
        return None
    x = zeros(n)
    for row, p in enumerate(pivots):
        x[p] = rref[row, n]
    return x


# ---------------------------------------------------------------------------
# symmetric forms


@dataclass(frozen=True)
class Signature:
    positives: int
    negatives: int
    zeros: int

    @property
    def dim(self) -> int:
        return self.positives + self.negatives + self.zeros

    def as_list(self) -> list[int]:
        return [self.positives, self.negatives, self.zeros]


def is_symmetric(m) -> bool:
    a = np.asarray(m, dtype=object)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and not np.any(a != a.T)


def congruence_diagonalize(m) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(P, D)`` with ``P^T m P = D`` diagonal, P invertible.

    A zero diagonal pivot with a nonzero entry in its row is repaired by
    adding a partner row/column (``e_k <- e_k + e_j``), which turns a
    hyperbolic pair into a nonzero diagonal entry.
    """
    a = frac_array(m).copy()
    if not is_symmetric(a):
        raise ValueError("congruence_diagonalize expects a symmetric matrix")
    n = a.shape[0]
    p = identity(n)
    for k in range(n):
        if a[k, k] == 0:
            j = next((j for j in range(k + 1, n) if a[j, j] != 0), None)
            if j is not None:
                a[[k, j]] = a[[j, k]]
                a[:, [k, j]] = a[:, [j, k]]
                p[:, [k, j]] = p[:, [j, k]]
            else:
                j = next((j for j in range(k + 1, n) if a[k, j] != 0), None)
                if j is None:
                    continue
                a[k] = a[k] + a[j]
                a[:, k] = a[:, k] + a[:, j]
                p[:, k] = p[:, k] + p[:, j]
        pivot = a[k, k]
        for j in range(k + 1, n):
            if a[k, j] != 0:
                f = a[k, j] / pivot
                a[j] = a[j] - f * a[k]
                a[:, j] = a[:, j] - f * a[:, k]
                p[:, j] = p[:, j] - f * p[:, k]
    return p, a


def signature_of_symmetric(m) -> Signature:
    if not is_symmetric(m):
        raise ValueError("signature requires a symmetric matrix")
    _, d = congruence_diagonalize(m)
    diag = [d[i, i] for i in range(d.shape[0])]
    return Signature(
        positives=sum(1 for x in diag if x > 0),
        negatives=sum(1 for x in diag if x < 0),
        zeros=sum(1 for x in diag if x == 0),
    )


def trace_wrt_orthogonal_basis(f, basis: Sequence, g) -> Fraction:
    """Trace of ``f`` as ``sum_i g(f E_i, E_i) / g(E_i, E_i)``.

    ``basis`` must be g-orthogonal with no isotropic vector; the matrix ``f``
    acts on column vectors.
    """
    f = np.asarray(f, dtype=object)
    g = np.asarray(g, dtype=object)
    if len(basis) != f.shape[0]:
        raise ValueError("basis size does not match the operator")
    P = np.stack([np.asarray(e, dtype=object) for e in basis], axis=1)
    gram = contract("ai,ab,bj->ij", P, g, P)
    for i in range(gram.shape[0]):
        if gram[i, i] == 0:
            raise ValueError(f"basis vector {i} is g-isotropic")
        for j in range(i):
            if gram[j, i] != 0:
                raise ValueError(f"basis vectors {j} and {i} are not g-orthogonal")
    image = contract("ai,ab,bc,ci->i", P, g, f, P)
    return sum((image[i] / gram[i, i] for i in range(len(basis))), ZERO)


# ---------------------------------------------------------------------------
# seeded sampling


def random_rational(rng: random.Random, height: int = 5) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_vector(rng: random.Random, n: int, height: int = 5) -> np.ndarray:
    v = zeros(n)
    for i in range(n):
        v[i] = random_rational(rng, height)
    return v


def random_invertible(rng: random.Random, n: int, height: int = 3) -> np.ndarray:
    while True:
        p = zeros(n, n)
        for i in range(n):
            for j in range(n):
                p[i, j] = random_rational(rng, height)
        if mat_rank(p) == n:
            return p


__all__ = [
    "Rational",
    "Signature",
    "as_rational",
    "bilinear",
    "congruence_diagonalize",
    "add_integer_terms",
    "contract",
    "contract_sum",
    "frac_array",
    "from_strings",
    "identity",
    "independent_subset",
    "integer_contract",
    "Prepared",
    "prepare",
    "is_symmetric",
    "is_zero",
    "mat_inverse",
    "mat_kernel",
    "mat_rank",
    "matmul",
    "matrix",
    "random_invertible",
    "random_rational",
    "random_vector",
    "rational_str",
    "row_reduce",
    "signature_of_symmetric",
    "solve",
    "to_strings",
    "trace_wrt_orthogonal_basis",
    "unit",
    "vector",
    "zeros",
]
