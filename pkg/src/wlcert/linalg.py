"""Exact integer and rational matrix arithmetic.

Matrices are 2-d numpy arrays of ``dtype=object`` holding Python ``int`` or
``fractions.Fraction`` entries, so products never overflow or round.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


def int_matrix(rows) -> np.ndarray:
    """Copy ``rows`` into an object array of Python ints."""
    a = np.asarray(rows)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = int(v)
    return out


def rat_matrix(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=object)
    if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Fraction(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def all_ones(rows: int, cols: int = 1) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(1)
    return out


def all_ones_vector(n: int) -> np.ndarray:
    return all_ones(n, 1)


def transpose(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a.T)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return np.asarray(a.astype(object) @ b.astype(object), dtype=object)


def mat_pow(a: np.ndarray, k: int) -> np.ndarray:
    if a.shape[0] != a.shape[1]:
        raise DimensionError("matrix power needs a square matrix")
    if k < 0:
        raise ValueError("negative exponent")
    result = identity(a.shape[0])
    base = a.astype(object)
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def _square_rows(a) -> list[list[int]]:
    a = np.asarray(a, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return [[int(v) for v in row] for row in a]


def det(a) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    m = _square_rows(a)
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            f = row_i[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class CharPoly:
    """Coefficients ``c_0..c_n`` of ``det(xI - A) = sum c_i x^(n-i)``."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * t + c
        return acc

    def __str__(self):
        n = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            p = n - i
            mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
            mag = abs(c)
            body = (str(mag) if mag != 1 or not mono else "") + mono
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out


def _mul_exact(a: np.ndarray, a_max: int, m: np.ndarray) -> np.ndarray:
    """``a @ m`` for object matrices, in int64 whenever a bound rules out overflow."""
    n = a.shape[0]
    m_max = max((abs(int(v)) for v in m.flat), default=0)
    if n * a_max * m_max < 2 ** 62:
        return (a.astype(np.int64) @ m.astype(np.int64)).astype(object)
    return a @ m


def char_poly(a) -> CharPoly:
    """Faddeev-LeVerrier recursion carried out in exact integers.

    ``M_k = A M_{k-1} + c_{k-1} I`` and ``c_k = -tr(A M_k) / k``; for an
    integer matrix each division is exact. The trace is taken entrywise as
    ``sum(A * M_k^T)``, so each step costs one matrix product.
    """
    m = _square_rows(a)
    n = len(m)
    A = np.array(m, dtype=object).reshape(n, n)
    a_max = max((abs(int(v)) for v in A.flat), default=0)
    coeffs = [1]
    M = np.zeros((n, n), dtype=object)
    I = identity(n)
    for k in range(1, n + 1):
        M = _mul_exact(A, a_max, M) + coeffs[-1] * I
        tr = int((A * M.T).sum())
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier coefficient")
        coeffs.append(q)
    return CharPoly(tuple(int(c) for c in coeffs))


def rat_inverse(a) -> np.ndarray:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    m = _square_rows(a)
    n = len(m)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return rat_matrix([row[n:] for row in aug])


def scaled_solve(a, b) -> tuple[int, np.ndarray]:
    """Integer ``(d, X)`` with ``a @ X == d * b`` and ``|d| == |det(a)|``.

    Fraction-free Gauss-Jordan: every row except the pivot row is updated as
    ``(p_k * r_i - r_i[k] * r_k) / p_{k-1}``, and each division is exact.
    At the end the left block is ``d * I``.
    """
    m = _square_rows(a)
    n = len(m)
    rhs = [[int(v) for v in row] for row in b]
    if len(rhs) != n:
        raise DimensionError(f"right-hand side has {len(rhs)} rows, expected {n}")
    width = n + (len(rhs[0]) if rhs else 0)
    rows = [list(map(int, m[i])) + rhs[i] for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if rows[r][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        rows[k], rows[piv] = rows[piv], rows[k]
        rk = rows[k]
        pk = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = rows[i]
            f = ri[k]
            rows[i] = [(pk * ri[j] - f * rk[j]) // prev for j in range(width)]
        prev = pk
    if any(rows[i][i] != prev for i in range(n)):
        raise ArithmeticError("fraction-free elimination did not end in a scalar block")
    if width == n:
        return prev, np.zeros((n, 0), dtype=object)
    return prev, from_rows([row[n:] for row in rows])


def is_integral(a: np.ndarray) -> bool:
    return all(Fraction(v).denominator == 1 for v in a.flat)


def to_int_lists(a: np.ndarray) -> list[list[int]]:
    return [[int(v) for v in row] for row in a]


def from_rows(rows: Sequence[Sequence]) -> np.ndarray:
    """Object array from nested sequences without coercing entry types."""
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = v
    return out
