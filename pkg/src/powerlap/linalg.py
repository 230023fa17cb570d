"""Exact and numeric matrix engines behind the spectral code.

Exact routines work over the rationals (``fractions.Fraction``) so every
integrality decision downstream is a genuine certification, never a
rounding.  The numeric side is a self-contained cyclic Jacobi eigensolver
for dense symmetric matrices.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = [
    "rational_nullity",
    "charpoly_exact",
    "integer_root_multiplicities",
    "eval_poly_at_int",
    "jacobi_eigenvalues",
]


def rational_nullity(rows: Sequence[Sequence[Fraction]]) -> int:
    """Nullity of a square rational matrix by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    rank = 0
    col = 0
    while rank < n and col < n:
        pivot = None
        for r in range(rank, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        pval = prow[col]
        for r in range(rank + 1, n):
            factor = m[r][col] / pval
            if factor:
                row = m[r]
                for c in range(col, n):
                    row[c] -= factor * prow[c]
        rank += 1
        col += 1
    return n - rank


def charpoly_exact(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - M) for an integer matrix, ascending by power.

    Reduces to upper Hessenberg form by exact similarity transforms, then
    expands the characteristic polynomial with the standard Hessenberg
    recurrence.  The result of an integer matrix is integral; this is
    asserted before returning.
    """
    n = len(matrix)
    if n == 0:
        return [1]
    h = [[Fraction(x) for x in row] for row in matrix]
    if any(len(row) != n for row in h):
        raise ValueError("matrix must be square")

    for col in range(n - 2):
        pivot = None
        for r in range(col + 1, n):
            if h[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != col + 1:
            h[col + 1], h[pivot] = h[pivot], h[col + 1]
            for row in h:
                row[col + 1], row[pivot] = row[pivot], row[col + 1]
        pval = h[col + 1][col]
        for r in range(col + 2, n):
            factor = h[r][col] / pval
            if factor:
                hr = h[r]
                hp = h[col + 1]
                for c in range(col, n):
                    hr[c] -= factor * hp[c]
                for row in h:
                    row[col + 1] += factor * row[r]

    # d[k] = charpoly of the leading k x k block, coefficients ascending
    d: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 1):
        # (x - h[k-1][k-1]) * d[k-1]
        prev = d[k - 1]
        poly = [Fraction(0)] * (k + 1)
        for i, c in enumerate(prev):
            poly[i + 1] += c
            poly[i] -= h[k - 1][k - 1] * c
        beta = Fraction(1)
        for j in range(k - 1, 0, -1):
            beta *= h[j][j - 1]
            if not beta:
                break
            coeff = beta * h[j - 1][k - 1]
            if coeff:
                for i, c in enumerate(d[j - 1]):
                    poly[i] -= coeff * c
        d.append(poly)

    coeffs = d[n]
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("integer matrix produced a non-integer charpoly")
        out.append(c.numerator)
    return out


def eval_poly_at_int(coeffs: Sequence[int], x: int) -> int:
    """Evaluate a polynomial with integer coefficients (ascending) at integer x."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def integer_root_multiplicities(coeffs: Sequence[int], lo: int, hi: int) -> dict[int, int]:
    """Multiplicity of every integer root in [lo, hi] of an integer polynomial."""
    result: dict[int, int] = {}
    for r in range(lo, hi + 1):
        work = list(coeffs)
        mult = 0
        while len(work) > 1 and eval_poly_at_int(work, r) == 0:
            work = _synthetic_divide(work, r)
            mult += 1
        if mult:
            result[r] = mult
    return result


def _synthetic_divide(coeffs: Sequence[int], r: int) -> list[int]:
    """Divide by (x - r); assumes r is a root (remainder zero)."""
    out = [0] * (len(coeffs) - 1)
    carry = 0
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * r
        out[i - 1] = carry
    assert coeffs[0] + carry * r == 0, "synthetic division with nonzero remainder"
    return out


def jacobi_eigenvalues(matrix: np.ndarray, off_norm_scale: float = 1e-12,
                       max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.

    Sweeps stop when the off-diagonal Frobenius norm drops below
    ``off_norm_scale * n``.  Returns the eigenvalues sorted ascending.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n < 2:
        return np.diagonal(a).copy()
    if not np.allclose(a, a.T, atol=1e-9 * (1.0 + np.abs(a).max())):
        raise ValueError("matrix must be symmetric")
    a = (a + a.T) / 2.0
    threshold = off_norm_scale * n
    sweeps = 0
    while True:
        strict = a - np.diag(np.diagonal(a))
        off = np.sqrt(np.sum(np.square(strict)))
        if off <= threshold:
            break
        sweeps += 1
        if sweeps > max_sweeps:
            raise RuntimeError("Jacobi iteration failed to converge")
        tiny = off / (n * n)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= tiny * 1e-4:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
    return np.sort(np.diagonal(a))
