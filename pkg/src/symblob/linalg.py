"""Exact determinants over the scalar field and linear algebra over GF(p)."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .ring import Scalar, ScalarField


def det_bareiss(M: Sequence[Sequence], field: ScalarField | None = None):
    """Determinant by fraction-free elimination.

    Rows are first cleared of denominators (the cleared factor is divided back
    out at the end), so all intermediate entries are polynomials and every
    Bareiss division is exact.
    """
    n = len(M)
    if n == 0:
        return field.one if field is not None else 1
    if field is None:
        field = next((x.field for row in M for x in row if isinstance(x, Scalar)), None)
    if field is None:
        return _det_fraction(M)
    ring = field._K.ring
    rows = []
    cleared = ring.one
    for row in M:
        entries = [field(x).canonical() for x in row]
        den = ring.one
        for _, d in entries:
            den = den.lcm(d)
        rows.append([num * den.exquo(d) for num, d in entries])
        cleared *= den
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return field.zero
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - ri[k] * rk[j]).exquo(prev)
            ri[k] = ring.zero
        prev = pivot
    num = rows[n - 1][n - 1] * sign
    return Scalar(field, field._K(num) / field._K(cleared))


def _det_fraction(M):
    from fractions import Fraction

    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return det


def as_mod_array(M, p: int) -> np.ndarray:
    A = np.array(M, dtype=object) if len(M) else np.zeros((0, 0), dtype=object)
    return (A % p).astype(np.int64) if A.size else np.zeros(A.shape, dtype=np.int64)


def row_echelon_mod(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p) and its pivot columns."""
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod(A, p: int) -> int:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    return len(row_echelon_mod(A, p)[1])


def nullspace_mod(A, p: int) -> np.ndarray:
    """Basis of the right kernel of A over GF(p), one vector per row."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = row_echelon_mod(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def det_mod(A, p: int) -> int:
    A = np.array(A, dtype=np.int64) % p
    n = A.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            A[[c, i]] = A[[i, c]]
            det = -det
        piv = int(A[c, c])
        det = det * piv % p
        inv = pow(piv, p - 2, p)
        f = (A[c + 1:, c] * inv) % p
        A[c + 1:] = (A[c + 1:] - np.outer(f, A[c])) % p
    return det % p
