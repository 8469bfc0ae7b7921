"""Exact linear algebra over F_p on numpy int64 arrays.

Column vectors throughout: a subspace is represented by a matrix whose
columns form a basis.  Entries are kept in [0, p-1]; every product formed
is below p^2, so any p < 3e9 is safe.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularSystem


def asmat(M, p: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % p


def matmul(A, B, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] and p * p * A.shape[1] >= 2**63:
        return (np.asarray(A, dtype=object) @ np.asarray(B, dtype=object) % p).astype(np.int64)
    return A @ B % p


def matpow(A, k: int, p: int) -> np.ndarray:
    n = A.shape[0]
    R = np.eye(n, dtype=np.int64)
    for _ in range(k):
        R = matmul(R, A, p)
    return R


_SMALL = 1024


def _rref_lists(rows_: list, p: int) -> tuple:
    R = [row[:] for row in rows_]
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if R[i][c]), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        inv = pow(R[r][c], -1, p)
        pr = [v * inv % p for v in R[r]]
        R[r] = pr
        # entries of pr left of c are already zero
        tail = pr[c:]
        for i in range(nrows):
            f = R[i][c]
            if i != r and f:
                row = R[i]
                row[c:] = [(u - f * v) % p for u, v in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return R, pivots


def _rank_lists(R: list, p: int) -> int:
    """Forward elimination only; R is consumed."""
    nrows = len(R)
    ncols = len(R[0]) if R else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if R[i][c]), None)
        if k is None:
            continue
        R[r], R[k] = R[k], R[r]
        pr = R[r]
        inv = pow(pr[c], -1, p)
        tail = pr[c:]
        for i in range(r + 1, nrows):
            f = R[i][c]
            if f:
                f = f * inv % p
                row = R[i]
                row[c:] = [(u - f * v) % p for u, v in zip(row[c:], tail)]
        r += 1
    return r


def rref(M, p: int) -> tuple:
    """Reduced row echelon form and pivot columns."""
    R = asmat(M, p)
    rows, cols = R.shape
    if rows * cols <= _SMALL:
        L, pivots = _rref_lists(R.tolist(), p)
        return np.array(L, dtype=np.int64).reshape(rows, cols), pivots
    R = R.copy()
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    if M.size <= _SMALL:
        return _rank_lists((M % p).tolist(), p)
    return len(rref(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as columns) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    rows, cols = M.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-R[i, f]) % p
    return basis


def colspace(M, p: int) -> np.ndarray:
    """Independent columns of M spanning its column space."""
    M = asmat(M, p)
    if M.size == 0:
        return np.zeros((M.shape[0], 0), dtype=np.int64)
    _, pivots = rref(M, p)
    return M[:, pivots]


def complement_in(W, U, p: int) -> np.ndarray:
    """Columns of U whose classes form a basis of span(U)/span(W).

    Requires span(W) to lie inside span(U).
    """
    W = colspace(W, p)
    U = asmat(U, p)
    k = W.shape[1]
    if U.shape[1] == 0:
        return U
    _, pivots = rref(np.hstack([W, U]), p)
    return U[:, [c - k for c in pivots if c >= k]]


def contains(U, W, p: int) -> bool:
    """span(W) is a subspace of span(U)."""
    return rank(np.hstack([asmat(U, p), asmat(W, p)]), p) == rank(U, p)


def same_span(U, W, p: int) -> bool:
    return rank(U, p) == rank(W, p) and contains(U, W, p)


def det(M, p: int) -> int:
    R = asmat(M, p).copy()
    n = R.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(R[c:, c])
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            R[[c, k]] = R[[k, c]]
            d = -d
        piv = int(R[c, c])
        d = d * piv % p
        inv = pow(piv, -1, p)
        factors = R[c + 1 :, c] * inv % p
        R[c + 1 :] = (R[c + 1 :] - np.outer(factors, R[c])) % p
    return d % p


def solve(A, b, p: int) -> np.ndarray:
    """Unique solution of A x = b; SingularSystem if A is not invertible."""
    A = asmat(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise SingularSystem("system is not square")
    aug = np.hstack([A, asmat(b, p).reshape(n, -1)])
    R, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularSystem("matrix is singular mod p")
    x = R[:, n:]
    return x[:, 0] if np.ndim(b) == 1 else x


def inverse(A, p: int) -> np.ndarray:
    n = np.asarray(A).shape[0]
    return solve(A, np.eye(n, dtype=np.int64), p)
