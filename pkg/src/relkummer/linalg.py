"""Dense exact linear algebra over GF(p) on numpy int64 arrays.

Matrices act on column vectors.  Entries are kept reduced in [0, p); the
dimensions we meet are small enough that int64 never overflows.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError


def as_mod(A, p: int) -> np.ndarray:
    return np.asarray(A, dtype=np.int64) % p


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return (A @ B) % p


def matpow(A: np.ndarray, e: int, p: int) -> np.ndarray:
    n = A.shape[0]
    result = np.eye(n, dtype=np.int64)
    base = A % p
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = as_mod(A, p).copy()
    if R.ndim != 2:
        raise DomainError("rref expects a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            R[mask] = (R[mask] - np.outer(col[mask], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis of {v : A v = 0} as columns, in the canonical RREF order."""
    A = as_mod(A, p)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-R[i, f]) % p
    return basis


def solve(A, b, p: int) -> np.ndarray:
    """One solution x of A x = b (columns of b solved independently).

    Raises DomainError when some column is inconsistent.
    """
    A = as_mod(A, p)
    b = as_mod(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    n = A.shape[1]
    aug = np.concatenate([A, b], axis=1)
    R, pivots = rref(aug, p)
    if any(c >= n for c in pivots):
        raise DomainError("linear system has no solution")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, n:]
    return x[:, 0] if vec else x


def inverse(A, p: int) -> np.ndarray:
    A = as_mod(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DomainError("only square matrices are invertible")
    R, pivots = rref(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), p)
    if pivots[:n] != list(range(n)) or (n and len(pivots) > n and pivots[n] < n):
        raise DomainError("matrix is singular")
    return R[:, n:].copy()


def in_span(basis_cols: np.ndarray, v, p: int) -> bool:
    if basis_cols.shape[1] == 0:
        return not np.any(as_mod(v, p))
    return rank(np.column_stack([basis_cols, v]), p) == rank(basis_cols, p)


def intersection_dim(U: np.ndarray, W: np.ndarray, p: int) -> int:
    """dim(span U cap span W) for column-basis matrices U, W."""
    return rank(U, p) + rank(W, p) - rank(np.column_stack([U, W]), p)
