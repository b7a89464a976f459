"""Minimal dense linear algebra for the matrix maps and inference.

Cholesky and the triangular solves are written with explicit loops over
generic scalars, so they also run on object arrays of dual numbers (the
Student log-likelihood differentiates through them).  The eigensolver and
symmetric solve are float-only.
"""

from __future__ import annotations

import math

import numpy as np

from . import _dispatch as _m
from ._errors import NotPositiveDefiniteError, ShapeError, SingularMatrixError, DomainError


def _check_square(M, name="matrix"):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {M.shape}")
    return M


def _check_symmetric(M, rtol=1e-10):
    V = _m.values(M)
    scale = np.max(np.abs(V)) or 1.0
    if np.max(np.abs(V - V.T)) > rtol * scale:
        raise DomainError("matrix is not symmetric")


def cholesky(M):
    """Lower Cholesky factor of a symmetric positive definite matrix.

    Unblocked right-looking algorithm; reads only the lower triangle.  Raises
    :class:`NotPositiveDefiniteError` with the failing leading minor index.
    """
    M = _check_square(M)
    _check_symmetric(M)
    n = M.shape[0]
    L = np.zeros((n, n), dtype=M.dtype if M.dtype == object else float)
    for i in range(n):
        for j in range(i + 1):
            acc = M[i, j]
            for k in range(j):
                acc = acc - L[i, k] * L[j, k]
            if i == j:
                if not (_m.values(acc) > 0.0):
                    raise NotPositiveDefiniteError(i)
                L[i, i] = _m.sqrt(acc)
            else:
                L[i, j] = acc / L[j, j]
    return L


def tri_solve(L, b, transposed=False):
    """Solve L·y = b (or Lᵀ·y = b) by substitution; b may be 1-D or 2-D."""
    L = _check_square(L, "L")
    n = L.shape[0]
    b = np.asarray(b)
    if b.shape[0] != n:
        raise ShapeError(f"rhs length {b.shape[0]} != {n}")
    diag = [_m.values(L[i, i]) for i in range(n)]
    if any(d == 0.0 for d in diag):
        raise SingularMatrixError("zero diagonal in triangular solve")
    y = np.empty(b.shape, dtype=object if (L.dtype == object or b.dtype == object) else float)
    if not transposed:
        for i in range(n):
            acc = b[i]
            for k in range(i):
                acc = acc - L[i, k] * y[k]
            y[i] = acc / L[i, i]
    else:
        for i in range(n - 1, -1, -1):
            acc = b[i]
            for k in range(i + 1, n):
                acc = acc - L[k, i] * y[k]
            y[i] = acc / L[i, i]
    return y


def jacobi_eigh(M, tol=1e-12, max_sweeps=50):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvectors as columns).
    """
    M = _check_square(M)
    A = np.asarray(M, dtype=float).copy()
    n = A.shape[0]
    if n > 64:
        raise ShapeError("jacobi_eigh supports n <= 64")
    scale = np.max(np.abs(A)) or 1.0
    if np.max(np.abs(A - A.T)) > 1e-8 * scale:
        raise DomainError("matrix is not symmetric")
    A = 0.5 * (A + A.T)
    V = np.eye(n)
    norm = np.linalg.norm(A) or 1.0
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, np.sum(A * A) - np.sum(np.diag(A) ** 2)))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = 0.5 * (A[q, q] - A[p, p]) / apq
                if abs(theta) > 1e10:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0)
                    )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot_p = c * A[:, p] - s * A[:, q]
                rot_q = s * A[:, p] + c * A[:, q]
                A[:, p], A[:, q] = rot_p, rot_q
                rot_p = c * A[p, :] - s * A[q, :]
                rot_q = s * A[p, :] + c * A[q, :]
                A[p, :], A[q, :] = rot_p, rot_q
                rot_p = c * V[:, p] - s * V[:, q]
                rot_q = s * V[:, p] + c * V[:, q]
                V[:, p], V[:, q] = rot_p, rot_q
    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], V[:, order]


def solve_sym(H, g):
    """Solve H·x = g for symmetric (possibly indefinite) H.

    LDLᵀ without pivoting first; if a pivot degenerates, falls back to
    partial-pivot LU.  Pivots below 1e-12·‖H‖ raise SingularMatrixError.
    """
    H = _check_square(H, "H")
    H = np.asarray(H, dtype=float)
    g = np.asarray(g, dtype=float)
    n = H.shape[0]
    if g.shape[0] != n:
        raise ShapeError(f"rhs length {g.shape[0]} != {n}")
    norm = np.max(np.abs(H)) or 1.0
    x = _ldlt_solve(H, g, norm)
    if x is not None:
        return x
    return _lu_solve(H, g, norm)


def _ldlt_solve(H, g, norm):
    n = H.shape[0]
    L = np.eye(n)
    d = np.zeros(n)
    for j in range(n):
        d[j] = H[j, j] - np.sum(L[j, :j] ** 2 * d[:j])
        if abs(d[j]) <= 1e-12 * norm:
            return None
        for i in range(j + 1, n):
            L[i, j] = (H[i, j] - np.sum(L[i, :j] * L[j, :j] * d[:j])) / d[j]
    y = np.empty(n)
    for i in range(n):
        y[i] = g[i] - np.sum(L[i, :i] * y[:i])
    y /= d
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = y[i] - np.sum(L[i + 1 :, i] * x[i + 1 :])
    return x


def _lu_solve(H, g, norm):
    n = H.shape[0]
    A = H.copy()
    b = g.copy()
    perm = np.arange(n)
    for j in range(n):
        p = j + np.argmax(np.abs(A[j:, j]))
        if abs(A[p, j]) <= 1e-12 * norm:
            raise SingularMatrixError("matrix is singular or nearly singular")
        if p != j:
            A[[j, p]] = A[[p, j]]
            b[[j, p]] = b[[p, j]]
            perm[[j, p]] = perm[[p, j]]
        for i in range(j + 1, n):
            m = A[i, j] / A[j, j]
            A[i, j + 1 :] -= m * A[j, j + 1 :]
            A[i, j] = 0.0
            b[i] -= m * b[j]
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        x[i] = (b[i] - np.dot(A[i, i + 1 :], x[i + 1 :])) / A[i, i]
    return x


def pack_lower(M):
    """Pack a symmetric matrix to its lower triangle, row by row."""
    M = _check_square(M)
    n = M.shape[0]
    idx = np.tril_indices(n)
    return np.asarray(M)[idx]


def unpack_lower(data):
    """Rebuild the symmetric matrix from row-by-row lower-triangle packing."""
    data = np.asarray(data)
    if data.ndim != 1:
        raise ShapeError("packed data must be 1-D")
    k = data.shape[0]
    n = int((math.isqrt(8 * k + 1) - 1) // 2)
    if n * (n + 1) // 2 != k:
        raise ShapeError(f"no n with n(n+1)/2 = {k}")
    M = np.zeros((n, n), dtype=data.dtype if data.dtype == object else float)
    idx = np.tril_indices(n)
    M[idx] = data
    M[(idx[1], idx[0])] = data
    return M


def packed_dim(k, strict=False):
    """Matrix dimension n for a packed length k (strict: n(n-1)/2)."""
    if strict:
        n = int((1 + math.isqrt(1 + 8 * k)) // 2)
        if n * (n - 1) // 2 != k:
            raise ShapeError(f"no n with n(n-1)/2 = {k}")
        return n
    n = int((math.isqrt(8 * k + 1) - 1) // 2)
    if n * (n + 1) // 2 != k:
        raise ShapeError(f"no n with n(n+1)/2 = {k}")
    return n
