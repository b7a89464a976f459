"""Bijections between ℝᵏ and structured matrix sets.

Diagonal, symmetric, diagonal positive definite, symmetric positive definite
and correlation matrices.  The PD maps go through a Cholesky factor whose
diagonal is kept positive by softplus (SPD) or by half-sphere rows of unit
norm (correlation).  Scale hyper-parameters set the expected order of
magnitude of the diagonal; rescaling is always done by broadcasting row and
column vectors, never by multiplying with explicit diagonal matrices.

Each map takes a single parameter vector and returns a single matrix (and
vice versa); :func:`vectorize_trailing2` lifts them over leading batch axes.
"""

from __future__ import annotations

import math

import numpy as np

from . import _dispatch as _m
from ._errors import DomainError, ShapeError
from .linalg import cholesky, pack_lower, unpack_lower, packed_dim
from .scalar_maps import log1pexp, logexpm1, softplus, softplusinv
from .vector_maps import half_sphere_to_reals, reals_to_half_sphere


def _as_params(x, name="x"):
    x = np.asarray(x)
    if x.ndim == 0:
        x = x[None]
    if x.ndim != 1:
        raise ShapeError(f"{name} must be a 1-D parameter vector, got shape {x.shape}")
    if x.dtype != object:
        x = x.astype(float)
        if not np.all(np.isfinite(x)):
            raise DomainError(f"{name} must be finite")
    return x


def _as_matrix(M, name="matrix"):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {M.shape}")
    if M.dtype != object:
        M = M.astype(float)
        if not np.all(np.isfinite(M)):
            raise DomainError(f"{name} must be finite")
    return M


def _check_symmetric(M, name="matrix"):
    V = _m.values(M)
    scale = np.max(np.abs(V)) or 1.0
    if np.max(np.abs(V - V.T)) > 1e-10 * scale:
        raise DomainError(f"{name} is not symmetric within 1e-10 relative")


def _sqrt_scale(s, n):
    """Validated √s as a length-n vector (broadcast from scalar if needed)."""
    s = np.asarray(s, dtype=float)
    if s.ndim == 0:
        s = np.full(n, float(s))
    if s.shape != (n,):
        raise ShapeError(f"scale vector length {s.shape} does not match dim {n}")
    if not np.all(np.isfinite(s) & (s > 0.0)):
        raise DomainError("scale entries must be positive and finite")
    return np.sqrt(s)


def _zeros_matrix(n, like):
    if _m.is_object_array(like):
        L = np.empty((n, n), dtype=object)
        L[:] = _m.zero_like(like)
        return L
    return np.zeros((n, n))


# -- diagonal -----------------------------------------------------------------

def reals_to_diag(x):
    """n reals → diagonal matrix."""
    x = _as_params(x)
    n = x.shape[0]
    M = _zeros_matrix(n, x)
    M[np.diag_indices(n)] = x
    return M


def diag_to_reals(M):
    """Inverse of :func:`reals_to_diag`; off-diagonal must vanish."""
    M = _as_matrix(M)
    V = _m.values(M)
    if np.max(np.abs(V - np.diag(np.diag(V)))) > 1e-12:
        raise DomainError("matrix has nonzero off-diagonal entries")
    return M[np.diag_indices(M.shape[0])]


def _scale_vector(s, n):
    sq = _sqrt_scale(s, n)
    return sq * sq


def reals_to_diag_pd(x, s=1.0):
    """n reals → diagonal PD matrix with diagonal softplus(xᵢ, sᵢ)."""
    x = _as_params(x)
    n = x.shape[0]
    sv = _scale_vector(s, n)
    M = _zeros_matrix(n, x)
    M[np.diag_indices(n)] = [softplus(x[i], sv[i]) for i in range(n)]
    return M


def diag_pd_to_reals(M, s=1.0):
    """Inverse of :func:`reals_to_diag_pd`."""
    M = _as_matrix(M)
    n = M.shape[0]
    sv = _scale_vector(s, n)
    d = diag_to_reals(M)
    if not np.all(_m.values(d) > 0.0):
        raise DomainError("diagonal entries must be strictly positive")
    return np.asarray([softplusinv(d[i], sv[i]) for i in range(n)])


# -- symmetric ----------------------------------------------------------------

def reals_to_sym(x):
    """n(n+1)/2 reals → symmetric matrix (row-by-row lower triangle)."""
    x = _as_params(x)
    return unpack_lower(x)


def sym_to_reals(M):
    """Inverse of :func:`reals_to_sym`."""
    M = _as_matrix(M)
    _check_symmetric(M)
    return pack_lower(M)


# -- symmetric positive definite ----------------------------------------------

def reals_to_spd(x, s=1.0):
    """n(n+1)/2 reals → SPD matrix via a softplus-diagonal Cholesky factor.

    Row i of the factor is divided by √(i+1) so that Logistic-distributed
    inputs give comparable orders of magnitude across the diagonal; the
    result is rescaled on both sides by √s.
    """
    x = _as_params(x)
    n = packed_dim(x.shape[0])
    sq = _sqrt_scale(s, n)
    L = _zeros_matrix(n, x)
    L[np.diag_indices(n)] = log1pexp(x[:n])
    L[np.tril_indices(n, -1)] = x[n:]
    L = L / np.sqrt(np.arange(1.0, n + 1.0))[:, None]
    M = L @ L.T
    return M * sq[:, None] * sq[None, :]


def spd_to_reals(M, s=1.0):
    """Inverse of :func:`reals_to_spd`."""
    M = _as_matrix(M)
    n = M.shape[0]
    sq = _sqrt_scale(s, n)
    Mr = M / (sq[:, None] * sq[None, :])
    L = cholesky(Mr)
    L = L * np.sqrt(np.arange(1.0, n + 1.0))[:, None]
    diag = L[np.diag_indices(n)]
    return np.concatenate([logexpm1(diag), L[np.tril_indices(n, -1)]])


# -- correlation --------------------------------------------------------------

def reals_to_corr(x):
    """n(n-1)/2 reals → correlation matrix via half-sphere Cholesky rows."""
    x = _as_params(x)
    if x.shape[0] == 0:
        return np.ones((1, 1))
    n = packed_dim(x.shape[0], strict=True)
    L = _zeros_matrix(n, x)
    one = (_m.zero_like(x) + 1.0) if _m.is_object_array(x) else 1.0
    L[0, 0] = one
    for i in range(1, n):
        L[i, : i + 1] = reals_to_half_sphere(x[i * (i - 1) // 2 : i * (i + 1) // 2])
    M = L @ L.T
    return M


def corr_to_reals(M):
    """Inverse of :func:`reals_to_corr`."""
    M = _as_matrix(M)
    n = M.shape[0]
    if np.max(np.abs(_m.values(M)[np.diag_indices(n)] - 1.0)) > 1e-8:
        raise DomainError("correlation matrix diagonal must be 1 within 1e-8")
    if n == 1:
        return np.zeros(0)
    L = cholesky(M)
    parts = [half_sphere_to_reals(L[i, : i + 1]) for i in range(1, n)]
    return np.concatenate(parts)


# -- batching helper ----------------------------------------------------------

def vectorize_trailing2(map_fn, array, in_ndim=1):
    """Apply a map involving matrices independently over leading indices.

    ``in_ndim`` is the number of trailing input axes the map consumes: 1 for
    vector→matrix maps (the default), 2 for matrix→vector maps.
    """
    arr = np.asarray(array)
    if arr.ndim < in_ndim:
        raise ShapeError(
            f"expected at least {in_ndim} trailing dims, got shape {arr.shape}"
        )
    if arr.ndim == in_ndim:
        return np.asarray(map_fn(arr))
    lead = arr.shape[: arr.ndim - in_ndim]
    tail = arr.shape[arr.ndim - in_ndim :]
    flat = arr.reshape((-1,) + tail)
    try:
        outs = [np.asarray(map_fn(slc)) for slc in flat]
    except ShapeError as e:
        raise ShapeError(f"trailing dims {tail} incompatible with map: {e}") from e
    return np.stack(outs).reshape(lead + outs[0].shape)
