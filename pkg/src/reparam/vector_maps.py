"""Bijections between ℝⁿ and the open simplex, sphere, half-sphere and ball.

All forward/inverse maps operate on the trailing axis, so leading axes batch
for free; :func:`vectorize_trailing` additionally lifts any single-vector map
over leading indices.  The maps are generic over float arrays and object
arrays of dual scalars.

The sphere maps keep full precision at saturated angles (|tanh| within a few
ulp of 1) by working with the complement 1−|tanh z| = 2·expit(−2|z|) and the
complements of the angles to their range boundaries (via atan2 identities),
instead of ever forming arccos/arctanh of a saturated value.
"""

from __future__ import annotations

import math

import numpy as np

from . import _dispatch as _m
from . import _kernels as _k
from ._errors import DomainError, ShapeError
from .scalar_maps import (
    gaussian_to_logistic,
    log1pexp,
    logexpm1,
    expit,
    log_ndtr,
    logistic_to_gaussian,
    ndtr_inv,
    ndtr_inv_upper,
)

_PI = math.pi
_HALF_PI = 0.5 * math.pi


def _as_vectors(x, name="x", min_dim=1):
    x = np.asarray(x)
    if x.ndim == 0:
        x = x[None]
    if x.dtype != object:
        x = x.astype(float)
        if not np.all(np.isfinite(x)):
            raise DomainError(f"{name} must be finite")
    else:
        if not np.all(np.isfinite(_m.values(x))):
            raise DomainError(f"{name} must be finite")
    if x.shape[-1] < min_dim:
        raise ShapeError(f"{name} needs at least {min_dim} trailing components")
    return x


def _check_radius(r):
    r = float(r)
    if not (r > 0.0 and math.isfinite(r)):
        raise DomainError(f"radius must be positive and finite, got {r}")
    return r


def _zeros_col(x):
    return x[..., :1] * 0.0


def softmax_stable(x):
    """exp(x − max x) normalized along the last axis."""
    x = _as_vectors(x)
    m = np.max(x, axis=-1, keepdims=True)
    e = _m.exp(x - m)
    return e / np.sum(e, axis=-1, keepdims=True)


# -- simplex ------------------------------------------------------------------

def reals_to_simplex(x):
    """ℝⁿ → open simplex with n+1 components (stick-breaking in log space)."""
    x = _as_vectors(x)
    n = x.shape[-1]
    if x.dtype != object:
        out = _k.simplex_forward_batch(x.reshape(-1, n))
        return out.reshape(x.shape[:-1] + (n + 1,))
    k = np.arange(n, dtype=float)
    xi = -log1pexp(x) / (n - k)
    z = _zeros_col(x)
    logw = np.concatenate([_m.log(-_m.expm1(xi)), z], axis=-1)
    logw = logw + np.concatenate([z, np.cumsum(xi, axis=-1)], axis=-1)
    return softmax_stable(logw)


def simplex_to_reals(w):
    """Inverse of :func:`reals_to_simplex`; renormalizes Σw within 1e−8."""
    w = np.asarray(w)
    if w.ndim == 0 or w.shape[-1] < 2:
        raise ShapeError("simplex point needs at least 2 components")
    if w.dtype != object:
        w = w.astype(float)
    wv = _m.values(w)
    if not np.all(np.isfinite(wv)):
        raise DomainError("simplex point must be finite")
    if not np.all(wv > 0.0):
        raise DomainError("simplex components must be strictly positive")
    total = np.sum(w, axis=-1, keepdims=True)
    if np.max(np.abs(_m.values(total) - 1.0)) > 1e-8:
        raise DomainError("simplex components must sum to 1 within 1e-8")
    w = w / total
    n = w.shape[-1] - 1
    if w.dtype != object:
        out = _k.simplex_inverse_batch(w.reshape(-1, n + 1))
        return out.reshape(w.shape[:-1] + (n,))
    k = np.arange(n, dtype=float)
    suffix = np.flip(np.cumsum(np.flip(w[..., 1:], axis=-1), axis=-1), axis=-1)
    xi = -(n - k) * _m.log1p(w[..., :n] / suffix)
    return _m.log(-_m.expm1(xi)) - xi


# -- sphere and half-sphere ---------------------------------------------------

def _angle_parts(z, last_doubled):
    """sin ξ and cos ξ for ξ = (π/2)·c·tanh z, c = 1 or 2, saturation-safe."""
    zv = _m.values(z)
    sgn = np.where(zv >= 0.0, 1.0, -1.0)
    sig = 2.0 * expit(-2.0 * _m.absolute(z))  # = 1 − |tanh z|
    if last_doubled:
        return sgn * _m.sin(_PI * sig), -_m.cos(_PI * sig)
    return sgn * _m.cos(_HALF_PI * sig), _m.sin(_HALF_PI * sig)


def _angle_scales(n):
    return np.sqrt(2.0 * (n - np.arange(n, dtype=float)) - 1.0)


def reals_to_sphere(x, r=1.0):
    """ℝⁿ → sphere of radius r in ℝⁿ⁺¹ (last polyspherical angle in (−π,π))."""
    r = _check_radius(r)
    x = _as_vectors(x)
    n = x.shape[-1]
    z = (x * 0.5) / _angle_scales(n)
    sin_l, cos_l = _angle_parts(z[..., -1:], last_doubled=True)
    ones = _zeros_col(x) + 1.0
    if n == 1:
        return r * np.concatenate([sin_l, cos_l], axis=-1)
    sin_nl, cos_nl = _angle_parts(z[..., :-1], last_doubled=False)
    zeta = _m.exp(np.cumsum(_m.log(cos_nl), axis=-1))
    first = np.concatenate([sin_nl, sin_l, ones], axis=-1)
    second = np.concatenate([ones, zeta, zeta[..., -1:] * cos_l], axis=-1)
    return r * first * second


def reals_to_half_sphere(x, r=1.0):
    """ℝⁿ → half-sphere of radius r in ℝⁿ⁺¹ (last coordinate positive)."""
    r = _check_radius(r)
    x = _as_vectors(x)
    n = x.shape[-1]
    z = (x * 0.5) / _angle_scales(n)
    sin_a, cos_a = _angle_parts(z, last_doubled=False)
    zeta = _m.exp(np.cumsum(_m.log(cos_a), axis=-1))
    ones = _zeros_col(x) + 1.0
    first = np.concatenate([sin_a, ones], axis=-1)
    second = np.concatenate([ones, zeta], axis=-1)
    return r * first * second


def _angles_to_reals(a, b, scales, last_doubled):
    """Recover x from the per-angle sine/cosine proportional pairs (a, b).

    ξ = atan2(a, b); x = 2·s·artanh(ξ/m) with m the angle range bound,
    switching to the complement m − |ξ| (computed by atan2 identities, never
    by subtraction) once |ξ|/m > 0.9.
    """
    n = a.shape[-1]
    xi = _m.arctan2(a, b)
    m = np.full(n, _HALF_PI)
    if last_doubled:
        m[-1] = _PI
        mp = np.concatenate(
            [
                _m.arctan2(b[..., :-1], _m.absolute(a[..., :-1])),
                _m.arctan2(_m.absolute(a[..., -1:]), -b[..., -1:]),
            ],
            axis=-1,
        )
    else:
        mp = _m.arctan2(b, _m.absolute(a))
    t = xi / m
    sat = np.abs(_m.values(t)) > 0.9
    sgn = np.where(_m.values(xi) >= 0.0, 1.0, -1.0)
    t_safe = np.where(sat, t * 0.0, t)
    mp_safe = np.where(sat, mp, mp * 0.0 + m)
    direct = _m.log1p(t_safe) - _m.log1p(-t_safe)
    # points outside the forward image (mp = 0 exactly) map to +-inf by
    # convention, so the log is allowed to diverge here
    with np.errstate(divide="ignore"):
        comp = sgn * (_m.log(2.0 * m - mp_safe) - _m.log(mp_safe))
    return scales * np.where(sat, comp, direct)


def _unit_vectors(v, r, name):
    v = np.asarray(v)
    if v.ndim == 0 or v.shape[-1] < 2:
        raise ShapeError(f"{name} needs at least 2 components")
    if v.dtype != object:
        v = v.astype(float)
    vv = _m.values(v)
    if not np.all(np.isfinite(vv)):
        raise DomainError(f"{name} must be finite")
    norms = np.sqrt(np.sum(vv * vv, axis=-1))
    if np.max(np.abs(norms - r)) > 1e-8 * max(1.0, r):
        raise DomainError(f"{name} norm must equal the radius within 1e-8")
    return v / r


def sphere_to_reals(v, r=1.0):
    """Inverse of :func:`reals_to_sphere` (on the image of the forward map)."""
    r = _check_radius(r)
    u = _unit_vectors(v, r, "sphere point")
    n = u.shape[-1] - 1
    a = u[..., :n]
    suffix = np.flip(np.cumsum(np.flip(u[..., 1:] ** 2, axis=-1), axis=-1), axis=-1)
    b = np.concatenate([_m.sqrt(suffix[..., : n - 1]), u[..., n:]], axis=-1)
    return _angles_to_reals(a, b, _angle_scales(n), last_doubled=True)


def half_sphere_to_reals(v, r=1.0):
    """Inverse of :func:`reals_to_half_sphere`."""
    r = _check_radius(r)
    u = _unit_vectors(v, r, "half-sphere point")
    if not np.all(_m.values(u[..., -1]) > 0.0):
        raise DomainError("half-sphere point must have positive last coordinate")
    n = u.shape[-1] - 1
    a = u[..., :n]
    suffix = np.flip(np.cumsum(np.flip(u[..., 1:] ** 2, axis=-1), axis=-1), axis=-1)
    b = _m.sqrt(suffix)
    return _angles_to_reals(a, b, _angle_scales(n), last_doubled=False)


# -- chi-square CDF approximation and the open ball ---------------------------

def _check_chi2_dim(n):
    if int(n) != n or n < 2:
        raise DomainError(f"chi2_cdf_approx requires integer n >= 2, got {n}")
    return int(n)


def chi2_cdf_approx(n, y):
    """χ²ₙ CDF: exact for n=2, Wilson–Hilferty with smoothing for n ≥ 3."""
    n = _check_chi2_dim(n)
    if not np.all(_m.values(y) > 0.0):
        raise DomainError("chi2_cdf_approx requires y > 0")
    if n == 2:
        return -_m.expm1(-0.5 * y)
    c1 = n ** (1.0 / 3.0) * (1.0 - 2.0 / (9.0 * n))
    c2 = math.sqrt(2.0 / (9.0 * n ** (1.0 / 3.0)))
    return _m.exp(log_ndtr((0.25 * logexpm1(4.0 * y ** (1.0 / 3.0)) - c1) / c2))


def chi2_cdf_approx_inv(n, p):
    """Inverse of :func:`chi2_cdf_approx`."""
    n = _check_chi2_dim(n)
    pv = _m.values(p)
    if not np.all((pv > 0.0) & (pv < 1.0)):
        raise DomainError("chi2_cdf_approx_inv requires 0 < p < 1")
    if n == 2:
        return -2.0 * _m.log1p(-p)
    c1 = n ** (1.0 / 3.0) * (1.0 - 2.0 / (9.0 * n))
    c2 = math.sqrt(2.0 / (9.0 * n ** (1.0 / 3.0)))
    return (0.25 * log1pexp(4.0 * (c1 + ndtr_inv(p) * c2))) ** 3


def _log_chi2_cdf(n, y):
    if n == 2:
        return _m.log(-_m.expm1(-0.5 * y))
    c1 = n ** (1.0 / 3.0) * (1.0 - 2.0 / (9.0 * n))
    c2 = math.sqrt(2.0 / (9.0 * n ** (1.0 / 3.0)))
    return log_ndtr((0.25 * logexpm1(4.0 * y ** (1.0 / 3.0)) - c1) / c2)


def reals_to_ball(x, r=1.0):
    """ℝⁿ → open ball of radius r in ℝⁿ (n ≥ 2); maps 0 to 0."""
    r = _check_radius(r)
    x = _as_vectors(x, min_dim=2)
    n = x.shape[-1]
    g = logistic_to_gaussian(x)
    normsq = np.sum(g * g, axis=-1, keepdims=True)
    # continuity at x = 0: replace the zero norm by 1; the g factor is 0 anyway
    normsq = normsq + (_m.values(normsq) == 0.0) * 1.0
    scale = _m.exp(_log_chi2_cdf(n, normsq) / n - 0.5 * _m.log(normsq))
    out = scale * g
    if out.dtype != object:
        # accumulated rounding can push the norm to 1 + a few ulp for inputs
        # around +-36; nudge those points back inside the open ball
        nrm2 = np.sum(out * out, axis=-1, keepdims=True)
        shrink = 1.0 - 4.0 * np.finfo(float).eps
        out = np.where(nrm2 >= 1.0, out * (shrink / np.sqrt(np.maximum(nrm2, 1.0))), out)
    return r * out


def ball_to_reals(u, r=1.0):
    """Inverse of :func:`reals_to_ball`."""
    r = _check_radius(r)
    u = np.asarray(u)
    if u.ndim == 0 or u.shape[-1] < 2:
        raise ShapeError("ball point needs at least 2 components")
    if u.dtype != object:
        u = u.astype(float)
    n = u.shape[-1]
    uv = _m.values(u)
    if not np.all(np.isfinite(uv)):
        raise DomainError("ball point must be finite")
    w = u / r
    normsq = np.sum(w * w, axis=-1, keepdims=True)
    if not np.all(_m.values(normsq) < 1.0):
        raise DomainError("ball point must have norm strictly less than the radius")
    zero = _m.values(normsq) == 0.0
    # guard the zero point: norm becomes 1, q becomes 0.5, and the w factor
    # below zeroes the result anyway (continuity extension at the center)
    normsq = normsq + zero * 1.0
    norm = _m.sqrt(normsq)
    # complementary tail mass q = 1 - ‖w‖ⁿ computed without forming 1 - p,
    # which preserves relative precision when the point hugs the boundary
    q = -_m.expm1(0.5 * n * _m.log1p(normsq - 1.0)) + zero * 0.5
    if n == 2:
        y = -2.0 * _m.log(q)
    else:
        c1 = n ** (1.0 / 3.0) * (1.0 - 2.0 / (9.0 * n))
        c2 = math.sqrt(2.0 / (9.0 * n ** (1.0 / 3.0)))
        y = (0.25 * log1pexp(4.0 * (c1 + ndtr_inv_upper(q) * c2))) ** 3
    return gaussian_to_logistic(_m.sqrt(y) * (w / norm))


# -- batching helper ----------------------------------------------------------

def vectorize_trailing(map_fn, array):
    """Apply a single-vector map independently over all leading indices."""
    arr = np.asarray(array)
    if arr.ndim == 0:
        raise ShapeError("expected at least a 1-D trailing input, got a scalar")
    if arr.ndim == 1:
        return np.asarray(map_fn(arr))
    lead = arr.shape[:-1]
    flat = arr.reshape(-1, arr.shape[-1])
    try:
        outs = [np.asarray(map_fn(row)) for row in flat]
    except ShapeError as e:
        raise ShapeError(
            f"trailing dim {arr.shape[-1]} incompatible with map: {e}"
        ) from e
    return np.stack(outs).reshape(lead + outs[0].shape)
