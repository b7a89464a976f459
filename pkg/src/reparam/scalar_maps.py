"""Numerically stable scalar special functions and scalar parametrizations.

All maps are bijections between ℝ and an open subset of ℝ (half-lines, open
intervals), built from overflow-free forms of log(1+exp), the logistic pair
expit/logit, and the Gaussian bridge erf/erfinv/log_ndtr.  Every function is
generic over plain floats, float ndarrays (elementwise), forward-mode dual
scalars and object ndarrays of duals.

Domain violations raise :class:`DomainError`; boundary values are errors
because all target sets are open.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.special as _sp

from . import _dispatch as _m
from ._errors import DomainError

_LOG2 = math.log(2.0)
_SQRT2 = math.sqrt(2.0)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_HALF_SQRT_PI = 0.5 * math.sqrt(math.pi)


def _require(ok, msg):
    if not np.all(ok):
        raise DomainError(msg)


def _check_scale(s):
    s = float(s)
    if not (s > 0.0 and math.isfinite(s)):
        raise DomainError(f"scale must be positive and finite, got {s}")
    return s


def log1pexp(x):
    """log(1+exp(x)) as log1p(exp(-|x|)) + max(x, 0); never overflows."""
    return _m.log1p(_m.exp(-_m.absolute(x))) + _m.maximum(x, 0.0)


def logexpm1(y):
    """log(exp(y)-1) as y + log(-expm1(-y)); exact inverse of log1pexp."""
    _require(_m.values(y) > 0.0, "logexpm1 requires y > 0")
    return y + _m.log(-_m.expm1(-y))


def softplus(x, s=1.0):
    """s·log(1+exp(x)): smooth bijection ℝ → (0, ∞) with output scale s."""
    return _check_scale(s) * log1pexp(x)


def softplusinv(y, s=1.0):
    """Inverse of softplus: logexpm1(y/s)."""
    s = _check_scale(s)
    _require(_m.values(y) > 0.0, "softplusinv requires y > 0")
    return logexpm1(y / s)


def expit(x):
    """1/(1+exp(-x)) via exp(x⁻)/(exp(x⁻)+exp(-x⁺)); no overflow."""
    xm = _m.minimum(x, 0.0)
    xp = _m.maximum(x, 0.0)
    em = _m.exp(xm)
    return em / (em + _m.exp(-xp))


def logit(p):
    """log(p/(1-p)) as log(p) - log1p(-p)."""
    pv = _m.values(p)
    _require((pv > 0.0) & (pv < 1.0), "logit requires 0 < p < 1")
    return _m.log(p) - _m.log1p(-p)


def reals_to_interval(x, a, b):
    """Bijection ℝ → (a, b).

    Uses b·tanh(x/2) when the interval is exactly symmetric (a == -b), which
    is precise near zero; otherwise a + (b-a)·expit(x).
    """
    a, b = float(a), float(b)
    if not (a < b and math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"invalid interval bounds ({a}, {b})")
    if a == -b:
        return b * _m.tanh(x * 0.5)
    return a + (b - a) * expit(x)


def interval_to_reals(y, a, b):
    """Inverse of :func:`reals_to_interval`."""
    a, b = float(a), float(b)
    if not (a < b and math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"invalid interval bounds ({a}, {b})")
    yv = _m.values(y)
    _require((yv > a) & (yv < b), f"value outside open interval ({a}, {b})")
    if a == -b:
        return 2.0 * _m.arctanh(y / b)
    return logit((y - a) / (b - a))


def reals_to_half_line(x, a, side="lower", s=1.0):
    """Bijection ℝ → (a, ∞) (side='lower') or (-∞, a) (side='upper')."""
    a = float(a)
    if not math.isfinite(a):
        raise DomainError("half-line bound must be finite")
    if side == "lower":
        return a + softplus(x, s)
    if side == "upper":
        return a - softplus(x, s)
    raise DomainError(f"side must be 'lower' or 'upper', got {side!r}")


def half_line_to_reals(y, a, side="lower", s=1.0):
    """Inverse of :func:`reals_to_half_line`."""
    a = float(a)
    if not math.isfinite(a):
        raise DomainError("half-line bound must be finite")
    yv = _m.values(y)
    if side == "lower":
        _require(yv > a, f"value must be > {a}")
        return softplusinv(y - a, s)
    if side == "upper":
        _require(yv < a, f"value must be < {a}")
        return softplusinv(a - y, s)
    raise DomainError(f"side must be 'lower' or 'upper', got {side!r}")


# -- Gaussian bridge ----------------------------------------------------------

def erf(x):
    return _m.lift_unary(
        x,
        _sp.erf,
        lambda v: _TWO_OVER_SQRT_PI * math.exp(-v * v),
        lambda v: -2.0 * v * _TWO_OVER_SQRT_PI * math.exp(-v * v),
        np_fn=_sp.erf,
    )


def erfinv(t):
    tv = _m.values(t)
    _require(np.abs(tv) < 1.0, "erfinv requires |t| < 1")

    def _df(v):
        y = _sp.erfinv(v)
        return _HALF_SQRT_PI * math.exp(y * y)

    def _d2f(v):
        y = _sp.erfinv(v)
        d = _HALF_SQRT_PI * math.exp(y * y)
        return 2.0 * y * d * d

    return _m.lift_unary(t, _sp.erfinv, _df, _d2f, np_fn=_sp.erfinv)


def log_ndtr(x):
    """log Φ(x), stable far into the left tail."""

    def _df(v):
        return math.exp(-0.5 * v * v - _HALF_LOG_2PI - _sp.log_ndtr(v))

    def _d2f(v):
        d = _df(v)
        return -d * (v + d)

    return _m.lift_unary(x, _sp.log_ndtr, _df, _d2f, np_fn=_sp.log_ndtr)


def ndtr(x):
    """Φ(x), computed as exp(log_ndtr(x)) so duals are supported."""
    return _m.exp(log_ndtr(x))


def ndtr_inv(p):
    """Φ⁻¹(p) = √2·erfinv(2p - 1)."""
    return _SQRT2 * erfinv(2.0 * p - 1.0)


def ndtr_inv_upper(q):
    """Φ⁻¹(1-q), keeping full relative precision for tiny tail mass q."""
    qv = _m.values(q)
    _require((qv > 0.0) & (qv < 1.0), "ndtr_inv_upper requires 0 < q < 1")

    def _f(v):
        return -_sp.ndtri_exp(math.log(v))

    def _df(v):
        z = _f(v)
        return -math.exp(0.5 * z * z + _HALF_LOG_2PI)

    def _d2f(v):
        z = _f(v)
        d = _df(v)
        return z * d * d

    def _np_fn(v):
        return -_sp.ndtri_exp(np.log(v))

    return _m.lift_unary(q, _f, _df, _d2f, np_fn=_np_fn)


def logistic_to_gaussian(x):
    """Φ⁻¹∘expit: maps Logistic-distributed input to N(0,1).

    Computed in log space (ndtri_exp of log expit) so both tails keep full
    precision for |x| up to ~700.
    """

    def _f(v):
        if v > 0.0:
            return -_sp.ndtri_exp(-log1pexp(v))
        return _sp.ndtri_exp(-log1pexp(-v))

    def _df(v):
        z = _f(v)
        return math.exp(-log1pexp(v) - log1pexp(-v) + 0.5 * z * z + _HALF_LOG_2PI)

    def _d2f(v):
        z = _f(v)
        d = _df(v)
        return d * (z * d - math.tanh(0.5 * v))

    def _np_fn(v):
        if np.ndim(v) == 0:
            return _f(float(v))
        v = np.asarray(v, dtype=float)
        return np.where(
            v > 0.0,
            -_sp.ndtri_exp(-log1pexp(v)),
            _sp.ndtri_exp(-log1pexp(-v)),
        )

    return _m.lift_unary(x, _f, _df, _d2f, np_fn=_np_fn)


def gaussian_to_logistic(z):
    """logit∘Φ = log Φ(z) - log Φ(-z); inverse of logistic_to_gaussian."""
    return log_ndtr(z) - log_ndtr(-z)
