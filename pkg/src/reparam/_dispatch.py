"""Primitive numeric operations generic over floats, ndarrays and duals.

numpy ufuncs already dispatch on object arrays by calling the same-named
method of each element, which the dual scalars provide.  The helpers here
close the remaining gaps: plain ``AdScalar`` instances (not wrapped in an
array), value extraction for branching, and constants of matching type.
"""

from __future__ import annotations

import numpy as np

from .autodiff import AdScalar, _value_of


def is_object_array(x):
    return isinstance(x, np.ndarray) and x.dtype == object


def values(x):
    """Float value parts of x (identity on plain floats/arrays)."""
    if isinstance(x, AdScalar):
        return x.value
    if is_object_array(x):
        return np.frompyfunc(_value_of, 1, 1)(x).astype(float)
    return np.asarray(x, dtype=float) if isinstance(x, np.ndarray) else float(x)


def zero_like(x):
    """A zero of the same scalar kind as x's elements (for building constants)."""
    if isinstance(x, AdScalar):
        return x * 0.0
    if is_object_array(x):
        return x.reshape(-1)[0] * 0.0
    return 0.0


def _unary(np_fn, method):
    def op(x):
        if isinstance(x, AdScalar):
            return getattr(x, method)()
        return np_fn(x)

    op.__name__ = method
    return op


exp = _unary(np.exp, "exp")
log = _unary(np.log, "log")
log1p = _unary(np.log1p, "log1p")
expm1 = _unary(np.expm1, "expm1")
sqrt = _unary(np.sqrt, "sqrt")
tanh = _unary(np.tanh, "tanh")
arctanh = _unary(np.arctanh, "arctanh")
sin = _unary(np.sin, "sin")
cos = _unary(np.cos, "cos")


def absolute(x):
    if isinstance(x, AdScalar):
        return abs(x)
    return np.abs(x)


def arctan2(y, x):
    if isinstance(y, AdScalar):
        return y.arctan2(x)
    if isinstance(x, AdScalar) and not isinstance(y, np.ndarray):
        # float y, dual x: promote y so the dual rule applies
        return (x * 0.0 + y).arctan2(x)
    return np.arctan2(y, x)


def _promote_const(arr, c):
    # keep object arrays homogeneous: raw floats lack the ufunc methods
    return zero_like(arr) + c


def maximum(a, b):
    if isinstance(a, AdScalar) or isinstance(b, AdScalar):
        return a if _value_of(a) >= _value_of(b) else b
    if is_object_array(a) and not isinstance(b, np.ndarray):
        b = _promote_const(a, b)
    elif is_object_array(b) and not isinstance(a, np.ndarray):
        a = _promote_const(b, a)
    return np.maximum(a, b)


def minimum(a, b):
    if isinstance(a, AdScalar) or isinstance(b, AdScalar):
        return a if _value_of(a) <= _value_of(b) else b
    if is_object_array(a) and not isinstance(b, np.ndarray):
        b = _promote_const(a, b)
    elif is_object_array(b) and not isinstance(a, np.ndarray):
        a = _promote_const(b, a)
    return np.minimum(a, b)


def where(cond, a, b):
    """Branch on a value-level condition; both branches must be NaN-free."""
    if isinstance(a, AdScalar) or isinstance(b, AdScalar):
        return a if cond else b
    return np.where(cond, a, b)


def lift_unary(x, f, df, d2f, np_fn=None):
    """Apply a custom scalar primitive with explicit derivative rules.

    f/df/d2f act on float values; np_fn (default: vectorized f) is used on
    plain float input.
    """
    if isinstance(x, AdScalar):
        return x.apply_unary(f, df, d2f)
    if is_object_array(x):
        return np.frompyfunc(lambda e: lift_unary(e, f, df, d2f, np_fn), 1, 1)(x)
    if np_fn is not None:
        return np_fn(x)
    if isinstance(x, np.ndarray):
        return np.vectorize(f, otypes=[float])(x)
    return f(x)
