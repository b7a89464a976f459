"""Forward-mode automatic differentiation via dual and hyper-dual numbers.

``DualScalar`` carries a value and a first-derivative part, ``HyperDualScalar``
additionally carries a second direction and the mixed second derivative.  Both
expose methods named after the numpy ufuncs (``exp``, ``log1p``, ``arctan2``,
...), so numpy operations on object arrays of these scalars dispatch to the
derivative rules automatically.  Derivative parts may be floats or ndarrays
(multi-directional seeds), which the internal fast paths use to evaluate a full
gradient or Hessian in a single function call.
"""

from __future__ import annotations

import math

import numpy as np

_NUMBER = (int, float, np.integer, np.floating)


class AdScalar:
    """Base class for forward-mode differentiation scalars."""

    __slots__ = ()

    # Comparisons act on value parts, so branch selection (abs/min/max,
    # np.maximum via __gt__) follows the value, as specified.
    def __lt__(self, other):
        return self.value < _value_of(other)

    def __le__(self, other):
        return self.value <= _value_of(other)

    def __gt__(self, other):
        return self.value > _value_of(other)

    def __ge__(self, other):
        return self.value >= _value_of(other)

    # Unary primitives, all defined through apply_unary(f, f', f'').
    def exp(self):
        return self.apply_unary(math.exp, math.exp, math.exp)

    def log(self):
        return self.apply_unary(math.log, lambda v: 1.0 / v, lambda v: -1.0 / (v * v))

    def log1p(self):
        return self.apply_unary(
            math.log1p, lambda v: 1.0 / (1.0 + v), lambda v: -1.0 / (1.0 + v) ** 2
        )

    def expm1(self):
        return self.apply_unary(math.expm1, math.exp, math.exp)

    def sqrt(self):
        return self.apply_unary(
            math.sqrt, lambda v: 0.5 / math.sqrt(v), lambda v: -0.25 * v ** -1.5
        )

    def tanh(self):
        return self.apply_unary(
            math.tanh,
            lambda v: 1.0 / math.cosh(v) ** 2,
            lambda v: -2.0 * math.tanh(v) / math.cosh(v) ** 2,
        )

    def arctanh(self):
        return self.apply_unary(
            math.atanh,
            lambda v: 1.0 / (1.0 - v * v),
            lambda v: 2.0 * v / (1.0 - v * v) ** 2,
        )

    def sin(self):
        return self.apply_unary(math.sin, math.cos, lambda v: -math.sin(v))

    def cos(self):
        return self.apply_unary(math.cos, lambda v: -math.sin(v), lambda v: -math.cos(v))

    def __pow__(self, p):
        if not isinstance(p, _NUMBER):
            return NotImplemented
        p = float(p)
        return self.apply_unary(
            lambda v: v ** p,
            lambda v: p * v ** (p - 1.0),
            lambda v: p * (p - 1.0) * v ** (p - 2.0),
        )

    def __abs__(self):
        return self if self.value >= 0 else -self

    def __pos__(self):
        return self


def _value_of(x):
    return x.value if isinstance(x, AdScalar) else x


class DualScalar(AdScalar):
    """value + deriv·eps with eps² = 0 (first derivatives)."""

    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0.0):
        self.value = float(value)
        self.deriv = deriv

    def __repr__(self):
        return f"DualScalar({self.value!r}, {self.deriv!r})"

    def apply_unary(self, f, df, d2f=None):
        v = self.value
        return DualScalar(f(v), df(v) * self.deriv)

    def __add__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value + other.value, self.deriv + other.deriv)
        if isinstance(other, _NUMBER):
            return DualScalar(self.value + other, self.deriv)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.deriv)

    def __sub__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.value - other.value, self.deriv - other.deriv)
        if isinstance(other, _NUMBER):
            return DualScalar(self.value - other, self.deriv)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _NUMBER):
            return DualScalar(other - self.value, -self.deriv)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(
                self.value * other.value,
                self.deriv * other.value + self.value * other.deriv,
            )
        if isinstance(other, _NUMBER):
            return DualScalar(self.value * other, self.deriv * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, DualScalar):
            inv = 1.0 / other.value
            return DualScalar(
                self.value * inv,
                (self.deriv - self.value * inv * other.deriv) * inv,
            )
        if isinstance(other, _NUMBER):
            inv = 1.0 / other
            return DualScalar(self.value * inv, self.deriv * inv)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _NUMBER):
            inv = 1.0 / self.value
            return DualScalar(other * inv, -other * inv * inv * self.deriv)
        return NotImplemented

    def arctan2(self, other):
        y, dy = self.value, self.deriv
        if isinstance(other, DualScalar):
            x, dx = other.value, other.deriv
        else:
            x, dx = float(other), 0.0
        r = x * x + y * y
        return DualScalar(math.atan2(y, x), (x * dy - y * dx) / r)


def _outer(a, b):
    # np.multiply.outer handles scalar and ndarray derivative parts alike.
    return np.multiply.outer(a, b)


class HyperDualScalar(AdScalar):
    """Second-order forward scalar: value, two first directions, mixed term.

    For f(x(t,u)) the parts transport value, d/dt, d/du and d²/dtdu; seeding
    d1 = d2 = basis vectors yields a full Hessian row/column structure.
    """

    __slots__ = ("value", "d1", "d2", "d12")

    def __init__(self, value, d1=0.0, d2=0.0, d12=0.0):
        self.value = float(value)
        self.d1 = d1
        self.d2 = d2
        self.d12 = d12

    def __repr__(self):
        return f"HyperDualScalar({self.value!r}, {self.d1!r}, {self.d2!r}, {self.d12!r})"

    def apply_unary(self, f, df, d2f):
        v = self.value
        g = df(v)
        return HyperDualScalar(
            f(v),
            g * self.d1,
            g * self.d2,
            g * self.d12 + d2f(v) * _outer(self.d1, self.d2),
        )

    def __add__(self, other):
        if isinstance(other, HyperDualScalar):
            return HyperDualScalar(
                self.value + other.value,
                self.d1 + other.d1,
                self.d2 + other.d2,
                self.d12 + other.d12,
            )
        if isinstance(other, _NUMBER):
            return HyperDualScalar(self.value + other, self.d1, self.d2, self.d12)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return HyperDualScalar(-self.value, -self.d1, -self.d2, -self.d12)

    def __sub__(self, other):
        if isinstance(other, (HyperDualScalar,) + _NUMBER):
            return self + (-other if isinstance(other, HyperDualScalar) else -other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _NUMBER):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, HyperDualScalar):
            return HyperDualScalar(
                self.value * other.value,
                self.d1 * other.value + self.value * other.d1,
                self.d2 * other.value + self.value * other.d2,
                self.d12 * other.value
                + self.value * other.d12
                + _outer(self.d1, other.d2)
                + _outer(other.d1, self.d2),
            )
        if isinstance(other, _NUMBER):
            return HyperDualScalar(
                self.value * other, self.d1 * other, self.d2 * other, self.d12 * other
            )
        return NotImplemented

    __rmul__ = __mul__

    def _reciprocal(self):
        return self.apply_unary(
            lambda v: 1.0 / v, lambda v: -1.0 / (v * v), lambda v: 2.0 / v ** 3
        )

    def __truediv__(self, other):
        if isinstance(other, HyperDualScalar):
            return self * other._reciprocal()
        if isinstance(other, _NUMBER):
            return self * (1.0 / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _NUMBER):
            return self._reciprocal() * other
        return NotImplemented

    def arctan2(self, other):
        y = self
        if not isinstance(other, HyperDualScalar):
            other = HyperDualScalar(float(other))
        x = other
        yv, xv = y.value, x.value
        r = xv * xv + yv * yv
        fy = xv / r
        fx = -yv / r
        fyy = -2.0 * xv * yv / (r * r)
        fxx = 2.0 * xv * yv / (r * r)
        fxy = (yv * yv - xv * xv) / (r * r)
        return HyperDualScalar(
            math.atan2(yv, xv),
            fy * y.d1 + fx * x.d1,
            fy * y.d2 + fx * x.d2,
            fy * y.d12
            + fx * x.d12
            + fyy * _outer(y.d1, y.d2)
            + fxx * _outer(x.d1, x.d2)
            + fxy * (_outer(y.d1, x.d2) + _outer(x.d1, y.d2)),
        )


def _as_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if theta.ndim != 1:
        theta = np.atleast_1d(theta.reshape(-1))
    return theta


def _seed_dual(theta, i):
    return np.array(
        [DualScalar(t, 1.0 if j == i else 0.0) for j, t in enumerate(theta)],
        dtype=object,
    )


def gradient(f, theta):
    """Gradient of a scalar field via k single-direction dual evaluations."""
    theta = _as_theta(theta)
    k = theta.size
    out = np.empty(k)
    for i in range(k):
        r = f(_seed_dual(theta, i))
        out[i] = r.deriv if isinstance(r, DualScalar) else 0.0
    return out


def hessian(f, theta):
    """Hessian via k(k+1)/2 hyper-dual evaluations, symmetrized as (H+Hᵀ)/2."""
    theta = _as_theta(theta)
    k = theta.size
    H = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            seed = np.array(
                [
                    HyperDualScalar(
                        t, 1.0 if a == i else 0.0, 1.0 if a == j else 0.0, 0.0
                    )
                    for a, t in enumerate(theta)
                ],
                dtype=object,
            )
            r = f(seed)
            hij = r.d12 if isinstance(r, HyperDualScalar) else 0.0
            H[i, j] = hij
            H[j, i] = hij
    return 0.5 * (H + H.T)


def fd_gradient(f, theta, step_scale=1e-6):
    """Central finite differences with per-coordinate step h = s·max(1,|θᵢ|)."""
    theta = _as_theta(theta)
    k = theta.size
    out = np.empty(k)
    for i in range(k):
        h = step_scale * max(1.0, abs(theta[i]))
        tp = theta.copy()
        tm = theta.copy()
        tp[i] += h
        tm[i] -= h
        out[i] = (f(tp) - f(tm)) / (2.0 * h)
    return out


def jacobian(f, x):
    """Jacobian of a vector-valued map via one dual evaluation per input."""
    x = _as_theta(x)
    k = x.size
    cols = []
    for i in range(k):
        r = np.asarray(f(_seed_dual(x, i)))
        cols.append([e.deriv if isinstance(e, DualScalar) else 0.0 for e in r.reshape(-1)])
    return np.array(cols, dtype=float).T


# -- internal fast paths (vector-direction seeds, single evaluation) ----------
# The public gradient/hessian above keep the contract of one directional
# evaluation per coordinate (pair); these are used where many Hessians are
# needed (MLE loop) and are cross-checked against them in the tests.

def value_grad(f, theta):
    theta = _as_theta(theta)
    k = theta.size
    eye = np.eye(k)
    seed = np.array(
        [DualScalar(t, eye[i]) for i, t in enumerate(theta)], dtype=object
    )
    r = f(seed)
    if isinstance(r, DualScalar):
        return r.value, np.asarray(r.deriv, dtype=float)
    return float(r), np.zeros(k)


def value_grad_hess(f, theta):
    theta = _as_theta(theta)
    k = theta.size
    eye = np.eye(k)
    zero = np.zeros((k, k))
    seed = np.array(
        [HyperDualScalar(t, eye[i], eye[i], zero) for i, t in enumerate(theta)],
        dtype=object,
    )
    r = f(seed)
    if isinstance(r, HyperDualScalar):
        H = np.asarray(r.d12, dtype=float)
        return r.value, np.asarray(r.d1, dtype=float), 0.5 * (H + H.T)
    return float(r), np.zeros(k), np.zeros((k, k))
