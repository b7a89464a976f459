"""Seeded sampling, reference distributions and statistical tests.

These are the independent oracles the property suites check the maps
against: a self-contained xoshiro256++ generator (bit-reproducible across
runs and backends), uniform samplers on the simplex/sphere/ball, an
asymptotic Kolmogorov–Smirnov test, a numeric χ² CDF via the regularized
incomplete gamma, and the Gumbel / multivariate-Student samplers behind the
inference demos.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels as _k
from ._errors import DomainError, ShapeError
from .linalg import cholesky

EULER_GAMMA = 0.5772156649015329


class Rng:
    """xoshiro256++ stream seeded via splitmix64.

    Identical ``(seed, stream)`` pairs reproduce identical draws; independent
    substreams come from :meth:`substream`.
    """

    def __init__(self, seed=0, stream=0):
        self.seed = int(seed)
        self.stream = int(stream)
        self._state = _k.seed_state(self.seed, self.stream)

    def substream(self, stream):
        """An independent generator for the same seed."""
        return Rng(self.seed, stream)

    def uniform(self, shape=()):
        """Uniform(0,1) on the open interval."""
        shape = (shape,) if np.ndim(shape) == 0 and not isinstance(shape, tuple) else tuple(shape)
        count = int(np.prod(shape)) if shape else 1
        out = _k.uniform_open(self._state, count)
        return out.reshape(shape) if shape else float(out[0])

    def logistic(self, shape=()):
        u = self.uniform(shape)
        return np.log(u) - np.log1p(-u)

    def std_normal(self, shape=()):
        """Standard normals via Box–Muller (pairs of uniforms)."""
        shape = (shape,) if np.ndim(shape) == 0 and not isinstance(shape, tuple) else tuple(shape)
        count = int(np.prod(shape)) if shape else 1
        pairs = (count + 1) // 2
        u1 = _k.uniform_open(self._state, pairs)
        u2 = _k.uniform_open(self._state, pairs)
        r = np.sqrt(-2.0 * np.log(u1))
        ang = 2.0 * math.pi * u2
        z = np.concatenate([r * np.cos(ang), r * np.sin(ang)])[:count]
        return z.reshape(shape) if shape else float(z[0])


def sample_logistic(rng, shape=()):
    """Draws from the standard Logistic distribution (CDF expit)."""
    return rng.logistic(shape)


def sample_std_normal(rng, shape=()):
    return rng.std_normal(shape)


def _size_prefix(size):
    return () if size is None else (int(size),)


def sample_uniform_simplex(rng, n, size=None):
    """Uniform on the open simplex with n+1 components (normalized exponentials)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    e = -np.log(rng.uniform(_size_prefix(size) + (n + 1,)))
    return e / np.sum(e, axis=-1, keepdims=True)


def sample_uniform_sphere(rng, n, size=None):
    """Uniform on the radius-1 sphere in ℝⁿ⁺¹ (normalized Gaussians)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    g = rng.std_normal(_size_prefix(size) + (n + 1,))
    return g / np.sqrt(np.sum(g * g, axis=-1, keepdims=True))


def sample_uniform_ball(rng, n, size=None):
    """Uniform in the open unit ball of ℝⁿ: sphere direction × U^(1/n)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    g = rng.std_normal(_size_prefix(size) + (n,))
    g = g / np.sqrt(np.sum(g * g, axis=-1, keepdims=True))
    r = rng.uniform(_size_prefix(size) + (1,)) ** (1.0 / n)
    return g * r


def ks_test(sample, cdf):
    """One-sample Kolmogorov–Smirnov test with the asymptotic p-value.

    Returns ``(statistic, p_value)``; requires at least 50 observations.
    """
    x = np.sort(np.asarray(sample, dtype=float).reshape(-1))
    n = x.shape[0]
    if n < 50:
        raise DomainError(f"ks_test needs at least 50 observations, got {n}")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d = max(np.max(i / n - f), np.max(f - (i - 1) / n))
    lam = (math.sqrt(n) + 0.12 + 0.11 / math.sqrt(n)) * d
    terms = np.arange(1, 101)
    p = 2.0 * np.sum((-1.0) ** (terms - 1) * np.exp(-2.0 * (terms * lam) ** 2))
    return float(d), float(min(max(p, 0.0), 1.0))


def chi2_cdf_numeric(n, y):
    """χ²ₙ CDF as the regularized lower incomplete gamma P(n/2, y/2).

    Series for y < n+2, Lentz continued fraction otherwise; absolute error
    below 1e-12.  Accepts scalar or array y.
    """
    if n < 1 or int(n) != n:
        raise DomainError(f"n must be an integer >= 1, got {n}")
    y_arr = np.asarray(y, dtype=float)
    out = np.vectorize(lambda v: _gammp(0.5 * n, 0.5 * v), otypes=[float])(y_arr)
    return float(out) if np.ndim(y) == 0 else out


def _gammp(a, x):
    if x < 0.0:
        raise DomainError("y must be >= 0")
    if x == 0.0:
        return 0.0
    lg = math.lgamma(a)
    if x < a + 1.0:
        # series: P(a,x) = x^a e^-x / Γ(a) Σ x^k Γ(a)/Γ(a+1+k)
        term = 1.0 / a
        total = term
        k = a
        for _ in range(1000):
            k += 1.0
            term *= x / k
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        return total * math.exp(-x + a * math.log(x) - lg)
    # Lentz's continued fraction for Q(a,x)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    q = math.exp(-x + a * math.log(x) - lg) * h
    return 1.0 - q


def sample_gumbel(rng, mu, beta, n):
    """n Gumbel(μ, β) draws via μ − β·log(−log U)."""
    mu, beta = float(mu), float(beta)
    if not (beta > 0.0):
        raise DomainError("beta must be positive")
    u = rng.uniform((int(n),))
    return mu - beta * np.log(-np.log(u))


def _sample_gamma(rng, a, size):
    """Gamma(a, 1) draws by Marsaglia–Tsang squeeze (boosted for a < 1)."""
    a = float(a)
    boost = None
    if a < 1.0:
        boost = rng.uniform((size,)) ** (1.0 / a)
        a = a + 1.0
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    filled = 0
    while filled < size:
        m = size - filled
        x = rng.std_normal((m,))
        v = (1.0 + c * x) ** 3
        u = rng.uniform((m,))
        ok = (v > 0) & (np.log(u) < 0.5 * x * x + d - d * v + d * np.log(np.where(v > 0, v, 1.0)))
        acc = np.where(v > 0, d * v, 0.0)[ok]
        out[filled : filled + acc.shape[0]] = acc
        filled += acc.shape[0]
    if boost is not None:
        out *= boost
    return out


def sample_multivariate_student(rng, mu, Sigma, nu, n):
    """n draws of the multivariate Student: μ + Cholesky(Σ)·z / √(χ²ν/ν)."""
    mu = np.asarray(mu, dtype=float)
    Sigma = np.asarray(Sigma, dtype=float)
    nu = float(nu)
    if not (nu > 0.0):
        raise DomainError("nu must be positive")
    if mu.ndim != 1 or Sigma.shape != (mu.shape[0], mu.shape[0]):
        raise ShapeError("mu must be a p-vector and Sigma a matching p x p matrix")
    L = cholesky(Sigma)
    p = mu.shape[0]
    z = rng.std_normal((int(n), p))
    chi2 = 2.0 * _sample_gamma(rng, 0.5 * nu, int(n))
    return mu + (z @ L.T) / np.sqrt(chi2 / nu)[:, None]
