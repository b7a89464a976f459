"""Backend-selectable hot kernels: bulk RNG fill and batched simplex maps.

The environment variable ``REPARAM_KERNELS`` picks the backend at import:

* ``auto`` (default): numba-compiled kernels when numba imports, else numpy
* ``numba``: require numba, raise if unavailable
* ``numpy``: force the pure-numpy/python reference path

Both backends implement exactly the same arithmetic; tests compare them and
``benchmarks/bench_kernels.py`` measures the gap.  The RNG kernel advances a
xoshiro256++ state and fills a uint64 buffer; the simplex kernels evaluate
the stick-breaking forward/inverse maps row by row on 2-D float batches.
"""

from __future__ import annotations

import os

import numpy as np

_MASK = (1 << 64) - 1

_requested = os.environ.get("REPARAM_KERNELS", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"REPARAM_KERNELS must be auto, numba or numpy, got {_requested!r}"
    )

_numba = None
if _requested in ("auto", "numba"):
    try:
        import numba as _numba
    except ImportError:
        if _requested == "numba":
            raise
        _numba = None

BACKEND = "numba" if _numba is not None else "numpy"


# -- xoshiro256++ -------------------------------------------------------------

def splitmix64(state):
    """One splitmix64 step; returns (new_state, output), both python ints."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def seed_state(seed, stream=0):
    """Initial xoshiro256++ state from a 64-bit seed and substream index."""
    s = (int(seed) ^ ((int(stream) * 0x9E3779B97F4A7C15) & _MASK)) & _MASK
    words = np.empty(4, dtype=np.uint64)
    for i in range(4):
        s, out = splitmix64(s)
        words[i] = out
    return words


def _fill_uint64_py(state, out):
    s0, s1, s2, s3 = (int(w) for w in state)
    for i in range(out.shape[0]):
        tmp = (s0 + s3) & _MASK
        out[i] = ((((tmp << 23) | (tmp >> 41)) & _MASK) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3


def _simplex_forward_np(x):
    n = x.shape[-1]
    k = np.arange(n, dtype=float)
    xi = -(np.log1p(np.exp(-np.abs(x))) + np.maximum(x, 0.0)) / (n - k)
    z = np.zeros_like(x[..., :1])
    logw = np.concatenate([np.log(-np.expm1(xi)), z], axis=-1)
    logw += np.concatenate([z, np.cumsum(xi, axis=-1)], axis=-1)
    logw -= np.max(logw, axis=-1, keepdims=True)
    w = np.exp(logw)
    return w / np.sum(w, axis=-1, keepdims=True)


def _simplex_inverse_np(w):
    n = w.shape[-1] - 1
    k = np.arange(n, dtype=float)
    suffix = np.flip(np.cumsum(np.flip(w[..., 1:], axis=-1), axis=-1), axis=-1)
    xi = -(n - k) * np.log1p(w[..., :n] / suffix)
    return np.log(-np.expm1(xi)) - xi


if _numba is not None:
    from numba import njit

    @njit(cache=True)
    def _fill_uint64_nb(state, out):  # pragma: no cover - measured via wrapper
        s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
        for i in range(out.shape[0]):
            tmp = s0 + s3
            out[i] = ((tmp << np.uint64(23)) | (tmp >> np.uint64(41))) + s0
            t = s1 << np.uint64(17)
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = (s3 << np.uint64(45)) | (s3 >> np.uint64(19))
        state[0], state[1], state[2], state[3] = s0, s1, s2, s3

    @njit(cache=True)
    def _simplex_forward_nb(x, out):  # pragma: no cover - measured via wrapper
        m, n = x.shape
        for r in range(m):
            c = 0.0
            mx = -np.inf
            for j in range(n):
                v = x[r, j]
                a = abs(v)
                xi = -(np.log1p(np.exp(-a)) + (v if v > 0.0 else 0.0)) / (n - j)
                lw = np.log(-np.expm1(xi)) + c
                out[r, j] = lw
                if lw > mx:
                    mx = lw
                c += xi
            out[r, n] = c
            if c > mx:
                mx = c
            s = 0.0
            for j in range(n + 1):
                e = np.exp(out[r, j] - mx)
                out[r, j] = e
                s += e
            for j in range(n + 1):
                out[r, j] /= s

    @njit(cache=True)
    def _simplex_inverse_nb(w, out):  # pragma: no cover - measured via wrapper
        m, n1 = w.shape
        n = n1 - 1
        for r in range(m):
            suffix = 0.0
            for j in range(n - 1, -1, -1):
                suffix += w[r, j + 1]
                xi = -(n - j) * np.log1p(w[r, j] / suffix)
                out[r, j] = np.log(-np.expm1(xi)) - xi
else:  # pragma: no cover - exercised when numba is absent or forced off
    _fill_uint64_nb = None
    _simplex_forward_nb = None
    _simplex_inverse_nb = None


def fill_uint64(state, count):
    """Draw ``count`` raw uint64 words, mutating ``state`` in place."""
    out = np.empty(count, dtype=np.uint64)
    if BACKEND == "numba":
        _fill_uint64_nb(state, out)
    else:
        _fill_uint64_py(state, out)
    return out


def uniform_open(state, count):
    """Uniform(0,1) doubles on the open interval from the raw 64-bit stream."""
    bits = fill_uint64(state, count)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def simplex_forward_batch(x):
    """Batched stick-breaking forward map on a 2-D float array."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if BACKEND == "numba":
        out = np.empty((x.shape[0], x.shape[1] + 1))
        _simplex_forward_nb(x, out)
        return out
    return _simplex_forward_np(x)


def simplex_inverse_batch(w):
    """Batched stick-breaking inverse map on a 2-D float array."""
    w = np.ascontiguousarray(w, dtype=np.float64)
    if BACKEND == "numba":
        out = np.empty((w.shape[0], w.shape[1] - 1))
        _simplex_inverse_nb(w, out)
        return out
    return _simplex_inverse_np(w)
