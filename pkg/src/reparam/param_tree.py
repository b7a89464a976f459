"""Composable parametrization specs and flat-vector packing.

A spec describes a constrained parameter space as a tree: leaves are scalar,
vector or matrix spaces (optionally shape-lifted over leading axes), inner
nodes are tuples or named tuples.  ``reals1d_to_params`` consumes a flat real
vector depth-first in declaration order — within a shaped leaf row-major over
the shape, then the leaf's intrinsic coordinates — and ``params_to_reals1d``
is the exact left inverse.  ``parse_spec``/``render`` give the textual form
used by the CLI.

Specs are immutable (frozen dataclasses) and their size is known without any
parameter value.
"""

from __future__ import annotations

import collections
import math
import re
from dataclasses import dataclass

import numpy as np

from . import _dispatch as _m
from . import matrix_maps as mm
from . import scalar_maps as sm
from . import vector_maps as vm
from ._errors import DomainError, ParseError, ShapeError


def _prod(shape):
    out = 1
    for d in shape:
        out *= d
    return out


def _norm_shape(shape):
    if shape is None:
        return ()
    if isinstance(shape, (int, np.integer)):
        shape = (int(shape),)
    shape = tuple(int(d) for d in shape)
    if any(d < 1 for d in shape):
        raise DomainError(f"shape entries must be positive, got {shape}")
    return shape


def _norm_scale(scale):
    """Scale hyper-parameter: positive float or tuple of positive floats."""
    if np.ndim(scale) == 0:
        scale = float(scale)
        if not (scale > 0.0 and math.isfinite(scale)):
            raise DomainError(f"scale must be positive and finite, got {scale}")
        return scale
    scale = tuple(float(v) for v in scale)
    if any(not (v > 0.0 and math.isfinite(v)) for v in scale):
        raise DomainError(f"scale entries must be positive and finite, got {scale}")
    return scale


def _norm_dim(dim):
    if int(dim) != dim or dim < 1:
        raise DomainError(f"dim must be an integer >= 1, got {dim}")
    return int(dim)


class ParamSpec:
    """Base class for parametrization specs."""

    @property
    def size(self):
        raise NotImplementedError

    def _forward(self, block):
        raise NotImplementedError

    def _inverse(self, value):
        raise NotImplementedError

    def render(self):
        raise NotImplementedError

    def __str__(self):
        return self.render()


class _Leaf(ParamSpec):
    _kind = None  # canonical grammar name

    def _in_len(self):
        """Intrinsic number of reals consumed per leaf instance."""
        raise NotImplementedError

    @property
    def size(self):
        return self._in_len() * _prod(self.shape)

    def _apply(self, block):
        raise NotImplementedError

    def _unapply(self, arr):
        raise NotImplementedError

    def _value_trailing(self):
        """Trailing shape of one un-lifted value."""
        raise NotImplementedError

    def _forward(self, block):
        k = self._in_len()
        block = block.reshape(self.shape + (k,))
        out = self._apply(block)
        if self.shape == () and self._value_trailing() == ():
            return out[()] if isinstance(out, np.ndarray) else out
        return out

    def _inverse(self, value):
        trailing = self._value_trailing()
        arr = np.asarray(value)
        expected = self.shape + trailing
        if arr.shape != expected:
            raise ShapeError(f"expected value of shape {expected}, got {arr.shape}")
        if trailing == ():
            arr = arr[..., None]
        return np.asarray(self._unapply(arr)).reshape(-1)

    def _render_args(self):
        return []

    def render(self):
        return f"{self._kind}({', '.join(self._render_args())})"


def _fmt_value(v):
    if isinstance(v, tuple):
        inner = ",".join(_fmt_value(e) for e in v)
        return f"({inner},)" if len(v) == 1 else f"({inner})"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _render_kw(pairs):
    return [f"{k}={_fmt_value(v)}" for k, v in pairs]


# -- scalar leaves ------------------------------------------------------------

class _ScalarLeaf(_Leaf):
    def _in_len(self):
        return 1

    def _value_trailing(self):
        return ()

    def _apply(self, block):
        return self._map(block[..., 0])

    def _unapply(self, arr):
        return self._unmap(arr[..., 0])


@dataclass(frozen=True)
class Real(_ScalarLeaf):
    shape: tuple = ()
    loc: float = 0.0
    scale: float = 1.0
    _kind = "real"

    def __post_init__(self):
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        object.__setattr__(self, "loc", float(self.loc))
        object.__setattr__(self, "scale", _norm_scale(self.scale))
        if not math.isfinite(self.loc):
            raise DomainError("loc must be finite")

    def _map(self, x):
        return self.loc + self.scale * x

    def _unmap(self, y):
        return (y - self.loc) / self.scale

    def _render_args(self):
        kw = []
        if self.shape != ():
            kw.append(("shape", self.shape))
        if self.loc != 0.0:
            kw.append(("loc", self.loc))
        if self.scale != 1.0:
            kw.append(("scale", self.scale))
        return _render_kw(kw)


class _HalfLineLeaf(_ScalarLeaf):
    def _render_args(self):
        kw = []
        if getattr(self, "a", None) is not None and "a" in self.__dataclass_fields__:
            kw.append(("a", self.a))
        if self.shape != ():
            kw.append(("shape", self.shape))
        if self.scale != 1.0:
            kw.append(("scale", self.scale))
        return _render_kw(kw)


@dataclass(frozen=True)
class RealPositive(_HalfLineLeaf):
    shape: tuple = ()
    scale: float = 1.0
    _kind = "realpos"

    def __post_init__(self):
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        object.__setattr__(self, "scale", float(_norm_scale(self.scale)))

    def _map(self, x):
        return sm.softplus(x, self.scale)

    def _unmap(self, y):
        return sm.softplusinv(y, self.scale)


@dataclass(frozen=True)
class RealNegative(_HalfLineLeaf):
    shape: tuple = ()
    scale: float = 1.0
    _kind = "realneg"

    def __post_init__(self):
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        object.__setattr__(self, "scale", float(_norm_scale(self.scale)))

    def _map(self, x):
        return sm.reals_to_half_line(x, 0.0, side="upper", s=self.scale)

    def _unmap(self, y):
        return sm.half_line_to_reals(y, 0.0, side="upper", s=self.scale)


@dataclass(frozen=True)
class RealLowerBounded(_HalfLineLeaf):
    a: float
    shape: tuple = ()
    scale: float = 1.0
    _kind = "reallower"

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        object.__setattr__(self, "scale", float(_norm_scale(self.scale)))
        if not math.isfinite(self.a):
            raise DomainError("bound a must be finite")

    def _map(self, x):
        return sm.reals_to_half_line(x, self.a, side="lower", s=self.scale)

    def _unmap(self, y):
        return sm.half_line_to_reals(y, self.a, side="lower", s=self.scale)


@dataclass(frozen=True)
class RealUpperBounded(_HalfLineLeaf):
    a: float
    shape: tuple = ()
    scale: float = 1.0
    _kind = "realupper"

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        object.__setattr__(self, "scale", float(_norm_scale(self.scale)))
        if not math.isfinite(self.a):
            raise DomainError("bound a must be finite")

    def _map(self, x):
        return sm.reals_to_half_line(x, self.a, side="upper", s=self.scale)

    def _unmap(self, y):
        return sm.half_line_to_reals(y, self.a, side="upper", s=self.scale)


@dataclass(frozen=True)
class RealBounded01(_ScalarLeaf):
    shape: tuple = ()
    _kind = "bounded01"

    def __post_init__(self):
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _map(self, x):
        return sm.expit(x)

    def _unmap(self, y):
        return sm.logit(y)

    def _render_args(self):
        return _render_kw([("shape", self.shape)] if self.shape != () else [])


@dataclass(frozen=True)
class RealBounded(_ScalarLeaf):
    a: float
    b: float
    shape: tuple = ()
    _kind = "bounded"

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DomainError(f"bounds must satisfy a < b, got ({self.a}, {self.b})")

    def _map(self, x):
        return sm.reals_to_interval(x, self.a, self.b)

    def _unmap(self, y):
        return sm.interval_to_reals(y, self.a, self.b)

    def _render_args(self):
        kw = [("a", self.a), ("b", self.b)]
        if self.shape != ():
            kw.append(("shape", self.shape))
        return _render_kw(kw)


# -- vector leaves ------------------------------------------------------------

class _VectorLeaf(_Leaf):
    def _in_len(self):
        return self.dim

    def _render_args(self):
        args = [str(self.dim)]
        if getattr(self, "radius", 1.0) != 1.0:
            args.append(f"radius={_fmt_value(self.radius)}")
        if self.shape != ():
            args.append(f"shape={_fmt_value(self.shape)}")
        return args


@dataclass(frozen=True)
class VectorSimplex(_VectorLeaf):
    dim: int
    shape: tuple = ()
    _kind = "simplex"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _value_trailing(self):
        return (self.dim + 1,)

    def _apply(self, block):
        return vm.reals_to_simplex(block)

    def _unapply(self, arr):
        return vm.simplex_to_reals(arr)


@dataclass(frozen=True)
class VectorSphere(_VectorLeaf):
    dim: int
    radius: float = 1.0
    shape: tuple = ()
    _kind = "sphere"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError("radius must be positive and finite")

    def _value_trailing(self):
        return (self.dim + 1,)

    def _apply(self, block):
        return vm.reals_to_sphere(block, self.radius)

    def _unapply(self, arr):
        return vm.sphere_to_reals(arr, self.radius)


@dataclass(frozen=True)
class VectorHalfSphere(_VectorLeaf):
    dim: int
    radius: float = 1.0
    shape: tuple = ()
    _kind = "halfsphere"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError("radius must be positive and finite")

    def _value_trailing(self):
        return (self.dim + 1,)

    def _apply(self, block):
        return vm.reals_to_half_sphere(block, self.radius)

    def _unapply(self, arr):
        return vm.half_sphere_to_reals(arr, self.radius)


@dataclass(frozen=True)
class VectorBall(_VectorLeaf):
    dim: int
    radius: float = 1.0
    shape: tuple = ()
    _kind = "ball"

    def __post_init__(self):
        dim = _norm_dim(self.dim)
        if dim < 2:
            raise DomainError("ball dim must be >= 2")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise DomainError("radius must be positive and finite")

    def _value_trailing(self):
        return (self.dim,)

    def _apply(self, block):
        return vm.reals_to_ball(block, self.radius)

    def _unapply(self, arr):
        return vm.ball_to_reals(arr, self.radius)


# -- matrix leaves ------------------------------------------------------------

class _MatrixLeaf(_Leaf):
    def _value_trailing(self):
        return (self.dim, self.dim)

    def _apply(self, block):
        return mm.vectorize_trailing2(self._mat_fwd, block)

    def _unapply(self, arr):
        return mm.vectorize_trailing2(self._mat_inv, arr, in_ndim=2)

    def _render_args(self):
        args = [str(self.dim)]
        if getattr(self, "scale", 1.0) != 1.0:
            args.append(f"scale={_fmt_value(self.scale)}")
        if self.shape != ():
            args.append(f"shape={_fmt_value(self.shape)}")
        return args


@dataclass(frozen=True)
class MatrixDiag(_MatrixLeaf):
    dim: int
    shape: tuple = ()
    _kind = "diag"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _in_len(self):
        return self.dim

    def _mat_fwd(self, x):
        return mm.reals_to_diag(x)

    def _mat_inv(self, M):
        return mm.diag_to_reals(M)


@dataclass(frozen=True)
class MatrixDiagPosDef(_MatrixLeaf):
    dim: int
    scale: float = 1.0
    shape: tuple = ()
    _kind = "diagpd"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "scale", _norm_scale(self.scale))
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _in_len(self):
        return self.dim

    def _mat_fwd(self, x):
        return mm.reals_to_diag_pd(x, np.asarray(self.scale))

    def _mat_inv(self, M):
        return mm.diag_pd_to_reals(M, np.asarray(self.scale))


@dataclass(frozen=True)
class MatrixSym(_MatrixLeaf):
    dim: int
    shape: tuple = ()
    _kind = "sym"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _in_len(self):
        return self.dim * (self.dim + 1) // 2

    def _mat_fwd(self, x):
        return mm.reals_to_sym(x)

    def _mat_inv(self, M):
        return mm.sym_to_reals(M)


@dataclass(frozen=True)
class MatrixSymPosDef(_MatrixLeaf):
    dim: int
    scale: float = 1.0
    shape: tuple = ()
    _kind = "spd"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "scale", _norm_scale(self.scale))
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _in_len(self):
        return self.dim * (self.dim + 1) // 2

    def _mat_fwd(self, x):
        return mm.reals_to_spd(x, np.asarray(self.scale))

    def _mat_inv(self, M):
        return mm.spd_to_reals(M, np.asarray(self.scale))


@dataclass(frozen=True)
class MatrixCorrelation(_MatrixLeaf):
    dim: int
    shape: tuple = ()
    _kind = "corr"

    def __post_init__(self):
        object.__setattr__(self, "dim", _norm_dim(self.dim))
        object.__setattr__(self, "shape", _norm_shape(self.shape))

    def _in_len(self):
        return self.dim * (self.dim - 1) // 2

    def _mat_fwd(self, x):
        return mm.reals_to_corr(x)

    def _mat_inv(self, M):
        return mm.corr_to_reals(M)


# -- products -----------------------------------------------------------------

@dataclass(frozen=True)
class Tuple(ParamSpec):
    children: tuple

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (tuple, list)):
            children = tuple(children[0])
        if not all(isinstance(c, ParamSpec) for c in children):
            raise DomainError("Tuple children must be ParamSpec instances")
        object.__setattr__(self, "children", tuple(children))

    @property
    def size(self):
        return sum(c.size for c in self.children)

    def _forward(self, block):
        out, pos = [], 0
        for i, c in enumerate(self.children):
            with _leaf_path(f"[{i}]"):
                out.append(c._forward(block[pos : pos + c.size]))
            pos += c.size
        return tuple(out)

    def _inverse(self, value):
        if not isinstance(value, (tuple, list)) or len(value) != len(self.children):
            raise ShapeError(f"expected a tuple of {len(self.children)} values")
        parts = []
        for i, (c, v) in enumerate(zip(self.children, value)):
            with _leaf_path(f"[{i}]"):
                parts.append(c._inverse(v))
        return _concat_parts(parts)

    def render(self):
        return f"tuple({', '.join(c.render() for c in self.children)})"


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class NamedTuple(ParamSpec):
    fields: tuple  # of (name, spec) pairs, declaration order

    def __init__(self, **named):
        if not named:
            raise DomainError("NamedTuple needs at least one field")
        for name, spec in named.items():
            if not _NAME_RE.match(name):
                raise DomainError(f"invalid field name {name!r}")
            if not isinstance(spec, ParamSpec):
                raise DomainError(f"field {name!r} must be a ParamSpec")
        object.__setattr__(self, "fields", tuple(named.items()))

    @property
    def size(self):
        return sum(spec.size for _, spec in self.fields)

    def _result_type(self):
        return collections.namedtuple("Params", [name for name, _ in self.fields])

    def _forward(self, block):
        out, pos = [], 0
        for name, spec in self.fields:
            with _leaf_path(f".{name}"):
                out.append(spec._forward(block[pos : pos + spec.size]))
            pos += spec.size
        return self._result_type()(*out)

    def _inverse(self, value):
        parts = []
        for name, spec in self.fields:
            if not hasattr(value, name):
                raise ShapeError(f"value has no field {name!r}")
            with _leaf_path(f".{name}"):
                parts.append(spec._inverse(getattr(value, name)))
        return _concat_parts(parts)

    def render(self):
        inner = ", ".join(f"{name}={spec.render()}" for name, spec in self.fields)
        return f"named({inner})"


class _leaf_path:
    """Context manager prefixing map errors with the offending tree path."""

    def __init__(self, path):
        self.path = path

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, (DomainError, ShapeError)):
            cls = ShapeError if isinstance(exc, ShapeError) else DomainError
            raise cls(f"at {self.path}: {exc}") from exc
        return False


def _concat_parts(parts):
    parts = [np.asarray(p).reshape(-1) for p in parts]
    if any(p.dtype == object for p in parts):
        return np.concatenate([p.astype(object) for p in parts])
    return np.concatenate([p.astype(float) for p in parts]) if parts else np.zeros(0)


# -- public operations --------------------------------------------------------

def size(spec):
    """Number of unconstrained reals the spec consumes."""
    return spec.size


def reals1d_to_params(spec, theta):
    """Map a flat vector of size(spec) reals to the constrained value tree."""
    theta = np.asarray(theta)
    if theta.ndim == 0:
        theta = theta[None]
    if theta.ndim != 1:
        raise ShapeError(f"theta must be 1-D, got shape {theta.shape}")
    if theta.shape[0] != spec.size:
        raise ShapeError(f"theta length {theta.shape[0]} != spec size {spec.size}")
    if theta.dtype != object:
        theta = theta.astype(float)
    if not np.all(np.isfinite(_m.values(theta))):
        raise DomainError("theta must be finite")
    return spec._forward(theta)


def params_to_reals1d(spec, value):
    """Inverse of :func:`reals1d_to_params`."""
    out = spec._inverse(value)
    if out.shape[0] != spec.size:
        raise ShapeError(f"internal packing produced length {out.shape[0]}")
    return out


# -- textual grammar ----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<punct>[(),=]))"
)

_KINDS = {
    "real": (Real, ()),
    "realpos": (RealPositive, ()),
    "realneg": (RealNegative, ()),
    "reallower": (RealLowerBounded, ("a",)),
    "realupper": (RealUpperBounded, ("a",)),
    "bounded01": (RealBounded01, ()),
    "bounded": (RealBounded, ("a", "b")),
    "simplex": (VectorSimplex, ("dim",)),
    "sphere": (VectorSphere, ("dim",)),
    "halfsphere": (VectorHalfSphere, ("dim",)),
    "ball": (VectorBall, ("dim",)),
    "diag": (MatrixDiag, ("dim",)),
    "diagpd": (MatrixDiagPosDef, ("dim",)),
    "sym": (MatrixSym, ("dim",)),
    "spd": (MatrixSymPosDef, ("dim",)),
    "corr": (MatrixCorrelation, ("dim",)),
}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise ParseError(pos, f"unexpected character {text[pos:].lstrip()[0]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(tok[2], f"expected {want!r}, got {tok[1]!r}")
        return tok

    def parse(self):
        spec = self.parse_spec()
        tok = self.peek()
        if tok[0] is not None:
            raise ParseError(tok[2], f"unexpected trailing input {tok[1]!r}")
        return spec

    def parse_spec(self):
        kind, value, pos = self.expect("name")
        name = value.lower()
        if name == "tuple":
            return self.parse_tuple()
        if name == "named":
            return self.parse_named()
        if name not in _KINDS:
            raise ParseError(pos, f"unknown kind {value!r}")
        return self.parse_leaf(name, pos)

    def parse_tuple(self):
        self.expect("punct", "(")
        children = [self.parse_spec()]
        while self.peek()[1] == ",":
            self.next()
            children.append(self.parse_spec())
        self.expect("punct", ")")
        return Tuple(*children)

    def parse_named(self):
        self.expect("punct", "(")
        named = {}
        while True:
            _, field, pos = self.expect("name")
            if field in named:
                raise ParseError(pos, f"duplicate field name {field!r}")
            self.expect("punct", "=")
            named[field] = self.parse_spec()
            if self.peek()[1] != ",":
                break
            self.next()
        self.expect("punct", ")")
        return NamedTuple(**named)

    def parse_leaf(self, name, start):
        cls, positional = _KINDS[name]
        self.expect("punct", "(")
        args, kwargs = [], {}
        if self.peek()[1] != ")":
            while True:
                tok = self.peek()
                if tok[0] == "name":
                    _, key, kpos = self.next()
                    self.expect("punct", "=")
                    key = key.lower()
                    if key in kwargs:
                        raise ParseError(kpos, f"duplicate argument {key!r}")
                    kwargs[key] = self.parse_value()
                elif kwargs:
                    raise ParseError(tok[2], "positional argument after keyword argument")
                else:
                    args.append(self.parse_value())
                if self.peek()[1] != ",":
                    break
                self.next()
        self.expect("punct", ")")
        if len(args) > len(positional):
            raise ParseError(start, f"{name} takes at most {len(positional)} positional arguments")
        for pname, val in zip(positional, args):
            if pname in kwargs:
                raise ParseError(start, f"duplicate argument {pname!r}")
            kwargs[pname] = val
        try:
            return cls(**kwargs)
        except TypeError as e:
            raise ParseError(start, f"bad arguments for {name}: {e}") from e

    def parse_value(self):
        tok = self.peek()
        if tok[1] == "(":
            self.next()
            items = []
            while self.peek()[1] != ")":
                items.append(self.parse_number())
                if self.peek()[1] == ",":
                    self.next()
                elif self.peek()[1] != ")":
                    raise ParseError(self.peek()[2], "expected ',' or ')'")
            self.expect("punct", ")")
            return tuple(items)
        return self.parse_number()

    def parse_number(self):
        kind, value, pos = self.next()
        if kind != "num":
            raise ParseError(pos, f"expected a number, got {value!r}")
        if re.fullmatch(r"[+-]?\d+", value):
            return int(value)
        return float(value)


def parse_spec(text):
    """Parse the textual spec grammar into a ParamSpec tree."""
    if not isinstance(text, str):
        raise ParseError(0, "spec must be a string")
    parser = _Parser(text)
    if not parser.tokens:
        raise ParseError(0, "empty spec")
    return parser.parse()


def render(spec):
    """Canonical textual form; parse_spec(render(s)) == s."""
    return spec.render()
