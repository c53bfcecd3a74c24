"""Max-plus scalars, vectors and matrices.

Scalars are plain Python floats with ``EPS = -inf`` as the additive identity
(ε) and ``E = 0.0`` as the multiplicative identity (e). Vectors and matrices
are read-only ``float64`` numpy arrays. ``+inf`` and NaN are not elements of
the semiring and are rejected wherever values enter through :func:`as_matrix`
or :func:`as_vector`.
"""
import math
from functools import reduce

import numpy as np

from . import _kernels
from .errors import DimensionError, InputError

EPS = float("-inf")
E = 0.0


def is_eps(x):
    return x == EPS


def oplus(a, b):
    """``a ⊕ b = max(a, b)``; ε is the least element."""
    return a if a >= b else b


def otimes(a, b):
    """``a ⊗ b = a + b``, with ε absorbing."""
    if a == EPS or b == EPS:
        return EPS
    return a + b


def big_oplus(xs):
    return reduce(oplus, xs, EPS)


def big_otimes(xs):
    return reduce(otimes, xs, E)


def _coerce(x):
    if isinstance(x, str):
        if x.strip().lower() in ("eps", "ε", "-inf"):
            return EPS
        x = float(x)
    if x is None:
        return EPS
    return float(x)


def _freeze(arr):
    if np.isnan(arr).any() or np.isposinf(arr).any():
        raise InputError("max-plus values must be finite or eps")
    arr.setflags(write=False)
    return arr


def as_vector(values):
    """Build a max-plus vector; ``None`` and the string ``"eps"`` mean ε."""
    arr = np.array([_coerce(x) for x in np.ravel(np.asarray(values, dtype=object))],
                   dtype=np.float64)
    if arr.size == 0:
        raise DimensionError("a max-plus vector needs at least one entry")
    return _freeze(arr)


def as_matrix(rows):
    """Build a max-plus matrix from nested rows or a 2-D array."""
    if isinstance(rows, np.ndarray) and rows.dtype.kind == "f":
        arr = np.array(rows, dtype=np.float64)
    else:
        arr = np.array([[_coerce(x) for x in row] for row in rows], dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"a max-plus matrix must be a non-empty 2-D array, got shape {arr.shape}")
    return _freeze(arr)


def identity(n):
    if n < 1:
        raise DimensionError("identity size must be positive")
    arr = np.full((n, n), EPS)
    np.fill_diagonal(arr, E)
    return _freeze(arr)


def eps_matrix(rows, cols):
    return _freeze(np.full((rows, cols), EPS))


def mat_vec(M, v):
    M = np.asarray(M, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if M.ndim != 2 or v.ndim != 1 or M.shape[1] != v.shape[0]:
        raise DimensionError(f"cannot apply a {M.shape} matrix to a vector of shape {v.shape}")
    return _freeze(_kernels.matvec(np.ascontiguousarray(M), np.ascontiguousarray(v)))


def mat_mul(A, B):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot multiply {A.shape} by {B.shape}")
    return _freeze(_kernels.matmul(np.ascontiguousarray(A), np.ascontiguousarray(B)))


def mat_oplus(A, B):
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise DimensionError(f"cannot add {A.shape} and {B.shape}")
    return _freeze(np.maximum(A, B))


def format_value(x):
    """Render one scalar: ``eps`` for ε, integers without a fraction, else repr."""
    x = float(x)
    if x == EPS:
        return "eps"
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def parse_value(text):
    text = text.strip()
    if text == "eps":
        return EPS
    x = float(text)
    if math.isnan(x) or x == math.inf:
        raise InputError(f"not a max-plus value: {text!r}")
    return x


def render_matrix(M):
    """Aligned plain-text rendering, one matrix row per line."""
    cells = [[format_value(x) for x in row] for row in np.asarray(M)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
