"""Hot inner loops of the max-plus recursions.

Every kernel exists in two flavours: a numba ``@njit`` build and a plain
numpy/python build of the same algorithm. The numba build is used when numba
imports cleanly and ``MPQUEUE_DISABLE_NUMBA`` is unset (or ``0``); the flag is
read once, at import time.

Array conventions (all ``float64``, ε encoded as ``-inf``):

* ``tau`` has shape ``(m, K)``; row ``r`` is a stage, column ``k - 1`` is
  customer ``k``.
* A departure array ``D`` has shape ``(m, K + 1)``; column 0 holds the initial
  value ``e = 0`` and column ``k`` holds ``D(k)``.
"""
import logging
import os

import numpy as np

NEG_INF = -np.inf

_flag = os.environ.get("MPQUEUE_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    if _disabled:
        raise ImportError
    import numba

    logging.getLogger("numba").setLevel(logging.WARNING)
except ImportError:
    numba = None

USE_NUMBA = numba is not None
BACKEND = "numba" if USE_NUMBA else "numpy"


def _jit(func):
    if USE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


# --- matrix products -------------------------------------------------------

def _matvec_loops(M, v):
    rows, cols = M.shape
    out = np.empty(rows)
    for i in range(rows):
        acc = NEG_INF
        for j in range(cols):
            t = M[i, j] + v[j]
            if t > acc:
                acc = t
        out[i] = acc
    return out


def _matmul_loops(A, B):
    rows, inner = A.shape
    cols = B.shape[1]
    out = np.empty((rows, cols))
    for i in range(rows):
        for j in range(cols):
            acc = NEG_INF
            for l in range(inner):
                t = A[i, l] + B[l, j]
                if t > acc:
                    acc = t
            out[i, j] = acc
    return out


def _matvec_numpy(M, v):
    return np.max(M + v[np.newaxis, :], axis=1)


def _matmul_numpy(A, B):
    return np.max(A[:, :, np.newaxis] + B[np.newaxis, :, :], axis=1)


# --- transition-matrix construction -----------------------------------------

def _fill_lower_loops(col, out):
    m = col.shape[0]
    for i in range(m):
        for j in range(m):
            out[i, j] = NEG_INF
    for j in range(m):
        acc = 0.0
        for i in range(j, m):
            acc += col[i]
            out[i, j] = acc


def _fill_lower_numpy(col, out):
    out.fill(NEG_INF)
    for j in range(col.shape[0]):
        out[j:, j] = np.cumsum(col[j:])


if USE_NUMBA:
    matvec = numba.njit(cache=True)(_matvec_loops)
    matmul = numba.njit(cache=True)(_matmul_loops)
    fill_lower = numba.njit(cache=True)(_fill_lower_loops)
else:
    matvec = _matvec_numpy
    matmul = _matmul_numpy
    fill_lower = _fill_lower_numpy


@_jit
def fill_tandem_matrix(col, out, zero_buffer):
    """Write the open-tandem transition matrix for one customer into ``out``.

    ``out[i, j]`` is the sum of ``col[j..i]`` for ``j <= i``; with
    ``zero_buffer`` the interior superdiagonal (rows 1..m-2) is set to 0.
    """
    fill_lower(col, out)
    if zero_buffer:
        for i in range(1, col.shape[0] - 1):
            out[i, i + 1] = 0.0


@_jit
def fill_closed_matrices(col, R, S):
    n = col.shape[0]
    fill_lower(col, R)
    for i in range(n):
        for j in range(n - 1):
            S[i, j] = NEG_INF
        S[i, n - 1] = R[i, 0]


# --- recursions ------------------------------------------------------------

@_jit
def open_matrix_recursion(tau, zero_buffer):
    m, K = tau.shape
    D = np.empty((m, K + 1))
    D[:, 0] = 0.0
    T = np.empty((m, m))
    for k in range(1, K + 1):
        fill_tandem_matrix(tau[:, k - 1], T, zero_buffer)
        D[:, k] = matvec(T, D[:, k - 1])
    return D


@_jit
def closed_matrix_recursion(tau, c):
    n, K = tau.shape
    D = np.empty((n, K + 1))
    D[:, 0] = 0.0
    R = np.empty((n, n))
    S = np.empty((n, n))
    for k in range(1, K + 1):
        fill_closed_matrices(tau[:, k - 1], R, S)
        x = matvec(R, D[:, k - 1])
        if k - c >= 0:
            x = np.maximum(x, matvec(S, D[:, k - c]))
        D[:, k] = x
    return D


@_jit
def tandem_scalar(tau):
    m, K = tau.shape
    D = np.empty((m, K + 1))
    D[:, 0] = 0.0
    for k in range(1, K + 1):
        D[0, k] = tau[0, k - 1] + D[0, k - 1]
        for i in range(1, m):
            D[i, k] = tau[i, k - 1] + max(D[i - 1, k], D[i, k - 1])
    return D


@_jit
def finite_buffer_scalar(tau, buffers):
    """Tandem line under manufacturing blocking.

    ``buffers[i]`` is the capacity in front of stage ``i`` (entries 0 and 1
    are ignored). A negative capacity means unlimited.
    """
    m, K = tau.shape
    D = np.empty((m, K + 1))
    D[:, 0] = 0.0
    for k in range(1, K + 1):
        D[0, k] = tau[0, k - 1] + D[0, k - 1]
        for i in range(1, m):
            v = tau[i, k - 1] + max(D[i - 1, k], D[i, k - 1])
            if i < m - 1 and buffers[i + 1] >= 0:
                j = k - buffers[i + 1] - 1
                if j >= 0 and D[i + 1, j] > v:
                    v = D[i + 1, j]
            D[i, k] = v
    return D


@_jit
def closed_scalar(tau, c):
    n, K = tau.shape
    D = np.empty((n, K + 1))
    D[:, 0] = 0.0
    for k in range(1, K + 1):
        back = D[n - 1, k - c] if k - c >= 0 else NEG_INF
        D[0, k] = tau[0, k - 1] + max(back, D[0, k - 1])
        for i in range(1, n):
            D[i, k] = tau[i, k - 1] + max(D[i - 1, k], D[i, k - 1])
    return D
