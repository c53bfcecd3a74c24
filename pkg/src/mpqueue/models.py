"""Queueing-system descriptors and their per-customer transition matrices."""
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .errors import InputError, UnsupportedTopologyError

KINDS = ("gg1", "tandem_infinite", "tandem_finite", "closed_tandem")


@dataclass(frozen=True)
class SystemSpec:
    """Topology of a line of single-server FIFO queues.

    ``buffers`` holds ``b_2..b_n`` (capacity of the waiting room in front of
    servers 2..n) and is only meaningful for ``tandem_finite``; ``c`` is the
    population of a ``closed_tandem`` loop.
    """

    kind: str
    n: int = 1
    buffers: Tuple[int, ...] = ()
    c: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown system kind {self.kind!r}", field="system.kind")
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InputError("n must be a positive integer", field="system.n")
        object.__setattr__(self, "buffers", tuple(int(b) for b in self.buffers))
        if self.kind == "gg1" and self.n != 1:
            raise InputError("a gg1 system has exactly one server", field="system.n")
        if self.kind == "tandem_finite":
            if len(self.buffers) != self.n - 1:
                raise InputError(
                    f"tandem_finite with n={self.n} needs {self.n - 1} buffer capacities, "
                    f"got {len(self.buffers)}", field="system.buffers")
            if any(b < 0 for b in self.buffers):
                raise InputError("buffer capacities must be >= 0", field="system.buffers")
        elif self.buffers:
            raise InputError(f"buffers given for a {self.kind} system", field="system.buffers")
        if self.kind == "closed_tandem":
            if not isinstance(self.c, (int, np.integer)) or self.c < 1:
                raise InputError("closed_tandem needs a positive customer count c", field="system.c")
        elif self.c is not None:
            raise InputError(f"c given for a {self.kind} system", field="system.c")

    @property
    def is_open(self):
        return self.kind != "closed_tandem"

    @property
    def first_server(self):
        """Server index of the first stored stage: 0 (arrivals) or 1."""
        return 0 if self.is_open else 1

    @property
    def stages(self):
        return self.n + 1 if self.is_open else self.n

    @property
    def zero_buffer(self):
        return self.kind == "tandem_finite" and all(b == 0 for b in self.buffers)

    @property
    def has_matrix_form(self):
        return self.kind != "tandem_finite" or self.zero_buffer

    def buffer_array(self):
        """Capacities indexed by server number, ``-1`` meaning unlimited."""
        out = np.full(self.n + 1, -1, dtype=np.int64)
        if self.kind == "tandem_finite":
            out[2:] = self.buffers
        return out


@dataclass(frozen=True)
class ServiceProfile:
    """Timing data ``tau[i, k]``: one row per stage, one column per customer.

    Open systems store row 0 as the interarrival times; closed systems store
    server 1 in row 0. :meth:`tau_at` takes the server numbers used in the
    queueing equations.
    """

    tau: np.ndarray
    first_server: int = 0

    def __post_init__(self):
        tau = np.array(self.tau, dtype=np.float64, ndmin=2)
        if tau.ndim != 2:
            raise InputError("service profile must be a 2-D array", field="timing")
        if tau.shape[0] == 0:
            raise InputError("service profile has no rows", field="timing")
        if not np.isfinite(tau).all():
            raise InputError("service profile entries must be finite", field="timing")
        if (tau < 0).any():
            raise InputError("service profile entries must be non-negative", field="timing")
        if self.first_server not in (0, 1):
            raise InputError("first_server must be 0 or 1")
        tau.setflags(write=False)
        object.__setattr__(self, "tau", tau)

    @classmethod
    def from_rows(cls, rows, first_server=0):
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise InputError("service profile rows have different lengths", field="timing")
        return cls(np.array(rows, dtype=np.float64).reshape(len(rows), -1), first_server)

    @property
    def K(self):
        return self.tau.shape[1]

    @property
    def stages(self):
        return self.tau.shape[0]

    def tau_at(self, i, k):
        return float(self.tau[i - self.first_server, k - 1])

    def column(self, k):
        if not 1 <= k <= self.K:
            raise IndexError(f"customer index {k} outside 1..{self.K}")
        return np.ascontiguousarray(self.tau[:, k - 1])

    def check_against(self, spec):
        if self.first_server != spec.first_server or self.stages != spec.stages:
            raise InputError(
                f"{spec.kind} with n={spec.n} needs {spec.stages} timing rows starting at "
                f"server {spec.first_server}, got {self.stages} starting at {self.first_server}",
                field="timing")


def _frozen(arr):
    arr.setflags(write=False)
    return arr


def build_tandem_matrix(profile, k):
    """Lower-triangular open-tandem matrix: entry (i, j) = τ_jk + ... + τ_ik."""
    col = profile.column(k)
    out = np.empty((col.size, col.size))
    _kernels.fill_tandem_matrix(col, out, False)
    return _frozen(out)


def build_gg1_matrix(profile, k):
    if profile.stages != 2 or profile.first_server != 0:
        raise InputError("a G/G/1 profile has an arrival row and one service row", field="timing")
    return build_tandem_matrix(profile, k)


def build_zero_buffer_matrix(profile, k, spec=None):
    """Tandem matrix with ``e`` on the interior superdiagonal (all b_i = 0).

    Passing ``spec`` checks that the system really has zero buffers.
    """
    if spec is not None and not spec.zero_buffer:
        if spec.kind == "tandem_finite":
            raise UnsupportedTopologyError(
                f"no matrix form for buffers {spec.buffers}; only all-zero buffers have one")
        raise UnsupportedTopologyError(f"{spec.kind} is not a zero-buffer system")
    col = profile.column(k)
    out = np.empty((col.size, col.size))
    _kernels.fill_tandem_matrix(col, out, True)
    return _frozen(out)


def build_closed_matrices(profile, k):
    col = profile.column(k)
    n = col.size
    R = np.empty((n, n))
    S = np.empty((n, n))
    _kernels.fill_closed_matrices(col, R, S)
    return _frozen(R), _frozen(S)


def transition_matrices(spec, profile, k):
    """Matrices of step ``k`` for ``spec``, keyed by their conventional names."""
    profile.check_against(spec)
    if spec.kind == "closed_tandem":
        R, S = build_closed_matrices(profile, k)
        return {"R": R, "S": S}
    if spec.kind == "tandem_finite":
        return {"T~": build_zero_buffer_matrix(profile, k, spec)}
    return {"T": build_tandem_matrix(profile, k)}
