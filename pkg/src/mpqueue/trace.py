"""Departure-time traces and their CSV form."""
import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .semiring import format_value, parse_value

CSV_HEADER = ("server", "k", "departure")


@dataclass(frozen=True, eq=False)
class DepartureTrace:
    """Departure times ``D_i(k)`` for k = 1..K.

    ``values[r, k - 1]`` is the departure of customer ``k`` from server
    ``first_server + r``. The initial conditions are not stored: every server
    has ``D_i(0) = 0`` and ``D_i(k) = eps`` for ``k < 0``.
    """

    values: np.ndarray
    first_server: int = 0

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, ndmin=2)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_state_array(cls, D, first_server):
        """Wrap a kernel output whose column 0 holds the initial state."""
        return cls(D[:, 1:], first_server)

    @property
    def K(self):
        return self.values.shape[1]

    @property
    def servers(self):
        return range(self.first_server, self.first_server + self.values.shape[0])

    @property
    def last_server(self):
        return self.first_server + self.values.shape[0] - 1

    def row(self, i):
        return self.values[i - self.first_server]

    def at(self, i, k):
        if k == 0:
            return 0.0
        if k < 0:
            return float("-inf")
        return float(self.values[i - self.first_server, k - 1])

    def same_shape(self, other):
        return self.first_server == other.first_server and self.values.shape == other.values.shape

    def first_mismatch(self, other, rtol=0.0):
        """First ``(server, k, mine, theirs)`` that differs, or None.

        Shapes must match. With ``rtol == 0`` comparison is exact.
        """
        if not self.same_shape(other):
            raise InputError(
                f"trace shapes differ: servers {list(self.servers)} x {self.K} "
                f"vs {list(other.servers)} x {other.K}")
        a, b = self.values, other.values
        if rtol:
            scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
            bad = ~((a == b) | (np.abs(a - b) <= rtol * scale))
        else:
            bad = a != b
        if not bad.any():
            return None
        r, c = np.argwhere(bad)[0]
        return self.first_server + int(r), int(c) + 1, float(a[r, c]), float(b[r, c])

    def equals(self, other, rtol=0.0):
        return self.same_shape(other) and self.first_mismatch(other, rtol) is None


def write_csv(trace, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i in trace.servers:
        for k, x in enumerate(trace.row(i), start=1):
            writer.writerow((i, k, format_value(x)))


def trace_to_csv(trace):
    buf = io.StringIO()
    write_csv(trace, buf)
    return buf.getvalue()


def read_csv(fh):
    """Parse a trace CSV; rows must form a full servers x 1..K grid."""
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        raise InputError(f"trace CSV must start with header {','.join(CSV_HEADER)}", field="header")
    cells = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise InputError(f"line {lineno}: expected 3 columns, got {len(row)}", field="row")
        try:
            i, k, x = int(row[0]), int(row[1]), parse_value(row[2])
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}", field="row") from None
        if k < 1:
            raise InputError(f"line {lineno}: customer index must be >= 1", field="k")
        if (i, k) in cells:
            raise InputError(f"line {lineno}: duplicate entry for server {i}, k={k}", field="row")
        cells[i, k] = x
    if not cells:
        return DepartureTrace(np.empty((1, 0)), 0)
    servers = sorted({i for i, _ in cells})
    K = max(k for _, k in cells)
    first = servers[0]
    if first not in (0, 1) or servers != list(range(first, servers[-1] + 1)):
        raise InputError(f"servers must be consecutive from 0 or 1, got {servers}", field="server")
    if len(cells) != len(servers) * K:
        raise InputError("trace has missing (server, k) entries", field="row")
    values = np.empty((len(servers), K))
    for (i, k), x in cells.items():
        values[i - first, k - 1] = x
    return DepartureTrace(values, first)
