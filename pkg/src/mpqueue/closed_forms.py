"""Explicit solution formulas, evaluated directly from the timing data.

None of these functions call the recursions; they are the independent side
of the cross-checks in :mod:`mpqueue.verify`.
"""
import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .errors import EnumerationBudgetError, InputError, UnsupportedTopologyError
from .semiring import big_oplus, big_otimes, oplus, otimes

DEFAULT_CHAIN_BUDGET = 2_000_000


@dataclass(frozen=True, eq=False)
class ClosedFormResult:
    """Formula values per server.

    ``values[i][k - 1]`` holds ``D_i(k)``; ``domain[i]`` lists the customer
    indices for which the formula is claimed, other entries are NaN.
    """

    values: Dict[int, np.ndarray] = field(default_factory=dict)
    domain: Dict[int, range] = field(default_factory=dict)

    def at(self, i, k):
        if k not in self.domain[i]:
            raise KeyError(f"D_{i}({k}) is outside the formula's domain")
        return float(self.values[i][k - 1])

    def first_mismatch(self, trace, rtol=0.0):
        """Compare against a :class:`DepartureTrace` on the declared domain."""
        for i in sorted(self.values):
            for k in self.domain[i]:
                mine, theirs = self.at(i, k), trace.at(i, k)
                if mine == theirs:
                    continue
                if rtol and abs(mine - theirs) <= rtol * max(1.0, abs(mine), abs(theirs)):
                    continue
                return i, k, mine, theirs
        return None


def _rows(profile, K, stages, first_server):
    if profile.stages != stages or profile.first_server != first_server:
        raise UnsupportedTopologyError(
            f"formula needs {stages} timing rows starting at server {first_server}")
    if K is None:
        K = profile.K
    if K < 0 or K > profile.K:
        raise InputError(f"horizon K={K} outside 0..{profile.K}", field="horizon")
    return [[float(x) for x in row[:K]] for row in profile.tau], K


def _result(values, domains, K):
    out = {}
    for i, vals in values.items():
        arr = np.full(K, np.nan)
        for k, v in vals.items():
            arr[k - 1] = v
        out[i] = arr
    return ClosedFormResult(out, domains)


def arrival_epochs(alpha):
    """``A(k) = α_1 ⊗ ... ⊗ α_k`` for every prefix of ``alpha``."""
    out, acc = [], 0.0
    for a in alpha:
        acc = otimes(acc, float(a))
        out.append(acc)
    return np.array(out, dtype=np.float64)


def gg1_closed_form(profile, K=None):
    """``A(k) = α_1 ⊗ ... ⊗ α_k`` and
    ``D(k) = ⊕_i (α_1 ⊗ ... ⊗ α_i) ⊗ (τ_i ⊗ ... ⊗ τ_k)``.

    The suffix products ``τ_i ⊗ ... ⊗ τ_k`` are grown by one factor per step,
    which keeps the whole evaluation quadratic in ``K``.
    """
    (alpha, tau), K = _rows(profile, K, 2, 0)
    A, D = {}, {}
    heads, tails = [], []
    for k in range(1, K + 1):
        A[k] = otimes(A.get(k - 1, 0.0), alpha[k - 1])
        heads.append(A[k])
        tails = [otimes(t, tau[k - 1]) for t in tails] + [tau[k - 1]]
        D[k] = big_oplus(otimes(h, t) for h, t in zip(heads, tails))
    return _result({0: A, 1: D}, {0: range(1, K + 1), 1: range(1, K + 1)}, K)


def chain_count(n, k):
    """Number of index chains ``1 <= i_1 <= ... <= i_n <= k``."""
    return math.comb(k + n - 1, n)


def tandem_closed_form(profile, K=None, budget=DEFAULT_CHAIN_BUDGET):
    """Last-server departures of an open tandem line by chain enumeration.

    ``D_n(k)`` is the ⊕ over all chains ``1 <= i_1 <= ... <= i_n <= k`` of
    ``∏_{j=1..i_1} τ_0j ⊗ ∏_{j=i_1..i_2} τ_1j ⊗ ... ⊗ ∏_{j=i_n..k} τ_nj``.
    Adjacent products share their boundary customer. The search is a
    depth-first walk carrying the running product.
    """
    if profile.first_server != 0 or profile.stages < 2:
        raise UnsupportedTopologyError("tandem formula needs an open profile with n >= 1")
    rows, K = _rows(profile, K, profile.stages, 0)
    n = len(rows) - 1
    total = sum(chain_count(n, k) for k in range(1, K + 1))
    if total > budget:
        raise EnumerationBudgetError(
            f"n={n}, K={K} needs {total} chains, over the budget of {budget}")

    # seg[r][lo][hi] = τ_r,lo ⊗ ... ⊗ τ_r,hi, folded left to right
    seg = []
    for row in rows:
        table = [None]
        for lo in range(1, K + 1):
            acc, run = 0.0, {}
            for hi in range(lo, K + 1):
                acc = otimes(acc, row[hi - 1])
                run[hi] = acc
            table.append(run)
        seg.append(table)

    def segment(r, lo, hi):
        return seg[r][lo][hi]

    def walk(r, start, acc, k):
        # rows[0..r-1] are fixed; the next product starts at customer `start`
        if r == n:
            return otimes(acc, segment(n, start, k))
        return big_oplus(
            walk(r + 1, i, otimes(acc, segment(r, start, i)), k) for i in range(start, k + 1))

    values = {}
    for k in range(1, K + 1):
        # the first product always begins at customer 1
        values[k] = big_oplus(walk(1, i, segment(0, 1, i), k) for i in range(1, k + 1))
    return _result({n: values}, {n: range(1, K + 1)}, K)


def zero_buffer_two_server_closed_form(profile, K=None, spec=None):
    """Two servers with no waiting room in front of server 2.

    ``D_1(k) = ⊕_i ∏_{j<=i} τ_0j ⊗ τ_1i ⊗ ∏_{j=i+1..k} (τ_1j ⊕ τ_2,j-1)`` and
    ``D_2(k) = τ_2k ⊗ D_1(k)``.
    """
    if spec is not None and (spec.kind != "tandem_finite" or spec.n != 2 or spec.buffers != (0,)):
        raise UnsupportedTopologyError("formula applies to two servers with b_2 = 0 only")
    (t0, t1, t2), K = _rows(profile, K, 3, 0)
    D1, D2 = {}, {}
    arrivals = 0.0
    heads, tails = [], []
    for k in range(1, K + 1):
        arrivals = otimes(arrivals, t0[k - 1])
        if k > 1:
            factor = oplus(t1[k - 1], t2[k - 2])
            tails = [otimes(t, factor) for t in tails]
        heads.append(otimes(arrivals, t1[k - 1]))
        tails.append(0.0)
        D1[k] = big_oplus(otimes(h, t) for h, t in zip(heads, tails))
        D2[k] = otimes(t2[k - 1], D1[k])
    full = range(1, K + 1)
    return _result({1: D1, 2: D2}, {1: full, 2: full}, K)


def closed_system_example_closed_form(profile, K=None, spec=None):
    """Closed loop of two servers with two customers.

    ``D_1(k) = τ_11 ⊗ ∏_{i=1..k-2} (τ_1,i+1 ⊕ τ_2i) ⊗ τ_1k`` for ``k >= 2`` and
    ``D_2(k) = τ_11 ⊗ ∏_{i=1..k-1} (τ_1,i+1 ⊕ τ_2i) ⊗ τ_2k`` for ``k >= 1``.
    At ``k = 1`` the first formula double-counts ``τ_11``, so that point is
    left out of its domain.
    """
    if spec is not None and (spec.kind != "closed_tandem" or spec.n != 2 or spec.c != 2):
        raise UnsupportedTopologyError("formula applies to n = 2, c = 2 closed loops only")
    (t1, t2), K = _rows(profile, K, 2, 1)

    D1, D2 = {}, {}
    merged = [0.0]  # merged[m] = ∏_{i=1..m} (τ_1,i+1 ⊕ τ_2i)
    for k in range(1, K + 1):
        if k >= 2:
            merged.append(otimes(merged[-1], oplus(t1[k - 1], t2[k - 2])))
            D1[k] = big_otimes([t1[0], merged[k - 2], t1[k - 1]])
        D2[k] = big_otimes([t1[0], merged[k - 1], t2[k - 1]])
    return _result({1: D1, 2: D2}, {1: range(2, K + 1), 2: range(1, K + 1)}, K)

