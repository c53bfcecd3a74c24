"""Scalar and matrix recursions producing departure-time traces.

All recursions start from ``D_i(0) = e`` for every server and treat delayed
references to ``k < 0`` as ε.
"""
import numpy as np

from . import _kernels
from .errors import InputError, UnsupportedTopologyError
from .trace import DepartureTrace


def _horizon(profile, K):
    if K is None:
        return profile.K
    if not isinstance(K, (int, np.integer)) or K < 0:
        raise InputError("horizon K must be a non-negative integer", field="horizon")
    if K > profile.K:
        raise InputError(f"horizon K={K} exceeds the {profile.K} customers in the profile",
                         field="horizon")
    return int(K)


def _tau(profile, K):
    return np.ascontiguousarray(profile.tau[:, :K])


def run_gg1_scalar(profile, K=None):
    """Arrival and departure epochs of a single FIFO server.

    Row 0 of the returned trace is the arrival epochs ``A(k)``, row 1 the
    departures ``D(k)``.
    """
    if profile.stages != 2 or profile.first_server != 0:
        raise InputError("a G/G/1 profile has an arrival row and one service row", field="timing")
    if K is None and profile.K == 0:
        raise InputError("empty profile", field="timing")
    K = _horizon(profile, K)
    tau = _tau(profile, K)
    D = np.empty((2, K + 1))
    D[:, 0] = 0.0
    for k in range(1, K + 1):
        D[0, k] = tau[0, k - 1] + D[0, k - 1]
        D[1, k] = tau[1, k - 1] + max(D[0, k], D[1, k - 1])
    return DepartureTrace.from_state_array(D, 0)


def run_tandem_scalar(profile, K=None):
    if profile.first_server != 0:
        raise InputError("an open tandem profile starts with the arrival row", field="timing")
    K = _horizon(profile, K)
    return DepartureTrace.from_state_array(_kernels.tandem_scalar(_tau(profile, K)), 0)


def run_finite_buffer_scalar(spec, profile, K=None):
    """Tandem line with finite buffers under manufacturing blocking."""
    if spec.kind != "tandem_finite":
        raise InputError(f"expected a tandem_finite system, got {spec.kind}", field="system.kind")
    profile.check_against(spec)
    K = _horizon(profile, K)
    D = _kernels.finite_buffer_scalar(_tau(profile, K), spec.buffer_array())
    return DepartureTrace.from_state_array(D, 0)


def run_closed_scalar(spec, profile, K=None):
    if spec.kind != "closed_tandem":
        raise InputError(f"expected a closed_tandem system, got {spec.kind}", field="system.kind")
    profile.check_against(spec)
    K = _horizon(profile, K)
    return DepartureTrace.from_state_array(_kernels.closed_scalar(_tau(profile, K), spec.c), 1)


def run_scalar(spec, profile, K=None):
    """Dispatch to the scalar recursion that fits ``spec``."""
    profile.check_against(spec)
    if spec.kind == "gg1":
        return run_gg1_scalar(profile, K)
    if spec.kind == "tandem_infinite":
        return run_tandem_scalar(profile, K)
    if spec.kind == "tandem_finite":
        return run_finite_buffer_scalar(spec, profile, K)
    return run_closed_scalar(spec, profile, K)


def run_matrix_recursion(spec, profile, K=None):
    """Iterate ``D(k) = T_k ⊗ D(k-1)`` or, for closed loops,
    ``D(k) = R_k ⊗ D(k-1) ⊕ S_k ⊗ D(k-c)``.

    Finite buffers are only supported when every capacity is zero.
    """
    profile.check_against(spec)
    if not spec.has_matrix_form:
        raise UnsupportedTopologyError(
            f"no matrix form for buffers {spec.buffers}; use run_finite_buffer_scalar")
    K = _horizon(profile, K)
    if K < 1:
        raise InputError("matrix recursion needs K >= 1", field="horizon")
    tau = _tau(profile, K)
    if spec.kind == "closed_tandem":
        return DepartureTrace.from_state_array(_kernels.closed_matrix_recursion(tau, spec.c), 1)
    D = _kernels.open_matrix_recursion(tau, spec.zero_buffer)
    return DepartureTrace.from_state_array(D, 0)
