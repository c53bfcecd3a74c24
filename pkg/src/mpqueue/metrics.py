"""Observables derived from a departure trace."""
import numpy as np


def _num(x):
    x = float(x)
    return x if np.isfinite(x) else None


def compute_metrics(trace, profile=None):
    """Metrics over a trace; keys match the CLI's JSON output.

    * ``sojourn``: ``D_n(k) - D_0(k)`` per customer (open systems, else None)
    * ``interdeparture``: ``D_n(k) - D_n(k-1)`` for ``k = 2..K``
    * ``throughput``: ``K / D_n(K)`` (None when ``D_n(K)`` is 0 or K is 0)
    * ``busy_fraction``: per server ``sum_k tau_ik / D_n(K)``, keyed by server
      number; needs ``profile`` since service times are not in the trace
    """
    K = trace.K
    last = trace.row(trace.last_server) if K else np.empty(0)
    open_system = trace.first_server == 0
    sojourn = None
    if open_system:
        sojourn = [float(x) for x in last - trace.row(0)]
    interdeparture = [float(x) for x in np.diff(last)]
    horizon_end = float(last[-1]) if K else 0.0
    throughput = K / horizon_end if K and horizon_end > 0 else None
    busy = None
    if profile is not None and K:
        busy = {}
        first_service = 1 if profile.first_server == 0 else 0
        for r in range(first_service, profile.stages):
            total = float(np.sum(profile.tau[r, :K]))
            busy[str(profile.first_server + r)] = _num(total / horizon_end) if horizon_end > 0 else None
    return {
        "sojourn": sojourn,
        "interdeparture": interdeparture,
        "throughput": throughput,
        "busy_fraction": busy,
    }
