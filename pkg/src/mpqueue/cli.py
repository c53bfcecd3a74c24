"""Command-line front end.

Exit codes: 0 success / full agreement, 1 verification mismatch, 2 input
error, 3 unsupported topology or representation.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import _kernels, closed_forms, des, recursion
from .config import PRNG_NAME, load_config
from .errors import EnumerationBudgetError, InputError, UnsupportedTopologyError
from .metrics import compute_metrics
from .models import transition_matrices
from .semiring import format_value, render_matrix
from .trace import DepartureTrace, read_csv, trace_to_csv
from .verify import verify_equivalence

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3
REPRESENTATIONS = ("scalar", "matrix", "closed_form", "des")
INTEGER_RTOL, REAL_RTOL = 0.0, 1e-9


def _closed_form_trace(spec, profile, K):
    if spec.kind == "gg1":
        res = closed_forms.gg1_closed_form(profile, K)
        return DepartureTrace(np.vstack([res.values[0], res.values[1]]), 0)
    if spec.kind == "tandem_finite" and spec.n == 2 and spec.buffers == (0,):
        res = closed_forms.zero_buffer_two_server_closed_form(profile, K, spec)
        arrivals = closed_forms.arrival_epochs(profile.tau[0, :K])
        return DepartureTrace(np.vstack([arrivals, res.values[1], res.values[2]]), 0)
    raise UnsupportedTopologyError(
        f"no full-trace closed form for {spec.kind} with n={spec.n}; "
        "closed forms exist for gg1 and the two-server zero-buffer line")


def run_representation(cfg, representation):
    spec, profile, K = cfg.spec, cfg.profile, cfg.horizon
    if representation == "scalar":
        return recursion.run_scalar(spec, profile, K), None
    if representation == "matrix":
        if K == 0:
            return DepartureTrace(np.empty((spec.stages, 0)), spec.first_server), None
        return recursion.run_matrix_recursion(spec, profile, K), None
    if representation == "closed_form":
        return _closed_form_trace(spec, profile, K), None
    log = des.simulate(spec, profile, K)
    return des.departures(log), log


def _default_rtol(cfg):
    if cfg.rtol is not None:
        return cfg.rtol
    tau = cfg.profile.tau
    return INTEGER_RTOL if np.all(tau == np.round(tau)) else REAL_RTOL


def cmd_simulate(args):
    cfg = load_config(args.config)
    trace, log = run_representation(cfg, args.representation)
    text = trace_to_csv(trace)
    out = Path(args.out) if args.out else cfg.trace_path
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        meta = {
            "representation": args.representation,
            "backend": _kernels.BACKEND,
            "prng": PRNG_NAME if cfg.randomized else None,
            "seed": cfg.seed,
            "kind": cfg.spec.kind,
            "n": cfg.spec.n,
            "horizon": cfg.horizon,
        }
        out.with_name(out.name + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    if args.events:
        if log is None:
            raise UnsupportedTopologyError("--events needs --representation des")
        with open(args.events, "w") as fh:
            log.dump(fh)
    last = format_value(trace.at(trace.last_server, trace.K)) if trace.K else "-"
    seed = f"prng={PRNG_NAME} seed={cfg.seed}" if cfg.randomized else "explicit timing"
    print(f"{cfg.spec.kind} n={cfg.spec.n} K={cfg.horizon} via {args.representation} "
          f"[{_kernels.BACKEND}, {seed}]: D_{trace.last_server}(K)={last}"
          + (f" -> {out}" if out else ""), file=sys.stderr if out is None else sys.stdout)
    return EXIT_OK


def cmd_verify(args):
    cfg = load_config(args.config)
    expected = None
    if cfg.expected_trace is not None:
        try:
            with open(cfg.expected_trace, newline="") as fh:
                expected = read_csv(fh)
        except OSError as exc:
            raise InputError(f"cannot read {cfg.expected_trace}: {exc.strerror}",
                             field="verify.expected_trace") from None
    rtol = args.rtol if args.rtol is not None else _default_rtol(cfg)
    report = verify_equivalence(cfg.spec, cfg.profile, cfg.horizon, rtol=rtol, expected=expected)
    print(f"{cfg.spec.kind} n={cfg.spec.n} K={cfg.horizon} rtol={rtol:g}")
    for line in report.lines():
        print(line)
    return EXIT_OK if report.agree else EXIT_MISMATCH


def cmd_metrics(args):
    try:
        with open(args.trace, newline="") as fh:
            trace = read_csv(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.trace}: {exc.strerror}", field="<file>") from None
    profile = None
    if args.config:
        cfg = load_config(args.config)
        profile = cfg.profile
        if profile.first_server != trace.first_server or profile.stages != trace.values.shape[0]:
            raise InputError("trace does not match the config's system", field="server")
    json.dump(compute_metrics(trace, profile), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_show_matrix(args):
    cfg = load_config(args.config)
    if not 1 <= args.k <= cfg.horizon:
        raise InputError(f"k={args.k} outside 1..{cfg.horizon}", field="k")
    mats = transition_matrices(cfg.spec, cfg.profile, args.k)
    blocks = [f"{name}_{args.k} =\n{render_matrix(M)}" for name, M in mats.items()]
    print("\n\n".join(blocks))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mpqueue", description="Max-plus linear models of queueing lines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="compute a departure trace and write it as CSV")
    p.add_argument("config")
    p.add_argument("-r", "--representation", choices=REPRESENTATIONS, default="scalar")
    p.add_argument("-o", "--out", help="trace path (overrides output.trace)")
    p.add_argument("--events", help="write the simulator event log here (des only)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="cross-check all representations")
    p.add_argument("config")
    p.add_argument("--rtol", type=float, help="relative tolerance (default: exact for integer data)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metrics", help="derive sojourn/throughput metrics from a trace CSV")
    p.add_argument("trace")
    p.add_argument("--config", help="scenario config, needed for busy fractions")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("show-matrix", help="print the transition matrices of customer k")
    p.add_argument("config")
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_show_matrix)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        where = f" [{exc.field}]" if exc.field else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UnsupportedTopologyError, EnumerationBudgetError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
