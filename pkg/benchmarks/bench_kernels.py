"""Time the hot recursions under the numba and pure-numpy backends.

Each backend runs in its own interpreter because the choice is made at import
time from ``MPQUEUE_DISABLE_NUMBA``.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--horizon 2000]
"""
import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKER = textwrap.dedent("""
    import json, sys, time
    import numpy as np
    import mpqueue as mq
    from mpqueue import _kernels

    repeat, K = int(sys.argv[1]), int(sys.argv[2])
    rng = np.random.default_rng(7)
    cases = {
        "tandem scalar n=8": (mq.SystemSpec("tandem_infinite", 8), mq.run_scalar),
        "finite scalar n=6": (mq.SystemSpec("tandem_finite", 6, (0, 1, 2, 3, 1)), mq.run_scalar),
        "tandem matrix n=8": (mq.SystemSpec("tandem_infinite", 8), mq.run_matrix_recursion),
        "zero-buffer matrix n=6": (mq.SystemSpec("tandem_finite", 6, (0,) * 5), mq.run_matrix_recursion),
        "closed matrix n=6 c=8": (mq.SystemSpec("closed_tandem", 6, c=8), mq.run_matrix_recursion),
    }
    out = {"backend": _kernels.BACKEND, "times": {}}
    for name, (spec, fn) in cases.items():
        p = mq.ServiceProfile(rng.exponential(size=(spec.stages, K)), spec.first_server)
        fn(spec, p, 10)  # compile outside the timed region
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn(spec, p)
            best = min(best, time.perf_counter() - t0)
        out["times"][name] = best
    json.dump(out, sys.stdout)
""")


def run(disable, repeat, horizon):
    env = dict(os.environ)
    env.pop("MPQUEUE_DISABLE_NUMBA", None)
    if disable:
        env["MPQUEUE_DISABLE_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat), str(horizon)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--horizon", type=int, default=2000)
    args = parser.parse_args()

    numpy_run = run(True, args.repeat, args.horizon)
    jit_run = run(False, args.repeat, args.horizon)
    if jit_run["backend"] != "numba":
        print("numba is not installed; only the numpy backend was timed")
    print(f"horizon K={args.horizon}, best of {args.repeat}")
    print(f"{'case':<26}{'numpy (ms)':>12}{jit_run['backend'] + ' (ms)':>12}{'speedup':>10}")
    for name, slow in numpy_run["times"].items():
        fast = jit_run["times"][name]
        print(f"{name:<26}{slow * 1e3:>12.2f}{fast * 1e3:>12.2f}{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
