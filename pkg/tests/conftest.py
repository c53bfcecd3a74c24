import time

import pytest

from mpqueue import _kernels

_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    entry = _outcomes.setdefault(number, {"title": title, "passed": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section(f"acceptance criteria (backend: {_kernels.BACKEND})")
    for number in sorted(_outcomes):
        entry = _outcomes[number]
        status = "PASS" if entry["passed"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}")


@pytest.fixture(scope="session")
def warm_kernels():
    """Trigger JIT compilation once so timed sections measure run time only."""
    import numpy as np

    import mpqueue as mq

    tau = np.ones((3, 4))
    mq.run_tandem_scalar(mq.ServiceProfile(tau))
    for spec in (mq.SystemSpec("tandem_infinite", 2), mq.SystemSpec("tandem_finite", 2, (0,)),
                 mq.SystemSpec("tandem_finite", 2, (1,))):
        mq.run_scalar(spec, mq.ServiceProfile(tau))
        if spec.has_matrix_form:
            mq.run_matrix_recursion(spec, mq.ServiceProfile(tau))
    closed = mq.SystemSpec("closed_tandem", 3, c=2)
    mq.run_matrix_recursion(closed, mq.ServiceProfile(tau, 1))
    mq.run_scalar(closed, mq.ServiceProfile(tau, 1))
    mq.mat_mul(tau[:, :3], tau[:, :3])
    mq.mat_vec(tau[:, :3], tau[:, 0])


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


@pytest.fixture
def stopwatch():
    return Stopwatch
