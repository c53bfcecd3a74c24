"""Scenario configuration files.

A scenario is a YAML (or JSON) mapping::

    schema_version: 1
    system: {kind: tandem_finite, n: 2, buffers: [0]}
    horizon: 100
    timing:
      seed: 42
      rows:                         # one entry per stage, in server order
        - {dist: exponential, rate: 1.0}
        - {dist: uniform, lo: 0.2, hi: 1.4}
        - [0.5, 0.7, ...]           # explicit values, exactly `horizon` of them
    output: {trace: trace.csv, format: csv}
    verify: {expected_trace: expected.csv}

Random rows are drawn from one numpy ``PCG64`` generator seeded with
``timing.seed``, row by row in stage order, ``horizon`` draws per random row.
Exponential variates use the inverse CDF ``-log(1 - u) / rate``.
"""
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import yaml

from .errors import InputError
from .models import ServiceProfile, SystemSpec

SCHEMA_VERSION = 1
PRNG_NAME = "PCG64"
FORMATS = ("csv",)


@dataclass(frozen=True)
class ScenarioConfig:
    spec: SystemSpec
    horizon: int
    profile: ServiceProfile
    seed: Optional[int] = None
    trace_path: Optional[Path] = None
    trace_format: str = "csv"
    expected_trace: Optional[Path] = None
    rtol: Optional[float] = None
    source: Optional[Path] = None

    @property
    def randomized(self):
        return self.seed is not None


def _require(mapping, key, where):
    if not isinstance(mapping, dict):
        raise InputError(f"{where} must be a mapping", field=where)
    if key not in mapping:
        raise InputError(f"missing field {where}.{key}".lstrip("."), field=f"{where}.{key}".lstrip("."))
    return mapping[key]


def _number(value, where, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where} must be a number", field=where)
    value = float(value)
    if not math.isfinite(value) or value < 0 or (positive and value == 0):
        raise InputError(f"{where} must be {'positive' if positive else 'non-negative'} and finite",
                         field=where)
    return value


def _int(value, where, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InputError(f"{where} must be an integer >= {minimum}", field=where)
    return value


def _row(entry, K, gen, where):
    if isinstance(entry, list):
        if len(entry) != K:
            raise InputError(f"{where} has {len(entry)} values, horizon is {K}", field=where)
        return [_number(x, f"{where}[{j}]") for j, x in enumerate(entry)]
    if not isinstance(entry, dict):
        raise InputError(f"{where} must be a list of values or a generator mapping", field=where)
    dist = _require(entry, "dist", where)
    if dist not in ("constant", "uniform", "exponential"):
        raise InputError(f"{where}.dist must be constant, uniform or exponential", field=f"{where}.dist")
    if dist == "constant":
        return [_number(_require(entry, "value", where), f"{where}.value")] * K
    if gen is None:
        raise InputError("timing.seed is required when a row is random", field="timing.seed")
    if dist == "uniform":
        lo = _number(_require(entry, "lo", where), f"{where}.lo")
        hi = _number(_require(entry, "hi", where), f"{where}.hi")
        if hi < lo:
            raise InputError(f"{where}.hi must be >= lo", field=f"{where}.hi")
        return list(lo + (hi - lo) * gen.random(K))
    if dist == "exponential":
        rate = _number(_require(entry, "rate", where), f"{where}.rate", positive=True)
        return list(-np.log1p(-gen.random(K)) / rate)


def _spec(system):
    kind = _require(system, "kind", "system")
    n = system.get("n", 1)
    buffers = system.get("buffers", [])
    if not isinstance(buffers, list):
        raise InputError("system.buffers must be a list", field="system.buffers")
    for j, b in enumerate(buffers):
        _int(b, f"system.buffers[{j}]", 0)
    c = system.get("c")
    return SystemSpec(kind, n, tuple(buffers), c)


def parse_config(data, base_dir=None):
    """Validate a decoded config mapping; relative paths resolve against ``base_dir``."""
    if not isinstance(data, dict):
        raise InputError("config must be a mapping", field="<root>")
    version = _require(data, "schema_version", "")
    if version != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {version!r}, expected {SCHEMA_VERSION}",
                         field="schema_version")
    spec = _spec(_require(data, "system", ""))
    K = _int(_require(data, "horizon", ""), "horizon", 0)

    timing = _require(data, "timing", "")
    rows = _require(timing, "rows", "timing")
    if not isinstance(rows, list) or len(rows) != spec.stages:
        raise InputError(f"timing.rows needs {spec.stages} entries for {spec.kind} with n={spec.n}",
                         field="timing.rows")
    seed = timing.get("seed")
    if seed is not None:
        seed = _int(seed, "timing.seed", 0)
        if seed >= 2**64:
            raise InputError("timing.seed must fit in 64 bits", field="timing.seed")
    gen = np.random.Generator(np.random.PCG64(seed)) if seed is not None else None
    values = [_row(entry, K, gen, f"timing.rows[{r}]") for r, entry in enumerate(rows)]
    profile = ServiceProfile(np.array(values, dtype=np.float64).reshape(spec.stages, K),
                             spec.first_server)

    base = Path(base_dir) if base_dir is not None else Path.cwd()
    output = data.get("output") or {}
    trace = output.get("trace")
    fmt = output.get("format", "csv")
    if fmt not in FORMATS:
        raise InputError(f"output.format must be one of {FORMATS}", field="output.format")
    verify = data.get("verify") or {}
    expected = verify.get("expected_trace")
    rtol = verify.get("rtol")
    if rtol is not None:
        rtol = _number(rtol, "verify.rtol")
    return ScenarioConfig(
        spec=spec,
        horizon=K,
        profile=profile,
        seed=seed,
        trace_path=base / trace if trace else None,
        trace_format=fmt,
        expected_trace=base / expected if expected else None,
        rtol=rtol,
    )


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc.strerror}", field="<file>") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InputError(f"config {path} is not valid YAML: {exc}", field="<file>") from None
    cfg = parse_config(data, path.parent)
    return ScenarioConfig(**{**cfg.__dict__, "source": path})
