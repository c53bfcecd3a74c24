"""Cross-check every available representation of a system against each other."""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import closed_forms, des, recursion
from .errors import EnumerationBudgetError, UnsupportedTopologyError

AGREE, MISMATCH, SKIPPED = "agree", "mismatch", "skipped"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    mismatch: Optional[Tuple[int, int, float, float]] = None


@dataclass
class EquivalenceReport:
    """Outcome of comparing each representation with the scalar recursion."""

    reference: str
    checks: List[Check] = field(default_factory=list)

    @property
    def agree(self):
        return all(c.status != MISMATCH for c in self.checks)

    @property
    def first_mismatch(self):
        for c in self.checks:
            if c.status == MISMATCH:
                return c
        return None

    def lines(self):
        out = []
        for c in self.checks:
            line = f"{c.name:<12} {c.status}"
            if c.mismatch is not None:
                i, k, ref, got = c.mismatch
                line += f"  first difference at server {i}, k={k}: reference {ref!r}, got {got!r}"
            elif c.detail:
                line += f"  ({c.detail})"
            out.append(line)
        if self.agree:
            out.append("all representations agree")
        return out


def _closed_form(spec, profile, K):
    if spec.kind == "gg1":
        return closed_forms.gg1_closed_form(profile, K)
    if spec.kind == "tandem_infinite":
        return closed_forms.tandem_closed_form(profile, K)
    if spec.kind == "tandem_finite" and spec.n == 2 and spec.buffers == (0,):
        return closed_forms.zero_buffer_two_server_closed_form(profile, K, spec)
    if spec.kind == "closed_tandem" and spec.n == 2 and spec.c == 2:
        return closed_forms.closed_system_example_closed_form(profile, K, spec)
    raise UnsupportedTopologyError(f"no explicit solution for {spec.kind} with these parameters")


def _compare(name, ref, other, rtol):
    diff = ref.first_mismatch(other, rtol)
    if diff is None:
        return Check(name, AGREE)
    return Check(name, MISMATCH, mismatch=diff)


def verify_equivalence(spec, profile, K=None, rtol=0.0, expected=None):
    """Run every representation that exists for ``spec`` and compare entrywise.

    The scalar recursion is the reference. ``rtol = 0`` demands exact
    equality. ``expected`` is an optional externally supplied trace that is
    checked the same way. Disagreement is reported, never raised.
    """
    reference = recursion.run_scalar(spec, profile, K)
    K = reference.K
    report = EquivalenceReport("scalar")
    report.checks.append(Check("scalar", AGREE, "reference"))

    if spec.has_matrix_form and K >= 1:
        report.checks.append(
            _compare("matrix", reference, recursion.run_matrix_recursion(spec, profile, K), rtol))
    elif not spec.has_matrix_form:
        report.checks.append(Check("matrix", SKIPPED, "unsupported: no matrix form for b_i > 0"))
    else:
        report.checks.append(Check("matrix", SKIPPED, "empty horizon"))

    try:
        formula = _closed_form(spec, profile, K)
    except (UnsupportedTopologyError, EnumerationBudgetError) as exc:
        report.checks.append(Check("closed_form", SKIPPED, str(exc)))
    else:
        diff = formula.first_mismatch(reference, rtol)
        if diff is None:
            report.checks.append(Check("closed_form", AGREE))
        else:
            i, k, mine, theirs = diff
            report.checks.append(Check("closed_form", MISMATCH, mismatch=(i, k, theirs, mine)))

    oracle = des.departures(des.simulate(spec, profile, K))
    report.checks.append(_compare("des", reference, oracle, rtol))

    if expected is not None:
        if expected.same_shape(reference):
            report.checks.append(_compare("expected", reference, expected, rtol))
        else:
            report.checks.append(Check(
                "expected", MISMATCH,
                f"shape {expected.values.shape} from server {expected.first_server} does not "
                f"match {reference.values.shape} from server {reference.first_server}"))
    return report
