"""Every acceptance criterion at its stated tolerance, one result line each.

Criteria 2 and 6 fail as written: the stated m=6 count and the stated p=11
order sequence disagree with exhaustive enumeration and with the
independent chord-iteration branch. They are strict xfails, so the suite
turns red if either ever starts passing, and the values actually obtained
are pinned by the tests after them.
"""

import math
import os

import pytest

from bringcurve import acceptance

WORKERS = min(4, os.cpu_count() or 1)
EXPECTED_FAILURES = {
    2: "144 points for m=6 over F_11; 362880 = 9! is the m=10 count",
    6: "p=11 orders are (0,1,2,3,4,5,16,27,148), not (0,...,7,18)",
}


def _params():
    for fn in acceptance.CRITERIA:
        n = int(fn.__name__.rsplit("_", 1)[1])
        marks = [pytest.mark.xfail(strict=True, reason=EXPECTED_FAILURES[n])] if n in EXPECTED_FAILURES else []
        yield pytest.param(fn, id=f"criterion_{n}", marks=marks)


@pytest.mark.parametrize("check", list(_params()))
def test_criterion(check, report_line):
    r = check(WORKERS)
    report_line(r.line())
    print(r.line())
    assert r.passed, r.detail


def test_criterion_2_obtained_values(report_line):
    r = acceptance.criterion_2(WORKERS)
    assert not r.passed and "144 points" in r.detail
    c = acceptance.companion_2(WORKERS)
    report_line(c.line().replace("criterion 2", "criterion 2 (m=10 companion)"))
    assert c.passed and str(math.factorial(9)) in c.detail


def test_criterion_6_obtained_values():
    r = acceptance.criterion_6(WORKERS)
    assert dict(r.parts) == {"p=7": True, "p=11": False, "p=13": True}
    assert "p=11: [0, 1, 2, 3, 4, 5, 16, 27, 148] complete=True" in r.detail


def test_evidence_only_note(report_line):
    report_line(f"[NOTE] {acceptance.EVIDENCE_ONLY}")
    assert "not proofs" in acceptance.EVIDENCE_ONLY
