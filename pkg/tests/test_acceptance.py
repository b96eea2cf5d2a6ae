"""The 17 acceptance criteria, each checked against its time limit.

One PASS/FAIL line per criterion is printed straight to the terminal.
"""

import pytest

from postlie import suite

BY_ID = {c.number: c for c in suite.CRITERIA}

KNOWN_FAILURE = {
    10: "the centre-valued structures on h1 (alpha = beta = kappa = 0) form a one-parameter family "
        "of classes: det of the form is an isomorphism invariant, so C1, C2(mu), C3, C4 do not "
        "exhaust the classes",
}


def _report(capsys, number, ok, secs, status):
    limit = BY_ID[number].limit
    limit = "no limit" if limit is None else f"limit {limit:g}s"
    with capsys.disabled():
        print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'} ({status}, {secs:.2f}s, {limit})")


def _params():
    out = []
    for n in range(1, 17):
        marks = [pytest.mark.xfail(strict=True, reason=KNOWN_FAILURE[n])] if n in KNOWN_FAILURE else []
        out.append(pytest.param(n, marks=marks, id=f"criterion_{n:02d}"))
    return out


@pytest.mark.parametrize("number", _params())
def test_criterion(number, capsys):
    c = BY_ID[number]
    entry, secs = suite.run_criterion(c)
    status = entry["status"]
    ok = (status == "pass" or (c.contingent and status == "contingent")) and secs < c.limit
    _report(capsys, number, ok, secs, status)
    assert status == "pass" or (c.contingent and status == "contingent"), entry["detail"]
    assert secs < c.limit


def test_criterion_17_determinism(capsys):
    import time
    start = time.perf_counter()
    first, _ = suite.run_suite(determinism=False)
    second, _ = suite.run_suite(determinism=False)
    secs = time.perf_counter() - start
    same = suite.dumps(first) == suite.dumps(second)
    _report(capsys, 17, same, secs, "pass" if same else "fail")
    assert same
