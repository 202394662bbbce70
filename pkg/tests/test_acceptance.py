"""Acceptance criteria A1-A9; each prints one PASS/FAIL line with its measurements.

Tolerances (bands, size constants, runtime limits) are pinned in
``repetilab.acceptance``.
"""

import pytest

from repetilab import acceptance


@pytest.mark.parametrize("check", acceptance.CHECKS, ids=lambda c: c.__name__[-2:].upper())
def test_criterion(check, capsys):
    res = check()
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


def test_pinned_tolerances():
    assert acceptance.A3_BAND == (0.40, 0.42)
    assert acceptance.A5_R_BAND == (1.95, 2.05)
    assert acceptance.A5_ZE_BAND == (2.05, 2.15)
    assert acceptance.A5_RUNS_BAND == (1.85, 1.95)
    assert acceptance.A8_SQRT_C == 6.5
    for band in (acceptance.A3_BAND, acceptance.A5_R_BAND, acceptance.A5_ZE_BAND,
                 acceptance.A5_RUNS_BAND):
        assert band[1] / band[0] <= 3
    limits = {c.__name__: c.limit for c in acceptance.CHECKS}
    assert limits == {"check_a1": 30, "check_a2": 5, "check_a3": 60, "check_a4": 30,
                      "check_a5": 120, "check_a6": 600, "check_a7": 60, "check_a8": 60,
                      "check_a9": 1}
