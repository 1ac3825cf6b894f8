"""Acceptance gate: every criterion prints one PASS/FAIL line with expected vs computed."""

import pytest

from cerings.suite import CRITERIA, SuiteConfig

CONFIG = SuiteConfig()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(criterion, capsys):
    row = criterion(CONFIG)
    with capsys.disabled():
        print("\n" + row.line())
    assert row.passed, row.line()
