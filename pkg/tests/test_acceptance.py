"""Acceptance gate: every primary criterion at its stated tolerance.

Each criterion prints one PASS/FAIL line (visible with ``pytest -s`` or in the
captured output of a failure) and the test fails if the criterion fails.
"""

import sys

import pytest

from carrykit.reproduce import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(number, capsys):
    result = run_criterion(number, workers=1, seed=0)
    with capsys.disabled():
        sys.stdout.write("\n" + result.line() + "\n")
    assert result.passed, result.line()
