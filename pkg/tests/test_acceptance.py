"""Release gate: every criterion of the self-test suite at full level.

One test per criterion, each printing its pass/fail line with the
evidence detail.  Run with ``pytest tests/test_acceptance.py -v -s`` to
see the per-criterion output, or via the CLI:
``cylmeasure selftest --level full --seed 20240901``.
"""

import pytest

from cylmeasure.selftest import CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize("name,check", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_acceptance_criterion(name, check):
    result = check(DEFAULT_SEED, True)
    print(f"[{'PASS' if result.passed else 'FAIL'}] {result.criterion}: {result.detail}")
    assert result.passed, f"{result.criterion}: {result.detail}"
