"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import pytest

from subgraph_wl.reproduce import CHECKS


@pytest.mark.parametrize("check", CHECKS, ids=[c.__name__.removeprefix("check_") for c in CHECKS])
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
