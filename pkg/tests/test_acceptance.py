"""Acceptance gate: one test per numbered criterion, at its stated tolerance.

Criteria 1, 4 and 9 fail for documented numerical reasons (defective
eigenvalues at exact exceptional points, exact grid hits of the boundary
momentum at gamma = 1, log-dominated gradient growth); the analysis lives
in the rtxy.validation docstrings.  They are asserted as stated regardless.
"""

import pytest

from rtxy import validation


@pytest.mark.parametrize(
    "criterion", validation.ALL_CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    assert result.passed, result.line()
