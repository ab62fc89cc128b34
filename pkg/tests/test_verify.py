"""The axiom/oracle batteries must pass wholesale at the default tolerance."""

import pytest

from phasenorm.verify import AXIOM_CHECKS, ORACLE_CHECKS


@pytest.mark.parametrize("check", ORACLE_CHECKS, ids=lambda c: c.__name__)
def test_oracle_checks(check):
    result = check(1e-6)
    assert result.passed, f"{result.name}: {result.value} ({result.detail})"


@pytest.mark.parametrize("check", AXIOM_CHECKS, ids=lambda c: c.__name__)
def test_axiom_checks(check):
    result = check(1e-6)
    assert result.passed, f"{result.name}: {result.value} ({result.detail})"
