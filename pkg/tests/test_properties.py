import pytest

from properties import CASES, SUITES


@pytest.mark.parametrize("name", list(SUITES))
def test_property_suite(name):
    assert SUITES[name]() >= CASES
