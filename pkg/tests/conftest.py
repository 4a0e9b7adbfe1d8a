import sys
import random

import pytest

from sumprodgraph.setgraph import ValueSet


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def abc():
    return ValueSet([1, 2, 3])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
