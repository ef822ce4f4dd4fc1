import sys
from pathlib import Path

import numpy as np
import pytest

from coconvex.instances import shifted_cone_2d

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture
def K():
    return shifted_cone_2d()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
