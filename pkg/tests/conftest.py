import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gemtopo.enumeration import enumerate_catalog  # noqa: E402
from gemtopo.graph import COLOR_FREE  # noqa: E402


@pytest.fixture(scope="session")
def catalog_d3_8():
    return enumerate_catalog(3, 8, mode=COLOR_FREE)


@pytest.fixture(scope="session")
def catalog_d4_6():
    return enumerate_catalog(4, 6, mode=COLOR_FREE)


@pytest.fixture(scope="session")
def catalog_d2_8():
    return enumerate_catalog(2, 8, mode=COLOR_FREE)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
