import pytest

from atddg.frame import ReducedState

from .helpers import random_escape_states

ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): exit criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    status = "PASS" if call.excinfo is None else "FAIL"
    ACCEPTANCE_LINES.append((n, f"[{status}] AC{n:<2d} {title}"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture
def example1():
    return ReducedState(x_A=6.0, x_T=3.0, y_T=2.0, alpha=0.5)


@pytest.fixture(scope="session")
def fuzz_states():
    return random_escape_states(10_000, seed=20261016)
