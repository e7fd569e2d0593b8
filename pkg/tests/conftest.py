import pytest

from trispline.demo import sample_dataset, square_mesh
from trispline.geometry import Triangulation

_acceptance = []


@pytest.fixture
def square():
    return square_mesh()


@pytest.fixture
def square_data():
    return sample_dataset()


@pytest.fixture
def single():
    return Triangulation([(0, 0), (2, 0), (0, 1)], [(0, 1, 2)])


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
