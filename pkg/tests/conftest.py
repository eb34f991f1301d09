import numpy as np
import pytest

from splithad import construct_bmsph, read_artifact
from splithad.io import golden_path


@pytest.fixture(scope="session")
def golden_9x12():
    return read_artifact(golden_path("ex_9x12.phm"), expect="phm")


@pytest.fixture(scope="session")
def golden_49x56():
    return read_artifact(golden_path("ex_49x56.bibd"), expect="bibd")


@pytest.fixture(scope="session")
def golden_ext():
    return read_artifact(golden_path("ext_7x6.lines"), expect="lines")


@pytest.fixture(scope="session")
def h3():
    return construct_bmsph(3)


@pytest.fixture(scope="session")
def h7():
    return construct_bmsph(7)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
