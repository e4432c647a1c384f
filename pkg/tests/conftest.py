import numpy as np
import pytest

from lcdwt import weighted_measure

ACCEPTANCE_LINES: list[str] = []

MUS = (-0.5, 0.0, 0.5, 1.0)


def record_acceptance(number: int, title: str, passed: bool, detail: str) -> str:
    line = f"[{number:2d}] {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    return record_acceptance


@pytest.fixture(scope="session")
def measures():
    return {mu: weighted_measure(mu) for mu in MUS}


@pytest.fixture(scope="session")
def m0():
    return weighted_measure(0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)
