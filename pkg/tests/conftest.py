import numpy as np
import pytest

from hybridstab.codes import (
    build_bacon_shor,
    build_gkp18,
    build_motivating,
    build_seven_qubit_hybrid,
    gkp18_transversal,
)
from hybridstab.pauli import PauliOperator

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def seven_qubit():
    return build_seven_qubit_hybrid()


@pytest.fixture(scope="session")
def gkp18():
    return build_gkp18()


@pytest.fixture(scope="session")
def gkp18_full():
    return build_gkp18(gkp18_transversal())


@pytest.fixture(scope="session")
def motivating():
    return build_motivating(4, 2, 1)


@pytest.fixture(scope="session")
def bacon_shor3():
    return build_bacon_shor(3)


def qubits(text: str) -> PauliOperator:
    return PauliOperator.parse(text, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
