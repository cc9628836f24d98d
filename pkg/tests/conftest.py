import pytest

from mixwreath.free_lie import LieVarietySpec
from mixwreath.varieties import VarietySpec, trivial_variety, validate_multihomogeneous


@pytest.fixture(scope="session")
def x2():
    """Representations with y*v1*v2 = 0."""
    return validate_multihomogeneous(VarietySpec.parse(["y*v1*v2"], "X2"))


@pytest.fixture(scope="session")
def trivial():
    return trivial_variety()


@pytest.fixture(scope="session")
def abelian_theta():
    return LieVarietySpec(["[v1,v2]"])


@pytest.fixture(scope="session")
def nilpotent2_theta():
    return LieVarietySpec(["[[v1,v2],v3]"])


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
