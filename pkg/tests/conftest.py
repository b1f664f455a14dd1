import pytest

from pansu_rate.lattice import builtin_genset, enumerate_ball

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def heis():
    return builtin_genset("HEIS_STD")


@pytest.fixture(scope="session")
def s1():
    return builtin_genset("PROD_S1")


@pytest.fixture(scope="session")
def s2():
    return builtin_genset("PROD_S2")


@pytest.fixture(scope="session")
def heis_census_60(heis):
    return enumerate_ball(heis, 60)


@pytest.fixture(scope="session")
def heis_ball_30(heis):
    return enumerate_ball(heis, 30, store=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
