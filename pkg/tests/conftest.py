import pytest

from lyapirreg.colli_vargas import CvParams, build_tables

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cv_params():
    return CvParams()


@pytest.fixture(scope="session")
def cv_tables(cv_params):
    return build_tables(cv_params, 150)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
