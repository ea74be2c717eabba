import pytest

from cactus.hypgeo import realize
from cactus.tess import build_ball
from cactus.words import named_presentation

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ball8():
    return build_ball(named_presentation("j4-23"), 8)


@pytest.fixture(scope="session")
def ball10():
    return build_ball(named_presentation("j4-23"), 10)


@pytest.fixture(scope="session")
def rt(ball8):
    return realize(ball8)


@pytest.fixture(scope="session")
def ball3():
    return build_ball(named_presentation("j3-2"), 10)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
