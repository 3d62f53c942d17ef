import pytest

from ohtsuki.corpus import corpus


@pytest.fixture(scope="session")
def fixtures():
    return corpus()


@pytest.fixture(scope="session")
def knots(fixtures):
    return {n: fx.diagram() for n, fx in fixtures.items() if fx.kind == "knot"}


@pytest.fixture(scope="session")
def presentations(fixtures):
    return {n: fx.presentation() for n, fx in fixtures.items() if fx.kind == "presentation"}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
