import pytest
from hypothesis import HealthCheck, settings

from bringcurve import fq_make

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# fields exercised by the property tests: prime fields and a few extensions
FIELDS = [(7, 1), (11, 1), (7, 2), (7, 3), (11, 2), (29, 2), (13, 3)]


@pytest.fixture(scope="session", params=FIELDS, ids=lambda f: f"F{f[0]}^{f[1]}")
def ctx(request):
    return fq_make(*request.param)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_line():
    """Collects acceptance result lines for the terminal summary."""
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
