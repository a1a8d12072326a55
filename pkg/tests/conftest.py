import pytest
from hypothesis import settings

from exczero.catalog import load_catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Call with (ok, detail); records one PASS/FAIL line and asserts."""

    def record(ok: bool, detail: str = ""):
        line = "%s %s%s" % ("PASS" if ok else "FAIL", request.node.name, (": " + detail) if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
