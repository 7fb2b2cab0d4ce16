import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Collects the one-line verdict of an acceptance check for the summary."""

    def add(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
