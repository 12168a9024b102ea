import pytest

_LINES = []


@pytest.fixture
def report():
    """Print a result line and repeat it in the terminal summary."""
    def emit(line):
        print(line)
        _LINES.append(line)
    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
