"""Shared hooks: acceptance criteria report one PASS/FAIL line each in the terminal summary."""
import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """record(number, title, ok, detail) -> ok; the line is printed at the end of the run."""
    def record(number, title, ok, detail=""):
        _LINES.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
