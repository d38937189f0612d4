import pytest

_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(number: int, ok: bool, detail: str, seconds: float | None = None):
        took = f" [{seconds:.1f}s]" if seconds is not None else ""
        _LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}{took}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
