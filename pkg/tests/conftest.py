import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Log one verdict line per acceptance criterion; shown in the terminal summary."""

    def _record(number, title, ok, detail):
        _ACCEPTANCE.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
        assert ok, detail

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
