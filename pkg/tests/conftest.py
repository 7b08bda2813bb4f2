import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the test must call it before its asserts."""
    def record(number: int, title: str, ok: bool, detail: str):
        ACCEPTANCE_LINES[number] = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"
        print(ACCEPTANCE_LINES[number])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
