import pytest

# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def record_criterion():
    def record(key: str, ok: bool, text: str):
        line = f"{key} {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE_LINES[key] = line
        print(line)
    return record
