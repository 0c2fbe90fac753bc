import pytest

from dialign.phonetics import SegmentTable, tokenize


@pytest.fixture(scope="session")
def table():
    return SegmentTable.default()


@pytest.fixture(scope="session")
def tok(table):
    def _tok(raw):
        return tokenize(raw, table) if raw else ()

    return _tok


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Records one PASS/FAIL line per acceptance criterion; the lines are
    replayed in a terminal section after the run so they are visible even
    for passing tests."""

    def _report(criterion: int, ok: bool, detail: str) -> None:
        line = f"ACCEPTANCE {criterion:2d}: {'PASS' if ok else 'FAIL'} -- {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
