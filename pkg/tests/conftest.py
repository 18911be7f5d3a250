import pathlib

import pytest

DATA = pathlib.Path(__file__).parent / "data"

_criteria = []


def record_criterion(num: int, name: str, ok: bool) -> None:
    """Log one acceptance line and fail the test if the criterion failed."""
    _criteria.append((num, name, ok))
    print(f"[acceptance] criterion {num} ({name}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({name}) failed"


@pytest.fixture
def data_dir() -> pathlib.Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok in sorted(_criteria):
        terminalreporter.write_line(
            f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}"
        )
