import pytest

_criteria: list[tuple[str, bool]] = []


class _Criterion:
    def __init__(self, name):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        _criteria.append((self.name, ok))
        print(f"[{'PASS' if ok else 'FAIL'}] {self.name}")
        return False


@pytest.fixture
def criterion():
    """Context manager that records one acceptance line per criterion."""
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _criteria:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
