import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Record one acceptance line; it is echoed now and in the terminal summary."""

    def _record(number: int, ok: bool, text: str) -> None:
        line = f"ACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}: {text}"
        print(line)
        _ACCEPTANCE.append(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
