import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("suite")

# criterion results are echoed in the terminal summary so they stay visible
# even with output capture on
_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Recorder for acceptance-criterion tests.

    Prints one PASS/FAIL line per criterion and fails the test on FAIL.
    """

    def record(number: int, name: str, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        line = f"ACCEPTANCE {number:2d} {name}: {status}"
        if detail:
            line += f"  [{detail}]"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
