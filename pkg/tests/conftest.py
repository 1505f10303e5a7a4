import pytest

_VERDICTS: dict[int, tuple[bool, str]] = {}


class Criterion:
    """Collects named checks for one acceptance criterion."""

    def __init__(self, number):
        self.number = number
        self.failed = []
        self.notes = []

    def check(self, name, ok):
        if not ok:
            self.failed.append(name)
        return ok

    def note(self, text):
        self.notes.append(text)

    def finish(self):
        ok = not self.failed
        detail = "; ".join(self.notes + [f"failed: {name}" for name in self.failed])
        _VERDICTS[self.number] = (ok, detail)
        line = f"criterion {self.number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        assert ok, line


@pytest.fixture
def criterion(request):
    number = int(request.node.name.split("_")[1])
    return Criterion(number)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        ok, detail = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
