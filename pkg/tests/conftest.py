import pytest

_RESULTS = []


class Verdict:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.lines = []

    def note(self, text):
        self.lines.append(text)

    def close(self, ok):
        line = f"criterion {self.number:>2} {'PASS' if ok else 'FAIL'}  {self.title}"
        _RESULTS.append((self.number, line, list(self.lines)))
        print(line)
        for extra in self.lines:
            print("    " + extra)
        return ok


@pytest.fixture
def verdict(request):
    marker = request.node.get_closest_marker("criterion")
    return Verdict(*marker.args)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line, extra in sorted(_RESULTS):
        terminalreporter.write_line(line)
        for text in extra:
            terminalreporter.write_line("    " + text)
