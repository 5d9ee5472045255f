import pytest

ACCEPTANCE_LINES: list[str] = []


class AcceptanceRecorder:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.detail = ""

    def note(self, text: str):
        self.detail = text


@pytest.fixture
def criterion(request):
    """Records one pass/fail line for an acceptance criterion.

    The test marks itself with ``@pytest.mark.criterion(n, title)``.
    """
    mark = request.node.get_closest_marker("criterion")
    rec = AcceptanceRecorder(*mark.args)
    yield rec
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {rec.number:>2}: {rec.title}"
    if rec.detail:
        line += f" ({rec.detail})"
    ACCEPTANCE_LINES.append(line)
    print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
