import pytest

_ACCEPTANCE: list[tuple[str, bool, str]] = []


class CriterionRecorder:
    def __init__(self, name):
        self.name = name
        self.detail = ""

    def note(self, detail):
        self.detail = detail


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion."""
    marker = request.node.get_closest_marker("criterion")
    rec = CriterionRecorder(marker.args[0] if marker else request.node.name)
    yield rec
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    _ACCEPTANCE.append((rec.name, ok, rec.detail))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
