import pytest

_LINES = []


@pytest.fixture
def verdict(request):
    """Record (and print) one PASS/FAIL line for an acceptance criterion."""
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def record(k, ok, detail):
        line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        _LINES.append(line)
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
