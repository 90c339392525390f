import pytest

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    tag = getattr(getattr(item, "function", None), "criterion", None)
    if tag is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _RESULTS[tag] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_RESULTS.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
