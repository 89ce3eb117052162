import pytest

_criteria: dict[int, tuple[str, float]] = {}
PREFIX = "test_criterion_"


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith(PREFIX):
        return
    n = int(name[len(PREFIX):].split("_", 1)[0])
    if report.when == "call" or report.failed:
        ok = report.passed and _criteria.get(n, ("PASS", 0))[0] == "PASS"
        _criteria[n] = ("PASS" if ok else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, secs = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {CRITERIA[n]}  ({secs:.1f}s)")
