import re

_criteria: dict[int, tuple[str, str, str]] = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m or (report.when != "call" and report.outcome == "passed"):
        return
    n = int(m.group(1))
    detail = report.sections and "".join(text for name, text in report.sections if "stdout" in name).strip()
    if n not in _criteria or report.outcome != "passed":
        _criteria[n] = (m.group(2), report.outcome.upper(), (detail or "").splitlines()[-1] if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        name, outcome, detail = _criteria[n]
        status = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {n} [{status}] {name}" + (f": {detail}" if detail else ""))
