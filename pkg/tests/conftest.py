import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[int, str] = {}
_NAMES: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    _NAMES[n] = m.group(2).replace("_", " ")
    failed = report.failed or (report.when == "call" and report.skipped)
    if failed:
        _CRITERIA[n] = "FAIL"
    elif report.when == "call":
        _CRITERIA.setdefault(n, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"{_CRITERIA[n]} criterion {n}: {_NAMES[n]}")
