import re

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if m is None:
        return
    k = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        doc = _docs.get(report.nodeid.split("::")[-1], "")
        _CRITERIA[k] = ("PASS" if report.outcome == "passed" else "FAIL", doc)


_docs: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.name.startswith("test_criterion_"):
            _docs[item.name] = (item.function.__doc__ or "").strip().splitlines()[0]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        status, doc = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d} {status}  {doc}")
