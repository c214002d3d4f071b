from __future__ import annotations

import pytest

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    entry = _criteria.setdefault(n, {"text": text, "ok": True, "seen": False, "notes": []})
    if report.when == "call" or report.failed:
        entry["seen"] = True
        entry["ok"] = entry["ok"] and report.passed
    if report.when == "call":
        entry["notes"] += [v for k, v in item.user_properties if k == "note"]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        entry = _criteria[n]
        status = "PASS" if entry["ok"] and entry["seen"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {n}: {entry['text']}")
        for note in entry["notes"]:
            terminalreporter.write_line(f"    {note}")
