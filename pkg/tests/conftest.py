import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

_CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Notes attached to an acceptance criterion, shown in its summary line."""
    notes: list = []
    _CRITERIA.setdefault(request.node.nodeid, {})["notes"] = notes
    return notes


def pytest_runtest_logreport(report):
    if "test_criterion_" not in report.nodeid:
        return
    entry = _CRITERIA.setdefault(report.nodeid, {})
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry["outcome"] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    grouped: dict = {}
    for nodeid, entry in _CRITERIA.items():
        name = nodeid.split("test_criterion_")[1].split("[")[0]
        num, _, label = name.partition("_")
        g = grouped.setdefault(int(num), {"label": label.replace("_", " "), "ok": True, "notes": []})
        g["ok"] = g["ok"] and entry.get("outcome") == "passed"
        g["notes"].extend(entry.get("notes", []))
    terminalreporter.section("acceptance criteria")
    for num in sorted(grouped):
        g = grouped[num]
        verdict = "PASS" if g["ok"] else "FAIL"
        notes = "; ".join(g["notes"])
        line = f"criterion {num:2d} {verdict}  {g['label']}"
        terminalreporter.write_line(line + (f"  [{notes}]" if notes else ""))
