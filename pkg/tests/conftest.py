from functools import lru_cache

import pytest

from invcensus.groups import build_group


@lru_cache(maxsize=None)
def _group(gid):
    return build_group(gid)


@pytest.fixture(scope="session")
def group():
    """Memoised ``build_group`` shared by the whole session."""
    return _group


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion."""
    lines = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid or rep.when not in ("call", "setup"):
                continue
            name = nodeid.split("::")[-1][len("test_criterion_"):]
            if outcome == "passed" and rep.when == "setup":
                continue
            lines[name] = "PASS" if outcome == "passed" else "FAIL"
    if lines:
        terminalreporter.section("acceptance criteria")
        for name in sorted(lines):
            num, _, label = name.partition("_")
            terminalreporter.write_line(f"criterion {int(num):2d} {lines[name]}  {label.replace('_', ' ')}")
