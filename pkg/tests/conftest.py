import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nonstrat import pennies_game, prisoners_dilemma, theorem3_game_pair  # noqa: E402

_criteria = defaultdict(list)


@pytest.fixture
def pd():
    return prisoners_dilemma()


@pytest.fixture
def pennies():
    return pennies_game()


@pytest.fixture
def g1g2():
    return theorem3_game_pair([1.0, 2.0], [2.0, 1.0], 0)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[marker.args[0]].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        ok = all(passed for _, passed in results)
        failed = [name for name, passed in results if not passed]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (failing: " + ", ".join(failed) + ")"
        terminalreporter.write_line(line)
