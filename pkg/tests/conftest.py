from pathlib import Path

import pytest

from quiveract.group import make_cyclic
from quiveract.quiver import Quiver
from quiveract.quiver_paction import (
    global_action_from_generators,
    make_partial_action,
    restrict_global_action,
)

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(text): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None and (rep.when == "call" or rep.failed):
        _acceptance.append((rep.passed, mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for passed, text in _acceptance:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {text}")


@pytest.fixture
def c3():
    return make_cyclic(3)


@pytest.fixture
def c4():
    return make_cyclic(4)


@pytest.fixture
def arrow_quiver():
    return Quiver.build(["v1", "v2"], [("f", "v1", "v2")])


@pytest.fixture
def cycle4():
    return Quiver.build(
        ["1", "2", "3", "4"],
        [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4"), ("d", "4", "1")],
    )


@pytest.fixture
def rotation(c4, cycle4):
    return global_action_from_generators(
        c4,
        cycle4,
        {"t": ({"1": "2", "2": "3", "3": "4", "4": "1"}, {"a": "b", "b": "c", "c": "d", "d": "a"})},
    )


@pytest.fixture
def path123(cycle4):
    """Subquiver of the 4-cycle on vertices 1, 2, 3 and arrows a, b."""
    return cycle4.subquiver(["1", "2", "3"], ["a", "b"])


@pytest.fixture
def restricted_rotation(rotation, path123):
    return restrict_global_action(rotation, path123)


@pytest.fixture
def arrow_action(c3, arrow_quiver):
    return make_partial_action(
        c3,
        arrow_quiver,
        {"t": (["v1"], []), "t2": (["v2"], [])},
        {"t": {"v2": "v1"}, "t2": {"v1": "v2"}},
    )
