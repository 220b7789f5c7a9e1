from collections import defaultdict
from fractions import Fraction as F

import pytest

from nkconfig.configuration import apply_map, disjoint_union, from_lines, verify
from nkconfig.geometry import AffineMap, Point, line_through
from nkconfig.seeds import pappus

CRITERIA = {
    1: "figure reproductions (16_3), (45_4), (19_3)-(21_3)",
    2: "iterated bound table, golden values",
    3: "improved bound table, golden values and t transitions",
    4: "chained k=5 construction (270_5) -> (1085_5)",
    5: "property suites: geometry, counts, invariance, planner soundness",
    6: "negative controls",
}

_criterion_of: dict[str, int] = {}
_outcomes: dict[int, list[tuple[str, str, float]]] = defaultdict(list)


@pytest.fixture
def square():
    """(4_2) unit square: two pencils of two lines each."""
    pts = [Point.of(0, 0), Point.of(1, 0), Point.of(1, 1), Point.of(0, 1)]
    lines = [line_through(pts[i], pts[(i + 1) % 4]) for i in range(4)]
    return from_lines(2, pts, lines)


def two_pencil_fixture():
    """Pappus next to a quarter-turned Pappus: independent 3-pencils, horizontal and vertical."""
    a = pappus()
    turn = AffineMap(F(0), F(-1), F(1), F(0))
    b = apply_map(apply_map(a, turn), AffineMap.translation(F(41, 3), F(-29, 7)))
    c = disjoint_union(a, b)
    assert verify(c).ok
    return c


@pytest.fixture
def two_pencils():
    return two_pencil_fixture()


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _criterion_of[item.nodeid] = int(mark.args[0])


def pytest_runtest_logreport(report):
    crit = _criterion_of.get(report.nodeid)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[crit].append((report.nodeid, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(CRITERIA):
        runs = _outcomes.get(crit)
        if not runs:
            tr.write_line(f"criterion {crit}: NOT RUN  {CRITERIA[crit]}")
            continue
        ok = all(outcome == "passed" for _, outcome, _ in runs)
        secs = sum(d for _, _, d in runs)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  "
                      f"({len(runs)} checks, {secs:.2f}s)  {CRITERIA[crit]}")
