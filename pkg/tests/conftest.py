import hypothesis.strategies as st
import pytest
from gmpy2 import mpq
from hypothesis import settings

from nonobtuse.geometry import Point, to_coord
from nonobtuse.model import make_instance

settings.register_profile("default", deadline=None)
settings.load_profile("default")

small_ints = st.integers(-50, 50)
# mostly integers, some small-denominator rationals; cheaper to draw than st.fractions
coords = st.builds(mpq, small_ints, st.sampled_from([1, 1, 1, 2, 3, 4, 6, 12]))
points = st.builds(Point, coords, coords)
int_points = st.builds(Point, small_ints.map(to_coord), small_ints.map(to_coord))


@pytest.fixture
def square():
    return make_instance("square", [(0, 0), (4, 0), (4, 4), (0, 4)], [0, 1, 2, 3])


@pytest.fixture
def obtuse_triangle():
    return make_instance("tri", [(0, 0), (5, 0), (4, 1)], [0, 1, 2])


@pytest.fixture
def l_shape():
    return make_instance(
        "ell", [(0, 0), (6, 0), (6, 2), (2, 2), (2, 6), (0, 6)], [0, 1, 2, 3, 4, 5]
    )


@pytest.fixture
def with_constraint():
    # hexagon with an interior point and a constraint through the middle
    return make_instance(
        "hexc",
        [(0, 0), (8, 0), (12, 5), (8, 10), (0, 10), (-4, 5), (4, 5)],
        [0, 1, 2, 3, 4, 5],
        [(5, 6)],
    )


# one pass/fail line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" :: {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
