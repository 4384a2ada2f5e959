from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from nonobtuse.geometry import (
    DegenerateError,
    Location,
    Point,
    TriangleClass,
    altitude_foot,
    circumcenter,
    classify_triangle,
    convex_hull,
    in_circle,
    incircle_filtered,
    line_intersection,
    locate_in_polygon,
    orient,
    orient_filtered,
    orientation,
    Orientation,
    point,
    polygon_simplicity_violation,
    segments_properly_cross,
    signed_area2,
    squared_distance,
    to_coord,
)

from conftest import int_points, points


def P(x, y):
    return point(x, y)


# --- plain examples -----------------------------------------------------------

def test_orientation_examples():
    assert orientation(P(0, 0), P(1, 0), P(0, 1)) is Orientation.COUNTERCLOCKWISE
    assert orientation(P(0, 0), P(0, 1), P(1, 0)) is Orientation.CLOCKWISE
    assert orientation(P(0, 0), P(1, 1), P(2, 2)) is Orientation.COLLINEAR


def test_classify_examples():
    assert classify_triangle(P(0, 0), P(5, 0), P(4, 1)) is TriangleClass.OBTUSE
    assert classify_triangle(P(0, 0), P(4, 0), P(0, 3)) is TriangleClass.RIGHT
    assert classify_triangle(P(0, 0), P(2, 0), P(1, 2)) is TriangleClass.ACUTE
    assert classify_triangle(P(0, 0), P(1, 1), P(3, 3)) is TriangleClass.DEGENERATE


def test_rational_input():
    a = P("1/3", "2/3")
    assert a.x == Fraction(1, 3)
    assert to_coord(Fraction(3, 6)) == Fraction(1, 2)
    assert to_coord(0.5) == Fraction(1, 2)  # floats convert exactly
    with pytest.raises(ValueError):
        to_coord("1/0")
    with pytest.raises(TypeError):
        to_coord(True)


def test_in_circle_examples():
    a, b, c = P(0, 0), P(2, 0), P(0, 2)
    assert in_circle(a, b, c, P(1, 1)) == 1
    assert in_circle(a, b, c, P(2, 2)) == 0
    assert in_circle(a, b, c, P(3, 3)) == -1
    # clockwise input gives the same answer
    assert in_circle(a, c, b, P(1, 1)) == 1
    with pytest.raises(DegenerateError):
        in_circle(P(0, 0), P(1, 1), P(2, 2), P(0, 1))


def test_constructions():
    assert altitude_foot(P(4, 1), P(0, 0), P(5, 0)) == P(4, 0)
    assert circumcenter(P(0, 0), P(2, 0), P(0, 2)) == P(1, 1)
    assert line_intersection(P(0, 0), P(2, 2), P(0, 2), P(2, 0)) == P(1, 1)


def test_segments_cross():
    assert segments_properly_cross(P(0, 0), P(2, 2), P(0, 2), P(2, 0))
    assert not segments_properly_cross(P(0, 0), P(1, 0), P(1, 0), P(2, 1))  # shared endpoint
    assert segments_properly_cross(P(0, 0), P(2, 0), P(1, 0), P(1, 1))  # T-junction
    assert segments_properly_cross(P(0, 0), P(2, 0), P(1, 0), P(3, 0))  # overlap


def test_polygon_helpers():
    sq = [P(0, 0), P(2, 0), P(2, 2), P(0, 2)]
    assert signed_area2(sq) == 8
    assert locate_in_polygon(P(1, 1), sq) is Location.INSIDE
    assert locate_in_polygon(P(2, 1), sq) is Location.BOUNDARY
    assert locate_in_polygon(P(3, 1), sq) is Location.OUTSIDE
    assert polygon_simplicity_violation(sq) is None
    bow = [P(0, 0), P(2, 2), P(2, 0), P(0, 2)]
    assert polygon_simplicity_violation(bow) is not None
    pts = sq + [P(1, 1), P(1, 0)]
    assert sorted(convex_hull(pts)) == [0, 1, 2, 3]


# --- properties (10,000+ randomized checks in total) ------------------------------

N = 1000


@settings(max_examples=N)
@given(points, points, points)
def test_orient_antisymmetric_and_cyclic(a, b, c):
    s = orient(a, b, c)
    assert orient(b, a, c) == -s
    assert orient(b, c, a) == s
    assert orient(a, c, b) == -s


@settings(max_examples=N)
@given(points, points, points, st.integers(1, 1000), st.integers(-20, 20), st.integers(-20, 20))
def test_orient_scale_translate_invariant(a, b, c, k, dx, dy):
    def f(p):
        return Point(p.x * k + dx, p.y * k + dy)

    assert orient(f(a), f(b), f(c)) == orient(a, b, c)


@settings(max_examples=N)
@given(points, points, points, points, st.integers(1, 1000))
def test_in_circle_permutation_and_scale(a, b, c, d, k):
    assume(orient(a, b, c) != 0)
    s = in_circle(a, b, c, d)
    for perm in ((b, c, a), (c, a, b), (b, a, c), (a, c, b)):
        assert in_circle(*perm, d) == s
    scaled = [Point(p.x * k, p.y * k) for p in (a, b, c, d)]
    assert in_circle(*scaled) == s


@settings(max_examples=N)
@given(points, points, points)
def test_classify_permutation_invariant(a, b, c):
    cls = classify_triangle(a, b, c)
    for perm in ((b, c, a), (c, a, b), (b, a, c), (c, b, a), (a, c, b)):
        assert classify_triangle(*perm) is cls
    assert (cls is TriangleClass.DEGENERATE) == (orient(a, b, c) == 0)


@settings(max_examples=N)
@given(points, points, points)
def test_at_most_one_obtuse_angle(a, b, c):
    assume(orient(a, b, c) != 0)
    sides = sorted([squared_distance(a, b), squared_distance(b, c), squared_distance(c, a)])
    # law of cosines: the angle facing the longest side is the only candidate
    n_obtuse = sum(
        squared_distance(q, r) > squared_distance(p, q) + squared_distance(p, r)
        for p, q, r in ((a, b, c), (b, c, a), (c, a, b))
    )
    assert n_obtuse <= 1
    cls = classify_triangle(a, b, c)
    assert (cls is TriangleClass.OBTUSE) == (sides[2] > sides[0] + sides[1])
    assert (cls is TriangleClass.RIGHT) == (sides[2] == sides[0] + sides[1])


@settings(max_examples=500)
@given(int_points, int_points, int_points, int_points)
def test_filtered_matches_exact(a, b, c, d):
    f = [(float(p.x), float(p.y)) for p in (a, b, c, d)]
    assert orient_filtered(f[0], f[1], f[2], a, b, c) == orient(a, b, c)
    if orient(a, b, c) > 0:
        assert incircle_filtered(*f, a, b, c, d) == in_circle(a, b, c, d)


def test_filtered_near_degenerate():
    # nearly collinear with large coordinates; the float filter must defer to exact arithmetic
    a = P(2**30, 2**30)
    b = P(2**30 + 1, 2**30 + 1)
    c = P(2**31 + 1, 2**31 + 2)
    fl = [(float(p.x), float(p.y)) for p in (a, b, c)]
    assert orient_filtered(*fl, a, b, c) == orient(a, b, c)
