import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from nonobtuse.geometry import Point, to_coord
from nonobtuse.model import (
    GeometryError,
    ParseError,
    SchemaError,
    UidMismatch,
    combined_vertices,
    load_instance,
    load_solution,
    make_instance,
    make_solution,
    save_instance,
    save_solution,
)


def test_instance_roundtrip(with_constraint):
    data = save_instance(with_constraint)
    assert load_instance(data) == with_constraint
    assert save_instance(load_instance(data)) == data


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(-10**6, 10**6), st.integers(1, 10**6)), max_size=6))
def test_solution_roundtrip_rationals(fracs):
    pts = [(to_coord(f"{a}/{b}"), to_coord(f"{b}/{abs(a) + 1}")) for a, b in fracs]
    pts = list(dict.fromkeys(pts))
    sol = make_solution("u", pts, [(0, 1), (1, 2)])
    back = load_solution(save_solution(sol))
    assert back == sol
    assert save_solution(back) == save_solution(sol)


def test_rational_encoding():
    sol = make_solution("u", [("1/2", 3)], [])
    obj = json.loads(save_solution(sol))
    assert obj["steiner_points_x"] == ["1/2"]
    assert obj["steiner_points_y"] == [3]


def test_combined_vertices(square):
    sol = make_solution("square", [(1, 1)], [])
    assert combined_vertices(square, sol)[-1] == Point(to_coord(1), to_coord(1))
    with pytest.raises(UidMismatch):
        combined_vertices(square, make_solution("other"))


@pytest.mark.parametrize(
    "pts,boundary,cons,indices",
    [
        ([(0, 0), (1, 0), (0, 0)], [0, 1, 2], [], [0, 2]),  # duplicate point
        ([(0, 0), (2, 0), (0, 2), (2, 2)], [0, 1, 2, 3], [], None),  # self-intersecting
        ([(0, 0), (0, 2), (2, 0)], [0, 1, 2], [], [0, 1, 2]),  # clockwise
        ([(0, 0), (2, 0), (0, 2), (5, 5)], [0, 1, 2], [], [3]),  # point outside
        ([(0, 0), (4, 0), (4, 4), (0, 4), (1, 1), (3, 3), (1, 3), (3, 1)], [0, 1, 2, 3], [(4, 5), (6, 7)], None),
        ([(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)], [0, 1, 2, 3], [(0, 2)], [0, 2, 4]),  # point on constraint
        ([(0, 0), (4, 0), (0, 4)], [0, 1, 7], [], [7]),
    ],
)
def test_geometry_errors(pts, boundary, cons, indices):
    with pytest.raises(GeometryError) as exc:
        make_instance("bad", pts, boundary, cons)
    if indices is not None:
        assert sorted(exc.value.indices) == sorted(indices)


def test_nonconvex_constraint_outside():
    # the segment 1-3 leaves an L-shaped region through its notch
    pts = [(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)]
    with pytest.raises(GeometryError):
        make_instance("ell", pts, range(6), [(2, 4)])


def test_parse_errors():
    with pytest.raises(ParseError):
        load_instance(b"{not json")
    with pytest.raises(SchemaError):
        load_instance(json.dumps({"instance_uid": "x", "points_x": [0, 1, 0]}))
    with pytest.raises(SchemaError):
        load_instance(json.dumps({
            "instance_uid": "x", "points_x": [0, 1], "points_y": [0], "region_boundary": [0, 1],
        }))
    with pytest.raises(SchemaError):
        load_solution(json.dumps({
            "instance_uid": "x", "steiner_points_x": [], "steiner_points_y": [], "edges": [[0, 0]],
        }))
    with pytest.raises(SchemaError):
        load_solution(json.dumps({
            "content_type": "something", "instance_uid": "x",
            "steiner_points_x": [], "steiner_points_y": [], "edges": [],
        }))


def test_coordinate_must_be_integer():
    with pytest.raises((SchemaError, GeometryError)):
        load_instance(json.dumps({
            "instance_uid": "x", "points_x": [0, 1.5, 0], "points_y": [0, 0, 1], "region_boundary": [0, 1, 2],
        }))
