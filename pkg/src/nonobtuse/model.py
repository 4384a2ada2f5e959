"""Instance/solution data model and the JSON interchange format.

Instances are validated exactly on load. Solutions only get structural checks
here; geometric validity is the verifier's business.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .geometry import (
    Coord,
    Location,
    Point,
    locate_in_polygon,
    midpoint,
    point_in_segment_interior,
    polygon_simplicity_violation,
    segments_properly_cross,
    signed_area2,
    to_coord,
)

INSTANCE_CONTENT_TYPE = "CG_SHOP_2025_Instance"
SOLUTION_CONTENT_TYPE = "CG_SHOP_2025_Solution"
MAX_POINTS = 250
COORD_BOUND = 2**30


class ModelError(ValueError):
    """Base class for everything that can go wrong reading instances or solutions."""


class ParseError(ModelError):
    pass


class SchemaError(ModelError):
    pass


class GeometryError(ModelError):
    def __init__(self, message: str, indices: Sequence[int] = ()):
        super().__init__(f"{message} (indices {list(indices)})" if indices else message)
        self.indices = list(indices)


class UidMismatch(ModelError):
    pass


class Origin(enum.Enum):
    ORIGINAL = "original"
    STEINER = "steiner"


class VertexId(NamedTuple):
    index: int
    origin: Origin


class EdgeRecord(NamedTuple):
    u: VertexId
    v: VertexId

    @classmethod
    def of(cls, a: VertexId, b: VertexId) -> "EdgeRecord":
        return cls(a, b) if a.index <= b.index else cls(b, a)


@dataclass(frozen=True)
class Instance:
    uid: str
    points: tuple[Point, ...]
    region_boundary: tuple[int, ...]
    constraints: tuple[tuple[int, int], ...] = ()

    @property
    def boundary_points(self) -> list[Point]:
        return [self.points[i] for i in self.region_boundary]

    def boundary_edges(self) -> list[tuple[int, int]]:
        rb = self.region_boundary
        return [(rb[i], rb[(i + 1) % len(rb)]) for i in range(len(rb))]


@dataclass(frozen=True)
class Solution:
    instance_uid: str
    steiner_points: tuple[Point, ...] = ()
    edges: tuple[tuple[int, int], ...] = field(default=())


def make_instance(uid, points, region_boundary, constraints=(), validate=True) -> Instance:
    inst = Instance(
        uid=uid,
        points=tuple(Point(to_coord(x), to_coord(y)) for x, y in points),
        region_boundary=tuple(int(i) for i in region_boundary),
        constraints=tuple((int(i), int(j)) for i, j in constraints),
    )
    if validate:
        validate_instance(inst)
    return inst


def make_solution(uid, steiner_points=(), edges=()) -> Solution:
    sol = Solution(
        instance_uid=uid,
        steiner_points=tuple(Point(to_coord(x), to_coord(y)) for x, y in steiner_points),
        edges=tuple((int(i), int(j)) for i, j in edges),
    )
    check_solution_structure(sol)
    return sol


# ---------------------------------------------------------------------------
# validation


def _bbox(a: Point, b: Point):
    return (min(a.x, b.x), max(a.x, b.x), min(a.y, b.y), max(a.y, b.y))


def _disjoint(b1, b2) -> bool:
    return b1[1] < b2[0] or b2[1] < b1[0] or b1[3] < b2[2] or b2[3] < b1[2]


def validate_instance(inst: Instance) -> None:
    """Raise ``GeometryError`` naming offending indices if any invariant fails."""
    pts = inst.points
    n = len(pts)
    if n > MAX_POINTS:
        raise GeometryError(f"{n} points exceeds the limit of {MAX_POINTS}")
    for i, p in enumerate(pts):
        if p.x.denominator != 1 or p.y.denominator != 1:
            raise GeometryError("instance coordinates must be integers", [i])
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise GeometryError("duplicate point", [seen[p], i])
        seen[p] = i

    rb = inst.region_boundary
    if len(rb) < 3:
        raise GeometryError("boundary needs at least 3 vertices", list(rb))
    for i in rb:
        if not 0 <= i < n:
            raise GeometryError("boundary index out of range", [i])
    if len(set(rb)) != len(rb):
        dup = [i for i in rb if rb.count(i) > 1]
        raise GeometryError("boundary indices not distinct", sorted(set(dup)))
    poly = inst.boundary_points
    bad = polygon_simplicity_violation(poly)
    if bad is not None:
        i, j = bad
        m = len(rb)
        raise GeometryError(
            "boundary not simple", [rb[i], rb[(i + 1) % m], rb[j], rb[(j + 1) % m]]
        )
    if signed_area2(poly) <= 0:
        raise GeometryError("boundary not counter-clockwise", list(rb))

    on_boundary = set(rb)
    for i, p in enumerate(pts):
        if i in on_boundary:
            continue
        if locate_in_polygon(p, poly) is Location.OUTSIDE:
            raise GeometryError("point outside region", [i])

    bedges = inst.boundary_edges()
    bedge_set = {frozenset(e) for e in bedges}
    bboxes = [_bbox(pts[a], pts[b]) for a, b in bedges]
    cons = inst.constraints
    cseen: dict[frozenset, int] = {}
    cboxes = []
    for k, (i, j) in enumerate(cons):
        if not (0 <= i < n and 0 <= j < n):
            raise GeometryError("constraint index out of range", [i, j])
        if i == j:
            raise GeometryError("degenerate constraint", [i, j])
        key = frozenset((i, j))
        if key in cseen:
            raise GeometryError("duplicate constraint", [i, j])
        cseen[key] = k
        cboxes.append(_bbox(pts[i], pts[j]))

    for k, (i, j) in enumerate(cons):
        p, q = pts[i], pts[j]
        if frozenset((i, j)) in bedge_set:
            continue
        for (a, b), box in zip(bedges, bboxes):
            if not _disjoint(cboxes[k], box) and segments_properly_cross(p, q, pts[a], pts[b]):
                raise GeometryError("constraint crosses boundary", [i, j, a, b])
        if locate_in_polygon(midpoint(p, q), poly) is Location.OUTSIDE:
            raise GeometryError("constraint outside region", [i, j])
        for m in range(k + 1, len(cons)):
            a, b = cons[m]
            if not _disjoint(cboxes[k], cboxes[m]) and segments_properly_cross(p, q, pts[a], pts[b]):
                raise GeometryError("constraints cross", [i, j, a, b])
        for v, r in enumerate(pts):
            if v != i and v != j and point_in_segment_interior(r, p, q):
                raise GeometryError("point in constraint interior", [i, j, v])


def check_solution_structure(sol: Solution) -> None:
    seen: set[tuple[int, int]] = set()
    for i, j in sol.edges:
        if i < 0 or j < 0:
            raise SchemaError(f"negative edge index in {[i, j]}")
        if i == j:
            raise SchemaError(f"zero-length edge {[i, j]}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise SchemaError(f"duplicate edge {[i, j]}")
        seen.add(key)
    if len(set(sol.steiner_points)) != len(sol.steiner_points):
        raise SchemaError("duplicate Steiner points")


def combined_vertices(inst: Instance, sol: Solution) -> list[Point]:
    """Instance points followed by Steiner points."""
    if sol.instance_uid != inst.uid:
        raise UidMismatch(f"solution is for {sol.instance_uid!r}, instance is {inst.uid!r}")
    return list(inst.points) + list(sol.steiner_points)


# ---------------------------------------------------------------------------
# JSON


def _parse_json(data: bytes | str) -> dict:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    if not isinstance(obj, dict):
        raise SchemaError("top-level JSON value must be an object")
    return obj


def _require(obj: dict, key: str, kind):
    if key not in obj:
        raise SchemaError(f"missing field {key!r}")
    value = obj[key]
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        raise SchemaError(f"field {key!r} has wrong type {type(value).__name__}")
    return value


def _int_list(obj: dict, key: str) -> list[int]:
    values = _require(obj, key, list)
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise SchemaError(f"{key!r} must contain integers, got {v!r}")
    return values


def _pair_list(obj: dict, key: str) -> list[tuple[int, int]]:
    values = _require(obj, key, list)
    out = []
    for v in values:
        if (
            not isinstance(v, list)
            or len(v) != 2
            or not all(isinstance(k, int) and not isinstance(k, bool) for k in v)
        ):
            raise SchemaError(f"{key!r} must contain integer pairs, got {v!r}")
        out.append((v[0], v[1]))
    return out


def _parse_coord(v) -> Coord:
    if isinstance(v, int) and not isinstance(v, bool):
        return to_coord(v)
    if isinstance(v, str):
        try:
            c = to_coord(v)
        except (ValueError, TypeError) as exc:
            raise SchemaError(f"bad rational {v!r}") from exc
        return c
    raise SchemaError(f"coordinate must be an int or 'p/q' string, got {v!r}")


def encode_coord(c: Coord) -> int | str:
    if c.denominator == 1:
        return int(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def instance_to_dict(inst: Instance) -> dict:
    return {
        "content_type": INSTANCE_CONTENT_TYPE,
        "instance_uid": inst.uid,
        "num_points": len(inst.points),
        "points_x": [int(p.x) for p in inst.points],
        "points_y": [int(p.y) for p in inst.points],
        "region_boundary": list(inst.region_boundary),
        "num_constraints": len(inst.constraints),
        "additional_constraints": [list(c) for c in inst.constraints],
    }


def solution_to_dict(sol: Solution) -> dict:
    return {
        "content_type": SOLUTION_CONTENT_TYPE,
        "instance_uid": sol.instance_uid,
        "steiner_points_x": [encode_coord(p.x) for p in sol.steiner_points],
        "steiner_points_y": [encode_coord(p.y) for p in sol.steiner_points],
        "edges": [list(e) for e in sol.edges],
    }


def save_instance(inst: Instance) -> bytes:
    return json.dumps(instance_to_dict(inst)).encode("utf-8")


def save_solution(sol: Solution) -> bytes:
    return json.dumps(solution_to_dict(sol)).encode("utf-8")


def load_instance(data: bytes | str, validate: bool = True) -> Instance:
    obj = _parse_json(data)
    ctype = obj.get("content_type", INSTANCE_CONTENT_TYPE)
    if ctype != INSTANCE_CONTENT_TYPE:
        raise SchemaError(f"unexpected content_type {ctype!r}")
    uid = _require(obj, "instance_uid", str)
    xs = _int_list(obj, "points_x")
    ys = _int_list(obj, "points_y")
    if len(xs) != len(ys):
        raise SchemaError("points_x and points_y differ in length")
    if "num_points" in obj and _require(obj, "num_points", int) != len(xs):
        raise SchemaError("num_points does not match the point lists")
    boundary = _int_list(obj, "region_boundary")
    constraints = _pair_list(obj, "additional_constraints") if "additional_constraints" in obj else []
    if "num_constraints" in obj and _require(obj, "num_constraints", int) != len(constraints):
        raise SchemaError("num_constraints does not match additional_constraints")
    return make_instance(uid, zip(xs, ys), boundary, constraints, validate=validate)


def load_solution(data: bytes | str) -> Solution:
    obj = _parse_json(data)
    ctype = obj.get("content_type", SOLUTION_CONTENT_TYPE)
    if ctype != SOLUTION_CONTENT_TYPE:
        raise SchemaError(f"unexpected content_type {ctype!r}")
    uid = _require(obj, "instance_uid", str)
    xs = [_parse_coord(v) for v in _require(obj, "steiner_points_x", list)]
    ys = [_parse_coord(v) for v in _require(obj, "steiner_points_y", list)]
    if len(xs) != len(ys):
        raise SchemaError("steiner_points_x and steiner_points_y differ in length")
    edges = _pair_list(obj, "edges")
    return make_solution(uid, zip(xs, ys), edges)
