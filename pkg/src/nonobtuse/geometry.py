"""Exact planar predicates and constructions.

Coordinates are ``gmpy2.mpq`` rationals, always in lowest terms with a
positive denominator. Every predicate returns the exact sign; the filtered
variants only use floating point when the sign is provably right.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Sequence

from gmpy2 import mpq

Coord = type(mpq())


class DegenerateError(ValueError):
    """Raised when a construction or predicate is undefined for the input."""


def to_coord(value) -> Coord:
    """Coerce ints, ``Fraction``s, ``mpq``s and ``"p/q"`` strings to an exact rational.

    Floats are converted exactly (their binary value), which is rarely what a
    caller wants; we accept them only for convenience in tests.
    """
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/", 1)
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return mpq(int(num), int(den))
        return mpq(int(value))
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    return mpq(value)


class Point(NamedTuple):
    x: Coord
    y: Coord

    def __repr__(self) -> str:
        return f"Point({_fmt(self.x)}, {_fmt(self.y)})"


def _fmt(c: Coord) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def point(x, y) -> Point:
    return Point(to_coord(x), to_coord(y))


class Orientation(enum.IntEnum):
    CLOCKWISE = -1
    COLLINEAR = 0
    COUNTERCLOCKWISE = 1


class TriangleClass(enum.Enum):
    ACUTE = "acute"
    RIGHT = "right"
    OBTUSE = "obtuse"
    DEGENERATE = "degenerate"


def cross(a: Point, b: Point, c: Point):
    """Twice the signed area of triangle abc."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of ``cross(a, b, c)`` as an int in {-1, 0, 1}."""
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (d > 0) - (d < 0)


def orientation(a: Point, b: Point, c: Point) -> Orientation:
    return Orientation(orient(a, b, c))


def incircle_det(a: Point, b: Point, c: Point, d: Point):
    """Lifted 4x4 determinant, reduced to 3x3 by translating d to the origin.

    Positive iff d is inside the circle through a, b, c when abc is CCW.
    """
    adx, ady = a.x - d.x, a.y - d.y
    bdx, bdy = b.x - d.x, b.y - d.y
    cdx, cdy = c.x - d.x, c.y - d.y
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    return (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """Unchecked in-circle sign; a, b, c must be counter-clockwise."""
    v = incircle_det(a, b, c, d)
    return (v > 0) - (v < 0)


def in_circle(a: Point, b: Point, c: Point, d: Point) -> int:
    """+1 if d is strictly inside the circumcircle of abc, 0 if on it, -1 if outside.

    The triangle may be given in either orientation. Collinear a, b, c have no
    circumcircle and raise ``DegenerateError``.
    """
    o = orient(a, b, c)
    if o == 0:
        raise DegenerateError(f"collinear triangle {a}, {b}, {c} has no circumcircle")
    return o * incircle(a, b, c, d)


# Floating-point filters. Inputs are the float roundings of exact rationals, so
# each coordinate carries relative error <= 2^-53 before any arithmetic. The
# bounds below multiply the absolute-value permanent of each expression by a
# constant that covers input rounding plus evaluation rounding with room to
# spare; anything inside the bound is re-decided exactly.

_U = 2.0**-53
_ORIENT_C = 16 * _U
_INCIRCLE_C = 64 * _U


def orient_filtered(fa, fb, fc, a: Point, b: Point, c: Point) -> int:
    """``orient(a, b, c)`` using float copies ``fa, fb, fc`` when the sign is certain."""
    ax, ay = fa
    bx, by = fb
    cx, cy = fc
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    bound = _ORIENT_C * (
        (abs(bx) + abs(ax)) * (abs(cy) + abs(ay)) + (abs(by) + abs(ay)) * (abs(cx) + abs(ax))
    )
    if d > bound:
        return 1
    if d < -bound:
        return -1
    return orient(a, b, c)


def incircle_filtered(fa, fb, fc, fd, a: Point, b: Point, c: Point, d: Point) -> int:
    """``incircle(a, b, c, d)`` with a float filter; same contract."""
    px, py = fd
    adx, ady = fa[0] - px, fa[1] - py
    bdx, bdy = fb[0] - px, fb[1] - py
    cdx, cdy = fc[0] - px, fc[1] - py
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    apx, apy = abs(fa[0]) + abs(px), abs(fa[1]) + abs(py)
    bpx, bpy = abs(fb[0]) + abs(px), abs(fb[1]) + abs(py)
    cpx, cpy = abs(fc[0]) + abs(px), abs(fc[1]) + abs(py)
    perm = (
        (apx * apx + apy * apy) * (bpx * cpy + cpx * bpy)
        + (bpx * bpx + bpy * bpy) * (cpx * apy + apx * cpy)
        + (cpx * cpx + cpy * cpy) * (apx * bpy + bpx * apy)
    )
    bound = _INCIRCLE_C * perm
    if bound < 1e-280 or bound > 1e280:
        return incircle(a, b, c, d)
    if det > bound:
        return 1
    if det < -bound:
        return -1
    return incircle(a, b, c, d)


def dot_at(apex: Point, b: Point, c: Point):
    return (b.x - apex.x) * (c.x - apex.x) + (b.y - apex.y) * (c.y - apex.y)


def angle_is_obtuse_at(apex: Point, b: Point, c: Point) -> bool:
    return dot_at(apex, b, c) < 0


def obtuse_corner(a: Point, b: Point, c: Point) -> int | None:
    """Index (0, 1, 2) of the obtuse corner of triangle abc, or None."""
    if dot_at(a, b, c) < 0:
        return 0
    if dot_at(b, c, a) < 0:
        return 1
    if dot_at(c, a, b) < 0:
        return 2
    return None


def classify_triangle(a: Point, b: Point, c: Point) -> TriangleClass:
    if orient(a, b, c) == 0:
        return TriangleClass.DEGENERATE
    dots = (dot_at(a, b, c), dot_at(b, c, a), dot_at(c, a, b))
    if any(d < 0 for d in dots):
        return TriangleClass.OBTUSE
    if any(d == 0 for d in dots):
        return TriangleClass.RIGHT
    return TriangleClass.ACUTE


def _in_box(p: Point, a: Point, b: Point) -> bool:
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment ab."""
    return orient(a, b, p) == 0 and _in_box(p, a, b)


def point_in_segment_interior(p: Point, a: Point, b: Point) -> bool:
    return p != a and p != b and point_on_segment(p, a, b)


def segments_intersect(p: Point, q: Point, r: Point, s: Point) -> bool:
    """True iff the closed segments pq and rs share at least one point."""
    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _in_box(r, p, q))
        or (o2 == 0 and _in_box(s, p, q))
        or (o3 == 0 and _in_box(p, r, s))
        or (o4 == 0 and _in_box(q, r, s))
    )


def segments_properly_cross(p: Point, q: Point, r: Point, s: Point) -> bool:
    """True iff pq and rs meet at a point interior to at least one of them.

    Meeting only at a shared endpoint is not a crossing. Collinear overlap of
    positive length is.
    """
    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and o2 == 0:
        # collinear: positive-length overlap iff the projections overlap in an interval
        if p.x != q.x:
            lo1, hi1 = sorted((p.x, q.x))
            lo2, hi2 = sorted((r.x, s.x))
        else:
            lo1, hi1 = sorted((p.y, q.y))
            lo2, hi2 = sorted((r.y, s.y))
        return max(lo1, lo2) < min(hi1, hi2)
    # T-junctions: an endpoint of one lies in the interior of the other
    return (
        (o1 == 0 and point_in_segment_interior(r, p, q))
        or (o2 == 0 and point_in_segment_interior(s, p, q))
        or (o3 == 0 and point_in_segment_interior(p, r, s))
        or (o4 == 0 and point_in_segment_interior(q, r, s))
    )


# ---------------------------------------------------------------------------
# polygons


def signed_area2(poly: Sequence[Point]):
    """Twice the signed area (positive for counter-clockwise)."""
    total = mpq(0)
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        total += a.x * b.y - a.y * b.x
    return total


class Location(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def locate_in_polygon(p: Point, poly: Sequence[Point]) -> Location:
    """Exact point-in-polygon by crossing parity, with boundary detection."""
    n = len(poly)
    inside = False
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if point_on_segment(p, a, b):
            return Location.BOUNDARY
        if (a.y > p.y) != (b.y > p.y):
            # x-coordinate of the edge at height p.y, compared without division
            o = orient(a, b, p)
            if (o > 0) == (b.y > a.y):
                inside = not inside
    return Location.INSIDE if inside else Location.OUTSIDE


def polygon_simplicity_violation(poly: Sequence[Point]) -> tuple[int, int] | None:
    """First pair of edge indices (i, j) that violates simplicity, or None.

    Edge i runs from ``poly[i]`` to ``poly[i + 1]``. Adjacent edges may share
    only their common endpoint; other pairs may not touch at all.
    """
    n = len(poly)
    if n < 3:
        return (0, 0)
    if len(set(poly)) != n:
        return (0, 0)
    boxes = []
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        boxes.append((min(a.x, b.x), max(a.x, b.x), min(a.y, b.y), max(a.y, b.y)))
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        bi = boxes[i]
        for j in range(i + 1, n):
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            c, d = poly[j], poly[(j + 1) % n]
            if j == i + 1:
                # shared vertex b == c; overlap iff the far ends fold back
                if orient(a, b, d) == 0 and (point_on_segment(d, a, b) or point_on_segment(a, c, d)):
                    return (i, j)
            elif i == 0 and j == n - 1:
                if orient(c, d, b) == 0 and (point_on_segment(b, c, d) or point_on_segment(c, a, b)):
                    return (i, j)
            elif segments_intersect(a, b, c, d):
                return (i, j)
    return None


def convex_hull(points: Sequence[Point]) -> list[int]:
    """Indices of the strict convex hull (no collinear points), counter-clockwise.

    Starts at the lexicographically smallest point.
    """
    order = sorted(range(len(points)), key=lambda i: points[i])
    if len(order) < 3:
        return order

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and orient(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


# ---------------------------------------------------------------------------
# constructions


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def centroid(a: Point, b: Point, c: Point) -> Point:
    return Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)


def circumcenter(a: Point, b: Point, c: Point) -> Point:
    d = 2 * cross(a, b, c)
    if d == 0:
        raise DegenerateError("collinear points have no circumcenter")
    bx, by = b.x - a.x, b.y - a.y
    cx, cy = c.x - a.x, c.y - a.y
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Point(a.x + ux, a.y + uy)


def altitude_foot(p: Point, a: Point, b: Point) -> Point:
    """Orthogonal projection of p onto the line through a and b."""
    dx, dy = b.x - a.x, b.y - a.y
    den = dx * dx + dy * dy
    if den == 0:
        raise DegenerateError("projection onto a zero-length segment")
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / den
    return Point(a.x + t * dx, a.y + t * dy)


def line_intersection(p: Point, q: Point, r: Point, s: Point) -> Point:
    """Intersection of the lines pq and rs (must not be parallel)."""
    d = (q.x - p.x) * (s.y - r.y) - (q.y - p.y) * (s.x - r.x)
    if d == 0:
        raise DegenerateError("parallel lines")
    t = ((r.x - p.x) * (s.y - r.y) - (r.y - p.y) * (s.x - r.x)) / d
    return Point(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))


def squared_distance(a: Point, b: Point):
    dx, dy = a.x - b.x, a.y - b.y
    return dx * dx + dy * dy
