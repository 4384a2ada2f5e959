"""Exact verification of a solution against its instance.

Nothing here raises on a bad solution: every problem becomes a ``Diagnostic``
in the returned ``VerifyReport``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cmp_to_key


from .geometry import (
    Location,
    Point,
    classify_triangle,
    TriangleClass,
    locate_in_polygon,
    point_in_segment_interior,
    point_on_segment,
    segments_properly_cross,
    signed_area2,
)
from .model import Instance, Solution

UID_MISMATCH = "UID_MISMATCH"
STEINER_OUTSIDE = "STEINER_OUTSIDE"
EDGE_CROSSING = "EDGE_CROSSING"
NON_TRIANGLE_FACE = "NON_TRIANGLE_FACE"
REGION_NOT_COVERED = "REGION_NOT_COVERED"
CONSTRAINT_MISSING = "CONSTRAINT_MISSING"
ISOLATED_VERTEX = "ISOLATED_VERTEX"
DEGENERATE_FACE = "DEGENERATE_FACE"
# structural problems the loader cannot see without the instance
BAD_INDEX = "BAD_INDEX"
DUPLICATE_VERTEX = "DUPLICATE_VERTEX"

MAX_REPORTED = 50


@dataclass(frozen=True)
class Diagnostic:
    code: str
    indices: tuple[int, ...] = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {"code": self.code, "indices": list(self.indices), "detail": self.detail}


@dataclass
class VerifyReport:
    valid: bool = False
    errors: list[Diagnostic] = field(default_factory=list)
    obtuse_count: int = 0
    steiner_count: int = 0
    triangle_count: int = 0
    triangles: list[tuple[int, int, int]] = field(default_factory=list, repr=False)

    @property
    def codes(self) -> set[str]:
        return {d.code for d in self.errors}

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "errors": [d.to_dict() for d in self.errors],
            "obtuse_count": self.obtuse_count,
            "steiner_count": self.steiner_count,
            "triangle_count": self.triangle_count,
        }


def objective(report: VerifyReport) -> tuple[int, int]:
    """Lexicographic objective; smaller is better."""
    return (report.obtuse_count, report.steiner_count)


def _half(dx, dy) -> int:
    return 0 if dy > 0 or (dy == 0 and dx > 0) else 1


def _angular_order(center: Point, nbrs: list[int], pts: list[Point]) -> list[int]:
    """Neighbours sorted counter-clockwise by direction, no trigonometry."""

    def cmp(i, j):
        ax, ay = pts[i].x - center.x, pts[i].y - center.y
        bx, by = pts[j].x - center.x, pts[j].y - center.y
        ha, hb = _half(ax, ay), _half(bx, by)
        if ha != hb:
            return ha - hb
        c = ax * by - ay * bx
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(nbrs, key=cmp_to_key(cmp))


def _chain_present(a: int, b: int, adj: list[set[int]], pts: list[Point]) -> bool:
    """Is segment ab covered by solution edges collinear with it?"""
    cur = a
    pb = pts[b]
    steps = 0
    while cur != b:
        nxt = None
        for w in adj[cur]:
            if w != cur and point_on_segment(pts[w], pts[cur], pb):
                nxt = w
                break
        if nxt is None or steps > len(pts):
            return False
        cur = nxt
        steps += 1
    return True


def _crossings(pts: list[Point], edges: list[tuple[int, int]]) -> list[Diagnostic]:
    out = []
    order = sorted(range(len(edges)), key=lambda k: min(pts[edges[k][0]].x, pts[edges[k][1]].x))
    boxes = []
    for u, v in edges:
        p, q = pts[u], pts[v]
        boxes.append((min(p.x, q.x), max(p.x, q.x), min(p.y, q.y), max(p.y, q.y)))
    for pos, k in enumerate(order):
        bk = boxes[k]
        u, v = edges[k]
        for m in order[pos + 1 :]:
            bm = boxes[m]
            if bm[0] > bk[1]:
                break
            if bm[3] < bk[2] or bk[3] < bm[2]:
                continue
            x, y = edges[m]
            if segments_properly_cross(pts[u], pts[v], pts[x], pts[y]):
                out.append(Diagnostic(EDGE_CROSSING, (u, v, x, y), "edges cross"))
                if len(out) >= MAX_REPORTED:
                    return out
    # an edge running through a vertex is a crossing too
    by_x = sorted(range(len(pts)), key=lambda i: pts[i].x)
    xs = [pts[i].x for i in by_x]
    for k, (u, v) in enumerate(edges):
        b = boxes[k]
        lo = bisect.bisect_left(xs, b[0])
        hi = bisect.bisect_right(xs, b[1])
        for w in by_x[lo:hi]:
            if w != u and w != v and b[2] <= pts[w].y <= b[3]:
                if point_in_segment_interior(pts[w], pts[u], pts[v]):
                    out.append(Diagnostic(EDGE_CROSSING, (u, v, w), "edge passes through a vertex"))
                    if len(out) >= MAX_REPORTED:
                        return out
    return out


def verify(inst: Instance, sol: Solution) -> VerifyReport:
    report = VerifyReport(steiner_count=len(sol.steiner_points))
    errs = report.errors

    if sol.instance_uid != inst.uid:
        errs.append(Diagnostic(UID_MISMATCH, (), f"{sol.instance_uid!r} != {inst.uid!r}"))
        return report

    n = len(inst.points)
    pts = list(inst.points) + list(sol.steiner_points)
    N = len(pts)

    seen = {p: i for i, p in enumerate(inst.points)}
    for k, p in enumerate(sol.steiner_points):
        if p in seen:
            errs.append(Diagnostic(DUPLICATE_VERTEX, (seen[p], n + k), "Steiner point repeats a vertex"))
        seen.setdefault(p, n + k)

    poly = inst.boundary_points
    for k, p in enumerate(sol.steiner_points):
        if locate_in_polygon(p, poly) is Location.OUTSIDE:
            errs.append(Diagnostic(STEINER_OUTSIDE, (n + k,), f"{p} lies outside the region"))

    edges: list[tuple[int, int]] = []
    eset = set()
    for u, v in sol.edges:
        if not (0 <= u < N and 0 <= v < N) or u == v:
            errs.append(Diagnostic(BAD_INDEX, (u, v), f"edge index outside [0, {N})"))
            continue
        key = (min(u, v), max(u, v))
        if key in eset:
            errs.append(Diagnostic(BAD_INDEX, (u, v), "duplicate edge"))
            continue
        eset.add(key)
        edges.append(key)
    if errs:
        return report

    adj: list[set[int]] = [set() for _ in range(N)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for i in range(N):
        if not adj[i]:
            errs.append(Diagnostic(ISOLATED_VERTEX, (i,), "vertex has no incident edge"))

    crossing = _crossings(pts, edges)
    errs.extend(crossing)
    if crossing:
        return report

    # --- planar subdivision -------------------------------------------------
    rot = [_angular_order(pts[v], list(adj[v]), pts) for v in range(N)]
    pos = [{w: k for k, w in enumerate(r)} for r in rot]

    def nxt(u: int, v: int) -> tuple[int, int]:
        k = pos[v][u]
        return v, rot[v][k - 1]

    visited: set[tuple[int, int]] = set()
    faces: list[list[int]] = []
    areas = []
    for u, v in edges:
        for h in ((u, v), (v, u)):
            if h in visited:
                continue
            cyc = []
            e = h
            while e not in visited:
                visited.add(e)
                cyc.append(e[0])
                e = nxt(*e)
            faces.append(cyc)
            areas.append(signed_area2([pts[i] for i in cyc]))

    # connectivity of the non-isolated part
    comp = [-1] * N
    ncomp = 0
    for s in range(N):
        if comp[s] >= 0 or not adj[s]:
            continue
        stack = [s]
        comp[s] = ncomp
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if comp[y] < 0:
                    comp[y] = ncomp
                    stack.append(y)
        ncomp += 1
    if ncomp > 1:
        errs.append(Diagnostic(REGION_NOT_COVERED, (), f"edge graph has {ncomp} connected components"))

    outer = [k for k, a in enumerate(areas) if a < 0]
    triangles = []
    for cyc, a in zip(faces, areas):
        if a == 0:
            errs.append(Diagnostic(DEGENERATE_FACE, tuple(cyc), "face with zero area"))
        elif a > 0:
            if len(cyc) != 3:
                if len(errs) < MAX_REPORTED:
                    errs.append(Diagnostic(NON_TRIANGLE_FACE, tuple(cyc), f"face with {len(cyc)} sides"))
            else:
                triangles.append(tuple(cyc))

    # --- region coverage ----------------------------------------------------
    boundary_pieces: set[tuple[int, int]] = set()
    for a, b in inst.boundary_edges():
        if not _chain_present(a, b, adj, pts):
            errs.append(Diagnostic(REGION_NOT_COVERED, (a, b), "boundary edge not covered"))
            continue
        cur = a
        while cur != b:
            nxt_v = next(w for w in adj[cur] if point_on_segment(pts[w], pts[cur], pts[b]) and w != cur)
            boundary_pieces.add((cur, nxt_v))
            cur = nxt_v
    if REGION_NOT_COVERED not in report.codes:
        expected_outer = {(b, a) for a, b in boundary_pieces}
        outer_half = set()
        for k in outer:
            cyc = faces[k]
            outer_half.update((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
        if len(outer) != 1 or outer_half != expected_outer:
            errs.append(Diagnostic(REGION_NOT_COVERED, (), "edges or faces outside the region"))
        else:
            total = sum(areas[k] for k in range(len(faces)) if areas[k] > 0)
            if total != signed_area2(poly):
                errs.append(Diagnostic(REGION_NOT_COVERED, (), "face areas do not add up to the region"))

    for a, b in inst.constraints:
        if not _chain_present(a, b, adj, pts):
            errs.append(Diagnostic(CONSTRAINT_MISSING, (a, b), "constraint not covered by edges"))

    report.triangles = triangles
    report.triangle_count = len(triangles)
    report.obtuse_count = sum(
        classify_triangle(pts[a], pts[b], pts[c]) is TriangleClass.OBTUSE for a, b, c in triangles
    )
    report.valid = not errs
    return report
