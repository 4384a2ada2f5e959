"""Constrained Delaunay triangulation of a simple-polygon region.

Construction: incremental insertion with Lawson flips inside a super-triangle,
constraint recovery by cavity re-triangulation, flood-fill removal of the
exterior, and a final flip pass restricted to the region. When four points are
cocircular the diagonal whose sorted index pair is lexicographically smaller
wins, so the output is a pure function of the input.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from gmpy2 import mpq

from .geometry import (
    Location,
    Point,
    cross,
    incircle,
    incircle_filtered,
    locate_in_polygon,
    obtuse_corner,
    orient,
    orient_filtered,
    point_on_segment,
    signed_area2,
)
from .model import Instance


class TriangulationError(ValueError):
    pass


def _ekey(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class _Mesh:
    """Mutable triangle soup keyed by directed edges."""

    def __init__(self, pts: list[Point]):
        self.pts = pts
        self.fp = [(float(p.x), float(p.y)) for p in pts]
        self.tri: dict[int, tuple[int, int, int]] = {}
        self.emap: dict[tuple[int, int], int] = {}
        self.vtri: dict[int, int] = {}
        self.constrained: set[tuple[int, int]] = set()
        self._next = 0
        self._last = -1

    def add(self, a: int, b: int, c: int) -> int:
        t = self._next
        self._next += 1
        self.tri[t] = (a, b, c)
        self.emap[(a, b)] = t
        self.emap[(b, c)] = t
        self.emap[(c, a)] = t
        self.vtri[a] = self.vtri[b] = self.vtri[c] = t
        self._last = t
        return t

    def remove(self, t: int) -> None:
        a, b, c = self.tri.pop(t)
        del self.emap[(a, b)], self.emap[(b, c)], self.emap[(c, a)]

    def o(self, i: int, j: int, k: int) -> int:
        fp, pts = self.fp, self.pts
        return orient_filtered(fp[i], fp[j], fp[k], pts[i], pts[j], pts[k])

    def ic(self, i: int, j: int, k: int, m: int) -> int:
        fp, pts = self.fp, self.pts
        return incircle_filtered(fp[i], fp[j], fp[k], fp[m], pts[i], pts[j], pts[k], pts[m])

    # -- point location -----------------------------------------------------

    def locate(self, q: int):
        """Return ("tri", t), ("edge", (u, v), t) or ("vertex", v) for vertex q."""
        p = self.pts[q]
        o = self.o
        t = self._last if self._last in self.tri else next(iter(self.tri))
        for _ in range(4 * len(self.tri) + 16):
            a, b, c = self.tri[t]
            moved = False
            for u, v in ((a, b), (b, c), (c, a)):
                if o(u, v, q) < 0:
                    t2 = self.emap.get((v, u))
                    if t2 is None:
                        raise TriangulationError(f"point {p} outside the triangulated area")
                    t = t2
                    moved = True
                    break
            if not moved:
                return self._classify(t, q)
        # walking can cycle in degenerate meshes; a scan always works
        for t in self.tri:
            a, b, c = self.tri[t]
            if min(o(a, b, q), o(b, c, q), o(c, a, q)) >= 0:
                return self._classify(t, q)
        raise TriangulationError(f"could not locate {p}")

    def _classify(self, t: int, q: int):
        pts = self.pts
        p = pts[q]
        a, b, c = self.tri[t]
        zeros = [(u, v) for u, v in ((a, b), (b, c), (c, a)) if self.o(u, v, q) == 0]
        if not zeros:
            return ("tri", t)
        if len(zeros) == 1:
            return ("edge", zeros[0], t)
        for v in (a, b, c):
            if pts[v] == p:
                return ("vertex", v)
        raise TriangulationError("inconsistent location")

    # -- insertion ----------------------------------------------------------

    def insert(self, v: int) -> None:
        p = self.pts[v]
        loc = self.locate(v)
        if loc[0] == "vertex":
            raise TriangulationError(f"duplicate vertex {p} (indices {loc[1]} and {v})")
        if loc[0] == "tri":
            a, b, c = self.tri[loc[1]]
            self.remove(loc[1])
            self.add(a, b, v)
            self.add(b, c, v)
            self.add(c, a, v)
            stack = [(a, b), (b, c), (c, a)]
        else:
            (a, b), t = loc[1], loc[2]
            c = next(x for x in self.tri[t] if x != a and x != b)
            t2 = self.emap.get((b, a))
            self.remove(t)
            self.add(b, c, v)
            self.add(c, a, v)
            stack = [(b, c), (c, a)]
            if t2 is not None:
                d = next(x for x in self.tri[t2] if x != a and x != b)
                self.remove(t2)
                self.add(a, d, v)
                self.add(d, b, v)
                stack += [(a, d), (d, b)]
        self._legalize(v, stack)

    def _legalize(self, v: int, stack: list[tuple[int, int]]) -> None:
        while stack:
            u, w = stack.pop()
            t2 = self.emap.get((w, u))
            if t2 is None or _ekey(u, w) in self.constrained:
                continue
            x = next(k for k in self.tri[t2] if k != u and k != w)
            if self.ic(u, w, v, x) > 0:
                self.remove(self.emap[(u, w)])
                self.remove(t2)
                self.add(u, x, v)
                self.add(x, w, v)
                stack.append((u, x))
                stack.append((x, w))

    # -- constraints --------------------------------------------------------

    def _around(self, a: int) -> Iterable[tuple[int, int, int]]:
        """Triangles around vertex a as (t, u, w) with triangle = (a, u, w)."""
        start = self.vtri.get(a)
        if start is None or start not in self.tri or a not in self.tri[start]:
            start = next(t for t, abc in self.tri.items() if a in abc)
        t = start
        while True:
            x, y, z = self.tri[t]
            if x == a:
                u, w = y, z
            elif y == a:
                u, w = z, x
            else:
                u, w = x, y
            yield t, u, w
            t = self.emap.get((a, w))
            if t is None or t == start:
                return

    def insert_segment(self, a: int, b: int) -> list[tuple[int, int]]:
        """Force segment ab into the mesh; returns the pieces it was split into."""
        pts = self.pts
        pieces = []
        while a != b:
            if (a, b) in self.emap or (b, a) in self.emap:
                self.constrained.add(_ekey(a, b))
                pieces.append(_ekey(a, b))
                return pieces
            pa, pb = pts[a], pts[b]
            start = None
            hop = None
            for t, u, w in self._around(a):
                ou = self.o(a, b, u)
                if ou == 0 and point_on_segment(pts[u], pa, pb):
                    hop = u
                    break
                if ou < 0 and self.o(a, b, w) > 0:
                    start = (t, u, w)
                    break
            if hop is not None:
                self.constrained.add(_ekey(a, hop))
                pieces.append(_ekey(a, hop))
                a = hop
                continue
            if start is None:
                raise TriangulationError(f"segment {a}-{b} could not be traced")
            t, right, left = start
            doomed = [t]
            lchain, rchain = [left], [right]
            while True:
                t2 = self.emap[(left, right)]
                doomed.append(t2)
                x = next(k for k in self.tri[t2] if k != left and k != right)
                if x == b:
                    end = b
                    break
                o = self.o(a, b, x)
                if o == 0:
                    end = x
                    break
                if o > 0:
                    lchain.append(x)
                    left = x
                else:
                    rchain.append(x)
                    right = x
            for t in doomed:
                self.remove(t)
            self._fill(a, end, lchain[::-1])
            self._fill(end, a, rchain)
            self.constrained.add(_ekey(a, end))
            pieces.append(_ekey(a, end))
            a = end
        return pieces

    def _fill(self, u: int, w: int, chain: list[int]) -> None:
        """Triangulate the pseudo-polygon u, w, *chain (counter-clockwise)."""
        if not chain:
            return
        k = 0
        for i in range(1, len(chain)):
            if self.ic(u, w, chain[k], chain[i]) > 0:
                k = i
        c = chain[k]
        self._fill(c, w, chain[:k])
        self._fill(u, c, chain[k + 1 :])
        self.add(u, w, c)

    # -- cleanup ------------------------------------------------------------

    def flip_pass(self) -> None:
        """Lawson flips on unconstrained edges until every edge is locally Delaunay."""
        queue = deque(sorted({_ekey(u, v) for (u, v) in self.emap}))
        queued = set(queue)
        while queue:
            e = queue.popleft()
            queued.discard(e)
            if e in self.constrained:
                continue
            u, w = e
            t1 = self.emap.get((u, w))
            t2 = self.emap.get((w, u))
            if t1 is None or t2 is None:
                continue
            v = next(k for k in self.tri[t1] if k != u and k != w)
            x = next(k for k in self.tri[t2] if k != u and k != w)
            s = self.ic(u, w, v, x)
            if s > 0 or (s == 0 and _ekey(v, x) < e):
                self.remove(t1)
                self.remove(t2)
                self.add(u, x, v)
                self.add(x, w, v)
                for f in (_ekey(u, x), _ekey(x, w), _ekey(w, v), _ekey(v, u)):
                    if f not in queued:
                        queued.add(f)
                        queue.append(f)


# ---------------------------------------------------------------------------
# public surface


class LocKind(enum.Enum):
    IN_TRIANGLE = "in_triangle"
    ON_EDGE = "on_edge"
    ON_VERTEX = "on_vertex"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class PointLocation:
    kind: LocKind
    triangle: int | None = None
    edge: tuple[int, int] | None = None
    vertex: int | None = None


@dataclass(frozen=True)
class Triangulation:
    """Immutable triangulation of a region.

    Half-edge ``3*t + k`` runs from ``triangles[t][k]`` to
    ``triangles[t][(k + 1) % 3]``; its ``next`` is the following half-edge of
    the same face and ``twins[h]`` is the opposite half-edge (-1 on the region
    boundary).
    """

    vertices: tuple[Point, ...]
    n_original: int
    triangles: tuple[tuple[int, int, int], ...]
    constrained: frozenset = field(default_factory=frozenset)
    boundary_edges: frozenset = field(default_factory=frozenset)

    @cached_property
    def twins(self) -> tuple[int, ...]:
        index = {}
        for t, (a, b, c) in enumerate(self.triangles):
            index[(a, b)] = 3 * t
            index[(b, c)] = 3 * t + 1
            index[(c, a)] = 3 * t + 2
        out = []
        for t, tri in enumerate(self.triangles):
            for k in range(3):
                u, v = tri[k], tri[(k + 1) % 3]
                out.append(index.get((v, u), -1))
        return tuple(out)

    @staticmethod
    def next(h: int) -> int:
        return h - h % 3 + (h % 3 + 1) % 3

    def origin(self, h: int) -> int:
        return self.triangles[h // 3][h % 3]

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        es = set()
        for a, b, c in self.triangles:
            es.update((_ekey(a, b), _ekey(b, c), _ekey(c, a)))
        return sorted(es)

    @cached_property
    def neighbors(self) -> list[list[int]]:
        nb: list[set] = [set() for _ in self.vertices]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return [sorted(s) for s in nb]

    @property
    def steiner_points(self) -> tuple[Point, ...]:
        return self.vertices[self.n_original :]

    def is_constrained(self, u: int, v: int) -> bool:
        return _ekey(u, v) in self.constrained

    def obtuse(self) -> list[tuple[int, int]]:
        return enumerate_obtuse(self)

    def boundary_vertices(self) -> set[int]:
        out = set()
        for e in self.boundary_edges:
            out.update(e)
        return out


def _validate_steiner(inst: Instance, steiner: Sequence[Point]) -> None:
    poly = inst.boundary_points
    seen = set(inst.points)
    for k, p in enumerate(steiner):
        if p in seen:
            raise TriangulationError(f"duplicate vertex {p} (Steiner {k})")
        seen.add(p)
        if locate_in_polygon(p, poly) is Location.OUTSIDE:
            raise TriangulationError(f"Steiner point {k} at {p} outside region")


def build_cdt(inst: Instance, steiner: Sequence[Point] = (), check: bool = True) -> Triangulation:
    """Constrained Delaunay triangulation of the instance region with extra vertices.

    Every instance point and Steiner point becomes a vertex. Boundary edges and
    constraints are recovered as chains of edges, split at any vertex lying on
    them.
    """
    steiner = list(steiner)
    if check:
        _validate_steiner(inst, steiner)
    pts = list(inst.points) + steiner
    n = len(pts)
    if n < 3:
        raise TriangulationError("need at least three vertices")
    if all(orient(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise TriangulationError("all points collinear")

    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    minx, miny = min(xs), min(ys)
    m = max(max(xs) - minx, max(ys) - miny, mpq(1))
    mesh = _Mesh(
        pts
        + [
            Point(minx - 10 * m, miny - 10 * m),
            Point(minx + 30 * m, miny - 10 * m),
            Point(minx - 10 * m, miny + 30 * m),
        ]
    )
    mesh.add(n, n + 1, n + 2)
    for v in sorted(range(n), key=lambda i: pts[i]):
        mesh.insert(v)

    boundary = set()
    for a, b in inst.boundary_edges():
        boundary.update(mesh.insert_segment(a, b))
    for a, b in inst.constraints:
        mesh.insert_segment(a, b)

    # flood the outside from the super-triangle without crossing the boundary
    outside = set()
    todo = [t for t, abc in mesh.tri.items() if max(abc) >= n]
    while todo:
        t = todo.pop()
        if t in outside:
            continue
        outside.add(t)
        a, b, c = mesh.tri[t]
        for u, v in ((a, b), (b, c), (c, a)):
            if _ekey(u, v) in boundary:
                continue
            t2 = mesh.emap.get((v, u))
            if t2 is not None and t2 not in outside:
                todo.append(t2)
    for t in outside:
        mesh.remove(t)
    mesh.constrained |= boundary
    mesh.flip_pass()

    tris = []
    for a, b, c in mesh.tri.values():
        k = min(range(3), key=lambda i: (a, b, c)[i])
        tris.append(((a, b, c)[k], (a, b, c)[(k + 1) % 3], (a, b, c)[(k + 2) % 3]))
    tris.sort()
    return Triangulation(
        vertices=tuple(pts),
        n_original=len(inst.points),
        triangles=tuple(tris),
        constrained=frozenset(mesh.constrained),
        boundary_edges=frozenset(boundary),
    )


def locate(T: Triangulation, p: Point) -> PointLocation:
    vs = T.vertices
    for t, (a, b, c) in enumerate(T.triangles):
        o = (orient(vs[a], vs[b], p), orient(vs[b], vs[c], p), orient(vs[c], vs[a], p))
        if min(o) < 0:
            continue
        zeros = [k for k in range(3) if o[k] == 0]
        if not zeros:
            return PointLocation(LocKind.IN_TRIANGLE, triangle=t)
        if len(zeros) == 1:
            k = zeros[0]
            tri = T.triangles[t]
            return PointLocation(LocKind.ON_EDGE, triangle=t, edge=_ekey(tri[k], tri[(k + 1) % 3]))
        v = next(v for v in (a, b, c) if vs[v] == p)
        return PointLocation(LocKind.ON_VERTEX, triangle=t, vertex=v)
    return PointLocation(LocKind.OUTSIDE)


def enumerate_obtuse(T: Triangulation) -> list[tuple[int, int]]:
    """(triangle index, obtuse apex vertex) for every obtuse triangle."""
    vs = T.vertices
    out = []
    for t, tri in enumerate(T.triangles):
        k = obtuse_corner(vs[tri[0]], vs[tri[1]], vs[tri[2]])
        if k is not None:
            out.append((t, tri[k]))
    return out


def check_triangulation(T: Triangulation, inst: Instance) -> list[str]:
    """Exhaustive invariant check; returns a list of problems (empty if sound)."""
    problems = []
    vs = T.vertices
    for t, (a, b, c) in enumerate(T.triangles):
        if orient(vs[a], vs[b], vs[c]) <= 0:
            problems.append(f"triangle {t} not counter-clockwise")
    tw = T.twins
    for h, g in enumerate(tw):
        if g >= 0 and tw[g] != h:
            problems.append(f"twin mismatch at half-edge {h}")
        if T.next(T.next(T.next(h))) != h:
            problems.append(f"next cycle broken at {h}")
    area = sum((cross(vs[a], vs[b], vs[c]) for a, b, c in T.triangles), mpq(0))
    if area != signed_area2(inst.boundary_points):
        problems.append("triangle areas do not sum to the region area")
    used = {v for tri in T.triangles for v in tri}
    if used != set(range(len(vs))):
        problems.append("not every vertex is used")
    bverts = T.boundary_vertices()
    i = len(vs) - len(bverts)
    if len(T.triangles) != 2 * i + len(bverts) - 2:
        problems.append("Euler relation violated")
    # border half-edges must be exactly the boundary pieces
    border = {_ekey(T.origin(h), T.origin(T.next(h))) for h, g in enumerate(tw) if g < 0}
    if border != set(T.boundary_edges):
        problems.append("triangulation border differs from the region boundary")
    for h, g in enumerate(tw):
        if g < h:
            continue
        u, w = T.origin(h), T.origin(T.next(h))
        if T.is_constrained(u, w):
            continue
        v = T.origin(T.next(T.next(h)))
        x = T.origin(T.next(T.next(g)))
        if incircle(vs[u], vs[w], vs[v], vs[x]) > 0:
            problems.append(f"edge {u}-{w} not locally Delaunay")
    return problems
