"""Delaunay baseline and a Steiner-point local search.

Every state is a Steiner point set; its triangulation is always the
constrained Delaunay triangulation rebuilt from scratch, and its objective is
(obtuse triangles, Steiner points), compared lexicographically.
"""

from __future__ import annotations

import enum
import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cdt import Triangulation, TriangulationError, build_cdt, enumerate_obtuse
from .geometry import (
    DegenerateError,
    Location,
    Point,
    altitude_foot,
    centroid,
    circumcenter,
    locate_in_polygon,
    midpoint,
    segments_intersect,
    segments_properly_cross,
    line_intersection,
    orient,
    point_on_segment,
    squared_distance,
)
from .model import Instance, Solution

log = logging.getLogger(__name__)


class Rule(str, enum.Enum):
    CIRCUMCENTER = "circumcenter"
    ALTITUDE_FOOT = "altitude-foot"
    EDGE_MIDPOINT = "edge-midpoint"
    PROJECTION = "projection"
    MOVE = "move"
    DELETE = "delete"


INSERT_RULES = {Rule.CIRCUMCENTER, Rule.ALTITUDE_FOOT, Rule.EDGE_MIDPOINT, Rule.PROJECTION}


@dataclass(frozen=True)
class SolverConfig:
    time_budget: float = 60.0
    max_iterations: int = 100_000
    seed: int = 0
    restarts: int = 50
    # seed rectilinear instances with the axis grid (zero obtuse by construction)
    grid_warm_start: bool = True
    candidate_rules: frozenset = frozenset(Rule)
    # obtuse triangles targeted per iteration; None means all of them
    max_targets: int | None = 16

    def __post_init__(self):
        object.__setattr__(self, "candidate_rules", frozenset(Rule(r) for r in self.candidate_rules))
        if self.time_budget <= 0:
            raise ValueError("time_budget must be positive")
        if not self.candidate_rules & INSERT_RULES:
            raise ValueError("at least one insertion rule must be enabled")


@dataclass(frozen=True)
class Move:
    rule: Rule
    point: Point | None = None
    index: int | None = None  # Steiner index for move/delete

    def apply(self, steiner: tuple[Point, ...]) -> tuple[Point, ...]:
        if self.rule is Rule.DELETE:
            return steiner[: self.index] + steiner[self.index + 1 :]
        if self.rule is Rule.MOVE:
            return steiner[: self.index] + (self.point,) + steiner[self.index + 1 :]
        return steiner + (self.point,)


@dataclass
class SearchState:
    steiner: tuple[Point, ...]
    triangulation: Triangulation
    objective: tuple[int, int]


def evaluate(inst: Instance, steiner: Sequence[Point]) -> SearchState:
    T = build_cdt(inst, steiner, check=False)
    return SearchState(tuple(steiner), T, (len(enumerate_obtuse(T)), len(steiner)))


def to_solution(inst: Instance, state: SearchState) -> Solution:
    T = state.triangulation
    return Solution(inst.uid, tuple(state.steiner), tuple(T.edges))


def solve_delaunay_baseline(inst: Instance) -> Solution:
    return to_solution(inst, evaluate(inst, ()))


def is_rectilinear(inst: Instance) -> bool:
    pts = inst.points
    segs = list(inst.boundary_edges()) + list(inst.constraints)
    return all(pts[a].x == pts[b].x or pts[a].y == pts[b].y for a, b in segs)


def axis_grid_points(inst: Instance) -> tuple[Point, ...]:
    """Steiner points completing the axis grid spanned by the instance coordinates.

    For a rectilinear instance every grid cell lies inside or outside the
    region, so the (constrained) Delaunay triangulation splits each inside
    cell into two right triangles.
    """
    xs = sorted({p.x for p in inst.points})
    ys = sorted({p.y for p in inst.points})
    taken = set(inst.points)
    poly = inst.boundary_points
    out = []
    for x in xs:
        for y in ys:
            p = Point(x, y)
            if p not in taken and locate_in_polygon(p, poly) is not Location.OUTSIDE:
                out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# candidate generation


class _Region:
    """Boundary and constraint segments of an instance, for clamping and inside tests."""

    def __init__(self, inst: Instance):
        self.poly = inst.boundary_points
        pts = inst.points
        self.segments = [(pts[a], pts[b]) for a, b in inst.boundary_edges()]
        self.segments += [(pts[a], pts[b]) for a, b in inst.constraints]

    def projections(self, p: Point, limit: int = 2) -> list[Point]:
        """Feet of perpendiculars from p onto the nearest visible segments.

        A foot counts only if it is interior to its segment and the path from p
        to it crosses no boundary or constraint segment.
        """
        feet = []
        for k, (a, b) in enumerate(self.segments):
            if orient(a, b, p) == 0:
                continue
            f = altitude_foot(p, a, b)
            if f != a and f != b and point_on_segment(f, a, b):
                feet.append((squared_distance(p, f), k, f))
        feet.sort()
        out = []
        for _, k, f in feet:
            if all(
                not segments_properly_cross(p, f, a, b)
                for m, (a, b) in enumerate(self.segments)
                if m != k
            ):
                out.append(f)
                if len(out) >= limit:
                    break
        return out

    def inside(self, p: Point) -> bool:
        return locate_in_polygon(p, self.poly) is not Location.OUTSIDE

    def clamp(self, start: Point, end: Point) -> Point:
        """First point where the segment start->end meets a boundary or constraint segment.

        Returns ``end`` if it meets none.
        """
        best, best_d = end, None
        for a, b in self.segments:
            if not segments_intersect(start, end, a, b):
                continue
            if orient(a, b, start) == 0 and orient(a, b, end) == 0:
                hit = min((p for p in (a, b) if point_on_segment(p, start, end)),
                          key=lambda p: squared_distance(start, p), default=start)
            else:
                try:
                    hit = line_intersection(start, end, a, b)
                except DegenerateError:
                    continue
            d = squared_distance(start, hit)
            if best_d is None or d < best_d:
                best, best_d = hit, d
        return best


def propose_moves(
    state: SearchState,
    inst: Instance,
    rules: frozenset = frozenset(Rule),
    targets: Sequence[tuple[int, int]] | None = None,
    region: _Region | None = None,
) -> list[Move]:
    """Candidate moves for the current state, in a fixed deterministic order.

    ``targets`` restricts insertion candidates to the given (triangle, apex)
    pairs; by default every obtuse triangle is targeted.
    """
    T = state.triangulation
    vs = T.vertices
    region = region or _Region(inst)
    taken = set(vs)
    seen: set[Point] = set()
    moves: list[Move] = []

    def push(rule, p):
        if p in taken or p in seen:
            return
        seen.add(p)
        moves.append(Move(rule, p))

    if targets is None:
        targets = enumerate_obtuse(T)
    for t, apex in targets:
        tri = T.triangles[t]
        a, b, c = (vs[i] for i in tri)
        k = tri.index(apex)
        u, w = tri[(k + 1) % 3], tri[(k + 2) % 3]
        if Rule.CIRCUMCENTER in rules:
            cc = circumcenter(a, b, c)
            g = centroid(a, b, c)
            p = region.clamp(g, cc)
            if region.inside(p):
                push(Rule.CIRCUMCENTER, p)
        if Rule.ALTITUDE_FOOT in rules:
            push(Rule.ALTITUDE_FOOT, altitude_foot(vs[apex], vs[u], vs[w]))
        if Rule.EDGE_MIDPOINT in rules:
            for i in range(3):
                x, y = tri[i], tri[(i + 1) % 3]
                if T.is_constrained(x, y):
                    push(Rule.EDGE_MIDPOINT, midpoint(vs[x], vs[y]))
        if Rule.PROJECTION in rules:
            for v in (apex, u, w):
                for f in region.projections(vs[v]):
                    push(Rule.PROJECTION, f)

    n0 = T.n_original
    if Rule.MOVE in rules:
        nbrs = T.neighbors
        for k in range(len(state.steiner)):
            ring = nbrs[n0 + k]
            sx = sum((vs[j].x for j in ring), 0 * vs[0].x) / len(ring)
            sy = sum((vs[j].y for j in ring), 0 * vs[0].y) / len(ring)
            p = Point(sx, sy)
            if p != vs[n0 + k] and p not in taken and region.inside(p):
                moves.append(Move(Rule.MOVE, p, k))
    if Rule.DELETE in rules:
        for k in range(len(state.steiner)):
            moves.append(Move(Rule.DELETE, None, k))
    return moves


# ---------------------------------------------------------------------------
# local search


@dataclass
class SearchLog:
    best_history: list[tuple[int, int]] = field(default_factory=list)
    iterations: int = 0
    evaluations: int = 0
    perturbations: int = 0


def solve_local_search(
    inst: Instance,
    cfg: SolverConfig = SolverConfig(),
    warm_start: Sequence[Point] = (),
    history: SearchLog | None = None,
) -> Solution:
    """Greedy best-improvement over Steiner moves with random perturbation rounds.

    ``warm_start`` seeds the Steiner set (e.g. from another solution); the
    baseline is used if the warm start is not better.
    """
    deadline = time.monotonic() + cfg.time_budget
    rng = np.random.default_rng(cfg.seed)
    region = _Region(inst)
    hist = history if history is not None else SearchLog()

    current = evaluate(inst, ())
    starts = [tuple(warm_start)] if warm_start else []
    if cfg.grid_warm_start and current.objective[0] > 0 and is_rectilinear(inst):
        starts.append(axis_grid_points(inst))
    for ws in starts:
        try:
            cand = evaluate(inst, ws)
        except TriangulationError:
            log.warning("warm start rejected for %s", inst.uid)
            continue
        if cand.objective < current.objective:
            current = cand
    best = current
    hist.best_history.append(best.objective)
    cache: dict[tuple[Point, ...], tuple[int, int]] = {}
    stale_rounds = 0

    def try_state(steiner):
        hist.evaluations += 1
        try:
            return evaluate(inst, steiner)
        except TriangulationError:
            return None

    def prune(state: SearchState) -> SearchState | None:
        """One pass of first-improvement deletions in random order.

        Any deletion that does not add an obtuse triangle is strictly better,
        so there is nothing to gain from comparing deletions against each other.
        """
        changed = False
        for p in [state.steiner[i] for i in rng.permutation(len(state.steiner)).tolist()]:
            if time.monotonic() >= deadline:
                break
            steiner = tuple(q for q in state.steiner if q != p)
            cand = try_state(steiner)
            if cand is not None and cand.objective < state.objective:
                state = cand
                changed = True
        return state if changed else None

    def improve(state: SearchState) -> SearchState | None:
        """Best strictly improving move, scanning obtuse targets chunk by chunk."""
        obtuse = enumerate_obtuse(state.triangulation)
        order = rng.permutation(len(obtuse)).tolist()
        size = cfg.max_targets or max(1, len(obtuse))
        chunks = [order[i : i + size] for i in range(0, len(order), size)] or [[]]
        for c, chunk in enumerate(chunks):
            # deletions are handled by prune()
            rules = cfg.candidate_rules - {Rule.DELETE} if c == 0 else cfg.candidate_rules & INSERT_RULES
            targets = [obtuse[i] for i in sorted(chunk)]
            chosen = None
            for mv in propose_moves(state, inst, rules, targets, region):
                if time.monotonic() >= deadline:
                    return chosen
                steiner = mv.apply(state.steiner)
                bar = (chosen or state).objective
                obj = cache.get(steiner)
                if obj is not None and not obj < bar:
                    continue
                cand = try_state(steiner)
                if cand is None:
                    continue
                cache[steiner] = cand.objective
                if cand.objective < bar:
                    chosen = cand
            if chosen is not None:
                return chosen
        return None

    def lookahead(state: SearchState) -> SearchState | None:
        """Best improving pair of insertions; the second targets triangles at the first point."""
        obtuse = enumerate_obtuse(state.triangulation)
        if not obtuse:
            return None
        size = cfg.max_targets or len(obtuse)
        pick = sorted(rng.permutation(len(obtuse))[:size].tolist())
        T0 = state.triangulation
        before = {frozenset(T0.vertices[i] for i in T0.triangles[t]) for t, _ in obtuse}
        chosen = None
        firsts = propose_moves(
            state, inst, cfg.candidate_rules & INSERT_RULES, [obtuse[i] for i in pick], region
        )
        for m1 in firsts:
            if time.monotonic() >= deadline:
                break
            s1 = try_state(m1.apply(state.steiner))
            if s1 is None:
                continue
            ob1 = enumerate_obtuse(s1.triangulation)
            if len(ob1) > len(obtuse) + 2:
                continue
            if len(ob1) <= 4:
                near = ob1
            else:
                T1 = s1.triangulation
                near = [
                    (t, apex)
                    for t, apex in ob1
                    if frozenset(T1.vertices[i] for i in T1.triangles[t]) not in before
                ]
            for m2 in propose_moves(s1, inst, cfg.candidate_rules & INSERT_RULES, near, region):
                steiner = m2.apply(s1.steiner)
                if steiner in cache:
                    continue
                s2 = try_state(steiner)
                if s2 is None:
                    continue
                cache[steiner] = s2.objective
                if s2.objective < (chosen or state).objective:
                    chosen = s2
        return chosen

    while hist.iterations < cfg.max_iterations and time.monotonic() < deadline:
        hist.iterations += 1
        chosen = prune(current) if Rule.DELETE in cfg.candidate_rules else None
        if chosen is None:
            chosen = improve(current)
        if chosen is None:
            chosen = lookahead(current)
        if chosen is not None:
            current = chosen
            if current.objective < best.objective:
                best = current
                stale_rounds = 0
            hist.best_history.append(best.objective)
            continue

        # local optimum: perturb the best state seen so far
        if best.objective == (0, 0) or stale_rounds >= cfg.restarts:
            break
        stale_rounds += 1
        hist.perturbations += 1
        r = int(rng.integers(1, 4))
        inserts = propose_moves(best, inst, cfg.candidate_rules & INSERT_RULES, None, region)
        steiner = best.steiner
        if inserts:
            pick = rng.choice(len(inserts), size=min(r, len(inserts)), replace=False)
            for i in sorted(pick.tolist()):
                steiner = steiner + (inserts[i].point,)
        else:
            # nothing obtuse left to target: shake by dropping Steiner points
            for _ in range(min(r, len(steiner))):
                k = int(rng.integers(len(steiner)))
                steiner = steiner[:k] + steiner[k + 1 :]
        nxt = try_state(steiner)
        if nxt is not None:
            current = nxt
            if current.objective < best.objective:
                best = current
                stale_rounds = 0
        hist.best_history.append(best.objective)

    log.info(
        "%s: best %s after %d iterations, %d evaluations",
        inst.uid, best.objective, hist.iterations, hist.evaluations,
    )
    return to_solution(inst, best)
