"""Seeded generators for the five instance families.

All work happens on plain integer tuples; the result is turned into a validated
``Instance`` at the end.
"""

from __future__ import annotations

import dataclasses
import enum
import hashlib
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .geometry import convex_hull, point
from .model import Instance, make_instance, save_instance

DEFAULT_SIZES = (10, 20, 40, 60, 80, 100, 150, 250)


class Family(str, enum.Enum):
    ORTHO = "ortho"
    POINT_SET = "point-set"
    SIMPLE_POLYGON = "simple-polygon"
    SIMPLE_POLYGON_EXTERIOR = "simple-polygon-exterior"
    SIMPLE_POLYGON_EXTERIOR_20 = "simple-polygon-exterior-20"


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    family: Family
    n: int
    seed: int = 0
    coordinate_range: int = 10_000

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not 3 <= self.n <= 250:
            raise GeneratorError(f"n must be in [3, 250], got {self.n}")
        if self.coordinate_range <= 0:
            raise GeneratorError("coordinate_range must be positive")
        if not 0 <= self.seed < 2**64:
            raise GeneratorError("seed must be a 64-bit unsigned integer")


# ---------------------------------------------------------------------------
# integer geometry helpers (fast path for generation only)


def _orient(a, b, c) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_seg(p, a, b) -> bool:
    return (
        _orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _touch(p, q, r, s) -> bool:
    """Closed segments pq and rs share a point."""
    o1, o2, o3, o4 = _orient(p, q, r), _orient(p, q, s), _orient(r, s, p), _orient(r, s, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_seg(r, p, q))
        or (o2 == 0 and _on_seg(s, p, q))
        or (o3 == 0 and _on_seg(p, r, s))
        or (o4 == 0 and _on_seg(q, r, s))
    )


def _cross_strict(p, q, r, s) -> bool:
    return _orient(p, q, r) * _orient(p, q, s) < 0 and _orient(r, s, p) * _orient(r, s, q) < 0


def _area2(poly) -> int:
    return sum(
        poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[i][1] * poly[(i + 1) % len(poly)][0]
        for i in range(len(poly))
    )


def _edges_ok(poly, new_edges: Iterable[int]) -> bool:
    """Check the listed edges against every other edge of the closed polygon."""
    n = len(poly)
    for i in new_edges:
        a, b = poly[i], poly[(i + 1) % n]
        for j in range(n):
            if j == i:
                continue
            c, d = poly[j], poly[(j + 1) % n]
            if j == (i + 1) % n:
                if _orient(a, b, d) == 0 and (_on_seg(d, a, b) or _on_seg(a, c, d)):
                    return False
            elif i == (j + 1) % n:
                if _orient(c, d, b) == 0 and (_on_seg(b, c, d) or _on_seg(c, a, b)):
                    return False
            elif _touch(a, b, c, d):
                return False
    return True


def _direction(p, q):
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def _general_position_points(rng: np.random.Generator, n: int, R: int) -> list[tuple[int, int]]:
    """n distinct integer points in [0, R]^2, no three collinear."""
    pts: list[tuple[int, int]] = []
    seen = set()
    attempts = 0
    while len(pts) < n:
        attempts += 1
        if attempts > 1000 * n:
            raise GeneratorError("could not place points in general position; increase coordinate_range")
        p = (int(rng.integers(0, R + 1)), int(rng.integers(0, R + 1)))
        if p in seen:
            continue
        dirs = [_direction(p, q) for q in pts]
        if len(set(dirs)) != len(dirs):
            continue
        pts.append(p)
        seen.add(p)
    return pts


# ---------------------------------------------------------------------------
# families


def gen_ortho(cfg: GenConfig, uid: str | None = None) -> Instance:
    """Orthogonal polygon with exactly ``cfg.n`` corners.

    Starts from a random rectangle and applies random corner steps (+2
    vertices) and edge notches or bumps (+4 vertices), rejecting anything that
    breaks simplicity.
    """
    n = cfg.n
    if n < 4 or n % 2:
        raise GeneratorError(f"ortho needs an even n >= 4, got {n}")
    rng = np.random.default_rng(cfg.seed)
    R = cfg.coordinate_range
    if R < 2 * n:
        raise GeneratorError("coordinate_range too small for the requested n")

    while True:
        x1, x2 = sorted(rng.choice(R + 1, size=2, replace=False).tolist())
        y1, y2 = sorted(rng.choice(R + 1, size=2, replace=False).tolist())
        if x2 - x1 < R // 4 or y2 - y1 < R // 4:
            continue
        poly = [(x1, y1), (x2, y1), (x2, y2), (x1, y2)]
        stalls = 0
        while len(poly) < n and stalls < 200 * n:
            cand = _ortho_step(rng, poly, n - len(poly), R)
            if cand is None:
                stalls += 1
                continue
            poly = cand
        if len(poly) == n:
            break
    return make_instance(uid or f"ortho_{n}", poly, range(n))


def _ortho_step(rng, poly, remaining, R):
    m = len(poly)
    if remaining >= 4 and rng.random() < 0.5:
        i = int(rng.integers(m))
        a, b = poly[i], poly[(i + 1) % m]
        length = abs(b[0] - a[0]) + abs(b[1] - a[1])
        if length < 3:
            return None
        s, t = sorted(rng.choice(np.arange(1, length), size=2, replace=False).tolist())
        ux, uy = (b[0] - a[0]) // length, (b[1] - a[1]) // length
        depth_max = max(2, R // 8)
        d = int(rng.integers(1, depth_max))
        if rng.random() < 0.5:
            d = -d
        nx, ny = -uy * d, ux * d
        p1 = (a[0] + ux * s, a[1] + uy * s)
        p4 = (a[0] + ux * t, a[1] + uy * t)
        p2 = (p1[0] + nx, p1[1] + ny)
        p3 = (p4[0] + nx, p4[1] + ny)
        new = poly[: i + 1] + [p1, p2, p3, p4] + poly[i + 1 :]
        changed = range(i, i + 5)
    else:
        i = int(rng.integers(m))
        a, c, b = poly[i - 1], poly[i], poly[(i + 1) % m]
        la = abs(a[0] - c[0]) + abs(a[1] - c[1])
        lb = abs(b[0] - c[0]) + abs(b[1] - c[1])
        if la < 2 or lb < 2:
            return None
        u = int(rng.integers(1, la))
        w = int(rng.integers(1, lb))
        p = (c[0] + (a[0] - c[0]) // la * u, c[1] + (a[1] - c[1]) // la * u)
        r = (c[0] + (b[0] - c[0]) // lb * w, c[1] + (b[1] - c[1]) // lb * w)
        q = (p[0] + r[0] - c[0], p[1] + r[1] - c[1])
        new = poly[:i] + [p, q, r] + poly[i + 1 :]
        changed = [(i - 1) % len(new), i, i + 1, (i + 2) % len(new)]
    if any(not (0 <= x <= R and 0 <= y <= R) for x, y in new):
        return None
    if len(set(new)) != len(new):
        return None
    if _area2(new) <= 0 or not _edges_ok(new, changed):
        return None
    return new


def _sample_structured(rng: np.random.Generator, n: int, R: int) -> list[tuple[int, int]]:
    """Uniform, jittered-grid, Gaussian-cluster or mixed samples (mode chosen by seed)."""
    mode = int(rng.integers(4))
    out: list[tuple[int, int]] = []

    def uniform(k):
        return [(int(rng.integers(0, R + 1)), int(rng.integers(0, R + 1))) for _ in range(k)]

    def grid(k):
        side = max(2, math.ceil(math.sqrt(k)))
        step = R / side
        cells = rng.choice(side * side, size=min(k, side * side), replace=False)
        jitter = max(1, int(step / 4))
        res = []
        for cidx in cells.tolist():
            gx, gy = divmod(cidx, side)
            x = int((gx + 0.5) * step) + int(rng.integers(-jitter, jitter + 1))
            y = int((gy + 0.5) * step) + int(rng.integers(-jitter, jitter + 1))
            res.append((min(max(x, 0), R), min(max(y, 0), R)))
        return res + uniform(k - len(res))

    def clusters(k):
        m = int(rng.integers(2, 6))
        centers = rng.uniform(0.15 * R, 0.85 * R, size=(m, 2))
        sigma = R * rng.uniform(0.03, 0.12, size=m)
        res = []
        for _ in range(k):
            j = int(rng.integers(m))
            x, y = rng.normal(centers[j], sigma[j])
            res.append((int(min(max(round(x), 0), R)), int(min(max(round(y), 0), R))))
        return res

    if mode == 0:
        out = uniform(n)
    elif mode == 1:
        out = grid(n)
    elif mode == 2:
        out = clusters(n)
    else:
        k1 = n // 3
        k2 = n // 3
        out = uniform(k1) + grid(k2) + clusters(n - k1 - k2)
    return out


def gen_point_set(cfg: GenConfig, uid: str | None = None) -> Instance:
    """Points from a structured sampler; the convex hull is the boundary."""
    rng = np.random.default_rng(cfg.seed)
    R, n = cfg.coordinate_range, cfg.n
    raw = _sample_structured(rng, n, R)
    pts: list[tuple[int, int]] = []
    seen = set()
    for p in raw:
        while p in seen:
            p = (int(rng.integers(0, R + 1)), int(rng.integers(0, R + 1)))
        pts.append(p)
        seen.add(p)
    for _ in range(10_000):
        hull = convex_hull([point(*p) for p in pts])
        bad = _points_on_hull_edges(pts, hull) if len(hull) >= 3 else list(range(len(pts)))
        if not bad:
            break
        for i in bad:
            seen.discard(pts[i])
            while True:
                q = (int(rng.integers(0, R + 1)), int(rng.integers(0, R + 1)))
                if q not in seen:
                    break
            pts[i] = q
            seen.add(q)
    else:
        raise GeneratorError("could not remove collinear hull points")
    return make_instance(uid or f"point-set_{n}", pts, hull)


def _points_on_hull_edges(pts, hull) -> list[int]:
    hs = set(hull)
    m = len(hull)
    bad = []
    for i, p in enumerate(pts):
        if i in hs:
            continue
        for k in range(m):
            if _on_seg(p, pts[hull[k]], pts[hull[(k + 1) % m]]):
                bad.append(i)
                break
    return bad


def untangle(points: Sequence[tuple[int, int]], tour: list[int], cap: int) -> list[int] | None:
    """2-opt until no two tour edges cross; None if more than ``cap`` swaps were needed.

    Each pass scans edge pairs (i, j) in lexicographic order and reverses the
    tour between them as soon as a crossing is found.
    """
    tour = list(tour)
    n = len(tour)
    swaps = 0
    changed = True
    while changed:
        changed = False
        for i in range(n - 2):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                a, b = points[tour[i]], points[tour[i + 1]]
                c, d = points[tour[j]], points[tour[(j + 1) % n]]
                if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
                    continue
                if max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1]):
                    continue
                if _cross_strict(a, b, c, d):
                    tour[i + 1 : j + 1] = tour[i + 1 : j + 1][::-1]
                    swaps += 1
                    changed = True
                    if swaps > cap:
                        return None
    return tour


def _random_simple_polygon(rng: np.random.Generator, n: int, R: int) -> list[tuple[int, int]]:
    for _ in range(100):
        pts = _general_position_points(rng, n, R)
        tour = rng.permutation(n).tolist()
        tour = untangle(pts, tour, 50 * n * n)
        if tour is None:
            continue
        poly = [pts[i] for i in tour]
        if _area2(poly) < 0:
            poly.reverse()
        return poly
    raise GeneratorError("2-opt untangling kept exceeding its swap cap")


def gen_simple_polygon(cfg: GenConfig, uid: str | None = None) -> Instance:
    rng = np.random.default_rng(cfg.seed)
    poly = _random_simple_polygon(rng, cfg.n, cfg.coordinate_range)
    return make_instance(uid or f"simple-polygon_{cfg.n}", poly, range(cfg.n))


def _exterior(rng, cfg: GenConfig):
    poly = _random_simple_polygon(rng, cfg.n, cfg.coordinate_range)
    n = len(poly)
    hull = convex_hull([point(*p) for p in poly])
    constraints = [(i, (i + 1) % n) for i in range(n)]
    return poly, hull, constraints


def gen_simple_polygon_exterior(cfg: GenConfig, uid: str | None = None) -> Instance:
    """Convex hull as boundary; the simple polygon's edges become constraints."""
    rng = np.random.default_rng(cfg.seed)
    poly, hull, constraints = _exterior(rng, cfg)
    return make_instance(uid or f"simple-polygon-exterior_{cfg.n}", poly, hull, constraints)


def gen_simple_polygon_exterior_20(cfg: GenConfig, uid: str | None = None) -> Instance:
    if cfg.n < 5:
        raise GeneratorError("simple-polygon-exterior-20 needs n >= 5")
    rng = np.random.default_rng(cfg.seed)
    poly, hull, constraints = _exterior(rng, cfg)
    drop = set(rng.choice(len(constraints), size=int(0.2 * len(constraints)), replace=False).tolist())
    kept = [c for k, c in enumerate(constraints) if k not in drop]
    return make_instance(uid or f"simple-polygon-exterior-20_{cfg.n}", poly, hull, kept)


GENERATORS = {
    Family.ORTHO: gen_ortho,
    Family.POINT_SET: gen_point_set,
    Family.SIMPLE_POLYGON: gen_simple_polygon,
    Family.SIMPLE_POLYGON_EXTERIOR: gen_simple_polygon_exterior,
    Family.SIMPLE_POLYGON_EXTERIOR_20: gen_simple_polygon_exterior_20,
}


def generate(cfg: GenConfig) -> Instance:
    """Generate one instance with a content-derived uid ``family_n_hash8``."""
    inst = GENERATORS[cfg.family](cfg, uid="pending")
    digest = hashlib.sha256(save_instance(inst)).hexdigest()[:8]
    return dataclasses.replace(inst, uid=f"{cfg.family.value}_{cfg.n}_{digest}")


def derive_seed(seed: int, *parts) -> int:
    key = "|".join([str(seed), *map(str, parts)]).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


def gen_batch(
    families: Iterable[Family | str],
    sizes: Iterable[int],
    count_per_cell: int,
    seed: int,
    coordinate_range: int = 10_000,
) -> list[Instance]:
    out = []
    sizes = list(sizes)
    for fam in families:
        fam = Family(fam)
        for n in sizes:
            for k in range(count_per_cell):
                cfg = GenConfig(fam, n, derive_seed(seed, fam.value, n, k), coordinate_range)
                out.append(generate(cfg))
    return out
