import re

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from nonobtuse.generators import (
    Family,
    GenConfig,
    GeneratorError,
    derive_seed,
    gen_batch,
    generate,
    untangle,
)
from nonobtuse.geometry import Location, locate_in_polygon, polygon_simplicity_violation, convex_hull
from nonobtuse.model import load_instance, save_instance, validate_instance

FAMILIES = [f.value for f in Family]


def _axis_parallel(inst):
    pts = inst.boundary_points
    m = len(pts)
    dirs = []
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        assert (a.x == b.x) != (a.y == b.y)
        dirs.append(a.x == b.x)
    # alternating horizontal / vertical
    assert all(dirs[i] != dirs[(i + 1) % m] for i in range(m))


def test_ortho_rectangle():
    inst = generate(GenConfig("ortho", 4, 3))
    assert len(inst.points) == 4
    _axis_parallel(inst)


@settings(max_examples=25)
@given(st.integers(0, 2**64 - 1))
def test_ortho_eight(seed):
    inst = generate(GenConfig("ortho", 8, seed))
    assert len(inst.points) == 8 and inst.constraints == ()
    _axis_parallel(inst)


@pytest.mark.parametrize("n", [3, 5, 2])
def test_ortho_bad_sizes(n):
    with pytest.raises(GeneratorError):
        generate(GenConfig("ortho", n, 0))


def test_config_checks():
    with pytest.raises(GeneratorError):
        GenConfig("point-set", 251)
    with pytest.raises(GeneratorError):
        GenConfig("point-set", 10, seed=-1)
    with pytest.raises(ValueError):
        GenConfig("triangles", 10)


def test_point_set():
    tri = generate(GenConfig("point-set", 3, 1))
    assert len(tri.region_boundary) == 3
    inst = generate(GenConfig("point-set", 60, 4))
    assert len(inst.points) == 60
    hull = set(inst.region_boundary)
    for i, p in enumerate(inst.points):
        if i not in hull:
            assert locate_in_polygon(p, inst.boundary_points) is Location.INSIDE
    assert sorted(convex_hull(list(inst.points))) == sorted(inst.region_boundary)


@settings(max_examples=20)
@given(st.integers(0, 2**64 - 1), st.integers(3, 40))
def test_simple_polygon(seed, n):
    inst = generate(GenConfig("simple-polygon", n, seed))
    assert len(inst.points) == n
    assert polygon_simplicity_violation(inst.boundary_points) is None


def test_untangle_square():
    pts = [(0, 0), (2, 2), (2, 0), (0, 2)]
    tour = untangle(pts, [0, 1, 2, 3], cap=100)
    poly = [pts[i] for i in tour]
    from nonobtuse.geometry import point

    assert polygon_simplicity_violation([point(*p) for p in poly]) is None


def test_exterior_keeps_points_inside_hull():
    inst = generate(GenConfig("simple-polygon-exterior", 30, 2))
    assert len(inst.points) == 30 and len(inst.constraints) == 30
    assert sorted(convex_hull(list(inst.points))) == sorted(inst.region_boundary)
    for a, b in inst.constraints:
        for i in (a, b):
            assert locate_in_polygon(inst.points[i], inst.boundary_points) is not Location.OUTSIDE


@pytest.mark.parametrize("n,kept", [(10, 8), (5, 4), (20, 16)])
def test_exterior_20_counts(n, kept):
    full = generate(GenConfig("simple-polygon-exterior", n, 9))
    cut = generate(GenConfig("simple-polygon-exterior-20", n, 9))
    assert len(full.constraints) == n
    assert len(cut.constraints) == kept
    assert set(cut.constraints) <= set(full.constraints)


def test_batch_shape_and_uids():
    batch = gen_batch(FAMILIES, [10, 20, 40, 60, 80, 100], 5, 2025)
    assert len(batch) == 150
    assert all(re.fullmatch(r"[a-z0-9-]+_[0-9]+_[0-9a-f]{8}", i.uid) for i in batch)
    # family names without digits keep the stricter letters-only prefix
    plain = [i for i in batch if not i.uid.startswith("simple-polygon-exterior-20_")]
    assert all(re.fullmatch(r"[a-z-]+_[0-9]+_[0-9a-f]{8}", i.uid) for i in plain)
    assert len({i.uid for i in batch}) == 150
    again = gen_batch(FAMILIES, [10, 20], 1, 2025)
    assert [i.uid for i in again] == [i.uid for i in gen_batch(FAMILIES, [10, 20], 1, 2025)]


@pytest.mark.parametrize("family", FAMILIES)
def test_valid_and_deterministic(family):
    for n in (10, 40, 100):
        cfg = GenConfig(family, n, derive_seed(3, family, n))
        a, b = generate(cfg), generate(cfg)
        assert save_instance(a) == save_instance(b)
        validate_instance(a)
        assert load_instance(save_instance(a)) == a
        assert len(a.points) == n
