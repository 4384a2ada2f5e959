import pytest

from nonobtuse.generators import gen_batch
from nonobtuse.geometry import point
from nonobtuse.solvers import (
    Move,
    Rule,
    SearchLog,
    SolverConfig,
    axis_grid_points,
    evaluate,
    is_rectilinear,
    propose_moves,
    solve_delaunay_baseline,
    solve_local_search,
)
from nonobtuse.verify import objective, verify


def test_baseline(square, obtuse_triangle):
    assert objective(verify(square, solve_delaunay_baseline(square))) == (0, 0)
    assert objective(verify(obtuse_triangle, solve_delaunay_baseline(obtuse_triangle))) == (1, 0)


def test_altitude_candidate(obtuse_triangle):
    moves = propose_moves(evaluate(obtuse_triangle, ()), obtuse_triangle)
    feet = [m.point for m in moves if m.rule is Rule.ALTITUDE_FOOT]
    assert feet == [point(4, 0)]
    assert all(m.rule not in (Rule.MOVE, Rule.DELETE) for m in moves)


def test_only_move_delete_without_obtuse(square):
    state = evaluate(square, [point(1, 1), point(3, 2)])
    if state.objective[0] == 0:
        moves = propose_moves(state, square)
        assert {m.rule for m in moves} <= {Rule.MOVE, Rule.DELETE}
        assert sum(m.rule is Rule.DELETE for m in moves) == 2
        assert sum(m.rule is Rule.MOVE for m in moves) <= 2


def test_candidates_are_exact(l_shape):
    inst = gen_batch(["simple-polygon"], [20], 1, 4)[0]
    state = evaluate(inst, ())
    for m in propose_moves(state, inst):
        if m.point is not None:
            assert type(m.point.x).__name__ == "mpq"


def test_move_apply():
    s = (point(0, 0), point(1, 1))
    assert Move(Rule.DELETE, index=0).apply(s) == (point(1, 1),)
    assert Move(Rule.MOVE, point(2, 2), 1).apply(s) == (point(0, 0), point(2, 2))
    assert Move(Rule.CIRCUMCENTER, point(3, 3)).apply(s)[-1] == point(3, 3)


def test_micro_instances(square, obtuse_triangle):
    cfg = SolverConfig(time_budget=10, seed=0)
    sol = solve_local_search(obtuse_triangle, cfg)
    rep = verify(obtuse_triangle, sol)
    assert rep.valid and objective(rep) == (0, 1)
    assert objective(verify(square, solve_local_search(square, cfg))) == (0, 0)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(time_budget=0)
    with pytest.raises(ValueError):
        SolverConfig(candidate_rules={"move", "delete"})
    assert Rule.CIRCUMCENTER in SolverConfig(candidate_rules={"circumcenter"}).candidate_rules


def test_axis_grid(l_shape, with_constraint):
    assert is_rectilinear(l_shape)
    assert not is_rectilinear(with_constraint)
    grid = axis_grid_points(l_shape)
    assert point(2, 0) in grid and point(6, 6) not in grid
    assert evaluate(l_shape, grid).objective[0] == 0


@pytest.mark.parametrize("inst", gen_batch(["ortho", "simple-polygon-exterior-20"], [10], 2, 8), ids=lambda i: i.uid)
def test_anytime_and_valid(inst):
    log = SearchLog()
    base = objective(verify(inst, solve_delaunay_baseline(inst)))
    sol = solve_local_search(inst, SolverConfig(time_budget=5, seed=1), history=log)
    rep = verify(inst, sol)
    assert rep.valid
    assert objective(rep) <= base
    # the best objective never gets worse over the run
    assert all(b <= a for a, b in zip(log.best_history, log.best_history[1:]))


def test_iteration_cap_is_deterministic():
    inst = gen_batch(["point-set"], [20], 1, 3)[0]
    cfg = SolverConfig(time_budget=600, max_iterations=6, seed=5)
    a = solve_local_search(inst, cfg)
    b = solve_local_search(inst, cfg)
    assert a == b


def test_warm_start_used(obtuse_triangle):
    sol = solve_local_search(obtuse_triangle, SolverConfig(time_budget=5, max_iterations=1), warm_start=[point(4, 0)])
    assert objective(verify(obtuse_triangle, sol)) == (0, 1)
