import json

import pytest
from hypothesis import given
import hypothesis.strategies as st

from nonobtuse.scoring import (
    InstanceScore,
    ScoringError,
    load_best_known,
    save_best_known,
    score_feasible,
    score_infeasible,
    score_instance,
    score_team,
    update_best_known,
)
from nonobtuse.verify import VerifyReport


def test_reference_values():
    assert score_feasible(1, 2) == pytest.approx(0.75, abs=1e-12)
    assert score_infeasible(1) == pytest.approx(0.485, abs=1e-12)
    assert score_feasible(7, 7) == 1.0
    assert score_feasible(0, 0) == 1.0
    assert score_feasible(0, 5) == 0.5


def test_domain_errors():
    with pytest.raises(ScoringError):
        score_feasible(3, 2)
    with pytest.raises(ScoringError):
        score_infeasible(0)


@given(st.integers(0, 1000), st.integers(0, 1000))
def test_feasible_range_and_monotone(kb, extra):
    ky = kb + extra
    s = score_feasible(kb, ky)
    assert 0.5 <= s <= 1.0
    assert score_feasible(kb, ky + 1) <= s


@given(st.integers(1, 2000))
def test_infeasible_range_and_monotone(v):
    s = score_infeasible(v)
    assert 0.0 < s <= 0.485 + 1e-15
    assert score_infeasible(v + 1) < s
    # any feasible solution beats any infeasible one
    assert s < 0.5


def test_score_instance():
    table = {"a": 2}
    ok = VerifyReport(valid=True, obtuse_count=0, steiner_count=4)
    assert score_instance(ok, table, "a").value == pytest.approx(0.75)
    bad = VerifyReport(valid=True, obtuse_count=2, steiner_count=1)
    assert score_instance(bad, table, "a").value == pytest.approx(0.5 * 0.97**2)
    invalid = VerifyReport(valid=False, obtuse_count=0, steiner_count=0)
    assert score_instance(invalid, table, "a").value == 0.0
    with pytest.raises(ScoringError):
        score_instance(ok, {}, "a")


def test_team_sum():
    scores = [InstanceScore(1.0, True, 0, 0), InstanceScore(0.485, False, 1, 0), InstanceScore(0.0, False, 0, 0)]
    assert score_team(scores) == pytest.approx(1.485)
    assert score_team([]) == 0.0


def test_best_known_table(tmp_path):
    t = update_best_known({}, "a", 5)
    t = update_best_known(t, "a", 7)
    t = update_best_known(t, "b", 0)
    assert t == {"a": 5, "b": 0}
    assert update_best_known(t, "a", 3)["a"] == 3
    path = tmp_path / "best.json"
    save_best_known(t, path)
    assert load_best_known(path) == t
    assert load_best_known(tmp_path / "missing.json") == {}
    path.write_text(json.dumps({"a": -1}))
    with pytest.raises(ScoringError):
        load_best_known(path)
