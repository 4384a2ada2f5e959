"""Per-instance and team scoring.

Feasible (no obtuse triangles): 1/2 + k_B / (2 k_Y), capped at 1, where k_B is
the best known Steiner count and k_Y the solution's. Infeasible: 1/2 * 0.97^v
for v obtuse triangles. Invalid solutions score 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .verify import VerifyReport

BestKnownTable = dict[str, int]


class ScoringError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceScore:
    value: float
    feasible: bool
    obtuse_count: int
    steiner_count: int


def score_feasible(k_best: int, k_yours: int) -> float:
    if k_best < 0:
        raise ScoringError(f"best-known Steiner count must be >= 0, got {k_best}")
    if k_yours < k_best:
        raise ScoringError(f"solution uses {k_yours} Steiner points, fewer than best known {k_best}")
    if k_yours == k_best:
        return 1.0
    return min(1.0, 0.5 + k_best / (2 * k_yours))


def score_infeasible(obtuse: int) -> float:
    if obtuse <= 0:
        raise ScoringError("a solution without obtuse triangles is feasible; use score_feasible")
    return 0.5 * 0.97**obtuse


def score_instance(report: VerifyReport, table: Mapping[str, int], uid: str) -> InstanceScore:
    if not report.valid:
        return InstanceScore(0.0, False, report.obtuse_count, report.steiner_count)
    if report.obtuse_count == 0:
        if uid not in table:
            raise ScoringError(f"no best-known entry for feasible instance {uid!r}")
        value = score_feasible(table[uid], report.steiner_count)
        return InstanceScore(value, True, 0, report.steiner_count)
    return InstanceScore(
        score_infeasible(report.obtuse_count), False, report.obtuse_count, report.steiner_count
    )


def score_team(scores: Iterable[InstanceScore]) -> float:
    return float(sum(s.value for s in scores))


def update_best_known(table: Mapping[str, int], uid: str, k: int) -> BestKnownTable:
    """Copy of ``table`` with ``uid`` lowered to ``k`` if that is an improvement."""
    out = dict(table)
    out[uid] = min(out[uid], k) if uid in out else k
    return out


def load_best_known(path: str | Path) -> BestKnownTable:
    path = Path(path)
    if not path.exists():
        return {}
    data = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, int) and not isinstance(v, bool) and v >= 0
        for k, v in data.items()
    ):
        raise ScoringError(f"{path} is not a {{uid: int}} map")
    return data


def save_best_known(table: Mapping[str, int], path: str | Path) -> None:
    Path(path).write_text(json.dumps(dict(sorted(table.items())), indent=1) + "\n", encoding="utf-8")
