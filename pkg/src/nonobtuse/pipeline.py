"""generate -> solve -> verify -> score on a local corpus, writing every artifact to disk.

Artifacts contain no timings or host data, so two runs with the same
configuration are byte-identical whenever the solver's iteration cap (not the
wall clock) ends each search.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import scoring
from .generators import Family, gen_batch
from .model import Instance, load_instance, load_solution, save_instance, save_solution
from .solvers import SolverConfig, solve_delaunay_baseline, solve_local_search
from .verify import objective, verify

log = logging.getLogger(__name__)

SOLVERS = ("baseline", "local-search")


@dataclass(frozen=True)
class PipelineConfig:
    families: tuple[str, ...] = tuple(f.value for f in Family)
    sizes: tuple[int, ...] = (10, 20, 40)
    count: int = 5
    seed: int = 2025
    time_budget: float = 60.0
    max_iterations: int = 100_000
    solver_seed: int = 0
    jobs: int = 1


@dataclass
class InstanceRecord:
    uid: str
    family: str
    n: int
    baseline: tuple[int, int]
    local_search: tuple[int, int]
    baseline_valid: bool
    local_search_valid: bool
    triangle_counts: dict = field(default_factory=dict)


def _dump(obj) -> bytes:
    return (json.dumps(obj, indent=1, sort_keys=True) + "\n").encode("utf-8")


def _run_one(args):
    inst_bytes, time_budget, max_iterations, solver_seed = args
    inst = load_instance(inst_bytes)
    base = solve_delaunay_baseline(inst)
    cfg = SolverConfig(time_budget=time_budget, max_iterations=max_iterations, seed=solver_seed)
    ls = solve_local_search(inst, cfg)
    return save_solution(base), save_solution(ls)


def run_pipeline(cfg: PipelineConfig, out_dir: str | Path) -> list[InstanceRecord]:
    out = Path(out_dir)
    (out / "instances").mkdir(parents=True, exist_ok=True)
    for s in SOLVERS:
        (out / "solutions" / s).mkdir(parents=True, exist_ok=True)

    insts: list[Instance] = gen_batch(cfg.families, cfg.sizes, cfg.count, cfg.seed)
    blobs = []
    for inst in insts:
        data = save_instance(inst)
        (out / "instances" / f"{inst.uid}.instance.json").write_bytes(data)
        blobs.append(data)

    work = [(b, cfg.time_budget, cfg.max_iterations, cfg.solver_seed) for b in blobs]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            solved = list(ex.map(_run_one, work))
    else:
        solved = []
        for inst, w in zip(insts, work):
            solved.append(_run_one(w))
            log.info("solved %s", inst.uid)

    records = []
    reports = {}
    table: dict[str, int] = {}
    for inst, pair in zip(insts, solved):
        reps = {}
        for name, data in zip(SOLVERS, pair):
            (out / "solutions" / name / f"{inst.uid}.solution.json").write_bytes(data)
            rep = verify(inst, load_solution(data))
            reps[name] = rep
            if rep.valid and rep.obtuse_count == 0:
                table = scoring.update_best_known(table, inst.uid, rep.steiner_count)
        reports[inst.uid] = {name: r.to_dict() for name, r in reps.items()}
        family, n, _ = inst.uid.rsplit("_", 2)
        records.append(InstanceRecord(
            uid=inst.uid,
            family=family,
            n=int(n),
            baseline=objective(reps["baseline"]),
            local_search=objective(reps["local-search"]),
            baseline_valid=reps["baseline"].valid,
            local_search_valid=reps["local-search"].valid,
            triangle_counts={name: r.triangle_count for name, r in reps.items()},
        ))

    scores = {}
    for name in SOLVERS:
        per = {}
        for inst in insts:
            d = reports[inst.uid][name]
            if not d["valid"]:
                per[inst.uid] = 0.0
            elif d["obtuse_count"] == 0:
                per[inst.uid] = scoring.score_feasible(table[inst.uid], d["steiner_count"])
            else:
                per[inst.uid] = scoring.score_infeasible(d["obtuse_count"])
        scores[name] = {"instances": per, "total": sum(per.values())}

    (out / "reports.json").write_bytes(_dump(reports))
    (out / "best_known.json").write_bytes(_dump(table))
    (out / "scores.json").write_bytes(_dump(scores))
    (out / "records.json").write_bytes(_dump([asdict(r) for r in records]))
    return records
