#!/usr/bin/env python3
"""Best-objective trace of the local search on one generated instance.

    python3 scripts/solver_trace.py --family ortho --n 40 --budget 30
"""

import argparse

from nonobtuse.generators import GenConfig, generate
from nonobtuse.solvers import SearchLog, SolverConfig, solve_delaunay_baseline, solve_local_search
from nonobtuse.verify import objective, verify


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="ortho")
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=float, default=30.0)
    args = ap.parse_args()

    inst = generate(GenConfig(args.family, args.n, args.seed))
    print(inst.uid, "baseline", objective(verify(inst, solve_delaunay_baseline(inst))))
    log = SearchLog()
    sol = solve_local_search(inst, SolverConfig(time_budget=args.budget), history=log)
    last = None
    for i, b in enumerate(log.best_history):
        if b != last:
            print(f"{i:6d} {b}")
            last = b
    rep = verify(inst, sol)
    print("final", objective(rep), "valid", rep.valid,
          f"iterations={log.iterations} evaluations={log.evaluations} perturbations={log.perturbations}")


if __name__ == "__main__":
    main()
