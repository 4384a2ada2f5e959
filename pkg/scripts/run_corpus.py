#!/usr/bin/env python3
"""Run the full generate -> solve -> verify -> score pipeline on a local corpus.

    python3 scripts/run_corpus.py --out runs/corpus --budget 60
"""

import argparse
import logging
from collections import defaultdict

from nonobtuse.pipeline import PipelineConfig, run_pipeline


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/corpus")
    ap.add_argument("--families", nargs="*", default=None)
    ap.add_argument("--sizes", nargs="*", type=int, default=[10, 20, 40])
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--seed", type=int, default=2025)
    ap.add_argument("--budget", type=float, default=60.0)
    ap.add_argument("--max-iterations", type=int, default=100_000)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

    kw = {}
    if args.families:
        kw["families"] = tuple(args.families)
    cfg = PipelineConfig(sizes=tuple(args.sizes), count=args.count, seed=args.seed,
                         time_budget=args.budget, max_iterations=args.max_iterations, jobs=args.jobs, **kw)
    recs = run_pipeline(cfg, args.out)

    by = defaultdict(list)
    for r in recs:
        by[(r.family, r.n)].append(r)
    print(f"{'family':<28}{'n':>4}{'base obt':>10}{'ls obt':>8}{'ls stn':>8}{'feasible':>10}")
    for (fam, n), rs in sorted(by.items()):
        bo = sum(r.baseline[0] for r in rs) / len(rs)
        lo = sum(r.local_search[0] for r in rs) / len(rs)
        ls = sum(r.local_search[1] for r in rs) / len(rs)
        feas = sum(r.local_search[0] == 0 for r in rs)
        print(f"{fam:<28}{n:>4}{bo:>10.1f}{lo:>8.1f}{ls:>8.1f}{feas:>7}/{len(rs)}")


if __name__ == "__main__":
    main()
