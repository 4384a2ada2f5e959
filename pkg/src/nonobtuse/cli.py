"""Command line: generate | solve | verify | score | render.

Machine-readable output goes to stdout as JSON lines, diagnostics to stderr.
Exit codes: 0 ok / valid, 1 invalid solution, 2 usage or IO error.
"""

from __future__ import annotations

import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import generators, scoring, solvers
from .model import ModelError, load_instance, load_solution, save_instance, save_solution
from .render import render_svg
from .verify import objective, verify

EXIT_INVALID = 1
EXIT_USAGE = 2

SEED_ENV = "NONOBTUSE_SEED"
FAMILIES = [f.value for f in generators.Family]


def _emit(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True))


def _fail(msg: str) -> None:
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_USAGE)


def _read_instance(path: Path):
    try:
        return load_instance(path.read_bytes())
    except (OSError, ModelError) as e:
        _fail(f"{path}: {e}")


def _read_solution(path: Path):
    try:
        return load_solution(path.read_bytes())
    except (OSError, ModelError) as e:
        _fail(f"{path}: {e}")


def _write(path: Path, data: bytes | str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(data, str):
            path.write_text(data, encoding="utf-8")
        else:
            path.write_bytes(data)
    except OSError as e:
        _fail(f"cannot write {path}: {e}")


@click.group()
@click.option("-v", "--verbose", count=True, help="More logging on stderr.")
def main(verbose: int) -> None:
    """Non-obtuse triangulation toolkit."""
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


# ---------------------------------------------------------------------------


@main.command()
@click.option("--family", "families", multiple=True, required=True, type=click.Choice(FAMILIES))
@click.option("--n", "sizes", multiple=True, required=True, type=click.IntRange(3, 250))
@click.option("--count", default=1, show_default=True, type=click.IntRange(1))
@click.option("--seed", default=0, envvar=SEED_ENV, show_default=True, type=click.IntRange(0, 2**64 - 1))
@click.option("--coordinate-range", default=10_000, show_default=True, type=click.IntRange(16))
@click.option("--out-dir", default=".", type=click.Path(file_okay=False, path_type=Path))
def generate(families, sizes, count, seed, coordinate_range, out_dir: Path) -> None:
    """Write <uid>.instance.json files for every family x size cell."""
    try:
        batch = generators.gen_batch(families, sizes, count, seed, coordinate_range)
    except generators.GeneratorError as e:
        _fail(str(e))
    for inst in batch:
        path = out_dir / f"{inst.uid}.instance.json"
        _write(path, save_instance(inst))
        _emit({"uid": inst.uid, "path": str(path)})


# ---------------------------------------------------------------------------


def _solve_one(args):
    path, solver, budget, seed, max_iterations = args
    inst = load_instance(Path(path).read_bytes())
    if solver == "baseline":
        sol = solvers.solve_delaunay_baseline(inst)
    else:
        cfg = solvers.SolverConfig(time_budget=budget, seed=seed, max_iterations=max_iterations)
        sol = solvers.solve_local_search(inst, cfg)
    rep = verify(inst, sol)
    return inst.uid, save_solution(sol), objective(rep), rep.valid


@main.command()
@click.argument("instances", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--solver", type=click.Choice(["baseline", "local-search"]), default="local-search", show_default=True)
@click.option("--budget", default=60.0, show_default=True, type=click.FloatRange(min=0, min_open=True),
              help="Seconds per instance.")
@click.option("--max-iterations", default=100_000, show_default=True, type=click.IntRange(1))
@click.option("--seed", default=0, envvar=SEED_ENV, show_default=True, type=click.IntRange(0, 2**64 - 1))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Output file (single instance only).")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path),
              help="Directory for <uid>.solution.json files (default: next to each instance).")
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(1))
def solve(instances, solver, budget, max_iterations, seed, out, out_dir, jobs) -> None:
    """Solve instance files and write solution JSON."""
    if out is not None and len(instances) != 1:
        _fail("--out needs exactly one instance; use --out-dir")
    for p in instances:
        _read_instance(p)  # fail early with exit code 2 on bad input
    work = [(str(p), solver, budget, seed, max_iterations) for p in instances]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_solve_one, work))
    else:
        results = [_solve_one(w) for w in work]
    for p, (uid, data, obj, valid) in zip(instances, results):
        target = out or (out_dir or p.parent) / f"{uid}.solution.json"
        _write(target, data)
        _emit({"uid": uid, "solver": solver, "obtuse": obj[0], "steiner": obj[1],
               "objective": list(obj), "valid": valid, "path": str(target)})


# ---------------------------------------------------------------------------


@main.command("verify")
@click.argument("instance_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("solution_file", type=click.Path(dir_okay=False, path_type=Path))
def verify_cmd(instance_file: Path, solution_file: Path) -> None:
    """Print the verification report; exit 0 iff the solution is valid."""
    inst = _read_instance(instance_file)
    sol = _read_solution(solution_file)
    rep = verify(inst, sol)
    _emit({"uid": inst.uid, **rep.to_dict()})
    sys.exit(0 if rep.valid else EXIT_INVALID)


# ---------------------------------------------------------------------------


def _verify_pair(args):
    inst_bytes, sol_bytes = args
    inst = load_instance(inst_bytes)
    rep = verify(inst, load_solution(sol_bytes))
    return rep.valid, rep.obtuse_count, rep.steiner_count


@main.command()
@click.argument("instances_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.argument("solutions_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--best-known", "best_known_file", type=click.Path(dir_okay=False, path_type=Path),
              help="JSON map uid -> best known Steiner count of a feasible solution.")
@click.option("--update-best", is_flag=True, help="Write improved best-known counts back.")
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(1))
def score(instances_dir: Path, solutions_dir: Path, best_known_file, update_best, jobs) -> None:
    """Score every instance in a directory against the solutions found for it."""
    if update_best and best_known_file is None:
        _fail("--update-best needs --best-known")
    try:
        table = scoring.load_best_known(best_known_file) if best_known_file else {}
    except (OSError, ValueError) as e:
        _fail(str(e))

    insts = {}
    for p in sorted(instances_dir.glob("*.instance.json")):
        inst = _read_instance(p)
        insts[inst.uid] = (inst, p.read_bytes())
    sols = {}
    for p in sorted(solutions_dir.glob("*.solution.json")):
        sol = _read_solution(p)
        if sol.instance_uid in sols:
            click.echo(f"warning: several solutions for {sol.instance_uid}; using {p.name}", err=True)
        sols[sol.instance_uid] = p.read_bytes()

    uids = sorted(insts)
    pairs = [(insts[u][1], sols[u]) for u in uids if u in sols]
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            checked = list(ex.map(_verify_pair, pairs))
    else:
        checked = [_verify_pair(a) for a in pairs]
    results = dict(zip([u for u in uids if u in sols], checked))

    # the best-known table always includes the solutions being scored
    for u, (valid, obtuse, k) in results.items():
        if valid and obtuse == 0:
            table = scoring.update_best_known(table, u, k)

    total = 0.0
    rows = []
    for u in uids:
        if u not in results:
            click.echo(f"warning: no solution for {u}; scored 0.0", err=True)
            rec = {"uid": u, "valid": False, "obtuse": None, "steiner": None, "score": 0.0}
        else:
            valid, obtuse, k = results[u]
            if not valid:
                value = 0.0
            elif obtuse == 0:
                value = scoring.score_feasible(table[u], k)
            else:
                value = scoring.score_infeasible(obtuse)
            rec = {"uid": u, "valid": valid, "obtuse": obtuse, "steiner": k, "score": value}
        total += rec["score"]
        rows.append(rec)
        _emit(rec)
    _emit({"total": total, "instances": len(uids)})

    click.echo(f"{'uid':<40} {'valid':>5} {'obtuse':>6} {'steiner':>7} {'score':>8}", err=True)
    for r in rows:
        click.echo(
            f"{r['uid']:<40} {str(r['valid']):>5} {str(r['obtuse']):>6} {str(r['steiner']):>7} {r['score']:>8.4f}",
            err=True,
        )
    click.echo(f"{'total':<40} {'':>5} {'':>6} {'':>7} {total:>8.4f}", err=True)

    if update_best:
        try:
            scoring.save_best_known(table, best_known_file)
        except OSError as e:
            _fail(str(e))


# ---------------------------------------------------------------------------


@main.command()
@click.argument("instance_file", type=click.Path(dir_okay=False, path_type=Path))
@click.argument("solution_file", required=False, type=click.Path(dir_okay=False, path_type=Path))
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path), help="SVG file (default stdout).")
def render(instance_file: Path, solution_file, out) -> None:
    """Draw an instance, optionally with a solution, as SVG."""
    inst = _read_instance(instance_file)
    sol = _read_solution(solution_file) if solution_file else None
    svg = render_svg(inst, sol)
    if out is None:
        click.echo(svg, nl=False)
    else:
        _write(out, svg)


if __name__ == "__main__":
    main()
