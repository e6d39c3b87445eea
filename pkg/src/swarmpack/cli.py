"""Command-line entry point: ``swarmpack solve | bench | oracle | render``."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
import tempfile
from pathlib import Path

from . import oracle as oracle_mod
from .bench import CSV_COLUMNS, DEFAULT_COMBOS, DEFAULT_TOL, ExperimentSpec, rank_algorithms, run_experiment
from .core import ALGORITHM_IDS, ConfigurationError, RunConfig, default_params, run_optimizer
from .packing import Circle, PackingInstance, Point2, packing_fitness, packing_objective, table9_instance
from .svg import svg_document

BUILTIN_INSTANCES = {"table9": table9_instance}


class InstanceError(ValueError):
    """Malformed or invalid instance file; the message starts with the field path."""


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InstanceError(f"{where}: expected a number, got {value!r}")
    return float(value)


def load_instance(path) -> PackingInstance:
    """Read an instance JSON file, or return a builtin instance by name."""
    name = str(path)
    if name in BUILTIN_INSTANCES:
        return BUILTIN_INSTANCES[name]()
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InstanceError(f"{name}: cannot read file ({exc.strerror})") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{name}: parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise InstanceError("$: expected a JSON object")
    for key in ("lb", "ub", "circles"):
        if key not in raw:
            raise InstanceError(f"{key}: missing field")
    lb = _number(raw["lb"], "lb")
    ub = _number(raw["ub"], "ub")
    if not ub > lb:
        raise InstanceError(f"ub: must exceed lb ({ub} <= {lb})")
    if not isinstance(raw["circles"], list):
        raise InstanceError("circles: expected a list")
    circles = []
    for i, item in enumerate(raw["circles"]):
        if not isinstance(item, dict):
            raise InstanceError(f"circles[{i}]: expected an object")
        for key in ("cx", "cy", "r"):
            if key not in item:
                raise InstanceError(f"circles[{i}].{key}: missing field")
        cx = _number(item["cx"], f"circles[{i}].cx")
        cy = _number(item["cy"], f"circles[{i}].cy")
        r = _number(item["r"], f"circles[{i}].r")
        if not r > 0:
            raise InstanceError(f"circles[{i}].r: radius must be positive, got {r}")
        circles.append(Circle(Point2(cx, cy), r))
    return PackingInstance(lb, ub, tuple(circles))


def _write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit_svg(inst: PackingInstance, solution, path) -> None:
    _write_atomic(path, svg_document(inst, solution))


def _fmt(value) -> str:
    if isinstance(value, (int, str)):
        return str(value)
    return f"{value:.6g}"


def results_csv(result) -> str:
    rows = list(result.rows())
    if not rows:
        raise ValueError("no results to write")
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def emit_results_csv(result, path) -> None:
    _write_atomic(path, results_csv(result))


def emit_trace_csv(trace, path) -> None:
    lines = ["iteration,best"] + [f"{t + 1},{float(v)!r}" for t, v in enumerate(trace)]
    _write_atomic(path, "\n".join(lines) + "\n")


def read_results_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _parse_combos(text: str):
    combos = []
    for part in text.split(","):
        iters, _, pop = part.strip().partition("x")
        combos.append((int(iters), int(pop)))
    return tuple(combos)


def _describe_params(params) -> str:
    if params is None:
        return "none"
    return ", ".join(f"{k}={v}" for k, v in dataclasses.asdict(params).items())


def apply_overrides(params, overrides):
    """``NAME=VALUE`` strings applied on top of an algorithm's default parameters."""
    if not overrides:
        return params
    if params is None:
        raise ConfigurationError("this algorithm has no tunable parameters")
    names = {f.name for f in dataclasses.fields(params)}
    changes = {}
    for item in overrides:
        name, sep, value = item.partition("=")
        if not sep or name not in names:
            raise ConfigurationError(f"--param {item!r}: expected NAME=VALUE with NAME in {sorted(names)}")
        try:
            changes[name] = float(value)
        except ValueError:
            raise ConfigurationError(f"--param {item!r}: value is not a number") from None
    return dataclasses.replace(params, **changes)


def cmd_solve(args) -> None:
    inst = load_instance(args.instance)
    params = apply_overrides(default_params(args.algo), args.param)
    config = RunConfig(args.algo, args.pop, args.iters, args.seed, params)
    print(f"algorithm: {config.algorithm_id}")
    print(f"params: {_describe_params(params)}")
    print(f"population: {config.population}")
    print(f"iterations: {config.max_iterations}")
    print(f"seed: {config.seed}")
    print(f"instance: {args.instance}")
    result = run_optimizer(packing_objective(inst), config)
    x, y = (float(v) for v in result.best_position)
    print(f"center: {x!r} {y!r}")
    print(f"radius: {result.best_fitness!r}")
    print(f"evaluations: {result.evaluations}")
    print(f"wall_time: {result.wall_time:.3f}s")
    if args.trace:
        emit_trace_csv(result.trace, args.trace)
    if args.out:
        emit_svg(inst, ((x, y), result.best_fitness), args.out)


def cmd_bench(args) -> None:
    inst = load_instance(args.instance)
    algorithms = tuple(args.algo.split(",")) if args.algo else ALGORITHM_IDS
    for alg in algorithms:
        default_params(alg)  # reject unknown ids before any work
    spec = ExperimentSpec(combos=_parse_combos(args.combos) if args.combos else DEFAULT_COMBOS,
                          n_seeds=args.seeds, master_seed=args.master_seed, algorithms=algorithms)
    print(f"instance: {args.instance}")
    print(f"combos: {', '.join(f'{i}x{p}' for i, p in spec.combos)}")
    print(f"seeds per combo: {spec.n_seeds}")
    print(f"master_seed: {spec.master_seed}")
    for alg in algorithms:
        print(f"params {alg}: {_describe_params(default_params(alg))}")
    optimum = oracle_mod.certify(inst, args.resolution).best_radius
    print(f"oracle optimum: {optimum!r} (efficacy tol {args.tol})")

    def progress(alg, iters, pop):
        print(f"  done {alg} {iters}x{pop}", file=sys.stderr, flush=True)

    result = run_experiment(spec, packing_objective(inst), optimum, args.tol, args.workers, progress)
    csv_text = results_csv(result)
    if args.out:
        emit_results_csv(result, args.out)
        print(f"wrote {args.out}")
    else:
        print(csv_text, end="")
    for (iters, pop), (best, second, worst) in rank_algorithms(result).items():
        print(f"rank {iters}x{pop}: best={best} second={second} worst={worst}")


def cmd_oracle(args) -> None:
    inst = load_instance(args.instance)
    print(f"instance: {args.instance}")
    print(f"resolution: {args.resolution}")
    print(f"tol: {args.tol}")
    res = oracle_mod.certify(inst, args.resolution, args.tol, with_local_optima=args.local_optima)
    print(f"center: {res.best_center.x!r} {res.best_center.y!r}")
    print(f"radius: {res.best_radius!r}")
    for center, radius in res.local_optima:
        print(f"local optimum: {center.x:.6f} {center.y:.6f} {radius:.6f}")
    if args.out:
        emit_svg(inst, (res.best_center, res.best_radius), args.out)


def cmd_render(args) -> None:
    inst = load_instance(args.instance)
    solution = None
    if args.oracle:
        res = oracle_mod.certify(inst)
        solution = (res.best_center, res.best_radius)
    elif args.center is not None:
        center = Point2(*args.center)
        radius = args.radius if args.radius is not None else packing_fitness(center, inst)
        solution = (center, radius)
    print(f"instance: {args.instance}")
    print(f"solution: {solution}")
    emit_svg(inst, solution, args.out)
    print(f"wrote {args.out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmpack", description="Largest-empty-circle packing with eight swarm metaheuristics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one seeded optimization")
    p.add_argument("--algo", default="PSO", choices=ALGORITHM_IDS)
    p.add_argument("--instance", default="table9", help="JSON file or builtin name (table9)")
    p.add_argument("--pop", type=int, default=50, help="population size")
    p.add_argument("--iters", type=int, default=100, help="maximum iterations")
    p.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed")
    p.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="override a default algorithm parameter (repeatable)")
    p.add_argument("--trace", help="write the best-so-far trace as CSV")
    p.add_argument("--out", help="write an SVG of the solution")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run the seed-batch experiment matrix")
    p.add_argument("--instance", default="table9", help="JSON file or builtin name (table9)")
    p.add_argument("--algo", help="comma-separated algorithm ids (default: all eight)")
    p.add_argument("--combos", help="comma-separated ITERSxPOP pairs, e.g. 100x50,500x50")
    p.add_argument("--seeds", type=int, default=100, help="seeds per combination")
    p.add_argument("--master-seed", type=int, default=2022)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="efficacy tolerance")
    p.add_argument("--resolution", type=int, default=oracle_mod.DEFAULT_RESOLUTION,
                   help="oracle grid points per axis for the efficacy reference")
    p.add_argument("--workers", type=int, default=1, help="processes for per-seed parallelism")
    p.add_argument("--out", help="CSV output path (stdout if omitted)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="certify the optimum by grid scan and local polish")
    p.add_argument("--instance", default="table9", help="JSON file or builtin name (table9)")
    p.add_argument("--resolution", type=int, default=oracle_mod.DEFAULT_RESOLUTION, help="grid points per axis")
    p.add_argument("--tol", type=float, default=1e-7, help="final compass-search step")
    p.add_argument("--local-optima", action="store_true", help="also list every local optimum")
    p.add_argument("--out", help="write an SVG of the certified circle")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="draw an instance as SVG")
    p.add_argument("--instance", default="table9", help="JSON file or builtin name (table9)")
    p.add_argument("--out", required=True, help="SVG output path")
    p.add_argument("--center", type=float, nargs=2, metavar=("X", "Y"))
    p.add_argument("--radius", type=float, help="defaults to the fitness at --center")
    p.add_argument("--oracle", action="store_true", help="draw the certified optimum")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InstanceError as exc:
        print(f"error: instance: {exc}", file=sys.stderr)
        return 1
    except (ConfigurationError, ValueError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
