"""Batch front end: generate instances, build factors, verify pancyclicity,
and hunt for threshold behavior.

Exit codes: 0 success, 2 precondition unmet, 3 stuck or verification
failure, 4 I/O problems. Reports go to stdout (or --out where noted) and
are byte-identical for identical arguments, seeds included.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields

from pcfactor import absorb, builder, gen, oracle
from pcfactor.errors import (BudgetExhausted, InvalidInstance, PCFactorError,
                             PreconditionViolated, SideSizeTooLarge)
from pcfactor.graph import (ColoredBipartiteGraph, Vertex, is_properly_colored,
                            max_mono_degree, min_color_degree, read_instance,
                            verify_two_factor, write_factor, write_instance)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_STUCK = 3
EXIT_IO = 4


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (OSError, InvalidInstance) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PreconditionViolated as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PCFactorError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_STUCK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcfactor",
        description="properly colored 2-factors and even cycles in "
                    "edge-colored complete bipartite hosts")
    sub = parser.add_subparsers(required=True)

    p = sub.add_parser("gen", help="write a generated instance")
    _instance_source_flags(p)
    p.add_argument("--out", required=True, help="instance file to write")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("factor", help="build a PC 2-factor with cycles >= t")
    _instance_source_flags(p)
    p.add_argument("--instance", help="instance file (instead of generator flags)")
    p.add_argument("--t", type=int, default=3, help="cycle-length floor")
    p.add_argument("--out", help="write the factor here on success")
    p.set_defaults(handler=cmd_factor)

    p = sub.add_parser("pancyclic",
                       help="witness PC cycles of every even length through "
                            "every vertex")
    _instance_source_flags(p)
    p.add_argument("--instance", help="instance file (instead of generator flags)")
    p.add_argument("--method", choices=("oracle", "constructive"),
                   default="oracle")
    p.add_argument("--cap", type=int, default=oracle.PANCYCLIC_CAP,
                   help="exact-search side cap (oracle method)")
    p.add_argument("--params", help="key=value file of absorber parameters")
    p.add_argument("--engineering", action="store_true",
                   help="engineering-mode absorber thresholds")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers over (vertex, length) cells")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(handler=cmd_pancyclic)

    p = sub.add_parser("hunt", help="success-rate sweep around the threshold")
    p.add_argument("--n", default="6,9,12",
                   help="comma-separated side sizes")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--offsets", default="-3,-2,-1,0,1",
                   help="comma-separated offsets added to the color-degree "
                        "threshold ceil(2n/3)+t")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--q", type=int, default=0,
                   help="palette size; 0 means n+2")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.set_defaults(handler=cmd_hunt)

    return parser


def _instance_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", default="latin",
                   help="latin | rainbow | mono | random | star")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--delta", type=int, help="random mode: min color degree")
    p.add_argument("--q", type=int, help="random mode: palette size")
    p.add_argument("--star-size", type=int, help="star mode: planted star size")
    p.add_argument("--seed", type=int, default=0)


def _resolve_graph(args) -> ColoredBipartiteGraph:
    if getattr(args, "instance", None):
        return read_instance(args.instance)
    spec = gen.GenSpec(n=args.n, mode=gen.canonical_mode(args.mode),
                       delta=args.delta, palette=args.q,
                       star_size=args.star_size, seed=args.seed)
    return gen.generate(spec)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    spec = gen.GenSpec(n=args.n, mode=gen.canonical_mode(args.mode),
                       delta=args.delta, palette=args.q,
                       star_size=args.star_size, seed=args.seed)
    g = gen.generate(spec)
    write_instance(g, args.out,
                   comments=[f"mode={spec.mode} n={spec.n} seed={spec.seed}"])
    if read_instance(args.out) != g:  # re-verify the artifact
        print("error: written instance does not round-trip", file=sys.stderr)
        return EXIT_IO
    print(f"instance={args.out}")
    print(f"n={g.n}")
    print(f"min_color_degree={min_color_degree(g)}")
    print(f"max_mono_degree={max_mono_degree(g)}")
    return EXIT_OK


def cmd_factor(args) -> int:
    g = _resolve_graph(args)
    t = args.t
    lines = ["command=factor", f"n={g.n}", f"t={t}",
             f"min_color_degree={min_color_degree(g)}",
             f"threshold={math.ceil(2 * g.n / 3) + t}"]
    try:
        result = builder.find_pc_2factor(g, t)
    except PreconditionViolated as exc:
        lines.append("outcome=precondition")
        lines.append(f"reason={exc}")
        print("\n".join(lines))
        return EXIT_PRECONDITION
    if isinstance(result, builder.StuckReport):
        lines.append(result.to_text())
        print("\n".join(lines))
        return EXIT_STUCK
    report = verify_two_factor(g, result, t)
    lines.append("outcome=factor")
    lines.append(f"cycles={len(result.cycles)}")
    lines.append(f"cycle_lengths={','.join(str(c.length) for c in result.cycles)}")
    lines.append(report.to_text())
    print("\n".join(lines))
    if not report.passed:
        return EXIT_STUCK
    if args.out:
        write_factor(result, args.out)
    return EXIT_OK


def cmd_pancyclic(args) -> int:
    g = _resolve_graph(args)
    if args.method == "oracle":
        try:
            report = oracle.verify_vertex_even_pancyclic(g, cap=args.cap)
        except BudgetExhausted as exc:
            _emit(exc.report.to_text(), args.out)
            return EXIT_STUCK
        except SideSizeTooLarge as exc:
            print(f"precondition: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        _emit(report.to_text(), args.out)
        return EXIT_OK if report.verdict else EXIT_STUCK

    params = _load_params(args)
    cells = [(v, k) for v in g.vertices()
             for k in range(4, 2 * g.n + 1, 2)]
    tasks = [(g.rows, v.side, v.index, k, params, args.seed) for v, k in cells]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_pancyclic_cell, tasks))
    else:
        results = [_pancyclic_cell(task) for task in tasks]

    lines = [f"n={g.n}", "method=constructive"]
    all_ok = True
    for (v, k), (ok, detail) in zip(cells, results):
        lines.append(f"cell.{v}.k{k}={'pass' if ok else 'fail'};{detail}")
        all_ok = all_ok and ok
    lines.append(f"verdict={'pass' if all_ok else 'fail'}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK if all_ok else EXIT_STUCK


def _pancyclic_cell(task) -> tuple[bool, str]:
    rows, side, index, k, params, seed = task
    g = ColoredBipartiteGraph(rows)
    v = Vertex(side, index)
    try:
        w = absorb.find_pc_even_cycle_through(g, v, k, params, seed=seed)
    except PCFactorError as exc:
        return False, type(exc).__name__
    ok = is_properly_colored(g, w) and w.size == k and v in w.vertices
    return ok, str(w)


def _load_params(args) -> absorb.AbsorberParams:
    values: dict[str, object] = {}
    if args.params:
        types = {f.name: f.type for f in fields(absorb.AbsorberParams)}
        with open(args.params, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, raw = line.partition("=")
                key = key.strip()
                raw = raw.strip()
                if key not in types:
                    raise InvalidInstance(f"unknown absorber parameter {key!r}")
                values[key] = _coerce(key, raw)
    if args.engineering:
        values["engineering"] = True
        values.setdefault("size_threshold", float(args.n))
        values.setdefault("coverage_threshold", 1.0)
    params = absorb.AbsorberParams(**values)
    params.validate()
    return params


def _coerce(key: str, raw: str):
    if key == "engineering":
        return raw.lower() in ("1", "true", "yes", "on")
    if key in ("max_resample", "min_family", "cover_t", "retry_budget",
               "short_regime_max"):
        return int(raw)
    return float(raw)


def _hunt_cell(task) -> tuple[bool, bool | None]:
    """One trial: did the builder find a factor; does one exist (n <= 6)."""
    n, t, delta, q, seed, mode = task
    if mode == "mono":
        g = gen.monochromatic_graph(n)
    else:
        g = gen.generate(gen.GenSpec(n=n, mode=gen.RANDOM_MIN_DEGREE,
                                     delta=delta, palette=q, seed=seed))
    result = builder.find_pc_2factor(g, t, strict=False)
    built = not isinstance(result, builder.StuckReport)
    exists: bool | None = None
    if n <= 6:
        exists = bool(oracle.enumerate_pc_two_factors(g, t))
    return built, exists


def cmd_hunt(args) -> int:
    ns = [int(s) for s in str(args.n).split(",") if s]
    offsets = [int(s) for s in str(args.offsets).split(",") if s]
    t = args.t
    rows = ["n\tdelta\tt\ttrials\tbuilt\trate\toracle_rate"]
    tasks = []
    labels = []
    for n in ns:
        base = math.ceil(2 * n / 3) + t
        q = args.q or n + 2
        for off in offsets:
            delta = min(max(base + off, 1), n)
            labels.append((n, delta))
            tasks.append([(n, t, delta, max(q, delta), args.seed * 10007 + i, "random")
                          for i in range(args.trials)])
        labels.append((n, 1))
        tasks.append([(n, t, 1, 1, 0, "mono")])

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = [list(pool.map(_hunt_cell, batch)) for batch in tasks]
    else:
        results = [[_hunt_cell(task) for task in batch] for batch in tasks]

    for (n, delta), cells in zip(labels, results):
        built = sum(1 for b, _ in cells if b)
        known = [e for _, e in cells if e is not None]
        oracle_rate = (f"{sum(known) / len(known):.2f}" if known else "-")
        rows.append(f"{n}\t{delta}\t{t}\t{len(cells)}\t{built}\t"
                    f"{built / len(cells):.2f}\t{oracle_rate}")
    _emit("\n".join(rows), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
