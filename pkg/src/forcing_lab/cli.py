"""Command-line front end over graph6 streams."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import threecolor  # noqa: F401  registers the three-color rules
from .corpus import atlas, random_graphs
from .forcing import CLOSURES2, Coloring2, Coloring3
from .graph import (CapacityError, Graph, InputError, blowup, generate, graph6_decode, graph6_encode,
                    iter_bits, read_graph6_lines)
from .leafstrip import leaf_strip
from .rfold import ClusterProfile, rfold_psd_closure, rfold_std_closure
from .solvers import PARAMS, SolverLimits, astar_plus, compute, revalidate, z_number, zf_plus_number
from .solvers import zminus_number, zplus_number
from .threecolor import CLOSURES3
from .verify import CHECKS, format_row, verify_theorems

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3
CSV_HEADER = "graph6,Z,Z+,Z-,ellstar-,Zf+,ellstar+,astar+"
TRACE_RULES = sorted(CLOSURES2) + sorted(CLOSURES3) + ["rfold_psd", "rfold_std"]


def worker_count() -> int:
    raw = os.environ.get("FORCING_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"FORCING_LAB_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise InputError("FORCING_LAB_THREADS must be >= 1")
    return n


def ordered_map(fn, items, workers: int):
    """Map lazily, yielding results in input order."""
    if workers <= 1:
        for x in items:
            yield fn(x)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=1)


# ---------------------------------------------------------------- input

def add_input_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="graph6 file, one graph per line ('-' for stdin)")
    src.add_argument("--family", metavar="NAME:ARGS", help="named family, e.g. path:4 or complete_bipartite:3,2")
    src.add_argument("--graph6", metavar="WORD", help="a single inline graph6 word")


def read_graphs(args):
    if args.family:
        yield generate(args.family)
    elif args.graph6:
        yield graph6_decode(args.graph6)
    elif args.input and args.input != "-":
        try:
            fh = open(args.input, encoding="ascii")
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
        with fh:
            yield from read_graph6_lines(fh)
    else:
        yield from read_graph6_lines(sys.stdin)


def limits_from(args) -> SolverLimits:
    return SolverLimits(max_n=args.limit_n, max_nr=args.limit_nr, time_budget=args.time_budget)


def parse_vertices(text: str | None, n: int, what: str) -> int:
    if not text:
        return 0
    mask = 0
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            v = int(tok)
        except ValueError:
            raise InputError(f"{what}: {tok!r} is not a vertex index") from None
        if not 0 <= v < n:
            raise InputError(f"{what}: vertex {v} out of range 0..{n - 1}")
        mask |= 1 << v
    return mask


# ---------------------------------------------------------------- output helpers

FILLS = {"blue": "#4a7bd0", "dark": "#1f3a93", "light": "#a9c8f5", "white": "#ffffff"}


def to_dot(g: Graph, colors: dict[int, str], chronicle=()) -> str:
    lines = ["digraph forcing {", "  node [shape=circle, style=filled];"]
    for v in range(g.n):
        c = colors.get(v, "white")
        font = ', fontcolor="#ffffff"' if c in ("blue", "dark") else ""
        lines.append(f'  {v} [fillcolor="{FILLS[c]}"{font}];')
    for u, w in g.edges():
        lines.append(f'  {u} -> {w} [dir=none, color="#999999"];')
    for rec in chronicle:
        for w in iter_bits(rec.forced):
            lines.append(f'  {rec.forcer} -> {w} [label="{rec.step}", color="#c0392b"];')
    lines.append("}")
    return "\n".join(lines)


def witness_colors(res) -> dict[int, str]:
    w = res.witness
    if isinstance(w, Coloring2):
        return {v: "blue" for v in iter_bits(w.blue)}
    if isinstance(w, Coloring3):
        out = {v: "dark" for v in iter_bits(w.dark)}
        out.update({v: "light" for v in iter_bits(w.light)})
        return out
    return {}


def csv_row(g: Graph, limits: SolverLimits) -> str:
    zm = zminus_number(g, limits)
    zf = zf_plus_number(g, limits)
    a = astar_plus(g, limits)
    vals = [z_number(g, limits).value, zplus_number(g, limits).value, zm.value, zm.ellstar,
            zf.value, zf.ellstar, a.value]
    return ",".join([graph6_encode(g)] + [str(v) for v in vals])


def _compute_one(g: Graph, args_d: dict) -> str:
    limits = SolverLimits(args_d["limit_n"], args_d["limit_nr"], args_d["time_budget"])
    fmt = args_d["format"]
    if fmt == "csv":
        return csv_row(g, limits)
    res = compute(g, args_d["param"], args_d["r"], args_d["method"], limits)
    if not revalidate(g, res):
        raise AssertionError(f"witness for {res.param} failed to replay")
    if fmt == "dot":
        if res.param in ("zr", "zr+", "astar+"):
            bg, _ = blowup(g, res.witness.r)
            blue = res.witness.to_blue()
            return to_dot(bg, {v: "blue" for v in iter_bits(blue)}, res.chronicle)
        return to_dot(g, witness_colors(res), res.chronicle)
    d = res.to_dict(timing=args_d["timing"])
    d["graph6"] = graph6_encode(g)
    return json.dumps(d)


# ---------------------------------------------------------------- subcommands

def cmd_compute(args) -> int:
    if args.format != "csv":
        if not args.param:
            raise InputError("--param is required (or use --format csv for the full row)")
        if args.param in ("zr", "zr+") and args.r is None:
            raise InputError(f"--r is required for {args.param}")
        if args.r is not None and args.r < 1:
            raise InputError("--r must be >= 1")
    else:
        print(CSV_HEADER, flush=True)
    job = partial(_compute_one, args_d=vars(args))
    for line in ordered_map(job, read_graphs(args), worker_count()):
        print(line, flush=True)
    return EXIT_OK


def cmd_trace(args) -> int:
    for g in read_graphs(args):
        if args.rule in CLOSURES2:
            if args.dark or args.light or args.profile:
                raise InputError(f"{args.rule} is a two-color game; use --blue")
            start = Coloring2(parse_vertices(args.blue, g.n, "--blue"))
            res = CLOSURES2[args.rule](g, start, args.policy, args.seed)
            colors = {v: "blue" for v in iter_bits(start.blue)}
            shown = g
        elif args.rule in CLOSURES3:
            if args.blue or args.profile:
                raise InputError(f"{args.rule} is a three-color game; use --dark/--light")
            dark = parse_vertices(args.dark, g.n, "--dark")
            light = parse_vertices(args.light, g.n, "--light")
            if dark & light:
                raise InputError("dark and light sets overlap")
            res = CLOSURES3[args.rule](g, Coloring3(dark, light), args.policy, args.seed)
            colors = {v: "dark" for v in iter_bits(dark)}
            colors.update({v: "light" for v in iter_bits(light)})
            shown = g
        else:
            if not args.profile:
                raise InputError(f"{args.rule} needs --profile, e.g. AON@r=2")
            prof = ClusterProfile.parse(args.profile)
            if prof.n != g.n:
                raise InputError(f"profile has {prof.n} clusters but the graph has {g.n} vertices")
            shown, bmap = blowup(g, prof.r)
            closure = rfold_psd_closure if args.rule == "rfold_psd" else rfold_std_closure
            res = closure(shown, bmap, prof.to_blue(), args.policy, args.seed)
            colors = {v: "blue" for v in iter_bits(prof.to_blue())}
        if args.format == "dot":
            print(to_dot(shown, colors, res.chronicle), flush=True)
        else:
            print(res.to_json(), flush=True)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.atlas is not None:
        corpus = atlas(args.atlas, connected=args.connected)
    else:
        corpus = list(read_graphs(args))
    names = [s.strip() for s in args.identities.split(",")] if args.identities else None
    if names and set(names) - set(CHECKS):
        raise InputError(f"unknown identities: {', '.join(sorted(set(names) - set(CHECKS)))}")

    def sink(res):
        if args.format != "json":
            print(format_row(res, report_names), flush=True)

    report_names = names or list(CHECKS)
    report = verify_theorems(corpus, sink, names, limits_from(args), args.inject_fault, worker_count())
    if args.format == "json":
        print(report.to_json())
    else:
        print(f"graphs: {len(report.results)}  failures: {report.failures}  errors: {report.errors}")
        for name, counts in report.summary().items():
            print(f"  {name:<20} " + " ".join(f"{k}={v}" for k, v in counts.items()))
        print(f"  gap Zf+ + l*+ - Z+: {report.gap_distribution()}")
    if report.failures:
        return EXIT_FAIL
    if report.errors:
        return EXIT_CAPACITY
    return EXIT_OK


def cmd_strip(args) -> int:
    for g in read_graphs(args):
        trace = leaf_strip(g)
        d = trace.to_dict()
        d["skew_zero"] = trace.empty
        print(json.dumps(d), flush=True)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family:
        graphs = [generate(args.family)]
    elif args.atlas is not None:
        graphs = atlas(args.atlas, connected=args.connected)
    elif args.random:
        graphs = random_graphs(args.random, args.n_min, args.n_max, args.seed or 0, args.connected)
    else:
        raise InputError("gen needs --family, --atlas or --random")
    for g in graphs:
        print(graph6_encode(g))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="forcing-lab", description="Exact zero-forcing parameters of small graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def limits(sp):
        sp.add_argument("--limit-n", type=int, default=SolverLimits().max_n, help="max order for subset search")
        sp.add_argument("--limit-nr", type=int, default=SolverLimits().max_nr, help="max blowup order for brute force")
        sp.add_argument("--time-budget", type=float, default=None, help="seconds allowed per solver call")

    c = sub.add_parser("compute", help="compute a parameter with a witness")
    add_input_args(c)
    c.add_argument("--param", choices=PARAMS)
    c.add_argument("--r", type=int)
    c.add_argument("--method", choices=["auto", "aon", "amon", "brute"], default="auto")
    c.add_argument("--format", choices=["json", "csv", "dot"], default="json")
    c.add_argument("--timing", action="store_true", help="include elapsed_ms (output is then not byte-stable)")
    c.add_argument("--seed", type=int)
    limits(c)
    c.set_defaults(func=cmd_compute)

    t = sub.add_parser("trace", help="run one closure and print its chronicle")
    add_input_args(t)
    t.add_argument("--rule", choices=TRACE_RULES, required=True)
    t.add_argument("--blue", help="comma-separated blue vertices")
    t.add_argument("--dark", help="comma-separated dark vertices")
    t.add_argument("--light", help="comma-separated light vertices")
    t.add_argument("--profile", help="cluster profile for r-fold rules, e.g. AON@r=2")
    t.add_argument("--policy", choices=["round", "first", "random"], default="round")
    t.add_argument("--seed", type=int)
    t.add_argument("--format", choices=["json", "dot"], default="json")
    t.set_defaults(func=cmd_trace)

    v = sub.add_parser("verify", help="check the theorem identities over a corpus")
    add_input_args(v)
    v.add_argument("--atlas", type=int, metavar="MAX_N", help="use every graph with at most MAX_N (<= 7) vertices")
    v.add_argument("--connected", action="store_true")
    v.add_argument("--identities", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    v.add_argument("--inject-fault", action="store_true", help="perturb a value to self-test the harness")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.add_argument("--seed", type=int)
    limits(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("strip", help="leaf-strip each graph")
    add_input_args(s)
    s.set_defaults(func=cmd_strip)

    g = sub.add_parser("gen", help="emit graph6 words")
    g.add_argument("--family")
    g.add_argument("--atlas", type=int, metavar="MAX_N")
    g.add_argument("--connected", action="store_true")
    g.add_argument("--random", type=int, metavar="COUNT")
    g.add_argument("--n-min", type=int, default=4)
    g.add_argument("--n-max", type=int, default=8)
    g.add_argument("--seed", type=int)
    g.set_defaults(func=cmd_gen)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    try:
        code = run()
    except BrokenPipeError:
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
