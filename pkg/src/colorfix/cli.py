"""Command-line front end.

Exit codes: 0 success, 2 parse or usage error, 3 infeasible instance,
4 size guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from pathlib import Path

from . import bench, generators, io_formats, reductions
from .errors import ColorFixError, InfeasibleError, MalformedInputError, SizeGuardError
from .fixing import fixing_number, hard_family, star_graph, worst_star_coloring, worst_tree_coloring
from .graph import Coloring, FixInstance, FixResult, Graph, Status
from .solve import SOLVERS, TW_THRESHOLD, choose_solver, solve

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_GUARD = 0, 2, 3, 4


class UsageError(ColorFixError):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def normalize_palette(phi: Coloring, r: int, n: int) -> tuple[Coloring, int, dict[int, int]]:
    """Shrink the palette to ``n + 1`` colors by swapping high colors into unused low ones.

    Returns the translated coloring, the new palette size and the swap map
    (an involution) that translates a witness back.
    """
    cap = n + 1
    if r <= cap:
        return phi, r, {}
    used = set(phi.colors)
    free = iter(c for c in range(1, cap + 1) if c not in used)
    swap: dict[int, int] = {}
    for c in sorted(used):
        if c > cap:
            low = next(free)
            swap[c], swap[low] = low, c
    colors = tuple(swap.get(c, c) for c in phi.colors)
    return Coloring(colors, cap), cap, swap


# solve


def cmd_solve(args) -> int:
    inst = io_formats.read_instance(_read(args.graph), _read(args.coloring), args.r)
    graph, phi, r, lists = inst.graph, inst.coloring, inst.r, inst.lists
    td = io_formats.parse_tree_decomposition(_read(args.td), graph) if args.td else None

    swap: dict[int, int] = {}
    if lists is None and r > graph.n + 1:
        _warn(f"palette size {r} exceeds n + 1 = {graph.n + 1}; using {graph.n + 1}")
        phi, r, swap = normalize_palette(phi, r, graph.n)
    if lists is None and r == 1:
        solver = "trivial"
    elif args.solver == "auto":
        solver, td = choose_solver(graph, phi, r, lists, td, args.tw_threshold)
    else:
        solver = args.solver

    start = time.perf_counter()
    if solver == "trivial":
        # One color: proper iff there are no edges, and nothing can be recolored.
        if graph.m == 0:
            result = FixResult(Status.OPTIMAL, 0, phi, "trivial")
        else:
            result = FixResult.infeasible("trivial")
    else:
        result = solve(graph, phi, r, lists, solver=solver, td=td, force=args.force)
    elapsed = time.perf_counter() - start
    print(f"time: {elapsed:.6f}s", file=sys.stderr)

    witness = None
    if result.optimal:
        witness = [swap.get(c, c) for c in result.witness.colors]
    budget_ok = None
    if inst.k is not None and result.optimal:
        budget_ok = result.k_star <= inst.k

    if args.json:
        payload = {
            "status": result.status.value,
            "k_star": result.k_star,
            "solver": result.solver,
            "r": r,
        }
        if inst.k is not None:
            payload["budget"] = inst.k
            payload["within_budget"] = bool(budget_ok)
        if args.witness and witness is not None:
            payload["witness"] = witness
        print(json.dumps(payload, sort_keys=True))
    if not result.optimal:
        reason = "no proper list coloring exists" if lists is not None else "r < χ(G)"
        if not args.json:
            print(f"infeasible: {reason}")
        print(f"infeasible: {reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if not args.json:
        print(f"k*={result.k_star}")
        print(f"solver={result.solver}")
        if inst.k is not None:
            print(f"budget={inst.k} answer={'yes' if budget_ok else 'no'}")
        if args.witness:
            print("witness=" + " ".join(map(str, witness)))
    return EXIT_OK


# fixnum


def cmd_fixnum(args) -> int:
    graph = io_formats.parse_graph(_read(args.graph))
    start = time.perf_counter()
    rep = fixing_number(graph, args.r, force=args.force)
    print(f"time: {time.perf_counter() - start:.6f}s", file=sys.stderr)
    if args.json:
        payload = {
            "phi": rep.phi,
            "phi_r": rep.phi_r,
            "r": rep.r,
            "chi": rep.chi,
            "upper": rep.upper,
            "lower": rep.lower,
            "worst_coloring": list(rep.worst_coloring.colors),
            "solver": rep.solver,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"Φ={rep.phi}")
        print(f"Φ_r={rep.phi_r} r={rep.r}")
        print(f"χ={rep.chi}")
        print(f"upper={rep.upper}")
        print(f"lower={'n/a' if rep.lower is None else rep.lower}")
        print("worst=" + " ".join(map(str, rep.worst_coloring.colors)))
        print(f"solver={rep.solver}")
    return EXIT_OK


# gen


def _split_params(tokens: list[str]) -> tuple[list[str], dict[str, str]]:
    pos, kw = [], {}
    for t in tokens:
        if "=" in t:
            key, value = t.split("=", 1)
            kw[key] = value
        else:
            pos.append(t)
    return pos, kw


def _need(pos: list[str], count: int, usage: str) -> None:
    if len(pos) != count:
        raise UsageError(f"usage: gen {usage}")


def _as_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def _as_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None


def _pattern(name: str, k: int) -> Graph:
    if name == "complete":
        return Graph(k, [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)])
    if name == "path":
        return Graph(k, [(i, i + 1) for i in range(1, k)])
    if name == "cycle":
        if k < 3:
            return _pattern("path", k)
        return Graph(k, [(i, i % k + 1) for i in range(1, k + 1)])
    raise UsageError(f"unknown pattern {name!r}; choose complete, path or cycle")


def _parse_precolor(text: str) -> dict[int, int]:
    out = {}
    for item in filter(None, text.split(",")):
        try:
            v, c = item.split(":")
            out[int(v)] = int(c)
        except ValueError:
            raise UsageError(f"precoloring entries look like 3:1, got {item!r}") from None
    return out


def generate(family: str, params: list[str]) -> FixInstance:
    pos, kw = _split_params(params)
    rng = random.Random(_as_int(kw.get("seed", "0")))
    if family == "hard":
        _need(pos, 2, "hard <m> <r>")
        m, r = map(_as_int, pos)
        g, phi = hard_family(m, r)
        return FixInstance(g, phi, r, m * (r - 1))
    if family == "star-worst":
        _need(pos, 1, "star-worst <leaves>")
        k = _as_int(pos[0])
        return FixInstance(star_graph(k), worst_star_coloring(k), 2)
    if family == "tree-worst":
        _need(pos, 1, "tree-worst <n> [seed=S]")
        tree = generators.random_tree(_as_int(pos[0]), rng)
        return FixInstance(tree, worst_tree_coloring(tree), 2)
    if family == "random":
        _need(pos, 2, "random <n> <p> [seed=S] [r=R]")
        n, p = _as_int(pos[0]), _as_float(pos[1])
        r = _as_int(kw.get("r", "3"))
        g = generators.random_graph(n, p, rng)
        return FixInstance(g, generators.random_coloring(n, r, rng), r)
    if family == "vc":
        _need(pos, 2, "vc <graph-file> <k>")
        return reductions.vc_to_fix(io_formats.parse_graph(_read(pos[0])), _as_int(pos[1]))
    if family == "preext":
        _need(pos, 2, "preext <graph-file> <r> [pre=v:c,v:c]")
        g = io_formats.parse_graph(_read(pos[0]))
        inst = reductions.PrExtInstance(g, _parse_precolor(kw.get("pre", "")))
        return reductions.preext_to_fix(inst, _as_int(pos[1]))
    if family == "msi":
        _need(pos, 3, "msi <k> <part-size> <p> [pattern=complete|path|cycle] [seed=S] [lower=1]")
        k, size, p = _as_int(pos[0]), _as_int(pos[1]), _as_float(pos[2])
        inst = generators.random_msi(k, size, p, _pattern(kw.get("pattern", "complete"), k), rng)
        listed = reductions.msi_to_listfix(inst)
        return reductions.listfix_to_fix(listed) if kw.get("lower") == "1" else listed
    if family == "crosscompose":
        _need(pos, 2, "crosscompose <count> <n> [p=P] [seed=S]")
        count, n = _as_int(pos[0]), _as_int(pos[1])
        p = _as_float(kw.get("p", "0.5"))
        insts = [generators.random_preext(n, p, rng) for _ in range(count)]
        return reductions.cross_compose(insts)
    raise UsageError(
        f"unknown family {family!r}; choose hard, vc, preext, msi, crosscompose, random, "
        "tree-worst or star-worst"
    )


def cmd_gen(args) -> int:
    inst = generate(args.family, args.params)
    graph_text, col_text = io_formats.write_instance(inst)
    if args.out == "-":
        sys.stdout.write(graph_text)
        sys.stdout.write(col_text)
        return EXIT_OK
    graph_path, col_path = Path(f"{args.out}.graph"), Path(f"{args.out}.col")
    graph_path.write_text(graph_text, encoding="utf-8")
    col_path.write_text(col_text, encoding="utf-8")
    if args.json:
        print(json.dumps({"graph": str(graph_path), "coloring": str(col_path), "n": inst.graph.n,
                          "m": inst.graph.m, "r": inst.r, "k": inst.k}, sort_keys=True))
    else:
        print(f"wrote {graph_path} {col_path} (n={inst.graph.n}, m={inst.graph.m}, r={inst.r})")
    return EXIT_OK


# bench


def cmd_bench(args) -> int:
    suite = bench.SUITES.get(args.suite)
    if suite is None:
        raise UsageError(f"unknown suite {args.suite!r}; choose {', '.join(bench.SUITES)}")
    rows = suite(seed=args.seed)
    if args.json:
        print(json.dumps(rows))
        return EXIT_OK
    writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--force", action="store_true", help="ignore size guards")
    common.add_argument("--threads", type=int, default=1, help="parallelism cap (work is single-threaded)")

    parser = argparse.ArgumentParser(prog="colorfix", description="Minimum recoloring to a proper coloring.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve one instance")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("-r", type=int, default=None, help="palette size (default: from the coloring file)")
    p.add_argument("--solver", choices=SOLVERS, default="auto")
    p.add_argument("--td", help="tree decomposition file for the treewidth solver")
    p.add_argument("--tw-threshold", type=int, default=TW_THRESHOLD)
    p.add_argument("--witness", action="store_true", help="print the recolored coloring")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("fixnum", parents=[common], help="fixing number of a graph")
    p.add_argument("graph")
    p.add_argument("-r", type=int, default=None)
    p.set_defaults(func=cmd_fixnum)

    p = sub.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("family")
    p.add_argument("params", nargs="*", help="positional parameters and key=value options")
    p.add_argument("-o", "--out", default="instance", help="output prefix, or - for stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark suite, CSV to stdout")
    p.add_argument("suite")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except InfeasibleError as exc:
        print(f"infeasible: r < χ(G) ({exc})", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (MalformedInputError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
