"""Command-line interface: ``oddktree <command> ...``.

Exit codes: 0 success or feasible, 1 negative result (not a k-tree,
infeasible, verification failure), 2 usage or input error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

from . import formats
from .errors import GraphInputError, InternalInvariantError, NotKTreeError, NotProperError, TooSmallError
from .graph import Coloring, Graph, detect_k, good_addition_ordering, recognize_ktree, verify_odd
from .ktree_color import color_ktree, ktree_palette
from .oracle import (
    BUDGET_EXCEEDED,
    INFEASIBLE,
    GenSpec,
    ProbeEntry,
    ProbeReport,
    SearchConfig,
    enumerate_small_ktrees,
    exists_odd_coloring,
    graph6,
    odd_chromatic_exact,
    probe_conjecture,
    random_ktree,
)
from .threetree import color_3tree
from .twotree import color_2tree

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def oracle_budget(k: int) -> int:
    """Palette handed to the exact search for k with no dedicated construction."""
    if k == 1:
        return 3
    return min(2 * k + 1, ktree_palette(k))


def route(k: int) -> str:
    if k == 2:
        return "twotree"
    if k == 3:
        return "threetree"
    if k >= 7:
        return "ktree_color"
    return "oracle"


def color_graph(g: Graph, k: int, palette: int | None = None, node_budget: int | None = None, trace=None):
    """Coloring from the routed method, or INFEASIBLE / BUDGET_EXCEEDED from the oracle."""
    method = "oracle" if palette is not None else route(k)
    if method == "twotree":
        return color_2tree(g, trace=trace)
    if method == "threetree":
        return color_3tree(g, trace=trace)
    if method == "ktree_color":
        return color_ktree(g, k, trace=trace)
    budget = palette if palette is not None else oracle_budget(k)
    return exists_odd_coloring(g, budget, SearchConfig(max_colors=budget, node_budget=node_budget))


def _load_graph(path: str) -> Graph:
    return formats.parse_graph(formats.read_text(path))


def _resolve_k(g: Graph, k: int | None) -> int:
    return detect_k(g) if k is None else k


def cmd_recognize(a) -> int:
    g = _load_graph(a.input)
    try:
        k = _resolve_k(g, a.k)
        ao = recognize_ktree(g, k)
    except (NotKTreeError, TooSmallError) as exc:
        print(f"NOT-K-TREE: {exc}")
        return EXIT_NEGATIVE
    formats.write_text(a.output, f"K-TREE k={k}\n" + formats.format_ordering(ao))
    return EXIT_OK


def cmd_order(a) -> int:
    g = _load_graph(a.input)
    try:
        k = _resolve_k(g, a.k)
        ao = good_addition_ordering(g, k)
    except (NotKTreeError, TooSmallError) as exc:
        print(f"NOT-K-TREE: {exc}")
        return EXIT_NEGATIVE
    formats.write_text(a.output, formats.format_ordering(ao))
    return EXIT_OK


def cmd_color(a) -> int:
    g = _load_graph(a.input)
    try:
        k = _resolve_k(g, a.k)
        recognize_ktree(g, k)
    except (NotKTreeError, TooSmallError) as exc:
        print(f"NOT-K-TREE: {exc}")
        return EXIT_NEGATIVE
    trace: list | None = [] if a.trace else None
    res = color_graph(g, k, a.palette, a.node_budget, trace)
    if res is INFEASIBLE or res is BUDGET_EXCEEDED:
        print(res.value.upper(), file=sys.stderr)
        return EXIT_NEGATIVE
    report = formats.report_to_dict(g, res, verify_odd(g, res))
    formats.write_text(a.output, formats.format_coloring(res))
    print(json.dumps(report, sort_keys=True), file=sys.stderr)
    if a.trace:
        formats.write_text(a.trace, json.dumps([fr.to_dict() for fr in trace], indent=1) + "\n")
    if not report["ok"]:
        raise InternalInvariantError("constructed coloring failed verification")
    return EXIT_OK


def cmd_verify(a) -> int:
    g = _load_graph(a.graph)
    c = formats.parse_coloring(formats.read_text(a.coloring), g.n)
    try:
        report = formats.report_to_dict(g, c, verify_odd(g, c))
    except NotProperError:
        report = formats.report_to_dict(g, c, None)
    if a.palette is not None and max(c.colors, default=0) > a.palette:
        report["ok"] = False
        report["palette_exceeded"] = a.palette
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK if report["ok"] else EXIT_NEGATIVE


def cmd_oracle(a) -> int:
    g = _load_graph(a.input)
    res = odd_chromatic_exact(g, SearchConfig(max_colors=a.max_colors, node_budget=a.node_budget))
    if res.exact:
        print(f"chi_o={res.value}")
        if a.output:
            formats.write_text(a.output, formats.format_coloring(res.witness))
        return EXIT_OK
    if res.upper is None and res.lower > a.max_colors:
        print(f"INFEASIBLE with at most {a.max_colors} colors")
        return EXIT_NEGATIVE
    print(f"UNRESOLVED: chi_o in [{res.lower}, {res.upper if res.upper is not None else '?'}]")
    return EXIT_NEGATIVE


def cmd_random(a) -> int:
    g, _ = random_ktree(GenSpec(a.n, a.k, seed=a.seed, attachment_bias=a.bias))
    formats.write_text(a.output, formats.format_graph(g))
    return EXIT_OK


def cmd_enumerate(a) -> int:
    chunks = []
    for g in enumerate_small_ktrees(a.n, a.k):
        chunks.append(graph6(g) + "\n" if a.format == "graph6" else formats.format_graph(g) + "\n")
    formats.write_text(a.output, "".join(chunks))
    return EXIT_OK


def _probe_one(args) -> dict:
    k, n, trials, budget, seed = args
    rep = probe_conjecture(k, n, trials, SearchConfig(max_colors=k + 2, node_budget=budget), seed=seed, n_min=n)
    return {"entries": [asdict(e) for e in rep.entries], "seconds": rep.seconds, "mode": rep.mode}


def cmd_probe(a) -> int:
    jobs = [(a.k, n, a.trials, a.node_budget, a.seed) for n in range(a.k + 1, a.n_max + 1)]
    report = ProbeReport(a.k, a.k + 2, "exhaustive" if a.trials is None else "sampled")
    t0 = time.perf_counter()
    parts = _map(_probe_one, jobs, a.workers)
    for p in parts:
        report.entries.extend(ProbeEntry(**e) for e in p["entries"])
    report.seconds = time.perf_counter() - t0
    print(report.summary())
    for e in report.counterexamples:
        print(f"COUNTEREXAMPLE n={e.n} graph6={e.graph6}")
    if a.output:
        formats.write_text(a.output, report.to_json() + "\n")
    return EXIT_OK


def _bench_one(args) -> str:
    k, n, seed = args
    g, _ = random_ktree(GenSpec(n, k, seed=seed))
    t0 = time.perf_counter()
    res = color_graph(g, k)
    dt = time.perf_counter() - t0
    if not isinstance(res, Coloring):
        return f"{k}\t{n}\t{seed}\t{route(k)}\t-\t-\t{dt:.4f}\t{res.value}"
    ok = verify_odd(g, res).ok
    return f"{k}\t{n}\t{seed}\t{route(k)}\t{res.palette}\t{res.used}\t{dt:.4f}\t{'ok' if ok else 'FAIL'}"


def cmd_bench(a) -> int:
    jobs = [(k, n, a.seed + i) for k in a.k_list for n in a.n_list for i in range(a.count)]
    rows = ["k\tn\tseed\tmethod\tpalette\tused\tseconds\tstatus"] + _map(_bench_one, jobs, a.workers)
    formats.write_text(a.output, "\n".join(rows) + "\n")
    return EXIT_OK if all(not r.endswith("FAIL") for r in rows) else EXIT_NEGATIVE


def _map(fn, jobs, workers: int):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, jobs))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddktree", description="Odd colorings of k-trees.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", nargs="?", default="-", help="graph file, or '-' for stdin")
        sp.add_argument("-o", "--output", default=None)
        return sp

    sp = graph_cmd("recognize", "certify a k-tree with an addition ordering")
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_recognize)

    sp = graph_cmd("order", "good addition ordering (first vertex has degree k)")
    sp.add_argument("--k", type=int)
    sp.set_defaults(func=cmd_order)

    sp = graph_cmd("color", "odd coloring routed by k, verified before output")
    sp.add_argument("--k", type=int, help="detected from the minimum degree if omitted")
    sp.add_argument("--palette", type=int, help="force the exact search with this many colors")
    sp.add_argument("--node-budget", type=int)
    sp.add_argument("--trace", metavar="PATH", help="write reduction frames as JSON")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("verify", help="check a coloring for properness and the odd condition")
    sp.add_argument("graph")
    sp.add_argument("coloring")
    sp.add_argument("--palette", type=int, help="also require every color to be at most this")
    sp.set_defaults(func=cmd_verify)

    sp = graph_cmd("oracle", "exact odd chromatic number")
    sp.add_argument("--max-colors", type=int, default=12)
    sp.add_argument("--node-budget", type=int)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("random", help="random k-tree")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bias", type=float, default=0.5, help="attachment bias in [0, 1]")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_random)

    sp = sub.add_parser("enumerate", help="all k-trees on n vertices up to isomorphism")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--format", choices=("graph6", "text"), default="graph6")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("probe", help="search for k-trees with no odd (k+2)-coloring")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--trials", type=int, help="random instances per order; exhaustive if omitted")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--node-budget", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output", default=None, help="JSON report path")
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("bench", help="palette sizes and timings as a tab-separated table")
    sp.add_argument("--k-list", type=_int_list, default=[2, 3, 7])
    sp.add_argument("--n-list", type=_int_list, default=[50, 100])
    sp.add_argument("--count", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_bench)
    return p


def _validate(a) -> None:
    for name in ("k", "n", "n_max", "count", "max_colors", "palette", "node_budget", "trials"):
        val = getattr(a, name, None)
        if val is not None and val < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    if getattr(a, "workers", 1) < 1:
        raise UsageError("--workers must be positive")
    if a.command == "random":
        if a.n < a.k + 1:
            raise UsageError(f"--n must be at least k+1 = {a.k + 1}")
        if not 0.0 <= a.bias <= 1.0:
            raise UsageError("--bias must lie in [0, 1]")
    if a.command == "probe" and a.n_max < a.k + 1:
        raise UsageError(f"--n-max must be at least k+1 = {a.k + 1}")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        _validate(a)
        return a.func(a)
    except UsageError as exc:
        print(f"oddktree {a.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphInputError, OSError) as exc:
        print(f"oddktree {a.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"oddktree {a.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
