"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 malformed or inconsistent input,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .graph import GraphFormatError, graph_stats, load_graph
from .index import (
    IndexFormatError,
    LabelCollisionError,
    UnknownNonterminalError,
    build_index,
    load_index,
    save_index,
)
from .language import GrammarSyntaxError, RegexSyntaxError, grammar_to_rsm, parse_grammar, parse_regex, regex_to_rsm
from .paths import Budget, get_paths
from .queries import GRAMMARS, TEMPLATES, builtin_grammar, instantiate

log = logging.getLogger("kronpath")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
CSV_HEADER = ["graph", "query", "run_mean_s", "pairs"]

_INPUT_ERRORS = (
    GraphFormatError,
    GrammarSyntaxError,
    RegexSyntaxError,
    IndexFormatError,
    LabelCollisionError,
    UnknownNonterminalError,
    KeyError,
    OSError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror}") from e


def _load_rsm(args):
    if args.grammar is not None:
        g = builtin_grammar(args.grammar)
        return grammar_to_rsm(g.with_start(args.start) if args.start else g)
    if args.query is None:
        raise argparse.ArgumentTypeError("a query file or --grammar is required")
    text = _read(args.query)
    if args.regex:
        return regex_to_rsm(parse_regex(text), start=args.start or "S")
    return grammar_to_rsm(parse_grammar(text, start=args.start))


def cmd_index(args, out) -> int:
    g = load_graph(args.graph, add_inverse=args.add_inverse)
    rsm = _load_rsm(args)
    t0 = time.perf_counter()
    idx = build_index(rsm, g)
    elapsed = time.perf_counter() - t0
    if args.output:
        save_index(idx, args.output, include_closure=args.with_closure)
    print(f"n: {idx.n}", file=out)
    print(f"k: {idx.k}", file=out)
    print(f"iterations: {idx.iterations}", file=out)
    for nt, count in idx.pair_counts().items():
        print(f"{nt}: {count} pairs", file=out)
    log.info("index built in %.3f s", elapsed)
    return EXIT_OK


def cmd_reach(args, out) -> int:
    idx = load_index(args.index)
    names = idx.vertex_names
    for x, y in idx.pair_indices(args.nonterminal):
        print(f"{names[x]} {names[y]}", file=out)
    return EXIT_OK


def cmd_paths(args, out) -> int:
    idx = load_index(args.index)
    budget = Budget(args.max_word_len, args.max_paths, args.max_index_edges)
    for p in get_paths(idx, args.source, args.target, args.nonterminal, budget):
        print(p, file=out)
    return EXIT_OK


def cmd_stats(args, out) -> int:
    g = load_graph(args.graph, add_inverse=args.add_inverse)
    st = graph_stats(g)
    print(f"# vertices {st.n}", file=out)
    out.write(st.format())
    return EXIT_OK


_bench_graph = None


def _bench_init(path: str, add_inverse: bool) -> None:
    global _bench_graph
    _bench_graph = load_graph(path, add_inverse=add_inverse)


def _bench_one(task: tuple[str, int, object, int]) -> tuple[str, int, float, int]:
    name, q, regex, runs = task
    rsm = regex_to_rsm(regex)
    total = 0.0
    pairs = 0
    for _ in range(runs):
        t0 = time.perf_counter()
        idx = build_index(rsm, _bench_graph)
        total += time.perf_counter() - t0
        pairs = idx.graph_final[rsm.start_nonterminal].nnz
    return name, q, total / runs, pairs


def cmd_bench_rpq(args, out) -> int:
    if args.runs < 1 or args.per_template < 1:
        raise argparse.ArgumentTypeError("--runs and --per-template must be positive")
    names = list(TEMPLATES) if args.templates is None else args.templates.split(",")
    unknown = [n for n in names if n not in TEMPLATES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown templates: {', '.join(unknown)}")
    _bench_init(args.graph, args.add_inverse)
    ranked = graph_stats(_bench_graph).top_labels()
    tasks = []
    for name in names:
        t = TEMPLATES[name]
        if t.arity > len(ranked):
            print(
                f"warning: skipping {name}: needs {t.arity} labels, graph has {len(ranked)}",
                file=sys.stderr,
            )
            continue
        for q, regex in enumerate(instantiate(t, ranked, args.per_template)):
            tasks.append((name, q, regex, args.runs))

    if args.jobs > 1:
        with ProcessPoolExecutor(
            args.jobs, initializer=_bench_init, initargs=(args.graph, args.add_inverse)
        ) as pool:
            results = list(pool.map(_bench_one, tasks))
    else:
        results = [_bench_one(t) for t in tasks]

    graph_id = os.path.splitext(os.path.basename(args.graph))[0]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for name, q, mean, pairs in results:
        writer.writerow([graph_id, f"{name}#{q}", f"{mean:.6f}", pairs])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kronpath", description="Regular and context-free path queries.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ix = sub.add_parser("index", help="build a query index over a graph")
    ix.add_argument("graph", help="triple file")
    ix.add_argument("query", nargs="?", help="grammar file, or regex file with --regex")
    ix.add_argument("--grammar", choices=sorted(GRAMMARS), help="use a built-in grammar")
    ix.add_argument("--regex", action="store_true", help="query file holds a regex")
    ix.add_argument("--start", help="start nonterminal (default: first rule)")
    ix.add_argument("--add-inverse", action="store_true", help="add l_r inverse edges")
    ix.add_argument("-o", "--output", help="write the index to this file")
    ix.add_argument("--with-closure", action="store_true", help="store the closure too")
    ix.set_defaults(func=cmd_index)

    rc = sub.add_parser("reach", help="list vertex pairs for a nonterminal")
    rc.add_argument("index")
    rc.add_argument("nonterminal")
    rc.set_defaults(func=cmd_reach)

    pa = sub.add_parser("paths", help="enumerate witness paths")
    pa.add_argument("index")
    pa.add_argument("source")
    pa.add_argument("target")
    pa.add_argument("nonterminal")
    pa.add_argument("--max-word-len", type=int, default=8)
    pa.add_argument("--max-paths", type=int, default=100)
    pa.add_argument("--max-index-edges", type=int, default=64)
    pa.set_defaults(func=cmd_paths)

    be = sub.add_parser("bench-rpq", help="time RPQ templates over a graph (CSV)")
    be.add_argument("graph")
    be.add_argument("--templates", help="comma-separated names, e.g. Q1,Q4^2 (default: all)")
    be.add_argument("--per-template", type=int, default=10)
    be.add_argument("--runs", type=int, default=5)
    be.add_argument("--add-inverse", action="store_true")
    be.add_argument("--jobs", type=int, default=1)
    be.add_argument("-o", "--output", help="CSV file (default: stdout)")
    be.set_defaults(func=cmd_bench_rpq)

    st = sub.add_parser("stats", help="vertex count and label frequencies")
    st.add_argument("graph")
    st.add_argument("--add-inverse", action="store_true")
    st.set_defaults(func=cmd_stats)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    out = out if out is not None else sys.stdout
    try:
        if getattr(args, "output", None) and args.func is cmd_bench_rpq:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                return args.func(args, fh)
        return args.func(args, out)
    except argparse.ArgumentTypeError as e:
        print(f"kronpath: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except _INPUT_ERRORS as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"kronpath: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"kronpath: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        print(f"kronpath: internal error: {e!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
