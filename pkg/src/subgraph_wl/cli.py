"""Command-line front end.

Graph arguments are edge-list files or inline generator specs such as
``gen:csl:12:3``, ``gen:cycle:6`` or ``gen:2c3``.  Verdicts go to stdout,
diagnostics to stderr.  Exit codes: 0 ran (the verdict is the payload),
1 usage error, 2 parse error, 3 a reproduction check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path

from . import generators
from .bag_wl import Tester, corpus_classes
from .graph import Graph, ParseError, UsageError, format_edge_list, parse_edge_list
from .iso import MAX_ENUM_NODES, are_isomorphic, enumerate_graphs
from .sampling import SampleConfig, vote_test
from .wl import Verdict, wl_refine

SCHEMA = 1

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_CHECK_FAILED = 0, 1, 2, 3


@dataclass
class RunReport:
    tester: str
    graphs: list[str]
    verdict: str
    rounds: int
    wall_time: float
    trace_path: str | None = None
    votes: dict | None = None
    schema: int = SCHEMA

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ParseError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)


@dataclass
class MatrixReport:
    graphs: list[str]
    verdicts: dict[str, list[list[str]]] = field(default_factory=dict)
    schema: int = SCHEMA


def load_graph(arg: str) -> Graph:
    if arg.startswith("gen:"):
        return generators.from_spec(arg[len("gen:"):])
    try:
        text = Path(arg).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read graph file {arg!r}: {exc.strerror}") from None
    return parse_edge_list(text)


def expand_graph_args(args: list[str]) -> list[tuple[str, Graph]]:
    """Expand ``@listfile`` entries and comma-lists in the last generator parameter."""
    out: list[tuple[str, Graph]] = []
    for arg in args:
        if arg.startswith("@"):
            try:
                lines = Path(arg[1:]).read_text().split()
            except OSError as exc:
                raise UsageError(f"cannot read graph list {arg[1:]!r}: {exc.strerror}") from None
            out.extend(expand_graph_args(lines))
        elif arg.startswith("gen:") and "," in arg.rsplit(":", 1)[-1] and not arg.startswith("gen:cycles:"):
            head, last = arg.rsplit(":", 1)
            for value in last.split(","):
                name = f"{head}:{value}"
                out.append((name, load_graph(name)))
        else:
            out.append((arg, load_graph(arg)))
    return out


def _sample_config(ns: argparse.Namespace) -> SampleConfig | None:
    if ns.sample is None:
        return None
    return SampleConfig(ns.sample, ns.votes, ns.seed)


def _run(tester: Tester, g1: Graph, g2: Graph, ns: argparse.Namespace,
         trace: bool = False) -> tuple[Verdict, dict | None]:
    cfg = _sample_config(ns)
    if cfg is None:
        return tester.run(g1, g2, ns.max_rounds, trace), None
    res = vote_test(g1, g2, tester, cfg, ns.max_rounds)
    tally = {"distinguished": res.distinguished_votes, "votes": res.votes, "ratio": cfg.ratio, "seed": cfg.seed}
    return res.verdict, tally


def cmd_gen(ns: argparse.Namespace) -> int:
    spec = ":".join([ns.family, *ns.params])
    sys.stdout.write(format_edge_list(generators.from_spec(spec)))
    return EXIT_OK


def cmd_test(ns: argparse.Namespace) -> int:
    tester = Tester.parse(ns.tester)
    g1, g2 = load_graph(ns.graph1), load_graph(ns.graph2)
    start = time.perf_counter()
    verdict, tally = _run(tester, g1, g2, ns, trace=ns.trace is not None)
    elapsed = time.perf_counter() - start
    if ns.trace is not None:
        Path(ns.trace).write_text(json.dumps({"schema": SCHEMA, "tester": str(tester), "rounds": verdict.trace}, indent=2))
    report = RunReport(str(tester), [ns.graph1, ns.graph2], verdict.label, verdict.round,
                       round(elapsed, 6), ns.trace, tally)
    print(report.to_json() if ns.json else str(verdict))
    return EXIT_OK


def _pair_verdict(job: tuple[str, Graph, Graph, int | None]) -> Verdict:
    tester, g1, g2, max_rounds = job
    return Tester.parse(tester).run(g1, g2, max_rounds)


def cmd_matrix(ns: argparse.Namespace) -> int:
    named = expand_graph_args(ns.graphs)
    if len(named) < 2:
        raise UsageError("matrix needs at least two graphs")
    names = [n for n, _ in named]
    graphs = [g for _, g in named]
    testers = [str(Tester.parse(t)) for t in ns.testers.split(",")]
    pairs = [(i, j) for i in range(len(graphs)) for j in range(i, len(graphs))]
    jobs = [(t, graphs[i], graphs[j], ns.max_rounds) for t in testers for i, j in pairs]
    if ns.jobs > 1:
        with ProcessPoolExecutor(ns.jobs) as pool:
            results = list(pool.map(_pair_verdict, jobs, chunksize=8))
    else:
        results = [_pair_verdict(j) for j in jobs]
    report = MatrixReport(names)
    it = iter(results)
    for t in testers:
        grid = [[""] * len(graphs) for _ in graphs]
        for i, j in pairs:
            grid[i][j] = grid[j][i] = str(next(it))
        report.verdicts[t] = grid
    if ns.json:
        print(json.dumps(asdict(report), indent=2))
    else:
        print(format_matrix(report))
    return EXIT_OK


def format_matrix(report: MatrixReport) -> str:
    """Aligned text grid per tester: ``D@t`` distinguished, ``=@t`` possibly isomorphic."""
    lines = [f"[{i}] {name}" for i, name in enumerate(report.graphs)]
    for t, grid in report.verdicts.items():
        cells = [[c.replace("POSSIBLY_ISOMORPHIC", "=").replace("DISTINGUISHED", "D") for c in row] for row in grid]
        width = max(len(c) for row in cells for c in row) + 1
        lines.append(f"\n{t}")
        lines.append("    " + "".join(f"{j:>{width}}" for j in range(len(cells))))
        lines.extend(f"{i:>4}" + "".join(f"{c:>{width}}" for c in row) for i, row in enumerate(cells))
    return "\n".join(lines)


def _classes(job: tuple[int, str]) -> list[int]:
    n, tester = job
    return corpus_classes(list(enumerate_graphs(n)), tester)


def search(n: int, tester_a: str, tester_b: str, jobs: int = 1) -> list[tuple[Graph, Graph]]:
    """All pairs of non-isomorphic ``n``-node graphs that ``tester_a`` separates and ``tester_b`` does not."""
    if not 0 <= n <= MAX_ENUM_NODES:
        raise UsageError(f"search supports n <= {MAX_ENUM_NODES}, got {n}")
    graphs = list(enumerate_graphs(n))
    work = [(n, tester_a), (n, tester_b)]
    if jobs > 1:
        with ProcessPoolExecutor(min(jobs, 2)) as pool:
            ids_a, ids_b = pool.map(_classes, work)
    else:
        ids_a, ids_b = (_classes(w) for w in work)
    return [
        (graphs[i], graphs[j])
        for i, j in combinations(range(len(graphs)), 2)
        if ids_a[i] != ids_a[j] and ids_b[i] == ids_b[j]
    ]


def cmd_search(ns: argparse.Namespace) -> int:
    a, b = str(Tester.parse(ns.a)), str(Tester.parse(ns.b))
    found = search(ns.n, a, b, ns.jobs)
    if ns.json:
        payload = {
            "schema": SCHEMA, "n": ns.n, "a": a, "b": b,
            "pairs": [[sorted(g.edges), sorted(h.edges)] for g, h in found],
        }
        print(json.dumps(payload))
    else:
        print(f"# {len(found)} pair(s) on {ns.n} nodes separated by {a} but not by {b}")
        for g, h in found:
            print(f"{sorted(g.edges)} | {sorted(h.edges)}")
    return EXIT_OK


def cmd_trace(ns: argparse.Namespace) -> int:
    if ns.graph2 is None:
        hist = wl_refine(load_graph(ns.graph1), ns.max_rounds)
        payload = {
            "schema": SCHEMA,
            "tester": "wl",
            "converged_at": hist.converged_at,
            "rounds": [
                {"round": t, "colors": cols, "histogram": {str(c): k for c, k in sorted(_counts(cols).items())}}
                for t, cols in enumerate(hist.rounds)
            ],
        }
    else:
        tester = Tester.parse(ns.tester)
        verdict = tester.run(load_graph(ns.graph1), load_graph(ns.graph2), ns.max_rounds, trace=True)
        payload = {"schema": SCHEMA, "tester": str(tester), "verdict": str(verdict), "rounds": verdict.trace}
    text = json.dumps(payload, indent=2)
    if ns.out:
        Path(ns.out).write_text(text)
    else:
        print(text)
    return EXIT_OK


def _counts(values: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


def cmd_oracle(ns: argparse.Namespace) -> int:
    res = are_isomorphic(load_graph(ns.graph1), load_graph(ns.graph2))
    if ns.json:
        print(json.dumps({"schema": SCHEMA, "isomorphic": res.isomorphic,
                          "witness": None if res.witness is None else list(res.witness)}))
    elif res.isomorphic:
        print("ISOMORPHIC " + " ".join(map(str, res.witness)))
    else:
        print("NOT_ISOMORPHIC")
    return EXIT_OK


def cmd_reproduce(ns: argparse.Namespace) -> int:
    from .reproduce import CHECKS

    results = []
    for check in CHECKS:
        r = check()
        results.append(r)
        if not ns.json:
            print(r.line())
            if not r.passed or ns.verbose:
                print(f"    observed: {json.dumps(r.observed, default=str)}")
                print(f"    expected: {json.dumps(r.expected, default=str)}")
            for note in r.notes:
                print(f"    note: {note}")
    failed = sum(not r.passed for r in results)
    if ns.json:
        print(json.dumps({"schema": SCHEMA, "checks": [asdict(r) for r in results]}, indent=2, default=str))
    else:
        print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="subgraph-wl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--max-rounds", type=int, default=None)
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("gen", help="print a generated graph in edge-list format")
    sp.add_argument("family")
    sp.add_argument("params", nargs="*")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("test", help="run one pairwise test")
    sp.add_argument("graph1")
    sp.add_argument("graph2")
    sp.add_argument("--tester", default="wl")
    sp.add_argument("--trace", metavar="PATH", default=None)
    sp.add_argument("--sample", type=float, default=None, metavar="RATIO")
    sp.add_argument("--votes", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_test)

    sp = sub.add_parser("matrix", help="pairwise verdicts for a list of graphs")
    sp.add_argument("graphs", nargs="+")
    sp.add_argument("--testers", default="wl")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("search", help="find graphs tester A separates and tester B does not")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("trace", help="export per-round colorings as JSON")
    sp.add_argument("graph1")
    sp.add_argument("graph2", nargs="?")
    sp.add_argument("--tester", default="wl")
    sp.add_argument("--out", default=None)
    common(sp)
    sp.set_defaults(func=cmd_trace)

    sp = sub.add_parser("oracle", help="exact isomorphism check")
    sp.add_argument("graph1")
    sp.add_argument("graph2")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("reproduce", help="run every expressivity check")
    sp.add_argument("--verbose", "-v", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return ns.func(ns)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
