"""Command-line front end: ``lgk recognize | kernelize | solve | gen | bench``.

Every run prints one JSON object on stdout and a one-line summary on
stderr.  Exit codes: 0 completed, 1 ``solve`` answered NO, 2 bad input or a
resource guard tripped.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .generators import GenerationError, GenSpec, SplitMix64, planted_instance
from .graph import MalformedInputError, read_edge_list, write_edge_list
from .kernel import kernelize
from .patterns import find_forbidden_subgraph, match_pattern
from .recognition import recognize, root_graph
from .solver import InstanceTooLargeError, solve_branching, solve_bruteforce

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2

STAGES = ("recognize", "modulator", "witness", "levels", "rr1", "rr2", "rr3")
BENCH_COLUMNS = (
    ["instance", "root_n", "p", "r", "seed", "n", "m", "k", "verdict", "s_size", "packed",
     "levels", "kernel_n", "kernel_m", "bound"]
    + [f"ms_{s}" for s in STAGES]
)


class UsageError(ValueError):
    pass


def _emit(report: dict, summary: str) -> None:
    print(json.dumps(report), flush=True)
    print(summary, file=sys.stderr)


def _ms_since(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000.0, 3)


# --- subcommands ---------------------------------------------------------------

def cmd_recognize(args) -> int:
    t0 = time.perf_counter()
    g = read_edge_list(args.input)
    ms = {"read": _ms_since(t0)}
    t0 = time.perf_counter()
    w = recognize(g)
    ms["recognize"] = _ms_since(t0)
    result: dict = {"verdict": "line" if w is not None else "not-line", "n": g.n, "m": g.m}
    if w is None:
        found = find_forbidden_subgraph(g)
        result["forbidden"] = list(found)
        result["pattern"] = match_pattern(g.adjacency, found)
        summary = f"not a line graph: vertices {list(found)} induce pattern {result['pattern']}"
    else:
        result["cliques"] = len(w)
        if args.emit_witness:
            Path(args.emit_witness).write_text(w.to_json() + "\n", encoding="utf-8")
        if args.emit_root:
            root = root_graph(g, w)
            write_edge_list(root.graph, args.emit_root, comment="root graph; one vertex per witness clique")
            result["root_ends"] = [list(e) for e in root.ends]
        summary = f"line graph: witness with {len(w)} cliques"
    _emit({"subcommand": "recognize", "input": str(args.input), "ms": ms, "result": result}, summary)
    return EXIT_OK


def cmd_kernelize(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    g = read_edge_list(args.input)
    out = kernelize(g, args.k)
    if args.out:
        kg, kk = out.as_instance()
        write_edge_list(kg, args.out, comment=f"kernel verdict={out.verdict} k={kk}")
        Path(args.out).with_suffix(".json").write_text(out.to_json() + "\n", encoding="utf-8")
    stats = out.stats
    _emit(
        {"subcommand": "kernelize", "input": str(args.input), "ms": stats.get("ms", {}), "result": stats},
        f"verdict {out.verdict}: n={g.n} -> {stats.get('kernel_n', '-')} (bound {stats.get('bound', '-')})",
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    g = read_edge_list(args.input)
    t0 = time.perf_counter()
    solver = solve_bruteforce if args.oracle == "brute" else solve_branching
    sol = solver(g, args.k)
    ms = {"solve": _ms_since(t0)}
    if sol is None:
        result = {"verdict": "no", "k": args.k}
        summary = f"NO: more than {args.k} deletions needed"
    else:
        result = {
            "verdict": "yes",
            "k": args.k,
            "deleted": [list(e) for e in sol.deleted],
            "certificate": [list(c) for c in sol.certificate.cliques],
        }
        summary = f"YES: delete {len(sol)} edge(s) {list(sol.deleted)}"
    _emit({"subcommand": "solve", "input": str(args.input), "oracle": args.oracle, "ms": ms, "result": result},
          summary)
    return EXIT_NO if sol is None else EXIT_OK


def cmd_gen(args) -> int:
    spec = GenSpec(args.n, args.p, args.r, args.seed)
    t0 = time.perf_counter()
    g, _ = planted_instance(spec)
    ms = {"generate": _ms_since(t0)}
    out = Path(args.out)
    write_edge_list(g, out, comment=f"planted instance {spec.to_json()}")
    sidecar = out.with_suffix(".json") if out.suffix != ".json" else out.with_name(out.name + ".spec.json")
    sidecar.write_text(spec.to_json() + "\n", encoding="utf-8")
    _emit({"subcommand": "gen", "spec": json.loads(spec.to_json()), "ms": ms,
           "result": {"n": g.n, "m": g.m, "out": str(out), "sidecar": str(sidecar)}},
          f"wrote {g.n} vertices, {g.m} edges to {out}")
    return EXIT_OK


# --- bench ---------------------------------------------------------------------

def _parse_values(key: str, text: str) -> list:
    cast = float if key == "p" else int
    vals: list = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part and key != "p":
            lo, hi = part.split("..", 1)
            vals.extend(range(int(lo), int(hi) + 1))
        else:
            vals.append(cast(part))
    return vals


def parse_suite(text: str) -> dict[str, list]:
    """Sweep over ``n``, ``p``, ``r`` and ``k``.

    Either a path to a JSON object of lists, or ``key=values`` pairs joined
    by ``;`` where values are comma lists and integer ranges ``a..b``, e.g.
    ``n=20,40;p=0.1;r=1..3;k=1..5``.  Missing keys default to
    ``n=20, p=0.2, r=1, k=r``.  Any empty list makes the sweep empty.
    """
    path = Path(text)
    if text.endswith(".json") and path.is_file():
        raw = json.loads(path.read_text(encoding="utf-8"))
        suite = {key: list(v) if isinstance(v, list) else [v] for key, v in raw.items()}
    else:
        suite = {}
        for item in filter(None, (s.strip() for s in text.split(";"))):
            if "=" not in item:
                raise UsageError(f"bad suite item {item!r}; expected key=values")
            key, vals = (x.strip() for x in item.split("=", 1))
            try:
                suite[key] = _parse_values(key, vals)
            except ValueError as exc:
                raise UsageError(f"bad values for {key!r}: {vals!r}") from exc
    unknown = set(suite) - {"n", "p", "r", "k"}
    if unknown:
        raise UsageError(f"unknown suite keys {sorted(unknown)}")
    suite.setdefault("n", [20])
    suite.setdefault("p", [0.2])
    suite.setdefault("r", [1])
    return suite


def bench_jobs(suite: dict[str, list], seed: int) -> list[tuple]:
    """Instances in sweep order; each draws its own seed from one SplitMix64 stream."""
    rng = SplitMix64(seed)
    jobs = []
    ks = suite.get("k")
    for n, p, r in itertools.product(suite["n"], suite["p"], suite["r"]):
        for k in (ks if ks is not None else [r]):
            jobs.append((len(jobs), n, p, r, k, rng.next_u64()))
    return jobs


def bench_row(job: tuple) -> dict:
    idx, n, p, r, k, seed = job
    g, _ = planted_instance(GenSpec(n, p, r, seed))
    out = kernelize(g, k)
    st = out.stats
    row = {
        "instance": idx, "root_n": n, "p": p, "r": r, "seed": seed, "n": g.n, "m": g.m, "k": k,
        "verdict": out.verdict, "s_size": st.get("s_size", ""), "packed": st.get("packed", ""),
        "levels": ";".join(map(str, st.get("levels", []))),
        "kernel_n": st.get("kernel_n", ""), "kernel_m": st.get("kernel_m", ""), "bound": st.get("bound", ""),
    }
    for s in STAGES:
        row[f"ms_{s}"] = st.get("ms", {}).get(s, "")
    return row


def _threads() -> int:
    raw = os.environ.get("LGK_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise UsageError(f"LGK_THREADS must be an integer, got {raw!r}") from exc


def cmd_bench(args) -> int:
    suite = parse_suite(args.suite)
    jobs = bench_jobs(suite, args.seed)
    workers = min(_threads(), max(1, len(jobs)))
    t0 = time.perf_counter()
    if workers == 1:
        rows = [bench_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(bench_row, jobs))
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    over = [r["instance"] for r in rows if r["kernel_n"] != "" and r["kernel_n"] > r["bound"]]
    _emit({"subcommand": "bench", "spec": suite, "seed": args.seed, "ms": {"total": _ms_since(t0)},
           "result": {"rows": len(rows), "csv": str(args.csv), "over_bound": over, "workers": workers}},
          f"{len(rows)} instance(s) -> {args.csv}")
    return EXIT_OK


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lgk", description="Line-graph edge deletion toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide whether a graph is a line graph")
    p.add_argument("--input", required=True)
    p.add_argument("--emit-witness", metavar="PATH")
    p.add_argument("--emit-root", metavar="PATH")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("kernelize", help="reduce an instance to a small kernel")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", metavar="PATH", help="kernel edge list; stats go to the .json sibling")
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("solve", help="exact decision with a deletion certificate")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle", choices=("brute", "branch"), default="branch")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a planted instance and its JSON sidecar")
    p.add_argument("--n", type=int, required=True, help="root vertex count")
    p.add_argument("--p", type=float, required=True, help="root edge probability")
    p.add_argument("--r", type=int, default=0, help="noise edges to plant")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="kernelize a sweep of planted instances into a CSV")
    p.add_argument("--suite", required=True, help="e.g. 'n=20,40;p=0.1;r=1..3;k=1..5' or a JSON file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInputError, GenerationError, InstanceTooLargeError, UsageError, OSError) as exc:
        _emit({"subcommand": args.command, "error": str(exc)}, f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
