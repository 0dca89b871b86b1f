"""Command-line front end.

Subcommands: solve, dompath, oracle, check, gen, bench.  Exit codes are
part of the contract: 0 when a path (or dominating path) is produced or a
certificate checks out, 2 when the answer is an obstruction witness or a
certificate fails verification, 1 for usage and input errors, 3 when an
exhaustive oracle refuses a graph above its size cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from . import dompath as dompath_mod
from . import graph as graph_mod
from . import oracles, patterns, solver


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here says 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _load_graph(args: argparse.Namespace) -> graph_mod.Graph:
    if getattr(args, "graph", None) is not None:
        text = Path(args.graph).read_text()
        return graph_mod.parse_edge_list(text)
    spec = oracles.GenSpec.from_json(json.loads(args.gen))
    return oracles.gen_random(spec)


def _solve_highlights(cert: solver.PathCert | solver.WitnessCert) -> list:
    if isinstance(cert, solver.PathCert):
        return [("path", cert.path)]
    w = cert.witness
    tails = [v for ext in w.extensions for v in ext[1:]]
    return [
        ("extremity", w.extremities),
        ("core", sorted(w.core.vertex_set())),
        ("extension", tails),
    ]


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise ValueError(f"--k must be >= 1, got {args.k}")
    g = _load_graph(args)
    trace = None
    if args.trace:
        trace = lambda obj: print(json.dumps(obj))
    cert = solver.solve(g, args.k, trace=trace)
    if args.dot:
        print(graph_mod.emit_dot(g, _solve_highlights(cert)))
    elif args.json:
        print(json.dumps(cert.to_json()))
    elif isinstance(cert, solver.PathCert):
        verts = " ".join(str(v) for v in cert.path)
        print(f"path with eccentricity {cert.eccentricity} < {cert.k}: {verts}")
    else:
        w = cert.witness
        ext = " ".join(str(v) for v in w.extremities)
        print(
            f"witness {w.cls} with extremities {ext}: "
            f"validated obstruction structure for k={cert.k}"
        )
    return 0 if isinstance(cert, solver.PathCert) else 2


def _cmd_dompath(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    start = None
    if args.start_path is not None:
        try:
            start = [int(tok) for tok in args.start_path.split(",") if tok != ""]
        except ValueError as exc:
            raise ValueError(f"--start-path must be comma-separated ints: {exc}")
    cert = dompath_mod.dominating_path(g, start)
    if args.dot:
        if isinstance(cert, dompath_mod.DomPathCert):
            highlights = [("path", cert.path)]
        else:
            highlights = [("pair", [v for p in cert.pairs for v in p])]
        print(graph_mod.emit_dot(g, highlights))
    elif args.json:
        print(json.dumps(cert.to_json()))
    elif isinstance(cert, dompath_mod.DomPathCert):
        print("dominating path: " + " ".join(str(v) for v in cert.path))
    else:
        pairs = " ".join(f"({a},{b})" for a, b in cert.pairs)
        print(f"three separated edges: {pairs}")
    return 0 if isinstance(cert, dompath_mod.DomPathCert) else 2


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    if args.which == "pe":
        ecc, path = oracles.brute_path_eccentricity(g)
        print(json.dumps({"eccentricity": ecc, "path": list(path)}))
    elif args.which == "c1p":
        ordering = oracles.brute_star_c1p(g)
        print(json.dumps({"ordering": None if ordering is None else list(ordering)}))
    elif args.which == "kat":
        if args.k is None or args.k < 1:
            raise ValueError("oracle kat needs --k >= 1")
        res = oracles.is_k_at_free(g, args.k)
        if res is True:
            print(json.dumps({"k": args.k, "free": True, "triple": None}))
        else:
            print(json.dumps({"k": args.k, "free": False, "triple": list(res)}))
    else:
        fam = patterns.FamilySpec.from_json(json.loads(args.pattern))
        pat = patterns.build_family(fam)
        emb = oracles.find_induced(g, pat)
        if emb is None:
            print(json.dumps({"found": False, "embedding": None}))
        else:
            print(
                json.dumps(
                    {"found": True, "embedding": {str(p): h for p, h in emb.items()}}
                )
            )
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    g = _load_graph(args)
    obj = json.loads(Path(args.cert).read_text())
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind in ("path", "witness"):
        ok, msg = solver.check_certificate(g, obj)
    elif kind in ("dom_path", "three_p2"):
        ok, msg = dompath_mod.check_dom_certificate(g, obj)
    else:
        raise ValueError(f"unknown certificate kind {kind!r}")
    print(msg)
    return 0 if ok else 2


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = oracles.GenSpec.from_json(json.loads(args.spec))
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    g = oracles.gen_random(spec)
    sys.stdout.write(graph_mod.write_edge_list(g))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.k < 1:
        raise ValueError(f"--k must be >= 1, got {args.k}")
    if args.trials < 1:
        raise ValueError(f"--trials must be >= 1, got {args.trials}")
    spec = oracles.GenSpec.from_json(json.loads(args.spec))
    base_seed = args.seed if args.seed is not None else spec.seed
    results = []
    total = 0.0
    for i in range(args.trials):
        g = oracles.gen_random(replace(spec, seed=base_seed + i))
        t0 = time.perf_counter()
        cert, stats = solver.solve_detailed(g, args.k)
        wall = time.perf_counter() - t0
        total += wall
        results.append(
            {
                "seed": base_seed + i,
                "n": g.n,
                "m": g.m,
                "wall_s": round(wall, 6),
                "outer_iterations": stats.outer_iterations,
                "peak_path_len": stats.peak_path_len,
                "outcome": "path" if isinstance(cert, solver.PathCert) else "witness",
            }
        )
    print(
        json.dumps(
            {
                "k": args.k,
                "trials": args.trials,
                "total_wall_s": round(total, 6),
                "results": results,
            }
        )
    )
    return 0


def _add_graph_source(p: _Parser, required: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--graph", metavar="FILE", help="edge-list file to read")
    group.add_argument(
        "--gen", metavar="JSON", help="inline generator spec instead of a file"
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="pathecc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser(
        "solve", help="find a path with eccentricity below k, or a witness"
    )
    p_solve.add_argument("--k", type=int, required=True, help="eccentricity bound")
    _add_graph_source(p_solve)
    fmt = p_solve.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print the certificate as JSON")
    fmt.add_argument("--dot", action="store_true", help="print annotated DOT")
    p_solve.add_argument(
        "--trace", action="store_true", help="one JSON line per outer iteration"
    )
    p_solve.set_defaults(func=_cmd_solve)

    p_dom = sub.add_parser("dompath", help="find a dominating path or a witness")
    _add_graph_source(p_dom)
    p_dom.add_argument(
        "--start-path", metavar="IDS", help="comma-separated starting path"
    )
    fmt = p_dom.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="print the certificate as JSON")
    fmt.add_argument("--dot", action="store_true", help="print annotated DOT")
    p_dom.set_defaults(func=_cmd_dompath)

    p_oracle = sub.add_parser("oracle", help="run an exhaustive reference computation")
    oracle_sub = p_oracle.add_subparsers(dest="which", required=True)
    for name, want_k, want_pattern in (
        ("pe", False, False),
        ("c1p", False, False),
        ("kat", True, False),
        ("induced", False, True),
    ):
        q = oracle_sub.add_parser(name)
        _add_graph_source(q)
        if want_k:
            q.add_argument("--k", type=int, required=True)
        if want_pattern:
            q.add_argument("--pattern", metavar="JSON", required=True)
        q.set_defaults(func=_cmd_oracle)

    p_check = sub.add_parser("check", help="re-verify a certificate file")
    _add_graph_source(p_check)
    p_check.add_argument("--cert", metavar="FILE", required=True)
    p_check.set_defaults(func=_cmd_check)

    p_gen = sub.add_parser("gen", help="emit a generated graph as an edge list")
    p_gen.add_argument("--spec", metavar="JSON", required=True)
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_bench = sub.add_parser("bench", help="time the solver over generated trials")
    p_bench.add_argument("--spec", metavar="JSON", required=True)
    p_bench.add_argument("--k", type=int, required=True)
    p_bench.add_argument("--trials", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except oracles.CapExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except graph_mod.EdgeListError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
