"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size guard
exceeded.  Data goes to stdout, diagnostics to stderr; identical invocations
with identical seeds produce identical output.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys

from . import affine_flag, verify
from .core import (
    DEFAULT_MAX_SIZE,
    GuardExceeded,
    Params,
    _enumerate_from_prefix,
    enumerate_length_tuples,
    lengths_to_jug,
    lengths_to_perm,
    perm_length,
)
from .moment_graph import build_graph, graph_to_dot, graph_to_json
from .order import poincare_polynomial, poincare_str

ENUMERATION_SCHEMA = "quivergrass/enumeration/1"
EMBEDDING_SCHEMA = "quivergrass/flag-embedding/1"

EXIT_VERIFY_FAILED = 1
EXIT_GUARD = 3


def _add_params(sub, omega_default=1):
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--omega", type=int, default=omega_default)
    sub.add_argument(
        "--max-size",
        type=int,
        default=DEFAULT_MAX_SIZE,
        help="override the n*omega enumeration guard (default %(default)s)",
    )


def _usage_error(message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(2)


def _params(args) -> Params:
    try:
        return Params(args.k, args.n, args.omega)
    except ValueError as exc:
        _usage_error(f"invalid parameters: {exc}")


def _parallel_tuples(p: Params, max_size: int, workers: int = 4):
    """Enumerate by first coordinate in a process pool; merge is a sort."""
    p.check_guard(max_size)
    chunks = []
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_enumerate_from_prefix, p, (l1,)) for l1 in range(p.nw + 1)]
        for fut in futures:
            chunks.extend(fut.result())
    return sorted(chunks)


def cmd_enumerate(args) -> int:
    p = _params(args)
    tuples = (
        _parallel_tuples(p, args.max_size)
        if args.parallel
        else enumerate_length_tuples(p, args.max_size)
    )
    items = []
    for ell in tuples:
        item = {"tuple": list(ell)}
        if args.kind in ("patterns", "all"):
            item["pattern"] = [list(s) for s in lengths_to_jug(p, ell)]
        if args.kind in ("perms", "all"):
            window = lengths_to_perm(p, ell)
            item["window"] = list(window)
            item["length"] = perm_length(window)
        items.append(item)
    if args.format == "json":
        doc = {
            "schema": ENUMERATION_SCHEMA,
            "k": p.k,
            "n": p.n,
            "omega": p.omega,
            "count": len(items),
            "items": items,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for item in items:
            cols = [",".join(map(str, item["tuple"]))]
            if "pattern" in item:
                cols.append("|".join(" ".join(map(str, s)) for s in item["pattern"]))
            if "window" in item:
                cols.append(",".join(map(str, item["window"])))
                cols.append(str(item["length"]))
            print(";".join(cols))
    return 0


def cmd_poincare(args) -> int:
    p = _params(args)
    print(poincare_str(poincare_polynomial(p, args.max_size)))
    return 0


def cmd_moment_graph(args) -> int:
    p = _params(args)
    g = build_graph(p, args.max_size)
    sys.stdout.write(graph_to_dot(g) if args.format == "dot" else graph_to_json(g))
    return 0


def cmd_embed(args) -> int:
    p = _params(args)
    tuples = enumerate_length_tuples(p, args.max_size)
    if args.tuple:
        try:
            wanted = tuple(int(x) for x in args.tuple.split(","))
        except ValueError:
            _usage_error(f"--tuple expects comma-separated integers, got {args.tuple!r}")
        if wanted not in tuples:
            _usage_error(f"{wanted} is not a fixed-point tuple of these parameters")
        tuples = [wanted]
    items = []
    for ell in tuples:
        jug = lengths_to_jug(p, ell)
        fp = affine_flag.embed_fixed_point(p, jug)
        weyl = affine_flag.sato_weyl(fp)
        items.append(
            {
                "tuple": list(ell),
                "pattern": [list(s) for s in jug],
                "bounded_window": list(lengths_to_perm(p, ell)),
                "weyl_window": list(weyl),
                "length": perm_length(weyl),
                "spaces": [
                    {
                        "charge": i,
                        "threshold": s.threshold,
                        "extras": sorted(s.extras),
                    }
                    for i, s in enumerate(fp.points)
                ],
            }
        )
    doc = {
        "schema": EMBEDDING_SCHEMA,
        "k": p.k,
        "n": p.n,
        "omega": p.omega,
        "items": items,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    p = _params(args)
    results = verify.run_suites(
        args.suite, p, seed=args.seed, samples=args.samples, max_size=args.max_size
    )
    failed = 0
    for r in results:
        print(r)
        failed += not r.ok
    if failed:
        print(f"{failed} of {len(results)} checks failed", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return 0


def cmd_flatness(args) -> int:
    from . import flatness

    print(f"rank = {flatness.degree111_rank()}")
    print("basis monomials: " + " ".join(flatness.monomial_name(m) for m in flatness.basis_monomials()))
    if args.table:
        sys.stdout.write(flatness.evaluation_table_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quivergrass",
        description="cyclic-quiver Grassmannian combinatorics toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", help="fixed points as tuples/patterns/permutations")
    _add_params(s)
    s.add_argument("--kind", choices=["tuples", "patterns", "perms", "all"], default="all")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--parallel", action="store_true", help="partition enumeration across processes")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("poincare", help="cell-count polynomial")
    _add_params(s)
    s.set_defaults(func=cmd_poincare)

    s = sub.add_parser("moment-graph", help="export the moment graph")
    _add_params(s)
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.set_defaults(func=cmd_moment_graph)

    s = sub.add_parser("embed", help="fixed points inside the affine flag variety")
    _add_params(s)
    s.add_argument("--tuple", help="single length tuple, comma separated (default: all)")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("verify", help="run verification suites")
    _add_params(s)
    s.add_argument(
        "--suite",
        action="append",
        default=None,
        choices=list(verify.SUITES) + ["all"],
        help="suite to run (repeatable; default all)",
    )
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=50)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("flatness", help="rank of the multilinear coordinate-ring slice")
    s.add_argument("--table", action="store_true", help="print the 27-row evaluation table as CSV")
    s.set_defaults(func=cmd_flatness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "suite", None) is None and args.command == "verify":
        args.suite = ["all"]
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
