"""Command-line front end.

Subcommands mirror the five families plus generic verification, search, and
a one-shot reproduction run of the acceptance suite.  Every construction
pipes its result through the independent verifier before reporting success.

Exit codes: 0 success / cycle found; 10 proven non-existence (or a cycle
that fails verification); 11 parity refusal; 12 budget-bound inconclusive;
64 usage errors; 66 unreadable input; 70 internal error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import geometry, matchings, permutations, serialize, subsets, trees, triangulations
from .core import DomainError, LabeledFlipCycle, verify_rainbow
from .permutations import ParityRefusal
from .search import SearchBudget, SearchStatus, exhaustive_rainbow_search

EXIT_OK = 0
EXIT_NONE = 10
EXIT_PARITY = 11
EXIT_INCONCLUSIVE = 12
EXIT_USAGE = 64
EXIT_NOINPUT = 66
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(cycle: LabeledFlipCycle, args) -> int:
    report = verify_rainbow(cycle)
    if args.json:
        Path(args.json).write_text(serialize.dumps(cycle))
    if args.dot:
        Path(args.dot).write_text(serialize.to_dot(cycle))
    status = "verified" if report else "NOT RAINBOW"
    print(f"{cycle.family}: {cycle.r}-rainbow cycle of length {len(cycle)} [{status}]")
    for kind, detail in report.violations[:5]:
        print(f"  violation {kind}: {detail}")
    return EXIT_OK if report else EXIT_NONE


def _budget(args) -> SearchBudget:
    return SearchBudget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds)


def _search_exit(result, args) -> int:
    if result.status is SearchStatus.FOUND:
        return _emit(result.cycle, args)
    print(f"search: {result.status.value} after {result.nodes} nodes ({result.elapsed:.2f}s) {result.note}")
    return EXIT_NONE if result.status is SearchStatus.NONE else EXIT_INCONCLUSIVE


def _read_points(path: str) -> geometry.PointSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_NOINPUT)
    return geometry.canonical_label(geometry.parse_points(text))


def cmd_triang(args) -> int:
    if args.r == 1:
        return _emit(triangulations.rainbow1_cycle(args.n), args)
    return _emit(triangulations.rainbow2_cycle(args.n), args)


def cmd_trees(args) -> int:
    ps = _read_points(args.points)
    if args.action == "canon":
        sys.stdout.write(geometry.format_points(ps))
        return EXIT_OK
    return _emit(trees.rainbow_cycle(ps, args.r), args)


def cmd_match(args) -> int:
    if args.action == "rainbow":
        cyc = matchings.explicit_rainbows().get((args.m, args.r))
        if cyc is None:
            print(f"error: no known ({args.m},{args.r}) rainbow cycle", file=sys.stderr)
            return EXIT_USAGE
        return _emit(cyc, args)
    if args.action == "search":
        verdict = matchings.prove_no_rainbow1(args.m, budget=_budget(args))
        print(f"m={args.m}: {verdict.status}" + (f" ({verdict.note})" if verdict.note else ""))
        for s in verdict.component_stats:
            print(f"  component size {s['size']}: {s['status']} ({s['nodes']} nodes)")
        if verdict.status == "found":
            return _emit(verdict.cycle, args)
        if verdict.status == "parity-refused":
            return EXIT_PARITY
        return EXIT_NONE if verdict.status == "none" else EXIT_INCONCLUSIVE
    # hm: structure of the centered-flip subgraph
    _, comps = matchings.build_centered_subgraph(args.m)
    sizes = [len(c) for c in comps]
    print(f"H_{args.m}: {len(comps)} components over {sum(sizes)} matchings, sizes {sizes}")
    if args.components:
        for i, comp in enumerate(comps):
            arcs = sum(len(matchings._neighbors_centered(args.m, s)) for s in comp)
            kind = "tree" if arcs // 2 == len(comp) - 1 else "cyclic"
            print(f"  component {i}: {len(comp)} matchings, {arcs // 2} edges ({kind})")
    if args.classes:
        classes = matchings.partition_classes(args.m)
        for c, members in classes.items():
            print(f"  weight {c:+d}: {len(members)} matchings")
    if args.check_narayana:
        classes = matchings.partition_classes(args.m)
        ok = all(
            len(classes.get(c, ())) == matchings.class_size_formula(args.m, c)
            for c in range(-(args.m - 2), args.m - 1)
        )
        print(f"  class sizes match the Narayana expression: {ok}")
        if not ok:
            return EXIT_NONE
    return EXIT_OK


def cmd_perm(args) -> int:
    try:
        seq = permutations.rainbow_sequence(args.n)
    except ParityRefusal as exc:
        print(f"refused: {exc}")
        return EXIT_PARITY
    start = tuple(int(c) for c in args.start) if args.start else permutations.identity(args.n)
    return _emit(permutations.apply_sequence(start, seq), args)


def cmd_comb(args) -> int:
    if args.action == "rainbow":
        try:
            cyc = subsets.rainbow_cycle(args.n, args.k)
        except DomainError as exc:
            print(f"refused: {exc}")
            return EXIT_PARITY if args.n % 2 == 0 else EXIT_USAGE
        return _emit(cyc, args)
    if args.action == "enumerate":
        seqs = subsets.enumerate_rainbow_sequences(args.ell)
        print(f"l={args.ell}: {len(seqs)} rainbow sequences")
        for d in seqs:
            print(" ", list(d.entries))
        return EXIT_OK
    count, witness = subsets.max_edge_disjoint(args.ell)
    print(f"l={args.ell}: {count} pairwise edge-disjoint rainbow Hamilton cycles")
    if args.max:
        for d in witness:
            print(" ", list(d.entries))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    cycle = serialize.loads(text)
    report = verify_rainbow(cycle)
    print(
        f"{cycle.family} cycle, length {len(cycle)}, r={cycle.r}: "
        + ("rainbow" if report else "NOT rainbow")
    )
    for kind, detail in report.violations:
        print(f"  {kind}: {detail}")
    return EXIT_OK if report else EXIT_NONE


def cmd_search(args) -> int:
    if args.family == "triang":
        orc = triangulations.oracle(args.n)
        starts = [triangulations.star(args.n, 1)]
    elif args.family == "perm":
        orc = permutations.oracle(args.n)
        starts = [permutations.identity(args.n)]
    elif args.family == "comb":
        orc = subsets.oracle(args.n, args.k)
        starts = [tuple(range(1, args.k + 1))]
    elif args.family == "match":
        orc = matchings.oracle(args.m, centered_only=not args.all_flips)
        starts = list(matchings.enumerate_matchings(args.m))
    else:
        ps = _read_points(args.points)
        orc = trees.oracle(ps)
        starts = [trees.star_tree(ps, 1)]
    result = exhaustive_rainbow_search(orc, args.r, starts, budget=_budget(args))
    return _search_exit(result, args)


def cmd_repro(args) -> int:
    from . import acceptance

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for crit in acceptance.CRITERIA:
        t0 = time.monotonic()
        verdict = crit.run(seed=args.seed, budget_seconds=args.budget_seconds)
        elapsed = time.monotonic() - t0
        manifest = {
            "command": "repro",
            "criterion": crit.number,
            "title": crit.title,
            "parameters": verdict.parameters,
            "seed": args.seed,
            "budgets": {"seconds": args.budget_seconds, "nodes": args.budget_nodes},
            "verdicts": verdict.checks,
            "passed": verdict.passed,
            "timings": {"seconds": round(elapsed, 3)},
        }
        path = outdir / f"criterion{crit.number}.json"
        path.write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
        print(f"criterion {crit.number} [{'PASS' if verdict.passed else 'FAIL'}] {crit.title} ({elapsed:.1f}s)")
        all_ok = all_ok and verdict.passed
    return EXIT_OK if all_ok else EXIT_NONE


def _add_output_flags(p):
    p.add_argument("--json", metavar="FILE", help="write the cycle as JSON")
    p.add_argument("--dot", metavar="FILE", help="write the cycle as DOT")


def _add_budget_flags(p):
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)


def build_parser() -> _Parser:
    top = _Parser(prog="flipcycles", description=__doc__)
    top.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("triang", help="triangulations of a convex polygon")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("rainbow")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--r", type=int, choices=(1, 2), default=1)
    _add_output_flags(q)
    q.set_defaults(func=cmd_triang)

    p = sub.add_parser("trees", help="plane spanning trees on a point set")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("rainbow")
    q.add_argument("--points", required=True, metavar="FILE")
    q.add_argument("--r", type=int, required=True)
    _add_output_flags(q)
    q.set_defaults(func=cmd_trees)
    q = ps.add_parser("canon", help="echo the canonical labeling of a point file")
    q.add_argument("--points", required=True, metavar="FILE")
    q.set_defaults(func=cmd_trees)

    p = sub.add_parser("match", help="non-crossing perfect matchings")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("hm", help="structure of the centered-flip subgraph")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--components", action="store_true")
    q.add_argument("--classes", action="store_true")
    q.add_argument("--check-narayana", action="store_true")
    q.set_defaults(func=cmd_match)
    q = ps.add_parser("rainbow")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    _add_output_flags(q)
    q.set_defaults(func=cmd_match)
    q = ps.add_parser("search", help="exhaustive 1-rainbow existence per component")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--r", type=int, choices=(1,), default=1)
    _add_budget_flags(q)
    _add_output_flags(q)
    q.set_defaults(func=cmd_match)

    p = sub.add_parser("perm", help="permutations under transpositions")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("rainbow")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--start", help="start permutation, e.g. 1234")
    _add_output_flags(q)
    q.set_defaults(func=cmd_perm)

    p = sub.add_parser("comb", help="k-subsets under element exchange")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("rainbow")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    _add_output_flags(q)
    q.set_defaults(func=cmd_comb)
    q = ps.add_parser("enumerate")
    q.add_argument("--ell", type=int, required=True)
    q.set_defaults(func=cmd_comb)
    q = ps.add_parser("disjoint")
    q.add_argument("--ell", type=int, required=True)
    q.add_argument("--max", action="store_true", help="print the witness sequences")
    q.set_defaults(func=cmd_comb)

    p = sub.add_parser("verify", help="re-check a cycle JSON file independently")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="generic exhaustive rainbow search")
    p.add_argument("--family", required=True, choices=("triang", "trees", "match", "perm", "comb"))
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--points", metavar="FILE")
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--all-flips", action="store_true", help="matchings: do not restrict to centered flips")
    _add_budget_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("repro", help="run the acceptance suite, one manifest per criterion")
    p.add_argument("--out", default="repro-out", metavar="DIR")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_repro)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except ParityRefusal as exc:
        print(f"refused: {exc}")
        code = EXIT_PARITY
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_USAGE
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc!r}", file=sys.stderr)
        code = EXIT_INTERNAL
    return code


if __name__ == "__main__":
    sys.exit(main())
