"""Command-line interface.

Subcommands: catalog list|show, check, word, gr, verify, depth, scan,
closure. The environment variable SYNCHROLAB_CAP overrides the default
closure cap. verify exits 0 on pass, 1 when a counterexample was found and
2 when the budget ran out (inconclusive).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .catalog import build_catalog, catalog_by_name
from .experiments import THEOREMS, Budget, verify_theorem
from .groups import PermutationGroup, load_group_file
from .reports import report_emit
from .semigroups import (
    DEFAULT_CLOSURE_CAP,
    depth as depth_of,
    group_and_map_closure,
    regular_partition_witnesses,
)
from .sweeps import instances_of_type, kernel_types_of_rank
from .sync import cerny_bound, synchronizes
from .transformations import (
    KernelType,
    format_cycles,
    format_transformation,
    parse_transformation,
)


def _default_cap() -> int:
    value = os.environ.get("SYNCHROLAB_CAP")
    if value:
        return int(value)
    return DEFAULT_CLOSURE_CAP


def _load_group(spec: str) -> tuple[str, PermutationGroup]:
    """A group file path, or a catalog entry name such as S5 or grid-3."""
    path = Path(spec)
    if path.exists():
        name, group = load_group_file(path)
        return name or path.stem, group
    table = catalog_by_name(64)
    if spec in table:
        return spec, table[spec].group
    raise SystemExit(
        f"error: {spec!r} is neither a readable file nor a catalog entry name"
    )


def _add_instance_args(p: argparse.ArgumentParser):
    p.add_argument("--group", required=True, help="group file or catalog name")
    p.add_argument("--map", required=True, help="map as [i1,...,in] (1-based) or cycles")


def cmd_catalog(args) -> int:
    if args.action == "list":
        for entry in build_catalog(args.max_degree):
            exp = entry.expected
            print(
                f"{entry.name:<12} degree {entry.degree:<3} "
                f"order {exp.order:<12} "
                f"{'primitive' if exp.primitive else 'imprimitive'}"
            )
        return 0
    entry = catalog_by_name(64).get(args.name)
    if entry is None:
        raise SystemExit(f"error: no catalog entry named {args.name!r}")
    g = entry.group
    print(f"name:        {entry.name}")
    print(f"degree:      {entry.degree}")
    print(f"description: {entry.description}")
    print(f"order:       {g.order()}")
    print(f"transitive:  {g.is_transitive()}")
    print(f"primitive:   {g.is_primitive()}")
    print(f"2-transitive:{g.is_2_transitive()}")
    print(f"pair orbits: {len(g.pair_orbits())}")
    for gen in g.generators:
        print(f"generator:   {format_cycles(gen)}")
    return 0


def cmd_check(args) -> int:
    name, group = _load_group(args.group)
    f = parse_transformation(args.map, degree=group.degree)
    verdict = synchronizes(group, f)
    word_len = len(verdict.witness_word) if verdict.witness_word else None
    print(
        f"{name}: {'synchronizes' if verdict.synchronizes else 'does NOT synchronize'} "
        f"{format_transformation(f)}"
    )
    if verdict.note:
        print(f"note: {verdict.note}")
    if verdict.synchronizes and args.word:
        print("word: " + " ".join(verdict.witness_word))
    if not verdict.synchronizes:
        print(
            f"obstruction graph: {verdict.obstruction.edge_count} edges, "
            f"min rank {verdict.min_rank_bound}"
        )
    if args.emit_dot:
        Path(args.emit_dot).write_text(verdict.obstruction.to_dot())
    record = {
        "group": name,
        "map": format_transformation(f),
        "verdict": verdict.synchronizes,
        "min_rank": verdict.min_rank_bound,
        "word_length": word_len,
        "timings": None,
        "note": verdict.note or "",
    }
    print(json.dumps(record, separators=(",", ":")))
    return 0


def cmd_word(args) -> int:
    name, group = _load_group(args.group)
    f = parse_transformation(args.map, degree=group.degree)
    verdict = synchronizes(group, f)
    if not verdict.synchronizes:
        print(f"{name} does not synchronize {format_transformation(f)}")
        return 1
    word = verdict.witness_word
    bound = cerny_bound(group.degree)
    print(" ".join(word))
    flag = "  (exceeds the (n-1)^2 benchmark!)" if len(word) > bound else ""
    print(f"length {len(word)}, benchmark (n-1)^2 = {bound}{flag}", file=sys.stderr)
    return 0


def cmd_gr(args) -> int:
    name, group = _load_group(args.group)
    f = parse_transformation(args.map, degree=group.degree)
    graph = synchronizes(group, f).obstruction
    text = graph.to_adjacency_text() if args.adjacency else graph.to_dot()
    if args.emit_dot:
        Path(args.emit_dot).write_text(text)
        print(f"wrote {args.emit_dot}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    budget = Budget(seconds=args.budget_seconds, max_instances=args.max_instances)
    report = verify_theorem(
        args.id, max_degree=args.max_degree, budget=budget, cap=_default_cap()
    )
    sys.stdout.write(report_emit(report, args.format, include_timings=args.timings))
    return {"pass": 0, "fail": 1, "inconclusive": 2}[report.status]


def cmd_depth(args) -> int:
    name, group = _load_group(args.group)
    witnesses = regular_partition_witnesses(group, allow_nonuniform=args.allow_nonuniform)
    if not witnesses:
        print(f"{name}: no nontrivial stable-section partition sizes; depth = inf")
        return 0
    sizes = [w.size for w in witnesses]
    d = depth_of(group, allow_nonuniform=args.allow_nonuniform)
    print(f"{name}: sizes {sizes}, depth = {d if d is not None else 'inf'}")
    for w in witnesses:
        section = ",".join(str(x + 1) for x in w.section)
        print(f"  size {w.size}: partition {w.partition} section {{{section}}}")
    return 0


def cmd_scan(args) -> int:
    entries = build_catalog(args.max_degree)
    if args.degree:
        entries = [e for e in entries if e.degree == args.degree]
    wanted_type = KernelType.parse(args.kernel_type) if args.kernel_type else None
    for entry in entries:
        n = entry.degree
        if wanted_type is not None:
            if wanted_type.degree != n:
                continue
            types = [wanted_type]
        elif args.rank:
            if args.rank >= n:
                continue
            types = kernel_types_of_rank(n, args.rank)
        else:
            types = kernel_types_of_rank(n, n - 1)
        for kt in types:
            for inst in instances_of_type(entry.group, kt):
                f = inst.transformation()
                verdict = synchronizes(entry.group, f)
                record = {
                    "group": entry.name,
                    "map": format_transformation(f),
                    "verdict": verdict.synchronizes,
                    "min_rank": verdict.min_rank_bound,
                    "word_length": (
                        len(verdict.witness_word) if verdict.witness_word else None
                    ),
                    "timings": None,
                    "note": "",
                }
                print(json.dumps(record, separators=(",", ":")))
    return 0


def cmd_closure(args) -> int:
    cap = _default_cap() if args.cap is None else args.cap
    name, group = _load_group(args.group)
    f = parse_transformation(args.map, degree=group.degree)
    c = group_and_map_closure(group, f, cap=cap)
    text = c.dump()
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(c)} elements to {args.out}" + (" (truncated)" if c.truncated else ""))
    else:
        sys.stdout.write(text)
        if c.truncated:
            print("warning: closure truncated at cap", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synchrolab",
        description="synchronization checker for permutation groups plus a map",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or inspect the built-in groups")
    catsub = p.add_subparsers(dest="action", required=True)
    pl = catsub.add_parser("list")
    pl.add_argument("--max-degree", type=int, default=12)
    pl.set_defaults(func=cmd_catalog, action="list")
    ps = catsub.add_parser("show")
    ps.add_argument("name")
    ps.set_defaults(func=cmd_catalog, action="show")

    p = sub.add_parser("check", help="decide synchronization of one instance")
    _add_instance_args(p)
    p.add_argument("--emit-dot", metavar="PATH", help="write the obstruction graph as DOT")
    p.add_argument("--word", action="store_true", help="print a synchronizing word")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("word", help="print a synchronizing word")
    _add_instance_args(p)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("gr", help="print or save the obstruction graph")
    _add_instance_args(p)
    p.add_argument("--emit-dot", metavar="PATH")
    p.add_argument("--adjacency", action="store_true", help="0/1 matrix instead of DOT")
    p.set_defaults(func=cmd_gr)

    p = sub.add_parser("verify", help="run one theorem experiment")
    p.add_argument("id", choices=sorted(THEOREMS))
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--budget-seconds", type=float, default=1800.0)
    p.add_argument("--max-instances", type=int, default=None)
    p.add_argument("--format", choices=["table", "jsonl"], default="table")
    p.add_argument("--timings", action="store_true", help="include wall time (non-canonical)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("depth", help="stable-section partition sizes and depth")
    p.add_argument("--group", required=True)
    p.add_argument("--allow-nonuniform", action="store_true")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("scan", help="free sweep with filters, jsonl output")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--kernel-type", default=None, help="e.g. '3,2,1,1'")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("closure", help="dump the semigroup closure, one map per line")
    _add_instance_args(p)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_closure)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
