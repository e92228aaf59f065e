"""Command line entry point.

    domstruct gamma FILE
    domstruct analyze FILE [--dot DIR]
    domstruct verify [CONFIG] [--out PATH]
    domstruct generate (--named NAME ... | --random COUNT) [--out DIR]

Exit codes: 0 success, 1 usage error, 2 I/O or input-format error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .domination import OracleRefused, StructureMethodFailed, brute_force_gamma, greedy_gamma, structure_gamma
from .graph import GraphFormatError, generate_named, is_3_connected, load_graph, save_edgelist
from .harness import (
    CampaignConfig,
    Settings,
    analyze,
    build_corpus,
    load_config,
    run_campaign,
    write_reports,
)
from .structure import to_dot
from .x3assign import min_label_assignment

EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_settings(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("budgets and semantics")
    g.add_argument("--max-cycle-len", type=int, default=None)
    g.add_argument("--max-cycles", type=int, default=None)
    g.add_argument("--max-structures", type=int, default=None)
    g.add_argument("--max-families", type=int, default=None)
    g.add_argument("--oracle-limit", type=int, default=None)
    g.add_argument("--allow-vertex-seam", action="store_true", default=None,
                   help="a single shared vertex also counts as a seamless connection")
    g.add_argument("--loose-pattern", action="store_true", default=None,
                   help="only require labels at every third position, allow extras")


_SETTING_ARGS = ("max_cycle_len", "max_cycles", "max_structures", "max_families",
                 "oracle_limit", "allow_vertex_seam", "loose_pattern")


def _settings(args, base: Settings = Settings()) -> Settings:
    overrides = {k: getattr(args, k) for k in _SETTING_ARGS if getattr(args, k, None) is not None}
    try:
        return dataclasses.replace(base, **overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_graph(path: str, fmt: str):
    return load_graph(Path(path).read_text(), fmt)


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gamma(args) -> int:
    g = _read_graph(args.file, args.format)
    limit = args.oracle_limit if args.oracle_limit is not None else 30
    res = {"n": g.n, "m": g.m}
    try:
        o = brute_force_gamma(g, limit)
        res["oracle"] = {"gamma": o.gamma, "witness": list(o.witness)}
    except OracleRefused as exc:
        res["oracle"] = {"refused": str(exc)}
    gr = greedy_gamma(g)
    res["greedy"] = {"gamma": gr.gamma, "witness": list(gr.witness)}
    _emit(res, args.out)
    return 0


def cmd_analyze(args) -> int:
    g = _read_graph(args.file, args.format)
    settings = _settings(args)
    a = analyze(g, settings)
    structures = []
    for i, s in enumerate(a.structures):
        asg = min_label_assignment(s, settings.loose_pattern)
        structures.append({
            "id": i,
            "cycles": len(s.cycles),
            "d_sg": [list(c.vertices) for c in s.d_sg],
            "vertices": list(s.vertices),
            "assignment": json.loads(asg.to_json(i)),
        })
        if args.dot:
            Path(args.dot).mkdir(parents=True, exist_ok=True)
            Path(args.dot, f"structure_{i:03d}.dot").write_text(
                to_dot(s, asg.labels, name=f"structure_{i}")
            )
    try:
        sg = structure_gamma(g, a.families, candidates=a.candidates)
        structure = {"gamma": sg.gamma, "witness": list(sg.witness)}
    except StructureMethodFailed as exc:
        structure = {"failed": str(exc)}
    out = {
        "n": g.n,
        "m": g.m,
        "is_3_connected": is_3_connected(g),
        "cg_size": len(a.cycles),
        "cg_truncated": a.cycles_truncated,
        "structures": structures,
        "structures_truncated": a.structures_truncated,
        "families": [list(f.member_ids) for f in a.families],
        "families_truncated": a.families_truncated,
        "structure_gamma": structure,
    }
    _emit(out, args.out)
    return 0


def cmd_verify(args) -> int:
    try:
        cfg = load_config(args.config) if args.config else CampaignConfig()
    except (ValueError, TypeError) as exc:
        if isinstance(exc, json.JSONDecodeError):
            raise
        raise UsageError(f"invalid config: {exc}") from None
    changes = {"settings": _settings(args, cfg.settings)}
    for name in ("seed", "random_count", "n_min", "n_max", "jobs", "out"):
        if getattr(args, name, None) is not None:
            changes[name] = getattr(args, name)
    if args.timings:
        changes["include_timings"] = True
    try:
        cfg = dataclasses.replace(cfg, **changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports, summary = run_campaign(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            write_reports(reports, summary, fh, cfg.include_timings)
    else:
        write_reports(reports, summary, sys.stdout, cfg.include_timings)
    return 0


def cmd_generate(args) -> int:
    graphs = []
    if args.named:
        for name in args.named:
            try:
                graphs.append((name, generate_named(name)))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    if args.random is not None:
        try:
            cfg = CampaignConfig(named=(), random_count=args.random, n_min=args.n_min,
                                 n_max=args.n_max, seed=args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        graphs.extend((gid, g) for gid, _, g in build_corpus(cfg))
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        for gid, g in graphs:
            safe = gid.replace("(", "_").replace(")", "")
            Path(args.out, f"{safe}.txt").write_text(save_edgelist(g))
    else:
        for gid, g in graphs:
            sys.stdout.write(f"# {gid}\n{save_edgelist(g)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="domstruct", description="Domination structures in 3-connected graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gamma", help="exact and greedy domination number")
    g.add_argument("file")
    g.add_argument("--format", default="auto", choices=["auto", "edgelist", "pairs", "graph6"])
    g.add_argument("--oracle-limit", type=int, default=None)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gamma)

    a = sub.add_parser("analyze", help="structures, families, assignments")
    a.add_argument("file")
    a.add_argument("--format", default="auto", choices=["auto", "edgelist", "pairs", "graph6"])
    a.add_argument("--dot", metavar="DIR", help="write one Graphviz file per structure")
    a.add_argument("--out")
    _add_settings(a)
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run a verification campaign, JSON Lines output")
    v.add_argument("config", nargs="?", help="JSON campaign config; default corpus if omitted")
    v.add_argument("--out")
    v.add_argument("--seed", type=int)
    v.add_argument("--count", dest="random_count", type=int)
    v.add_argument("--n-min", type=int)
    v.add_argument("--n-max", type=int)
    v.add_argument("--jobs", type=int)
    v.add_argument("--timings", action="store_true", help="include per-stage runtimes (not deterministic)")
    _add_settings(v)
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="emit corpus graphs as edge lists")
    grp = gen.add_mutually_exclusive_group(required=True)
    grp.add_argument("--named", nargs="+", metavar="NAME")
    grp.add_argument("--random", type=int, metavar="COUNT")
    gen.add_argument("--n-min", type=int, default=6)
    gen.add_argument("--n-max", type=int, default=14)
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--out", metavar="DIR")
    gen.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"domstruct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, GraphFormatError, json.JSONDecodeError) as exc:
        print(f"domstruct: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
