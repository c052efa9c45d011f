"""Command-line surface.

One subcommand per library pipeline; every command is a pure function of
its arguments and input files, and every randomized command requires an
explicit --seed (there are no wall-clock defaults anywhere).  Exit codes:
0 success, 1 domain error (bad construction parameters, overflow, caps),
2 usage error.

Set files use the ground-set line format (one decimal element per line,
optional tab-separated factor list, # headers); pass '-' to read stdin.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .energy import Mode, combined_set, energy_report
from .groundset import (
    ConstructionError,
    GroundSet,
    format_lines,
    parse_lines,
)
from .lowenergy import odd_power_audit, t_exact, t_random_search
from .productgraph import (
    c4free_capacity,
    cs_chain_audit,
    find_c4,
    graph_from_pq,
    parse_graph,
)
from .report import emit_report
from .scaling import CONSTRUCTIONS, METRICS, conjecture_audit, random_subset_experiment, run_scaling
from .sidon import deletion_sidon, greedy_sidon, max_sidon_subset, sidon_check


def _read_set(path: str) -> GroundSet:
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return parse_lines(text)


def _read_graph(args) -> "ProductGraph":
    if args.graph_file:
        text = sys.stdin.read() if args.graph_file == "-" else open(args.graph_file, encoding="utf-8").read()
        return parse_graph(text)
    return graph_from_pq(_read_set(args.set_file))


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _parse_budget(text: str) -> int:
    if "^" in text:
        base, _, exp = text.partition("^")
        return int(base) ** int(exp)
    if "e" in text.lower():
        return int(float(text))
    return int(text)


def _parse_params(text: str) -> list[int]:
    if ":" in text:
        parts = [int(v) for v in text.split(":")]
        lo, hi = parts[0], parts[1]
        step = parts[2] if len(parts) > 2 else 1
        return list(range(lo, hi + 1, step))
    return [int(v) for v in text.split(",") if v]


def _add_set_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--set-file", required=True, help="ground-set file in line format, or - for stdin")


def _add_mode_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", required=True, choices=["additive", "multiplicative"])


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sidonlab",
        description="Sidon statistics, energies, and product-graph experiments on integer sets",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    subparsers = top.add_subparsers(dest="command", required=True)

    class _Sub:
        def add_parser(self, name, help):
            return subparsers.add_parser(name, help=help, parents=[common])

    sub = _Sub()
    p = sub.add_parser("construct", help="build a ground set and print it in line format")
    p.add_argument("family", choices=sorted(CONSTRUCTIONS), help="pq: products of primes p<=n<q<=n^2/ln n; "
                   "triple: three-prime products; oddpow: odd-times-power union of progressions; interval: {1..n}")
    p.add_argument("--n", type=int, required=True, help="construction parameter")

    p = sub.add_parser("energy", help="exact additive/multiplicative energies and combined-set sizes")
    _add_set_arg(p)
    p.add_argument("--format", default="json", choices=["json", "csv"])

    p = sub.add_parser("combine", help="print the sumset or productset in line format")
    _add_set_arg(p)
    _add_mode_arg(p)

    p = sub.add_parser("sidon-check", help="Sidon verdict with a violating quadruple on failure")
    _add_set_arg(p)
    _add_mode_arg(p)

    p = sub.add_parser("sidon-max", help="largest Sidon subset by branch and bound")
    _add_set_arg(p)
    _add_mode_arg(p)
    p.add_argument("--budget", type=_parse_budget, default="10^6", help="node budget, e.g. 10^7")

    p = sub.add_parser("sidon-greedy", help="greedy ascending-scan Sidon subset")
    _add_set_arg(p)
    _add_mode_arg(p)

    p = sub.add_parser("sidon-delete", help="probabilistic extraction: p-random sample then delete violators")
    _add_set_arg(p)
    _add_mode_arg(p)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("c4", help="find a 4-cycle in a bipartite product graph")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph-file", help="graph file (P:/Q: headers plus edges), or -")
    g.add_argument("--set-file", help="two-prime-labelled ground set, or -")

    p = sub.add_parser("capacity", help="edge capacity of a C4-free bipartite graph: largest e with e^2 <= |Q|(e+|P|^2)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set-file", help="two-prime-labelled ground set, or -")
    g.add_argument("--size-p", type=int, help="left class size (requires --size-q)")
    p.add_argument("--size-q", type=int, default=None, help="right class size")

    p = sub.add_parser("cs-audit", help="evaluate the Cauchy-Schwarz edge-count chain on a concrete graph")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--graph-file")
    g.add_argument("--set-file")

    p = sub.add_parser("t-exact", help="largest subset with energy < 2 m^2, certified exhaustively")
    _add_set_arg(p)
    _add_mode_arg(p)
    p.add_argument("--size-cap", type=int, default=None)

    p = sub.add_parser("t-search", help="randomized search for a large low-energy subset")
    _add_set_arg(p)
    _add_mode_arg(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("oddpow-audit", help="audit the odd-times-power construction: productset bound, progression shapes, energy chains")
    p.add_argument("--n", type=int, required=True, help="number of progressions N")
    p.add_argument("--coeff", type=Fraction, default=Fraction(2), help="subset-size coefficient (rational, default 2)")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("scaling", help="sweep a construction and fit log-log slopes")
    p.add_argument("--construction", required=True, choices=sorted(CONSTRUCTIONS))
    p.add_argument("--params", required=True, type=_parse_params, help="lo:hi[:step] or comma list")
    p.add_argument("--metrics", required=True, help=f"comma list from {', '.join(METRICS)}")
    p.add_argument("--format", default="csv", choices=["json", "csv"])

    p = sub.add_parser("random-subset", help="exact Sidon statistics of random m-subsets of [n], m = round(n^a)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("audit", help="evidence table: all Sidon/low-energy bounds for one set")
    _add_set_arg(p)
    p.add_argument("--budget", type=_parse_budget, default="10^6")
    p.add_argument("--seed", type=int, required=True)

    return top


def _dispatch(args) -> str:
    if args.command == "construct":
        return format_lines(CONSTRUCTIONS[args.family](args.n))
    if args.command == "energy":
        return emit_report(energy_report(_read_set(args.set_file)), args.format)
    if args.command == "combine":
        return format_lines(combined_set(_read_set(args.set_file), Mode.parse(args.mode)))
    if args.command == "sidon-check":
        witness = sidon_check(_read_set(args.set_file), Mode.parse(args.mode))
        verdict = {"sidon": witness is None, "witness": None if witness is None else list(witness.as_tuple())}
        return emit_report(verdict)
    if args.command == "sidon-max":
        res = max_sidon_subset(_read_set(args.set_file), Mode.parse(args.mode), node_budget=args.budget)
        return emit_report(res.as_dict())
    if args.command == "sidon-greedy":
        return format_lines(greedy_sidon(_read_set(args.set_file), Mode.parse(args.mode)))
    if args.command == "sidon-delete":
        return format_lines(deletion_sidon(_read_set(args.set_file), Mode.parse(args.mode), args.seed))
    if args.command == "c4":
        witness = find_c4(_read_graph(args))
        return emit_report({"c4_free": witness is None,
                            "witness": None if witness is None else list(witness.as_tuple())})
    if args.command == "capacity":
        if args.set_file:
            graph = graph_from_pq(_read_set(args.set_file))
            size_p, size_q = len(graph.left), len(graph.right)
        else:
            if args.size_q is None:
                raise ValueError("--size-p requires --size-q")
            size_p, size_q = args.size_p, args.size_q
        return emit_report({"size_p": size_p, "size_q": size_q, "capacity": c4free_capacity(size_p, size_q)})
    if args.command == "cs-audit":
        return emit_report({"checks": [c.as_dict() for c in cs_chain_audit(_read_graph(args))]})
    if args.command == "t-exact":
        return emit_report(t_exact(_read_set(args.set_file), Mode.parse(args.mode), args.size_cap).as_dict())
    if args.command == "t-search":
        res = t_random_search(_read_set(args.set_file), Mode.parse(args.mode), args.trials, args.seed)
        return emit_report(res.as_dict())
    if args.command == "oddpow-audit":
        if args.samples > 0 and args.seed is None:
            raise ValueError("--samples requires --seed")
        return emit_report(odd_power_audit(args.n, coeff=args.coeff, samples=args.samples, seed=args.seed or 0))
    if args.command == "scaling":
        series = run_scaling(args.construction, args.params, args.metrics.split(","))
        return emit_report(series, args.format)
    if args.command == "random-subset":
        return emit_report(random_subset_experiment(args.n, args.a, args.trials, args.seed))
    if args.command == "audit":
        return emit_report(conjecture_audit(_read_set(args.set_file), node_budget=args.budget, seed=args.seed))
    raise ValueError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _write(_dispatch(args), args.out)
    except (ConstructionError, OverflowError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
