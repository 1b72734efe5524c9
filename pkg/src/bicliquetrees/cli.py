"""Command-line front end.

Exit codes: 0 on success, 1 when a ``verify`` suite has a failing instance,
2 on usage, input or library errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .arborescence import count_eulerian_circuits, tree_enumerator, tree_enumerators
from .biclique import (
    BicliquePartition,
    format_partition,
    in_star_partition,
    natural_line_partition,
    omega_digraph,
    parse_partition,
    star_partition,
    tree_enum_via_partition,
    twin_partition,
)
from .errors import BicliqueTreesError, InvalidArgumentError
from .graph import WeightedDigraph, blow_up, format_graph, iterated_line_digraph, read_graph
from .linalg import as_rational, format_rational
from .markov import (
    kemeny_constant,
    kemeny_via_partition,
    mean_first_passage,
    stationary_distribution,
    stationary_via_partition,
)
from .verify import SUITES, format_report, report_to_json, run_suite

PARTITION_KINDS = ("star", "in-star", "twin", "line-natural")


class _Formatter:
    def __init__(self, decimal: int | None):
        self.decimal = decimal

    def __call__(self, x) -> str:
        if not isinstance(x, Fraction):
            return str(x)
        if self.decimal is None:
            return format_rational(x)
        return _to_decimal(x, self.decimal)


def _to_decimal(x: Fraction, places: int) -> str:
    """Round half-to-even at ``places`` digits and print without exponent."""
    q = round(x * 10**places)
    sign = "-" if q < 0 else ""
    q = abs(q)
    if places == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def _resolve_partition(source: str, g: WeightedDigraph) -> tuple[WeightedDigraph, BicliquePartition]:
    """Return ``(host, partition)``; ``line-natural`` switches the host to the line digraph."""
    if source.startswith("file:"):
        return g, parse_partition(Path(source[5:]).read_text(), g)
    if source == "star":
        return g, star_partition(g)
    if source == "in-star":
        return g, in_star_partition(g)
    if source == "twin":
        return g, twin_partition(g)
    if source == "line-natural":
        ld, part = natural_line_partition(g)
        return ld.line, part
    raise argparse.ArgumentTypeError(
        f"unknown partition {source!r}; use one of {', '.join(PARTITION_KINDS)} or file:<path>"
    )


def _vertex_weights(text: str | None):
    if text is None:
        return None
    try:
        return [as_rational(Fraction(t)) for t in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError):
        raise InvalidArgumentError(f"bad vertex weights {text!r}") from None


# ---------------------------------------------------------------------------
# commands: each returns (text, json_payload, exit_code)


def _cmd_trees(args, fmt):
    g = read_graph(args.graph)
    if args.root is not None:
        values = [(args.root, tree_enumerator(g, args.root))]
    else:
        values = list(enumerate(tree_enumerators(g)))
    text = "".join(f"{v} {fmt(t)}\n" for v, t in values)
    return text, {"trees": {str(v): fmt(t) for v, t in values}}, 0


def _cmd_eulerian(args, fmt):
    g = read_graph(args.graph)
    kappa = tree_enumerator(g, 0)
    count = count_eulerian_circuits(g)
    return f"{count}\n", {"circuits": count, "kappa": fmt(kappa)}, 0


def _cmd_stationary(args, fmt):
    pi = stationary_distribution(read_graph(args.graph))
    text = "".join(f"{v} {fmt(p)}\n" for v, p in enumerate(pi))
    return text, {"stationary": [fmt(p) for p in pi]}, 0


def _cmd_kemeny(args, fmt):
    k = kemeny_constant(read_graph(args.graph))
    return f"{fmt(k)}\n", {"kemeny": fmt(k)}, 0


def _cmd_mfpt(args, fmt):
    m = mean_first_passage(read_graph(args.graph))
    rows = [[fmt(x) for x in row] for row in m.rows()]
    return "".join(" ".join(r) + "\n" for r in rows), {"mfpt": rows}, 0


def _cmd_line(args, fmt):
    g = iterated_line_digraph(read_graph(args.graph), args.iterate, args.max_vertices)
    text = format_graph(g)
    return text, {"graph": text}, 0


def _cmd_blowup(args, fmt):
    g = blow_up(read_graph(args.graph), args.k).graph
    text = format_graph(g)
    return text, {"graph": text}, 0


def _cmd_reduce(args, fmt):
    host, part = _resolve_partition(args.partition, read_graph(args.graph))
    reduced = omega_digraph(part, _vertex_weights(args.vertex_weights))
    trees = {}
    for u in range(host.n):
        covered = host.in_degree(u) > 0 or host.n == 1
        trees[u] = tree_enum_via_partition(host, part, u, reduced.vertex_weights) if covered else None
    lines = ["partition", format_partition(part).rstrip("\n"), "reduced"]
    lines.append(format_graph(reduced.digraph).rstrip("\n"))
    lines.append("trees")
    lines += [f"{u} {'n/a' if t is None else fmt(t)}" for u, t in trees.items()]
    payload = {
        "partition": format_partition(part),
        "reduced": format_graph(reduced.digraph),
        "trees": {str(u): (None if t is None else fmt(t)) for u, t in trees.items()},
    }
    return "\n".join(lines) + "\n", payload, 0


def _cmd_reduce_markov(args, fmt):
    host, part = _resolve_partition(args.partition, read_graph(args.graph))
    pi = stationary_via_partition(host, part)
    k = kemeny_via_partition(host, part)
    lines = ["stationary"] + [f"{v} {fmt(p)}" for v, p in enumerate(pi)] + ["kemeny", fmt(k)]
    return "\n".join(lines) + "\n", {"stationary": [fmt(p) for p in pi], "kemeny": fmt(k), "r": part.r}, 0


def _cmd_verify(args, fmt):
    report = run_suite(args.suite, args.seed, args.count)
    code = 0 if report.passed else 1
    return format_report(report), report_to_json(report), code


COMMANDS = {
    "trees": _cmd_trees,
    "eulerian": _cmd_eulerian,
    "stationary": _cmd_stationary,
    "kemeny": _cmd_kemeny,
    "mfpt": _cmd_mfpt,
    "line": _cmd_line,
    "blowup": _cmd_blowup,
    "reduce": _cmd_reduce,
    "reduce-markov": _cmd_reduce_markov,
    "verify": _cmd_verify,
}


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--decimal", type=_nonneg, metavar="N",
                        help="display rationals rounded to N decimals (computation stays exact)")

    p = argparse.ArgumentParser(prog="bicliquetrees", description="Exact spanning-tree and random-walk computations on digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        if name != "verify":
            sp.add_argument("graph", help="graph file ('digraph <n>' header, then 'tail head [weight]' lines)")
        return sp

    sp = add("trees", "tree enumerators t_u from Laplacian minors")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--root", type=_nonneg)
    grp.add_argument("--all-roots", action="store_true", help="the default")
    add("eulerian", "number of Eulerian circuits (unit-weight Eulerian digraphs)")
    add("stationary", "stationary distribution of the random walk")
    add("kemeny", "Kemeny's constant")
    add("mfpt", "mean first passage times")
    sp = add("line", "line digraph")
    sp.add_argument("--iterate", type=_nonneg, default=1, metavar="S")
    sp.add_argument("--max-vertices", type=_positive, default=10_000)
    sp = add("blowup", "k-blow-up")
    sp.add_argument("--k", type=_positive, required=True)
    for name, help_ in (("reduce", "tree enumerators through a biclique partition"),
                        ("reduce-markov", "stationary vector and Kemeny constant through a biclique partition")):
        sp = add(name, help_)
        sp.add_argument("--partition", default="star",
                        help=f"{', '.join(PARTITION_KINDS)} or file:<path> (default star)")
        if name == "reduce":
            sp.add_argument("--vertex-weights", metavar="W",
                            help="space- or comma-separated vertex weights (default: inferred)")
    sp = add("verify", "run a seeded identity suite")
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--seed", type=_nonneg, default=0)
    sp.add_argument("--count", type=_positive, default=20)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = _Formatter(args.decimal)
    try:
        text, payload, code = COMMANDS[args.command](args, fmt)
    except BicliqueTreesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    except argparse.ArgumentTypeError as exc:
        print(f"error: UsageError: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc.strerror or exc}: {exc.filename}", file=stderr)
        return 2
    if args.format == "json":
        stdout.write(json.dumps({"command": args.command, "exit": code, **payload}, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
