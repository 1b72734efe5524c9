"""Seeded identity suites: every instance computes the same quantity two ways.

Instance ``k`` of suite ``s`` under seed ``x`` draws from
``random.Random(f"{s}/{x}/{k}")``, so any single instance can be replayed and
output is reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable

from . import generators as gen
from .arborescence import (
    arborescence_sum,
    count_eulerian_circuits,
    enumerate_eulerian_circuits,
    signed_minor,
    tree_enumerator,
    tree_enumerators,
)
from .biclique import (
    eulerian_count_via_partition,
    format_partition,
    in_star_partition,
    kappa_via_partition,
    line_sum_identity_check,
    line_tree_knuth,
    line_tree_levine,
    natural_line_partition,
    omega_digraph,
    partition_tree_enum_from_host,
    schur_partition_identity,
    star_partition,
    theta_digraph,
    theta_tree_enum_from_host,
    tree_enum_via_partition,
    twin_partition,
    undirected_tree_count,
    blow_up_partition,
)
from .errors import BicliqueTreesError, SingularBlockError
from .graph import (
    WeightedDigraph,
    bidirect,
    blow_up,
    build_digraph,
    build_undirected,
    format_graph,
    induced_digraph,
    iterated_line_digraph,
    line_digraph,
)
from .linalg import Polynomial, char_poly, format_rational
from .markov import (
    kemeny_constant,
    kemeny_definitional,
    kemeny_trace,
    kemeny_via_partition,
    line_stationary,
    stationary_distribution,
    stationary_via_partition,
    transition_matrix,
)

__all__ = ["Check", "InstanceResult", "VerificationReport", "SUITES", "run_suite", "fixtures"]


@dataclass
class Check:
    name: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class InstanceResult:
    index: int
    descriptor: dict
    checks: list[Check] = field(default_factory=list)
    replay: dict[str, str] = field(default_factory=dict)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.checks) and all(c.ok for c in self.checks)


@dataclass
class VerificationReport:
    suite: str
    seed: int
    count: int
    instances: list[InstanceResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.instances)

    @property
    def n_passed(self) -> int:
        return sum(r.passed for r in self.instances)


def fixtures() -> dict[str, WeightedDigraph]:
    """The named small digraphs used throughout the docs and tests."""
    return {
        "C3": build_digraph(3, [(0, 1), (1, 2), (2, 0)]),
        "D2": build_digraph(2, [(0, 1), (1, 0)]),
        "K3": build_digraph(3, [(i, j) for i in range(3) for j in range(3) if i != j]),
        "M2": build_digraph(2, [(0, 1), (0, 1), (1, 0), (1, 0)]),
    }


class _Instance:
    """Collects checks for one instance."""

    def __init__(self, result: InstanceResult):
        self.result = result

    def check(self, name: str, lhs, rhs) -> None:
        self.result.checks.append(Check(name, lhs, rhs))

    def describe(self, **kw) -> None:
        self.result.descriptor.update(kw)

    def graph(self, g: WeightedDigraph, key: str = "graph") -> None:
        self.result.replay[key] = format_graph(g)
        if key == "graph":
            self.describe(n=g.n, m=g.m)

    def note(self, key: str, value: str) -> None:
        self.result.replay[key] = value


# ---------------------------------------------------------------------------
# suites


def _matrix_tree(rng: random.Random, index: int, out: _Instance) -> None:
    n = rng.randint(1, 7)
    g = gen.random_digraph(rng, n, rng.choice([0.2, 0.3, 0.4, 0.5]), "rational", parallel=0.1)
    out.graph(g)
    batch = tree_enumerators(g)
    for u in range(n):
        t = tree_enumerator(g, u)
        out.check(f"t_{u}", t, arborescence_sum(g, u))
        out.check(f"adj_{u}", batch[u], t)
    i, j = rng.randrange(n), rng.randrange(n)
    out.check(f"sign_{i}{j}", signed_minor(g, i, j), (-1) ** (i + j) * batch[i])


def _best(rng: random.Random, index: int, out: _Instance) -> None:
    named = list(fixtures().values()) + [line_digraph(fixtures()["K3"]).line]
    if index < len(named):
        g = named[index]
    else:
        g = gen.random_eulerian(rng, rng.randint(2, 5), rng.randint(0, 3), max_edges=12)
    out.graph(g)
    out.check("circuits", count_eulerian_circuits(g), enumerate_eulerian_circuits(g))
    kappa = tree_enumerators(g)
    for u in range(1, g.n):
        out.check(f"kappa_{u}=kappa_0", kappa[u], kappa[0])


def _eulerian_partition(rng: random.Random, index: int, out: _Instance) -> None:
    g = gen.random_eulerian(rng, rng.randint(2, 6), rng.randint(0, 4), max_edges=16)
    out.graph(g)
    kappa = tree_enumerator(g, 0)
    circuits = count_eulerian_circuits(g)
    for label, part in (("star", star_partition(g)), ("in", in_star_partition(g)), ("twin", twin_partition(g))):
        for i in range(part.r):
            k, c = eulerian_count_via_partition(g, part, i)
            out.check(f"{label}_kappa[{i}]", k, kappa)
            out.check(f"{label}_circuits[{i}]", c, circuits)


def _reduction(rng: random.Random, index: int, out: _Instance) -> None:
    n = rng.randint(2, 8)
    g = gen.random_digraph(rng, n, rng.choice([0.2, 0.3, 0.45]), "unit", min_out=1, parallel=0.05)
    ws = [rng.randint(1, 20) for _ in range(n)]
    gw = induced_digraph(g, ws)
    part = star_partition(gw)
    out.graph(gw)
    out.note("vertex_weights", " ".join(map(str, ws)))
    out.note("partition", format_partition(part))
    out.describe(r=part.r)

    omega = tree_enumerators(omega_digraph(part).digraph)
    kappa = tree_enumerators(g)
    theta = tree_enumerators(theta_digraph(part).digraph)
    for u in range(n):
        if g.in_degree(u):
            out.check(f"t_{u}", tree_enum_via_partition(gw, part, u), tree_enumerator(gw, u))
            out.check(f"kappa_{u}", kappa_via_partition(gw, part, u), kappa[u])
    from_host = partition_tree_enum_from_host(gw, part)
    theta_host = theta_tree_enum_from_host(gw, part)
    for i in range(part.r):
        out.check(f"tOmega_{i}", from_host[i], omega[i])
        out.check(f"tTheta_{i}", theta_host[i], theta[i])


def _line(rng: random.Random, index: int, out: _Instance) -> None:
    if index % 5 == 4:
        # a sink with in-degree >= 2: both sides of the line-sum identity vanish
        core = gen.random_strongly_connected(rng, rng.randint(2, 4), 0.3, "rational")
        sink = core.n
        sources = rng.sample(range(core.n), rng.randint(2, core.n))
        g = build_digraph(
            core.n + 1, core.triples() + [(s, sink, gen.random_rational(rng)) for s in sources]
        )
        out.graph(g)
        out.describe(branch="zero")
        lhs, rhs = line_sum_identity_check(g)
        out.check("line_sum", lhs, rhs)
        out.check("line_sum_lhs_zero", lhs, Fraction(0))
        return

    n = rng.randint(2, 5)
    g = gen.random_strongly_connected(rng, n, rng.choice([0.15, 0.3]), "unit")
    out.graph(g, "unit_graph")
    out.describe(n=n, m=g.m)
    ld, part = natural_line_partition(g)
    out.note("partition", format_partition(part))
    kappa_line = tree_enumerators(ld.line)
    for e in g.edges:
        v = ld.vertex_of_edge[e.index]
        out.check(f"knuth_{e.index}", line_tree_knuth(g, e.index), kappa_line[v])
        out.check(f"theta_{e.index}", kappa_via_partition(ld.line, part, v), kappa_line[v])

    gw = build_digraph(n, [(e.tail, e.head, gen.random_rational(rng)) for e in g.edges])
    out.graph(gw)
    ldw, partw = natural_line_partition(gw)
    t_line = tree_enumerators(ldw.line)
    for e in gw.edges:
        v = ldw.vertex_of_edge[e.index]
        out.check(f"omega_{e.index}", tree_enum_via_partition(ldw.line, partw, v), t_line[v])
        if gw.in_degree(e.head) >= 2:
            out.check(f"levine_{e.index}", line_tree_levine(gw, e.index), t_line[v])
    lhs, rhs = line_sum_identity_check(gw)
    out.check("line_sum", lhs, rhs)


def _theta_charpoly_check(out: _Instance, label: str, g: WeightedDigraph, part) -> None:
    p_g = char_poly(transition_matrix(g))
    p_theta = char_poly(transition_matrix(theta_digraph(part).digraph))
    out.check(f"{label}_charpoly", p_g, Polynomial.monomial(g.n - part.r) * p_theta)


def _markov_reduction(rng: random.Random, index: int, out: _Instance) -> None:
    if index % 2 == 0:
        n = rng.randint(2, 8)
        g = gen.random_strongly_connected(rng, n, rng.choice([0.15, 0.3, 0.5]), "unit", parallel=0.05)
    else:
        base_n = rng.randint(2, 4)
        g = gen.random_twinned(rng, base_n, rng.randint(base_n, 8), 0.3)
    out.graph(g)
    pi = stationary_distribution(g)
    kemeny = kemeny_constant(g)
    for label, part in (("star", star_partition(g)), ("twin", twin_partition(g))):
        out.describe(**{f"r_{label}": part.r})
        out.check(f"{label}_pi", stationary_via_partition(g, part), pi)
        out.check(f"{label}_K", kemeny_via_partition(g, part), kemeny)
        _theta_charpoly_check(out, label, g, part)


def _blowup(rng: random.Random, index: int, out: _Instance) -> None:
    named = [("C3", 2), ("C3", 3), ("K3", 2), ("K3", 3)]
    if index < len(named):
        name, k = named[index]
        g = fixtures()[name]
    else:
        g = gen.random_strongly_connected(rng, rng.randint(2, 4), 0.3)
        k = rng.choice([2, 3])
    out.graph(g)
    out.describe(k=k)
    n = g.n
    b = blow_up(g, k)
    big = b.graph
    kappa = tree_enumerators(g)
    kappa_big = tree_enumerators(big)
    pi, pi_big = stationary_distribution(g), stationary_distribution(big)
    scale = Fraction(k) ** (n * k - 2) * prod(Fraction(d) ** (k - 1) for d in g.out_degrees)
    for u in range(big.n):
        i = b.vertex_class[u]
        out.check(f"kappa_{u}", kappa_big[u], scale * kappa[i])
        out.check(f"pi_{u}", pi_big[u], pi[i] / k)
    out.check("K", kemeny_constant(big), kemeny_constant(g) + n * (k - 1))
    bpart = blow_up_partition(star_partition(g), b)
    out.check("K_partition", kemeny_via_partition(big, bpart), kemeny_constant(big))


def _line_markov(rng: random.Random, index: int, out: _Instance) -> None:
    named = [fixtures()[k] for k in ("C3", "D2", "K3")]
    if index < len(named):
        g = named[index]
    else:
        g = gen.random_strongly_connected(rng, rng.randint(2, 4), rng.choice([0.1, 0.25]))
    out.graph(g)
    per_edge, k_line = line_stationary(g)
    ld = line_digraph(g)
    pi_line = stationary_distribution(ld.line)
    for e in g.edges:
        out.check(f"pi_e{e.index}", pi_line[ld.vertex_of_edge[e.index]], per_edge[e.index])
    out.check("K_L1", kemeny_constant(ld.line), k_line)
    k0 = kemeny_constant(g)
    for s in (0, 1, 2):
        it = iterated_line_digraph(g, s)
        out.check(f"K_L{s}", kemeny_constant(it), k0 + it.n - g.n)


def _schur(rng: random.Random, index: int, out: _Instance) -> None:
    if index == 0:
        g, v1, u = fixtures()["K3"], [0, 1], 0
    else:
        for _ in range(50):
            n = rng.randint(2, 6)
            if rng.random() < 0.5:
                g = gen.random_strongly_connected(rng, n, 0.3, "rational")
            else:
                g = gen.random_digraph(rng, n, 0.4, "rational")
            v1 = sorted(rng.sample(range(n), rng.randint(1, n - 1)))
            u = rng.choice(v1)
            try:
                lhs, rhs = schur_partition_identity(g, v1, u)
                break
            except SingularBlockError:
                continue
        else:
            raise SingularBlockError("no nonsingular split found in 50 draws")
    out.graph(g)
    out.describe(V1=v1, u=u)
    out.note("split", f"V1={v1} u={u}")
    lhs, rhs = schur_partition_identity(g, v1, u)
    out.check("split", lhs, rhs)


def _undirected(rng: random.Random, index: int, out: _Instance) -> None:
    named = [
        build_undirected(3, [(0, 1), (1, 2), (0, 2)]),
        build_undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        build_undirected(2, [(0, 1)]),
    ]
    if index < len(named):
        h = named[index]
    else:
        h = gen.random_connected_undirected(rng, rng.randint(2, 7), rng.choice([0.1, 0.3, 0.5]))
    h0 = bidirect(h)
    out.graph(h0)
    direct = tree_enumerator(h0, 0)
    out.check("star", undirected_tree_count(h), direct)
    out.check("twin", undirected_tree_count(h, twin_partition(h0)), direct)


def _kemeny(rng: random.Random, index: int, out: _Instance) -> None:
    named = [(fixtures()["C3"], Fraction(1)), (fixtures()["K3"], Fraction(4, 3)), (fixtures()["D2"], Fraction(1, 2))]
    if index < len(named):
        g, expected = named[index]
    else:
        g = gen.random_strongly_connected(rng, rng.randint(2, 6), 0.3, "rational", parallel=0.1)
        expected = None
    out.graph(g)
    k = kemeny_constant(g)
    if expected is not None:
        out.check("K=expected", k, expected)
    for i, v in enumerate(kemeny_definitional(g)):
        out.check(f"definitional_{i}", v, k)
    out.check("trace", kemeny_trace(g), k)


SUITES: dict[str, tuple[Callable, str]] = {
    "matrix-tree": (_matrix_tree, "minor tree enumerators vs brute-force arborescence sums"),
    "best": (_best, "BEST-theorem circuit counts vs backtracking enumeration"),
    "eulerian-partition": (_eulerian_partition, "Eulerian kappa and circuit counts through biclique partitions"),
    "reduction": (_reduction, "weighted and unit reduction formulas on star partitions"),
    "line": (_line, "Knuth/Levine line-digraph formulas, natural partition, line-sum identity"),
    "markov-reduction": (_markov_reduction, "stationary vector, Kemeny constant and char-poly through partitions"),
    "blowup": (_blowup, "k-blow-up closed forms for trees, stationary vector, Kemeny"),
    "line-markov": (_line_markov, "stationary vector and Kemeny constant of iterated line digraphs"),
    "schur": (_schur, "vertex-split Schur-complement spanning-tree identity"),
    "undirected": (_undirected, "undirected spanning-tree counts via bidirected partitions"),
    "kemeny": (_kemeny, "Kemeny constant: char-poly vs mean first passage vs fundamental matrix"),
}


def run_suite(name: str, seed: int, count: int) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(name)
    fn, _ = SUITES[name]
    results = []
    for k in range(count):
        rng = random.Random(f"{name}/{seed}/{k}")
        res = InstanceResult(k, {})
        try:
            fn(rng, k, _Instance(res))
        except BicliqueTreesError as exc:
            res.error = f"{type(exc).__name__}: {exc}"
        results.append(res)
    return VerificationReport(name, seed, count, results)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    return str(x)


def format_report(report: VerificationReport) -> str:
    lines = [f"suite {report.suite} seed {report.seed} count {report.count}"]
    for r in report.instances:
        desc = " ".join(f"{k}={_fmt(v)}".replace(" ", "") for k, v in r.descriptor.items())
        status = "PASS" if r.passed else "FAIL"
        body = "; ".join(f"{c.name} {_fmt(c.lhs)}{'==' if c.ok else '!='}{_fmt(c.rhs)}" for c in r.checks)
        line = f"{status} {report.suite}[{r.index}] {desc} checks={len(r.checks)}"
        if r.error:
            line += f" error={r.error}"
        lines.append(f"{line} | {body}" if body else line)
        if not r.passed:
            for key, text in r.replay.items():
                lines.append(f"  replay {key}:")
                lines.extend(f"    {t}" for t in text.rstrip("\n").splitlines())
    lines.append(f"{report.n_passed}/{report.count} passed")
    return "\n".join(lines) + "\n"


def report_to_json(report: VerificationReport) -> dict:
    return {
        "suite": report.suite,
        "seed": report.seed,
        "count": report.count,
        "passed": report.n_passed,
        "failed": report.count - report.n_passed,
        "instances": [
            {
                "index": r.index,
                "status": "pass" if r.passed else "fail",
                "descriptor": {k: _fmt(v) for k, v in r.descriptor.items()},
                "error": r.error,
                "checks": [
                    {"name": c.name, "lhs": _fmt(c.lhs), "rhs": _fmt(c.rhs), "ok": c.ok}
                    for c in r.checks
                ],
                "replay": r.replay,
            }
            for r in report.instances
        ],
    }
