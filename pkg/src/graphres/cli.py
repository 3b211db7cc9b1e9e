"""Command-line interface: ``graphres gen|gamma|certify|sweep|classify``.

Exit codes: 0 success, 2 usage or invalid input, 3 formula/exact disagreement,
4 classification count mismatch, 5 capability exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from graphres.certify import certify
from graphres.classify import EXPECTED_TOTAL_L8, MAX_CLASSIFY_NODES, classify, export_csv, save_atlas
from graphres.correlator import MAX_EXACT_QUBITS, maximize
from graphres.errors import CapabilityError, DomainError, FormulaNotApplicable, GraphresError, ParseError
from graphres.formulas import GammaFormulaResult, gamma_cluster, gamma_star, gamma_tree, gamma_turan
from graphres.graph import (
    Graph,
    are_isomorphic,
    make_grid,
    make_star,
    make_tree,
    make_turan,
    max_corona_edges,
    random_graph,
    turan_spec,
)
from graphres.graphio import FORMATS, format_from_path, parse_graph, serialize_graph
from graphres.state import graph_state

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREE = 3
EXIT_COUNT = 4
EXIT_CAPABILITY = 5

# largest L evaluated exactly inside a sweep
SWEEP_EXACT_MAX = 10
SWEEP_COLUMNS = (
    "family", "L", "p", "gamma", "gamma_over_L", "E", "entanglement_depth", "bell_depth",
    "sub_shot_noise", "gamma_exact", "gamma_formula", "bell_limit_gamma_over_L",
)
BELL_LIMIT = 0.5


class UsageError(GraphresError):
    pass


def _err(msg: str) -> None:
    print(f"graphres: {msg}", file=sys.stderr)


# --------------------------------------------------------------------------
# graph input


@dataclass(frozen=True)
class Topology:
    """A generated graph plus the family tag the closed-form formulas need."""

    graph: Graph
    family: str | None = None
    params: tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if self.family is None:
            return "graph"
        return f"{self.family}({', '.join(map(str, self.params))})"


def _add_graph_source(p: argparse.ArgumentParser, *, allow_random: bool = False, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--star", nargs=2, type=int, metavar=("L", "P"), help="star on L nodes with P corona edges")
    g.add_argument("--turan", nargs=2, type=int, metavar=("L", "K"), help="Turan graph T(L, K)")
    g.add_argument("--tree", nargs=2, type=int, metavar=("R", "H"), help="perfect R-ary tree of depth H")
    g.add_argument("--grid", nargs=2, type=int, metavar=("M", "N"), help="M x N cluster lattice")
    g.add_argument("--file", metavar="PATH", help="graph file ('-' for stdin)")
    if allow_random:
        g.add_argument("--random", nargs=2, metavar=("L", "PROB"),
                       help="connected G(L, PROB) random graph (see --seed)")
    p.add_argument("--in-format", choices=FORMATS, help="format of --file (default: from suffix or content)")


def _read_graph(args) -> Topology:
    if args.star:
        L, p = args.star
        return Topology(make_star(L, p), "star", (L, p))
    if args.turan:
        L, K = args.turan
        return Topology(make_turan(L, K)[0], "turan", (L, K))
    if args.tree:
        r, h = args.tree
        return Topology(make_tree(r, h), "tree", (r, h))
    if args.grid:
        m, n = args.grid
        return Topology(make_grid(m, n), "grid", (m, n))
    if getattr(args, "random", None):
        try:
            L, prob = int(args.random[0]), float(args.random[1])
        except ValueError as exc:
            raise UsageError(f"--random expects an integer and a probability: {exc}") from exc
        rng = np.random.default_rng(args.seed)
        return Topology(random_graph(L, prob, rng, connected=True))
    if args.file:
        if args.file == "-":
            text = sys.stdin.read()
            fmt = args.in_format
        else:
            try:
                text = Path(args.file).read_text()
            except OSError as exc:
                raise UsageError(f"cannot read {args.file}: {exc.strerror}") from exc
            fmt = args.in_format or format_from_path(args.file)
        return recognize(parse_graph(text, fmt))
    raise UsageError("no graph source given")


def recognize(G: Graph) -> Topology:
    """Tag ``G`` with a generator family if it is isomorphic to one (L <= 12)."""
    L = G.node_count
    if L > 12 or L < 3:
        return Topology(G)
    e = G.edge_count
    candidates: list[tuple[str, tuple[int, ...], Callable[[], Graph]]] = []
    for p in range(max_corona_edges(L) + 1):
        if e == L - 1 + p:
            candidates.append(("star", (L, p), lambda p=p: make_star(L, p)))
    for K in range(2, L + 1):
        candidates.append(("turan", (L, K), lambda K=K: make_turan(L, K)[0]))
    for m in range(2, L):
        if L % m == 0 and m <= L // m:
            candidates.append(("grid", (m, L // m), lambda m=m: make_grid(m, L // m)))
    for r in range(2, L):
        n, h = 1, 0
        while n < L:
            h += 1
            n += r**h
        if n == L:
            candidates.append(("tree", (r, h), lambda r=r, h=h: make_tree(r, h)))
    for family, params, build in candidates:
        H = build()
        if H.edge_count == e and are_isomorphic(G, H):
            return Topology(G, family, params)
    return Topology(G)


def formula_for(top: Topology) -> GammaFormulaResult:
    if top.family == "star":
        return gamma_star(*top.params)
    if top.family == "turan":
        return gamma_turan(turan_spec(*top.params))
    if top.family == "tree":
        return gamma_tree(*top.params)
    if top.family == "grid":
        return gamma_cluster(*top.params)
    raise FormulaNotApplicable("graph is not a recognized star, Turan, tree or grid topology")


def _num(x: float | Fraction | None):
    if x is None:
        return None
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    if math.isinf(x):
        return "inf"
    return int(x) if float(x).is_integer() else x


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=1))
    else:
        print(text)


# --------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    top = _read_graph(args)
    out = serialize_graph(top.graph, args.format)
    if args.out:
        Path(args.out).write_text(out)
        _err(f"wrote {top.label} with {top.graph.node_count} nodes, {top.graph.edge_count} edges to {args.out}")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_gamma(args) -> int:
    top = _read_graph(args)
    G = top.graph
    L = G.node_count
    payload: dict = {"graph": top.label, "L": L, "edges": G.edge_count, "mode": args.mode}
    lines = [f"graph    {top.label}, L={L}, {G.edge_count} edges"]

    exact = None
    if args.mode in ("exact", "both"):
        if L > MAX_EXACT_QUBITS:
            if args.mode == "exact":
                raise CapabilityError(
                    f"exact evaluation is limited to {MAX_EXACT_QUBITS} qubits (L={L}); try --mode formula")
            if top.family is None:
                raise CapabilityError(
                    f"exact evaluation is limited to {MAX_EXACT_QUBITS} qubits and no formula applies (L={L})")
            _err(f"L={L} exceeds the exact bound of {MAX_EXACT_QUBITS}; reporting the formula only")
        else:
            exact = maximize(graph_state(G))
            payload["exact"] = {"E": exact.E, "gamma": _num(exact.gamma), "kappa_star": str(exact.kappa_star),
                                "exact_dyadic": exact.exact_dyadic}
            lines += [f"E        {exact.E:.10g}", f"gamma    {_fmt(exact.gamma)}",
                      f"kappa*   {exact.kappa_star}"]

    formula = None
    if args.mode in ("formula", "both"):
        try:
            formula = formula_for(top)
        except FormulaNotApplicable as exc:
            if args.mode == "formula":
                raise
            _err(f"no closed form: {exc}")
        if formula is not None:
            payload["formula"] = formula.to_dict()
            variants = ", ".join(f"{k}={_fmt(float(v))}" for k, v in formula.variants.items())
            lines.append(f"formula  {_fmt(float(formula.gamma))} ({formula.variant}); variants: {variants}")
            if formula.validity_note:
                lines.append(f"note     {formula.validity_note}")

    code = EXIT_OK
    if exact is not None and formula is not None:
        agree = Fraction(exact.gamma).limit_denominator(1 << 20) == formula.gamma
        matching = [k for k, v in formula.variants.items() if v == Fraction(exact.gamma).limit_denominator(1 << 20)]
        payload["agreement"] = agree
        payload["matching_variants"] = matching
        lines.append(f"check    {'agree' if agree else 'DISAGREE'}; matching variants: {', '.join(matching) or 'none'}")
        if not agree:
            code = EXIT_DISAGREE
            _err(f"formula gamma {_fmt(float(formula.gamma))} differs from exact gamma {_fmt(exact.gamma)}")
    _emit(args, payload, "\n".join(lines))
    return code


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return str(int(x)) if float(x).is_integer() else f"{x:.6g}"


def cmd_certify(args) -> int:
    if args.gamma is not None:
        if args.L is None:
            raise UsageError("--gamma needs --L")
        if any(getattr(args, k) for k in ("star", "turan", "tree", "grid", "file")):
            raise UsageError("give either --gamma/--L or a graph, not both")
        gamma, L = args.gamma, args.L
    else:
        top = _read_graph(args)
        L = top.graph.node_count
        if args.L is not None and args.L != L:
            raise UsageError(f"--L {args.L} does not match the graph's {L} nodes")
        res = maximize(graph_state(top.graph))
        if math.isinf(res.gamma):
            raise DomainError("the correlator vanishes for this state; nothing to certify")
        gamma = res.gamma
    report = certify(gamma, L)
    _emit(args, report.to_dict(), report.to_text())
    return EXIT_OK


@dataclass(frozen=True)
class SweepRow:
    family: str
    L: int
    p: int
    gamma: float
    gamma_over_L: float
    E: float
    entanglement_depth: int
    bell_depth: int
    sub_shot_noise: bool
    gamma_exact: float | None
    gamma_formula: float | None
    bell_limit_gamma_over_L: float = BELL_LIMIT

    def as_csv(self) -> list:
        out = []
        for k in SWEEP_COLUMNS:
            v = getattr(self, k)
            if v is None:
                out.append("")
            elif isinstance(v, bool):
                out.append(int(v))
            elif isinstance(v, float):
                out.append(_fmt(v) if v.is_integer() else repr(v))
            else:
                out.append(v)
        return out


def _parse_int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected a list of integers, got {text!r}") from exc


def _sweep_row(family: str, L: int, p: int, G: Graph | None, formula: Callable[[], GammaFormulaResult],
               mode: str) -> SweepRow | None:
    exact = form = None
    if mode in ("exact", "both") and L <= SWEEP_EXACT_MAX and G is not None:
        exact = maximize(graph_state(G)).gamma
    if mode in ("formula", "both") or (mode == "exact" and L > SWEEP_EXACT_MAX):
        try:
            form = float(formula().gamma)
        except FormulaNotApplicable:
            form = None
    gamma = exact if exact is not None else form
    if gamma is None:
        return None
    rep = certify(gamma, L)
    return SweepRow(family, L, p, gamma, gamma / L, rep.E, rep.entanglement_depth, rep.bell_depth,
                    rep.sub_shot_noise, exact, form)


def sweep_rows(stars: Sequence[int], turans: Sequence[int], mode: str) -> list[SweepRow]:
    rows: list[SweepRow] = []
    for L in stars:
        if L < 3:
            raise UsageError(f"star sweeps need L >= 3, got {L}")
        for p in range(max_corona_edges(L) + 1):
            G = make_star(L, p) if L <= SWEEP_EXACT_MAX else None
            row = _sweep_row("star", L, p, G, lambda: gamma_star(L, p), mode)
            if row:
                rows.append(row)
    for L in turans:
        if L < 2:
            raise UsageError(f"Turan sweeps need L >= 2, got {L}")
        for K in range(2, L + 1):
            G = make_turan(L, K)[0] if L <= SWEEP_EXACT_MAX else None
            row = _sweep_row("turan", L, K, G, lambda: gamma_turan(turan_spec(L, K)), mode)
            if row:
                rows.append(row)
    return rows


GNUPLOT_TEMPLATE = """\
# gamma/L against p/L for each L; data from `graphres sweep`
set datafile separator ','
set key autotitle columnhead
set xlabel 'p / L'
set ylabel 'gamma / L'
set yrange [0:*]
plot for [L in '{Ls}'] '{csv}' using (strcol(1) eq 'star' && $2 == L ? $3 / $2 : NaN):5 \\
     with linespoints title 'L='.L, \\
     0.5 with lines dashtype 2 title 'Bell limit'
"""


def cmd_sweep(args) -> int:
    stars = _parse_int_list(args.star_family)
    turans = _parse_int_list(args.turan_family)
    rows = sweep_rows(stars, turans, args.mode)
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=1))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow(r.as_csv())
        if args.out:
            Path(args.out).write_text(buf.getvalue())
            _err(f"wrote {len(rows)} rows to {args.out}")
        else:
            sys.stdout.write(buf.getvalue())
    if args.gnuplot:
        data = args.out or "sweep.csv"
        Path(args.gnuplot).write_text(GNUPLOT_TEMPLATE.format(Ls=" ".join(map(str, stars)), csv=data))
        _err(f"wrote gnuplot script to {args.gnuplot}")
    return EXIT_OK


def cmd_classify(args) -> int:
    if not 2 <= args.max_L <= MAX_CLASSIFY_NODES:
        raise CapabilityError(f"--max-L must be in 2..{MAX_CLASSIFY_NODES}, got {args.max_L}")
    db = classify(args.max_L, verify_orbits=args.verify_orbits,
                  resolutions=not args.skip_resolutions, progress=None if args.quiet else _err)
    if args.out:
        save_atlas(db, args.out)
        _err(f"wrote atlas with {db.total} classes to {args.out}")
    if args.csv:
        export_csv(db, args.csv)
    counts = {str(L): n for L, n in sorted(db.per_L_counts.items())}
    payload = {"max_L": db.max_L, "per_L_counts": counts, "total": db.total}
    lines = [f"L={L}: {n}" for L, n in counts.items()] + [f"total: {db.total}"]
    _emit(args, payload, "\n".join(lines))
    if args.max_L == 8 and db.total != EXPECTED_TOTAL_L8:
        _err(f"expected {EXPECTED_TOTAL_L8} classes up to L=8, found {db.total}")
        return EXIT_COUNT
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphres", description="Many-body correlations of graph states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph file")
    _add_graph_source(p, allow_random=True)
    p.add_argument("--format", choices=FORMATS, default="graph6")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--seed", type=int, default=0, help="seed for --random")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("gamma", help="exact and/or closed-form gamma of a graph state")
    _add_graph_source(p)
    p.add_argument("--mode", choices=("exact", "formula", "both"), default="exact")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("certify", help="resource report from gamma or from a graph")
    p.add_argument("--gamma", type=float)
    p.add_argument("--L", type=int)
    _add_graph_source(p, required=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("sweep", help="gamma over a topology family as CSV")
    p.add_argument("--star-family", metavar="LS", help="node counts, e.g. '4 6 10 100 1000'; p runs over all corona edges")
    p.add_argument("--turan-family", metavar="LS", help="node counts; K runs over 2..L")
    p.add_argument("--mode", choices=("exact", "formula", "both"), default="both")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--gnuplot", metavar="PATH", help="also write a gnuplot script for the star rows")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classify", help="local-complementation classes of connected graphs")
    p.add_argument("--max-L", type=int, default=8)
    p.add_argument("--out", metavar="PATH", help="atlas JSON")
    p.add_argument("--csv", metavar="PATH", help="class table as CSV")
    p.add_argument("--verify-orbits", action="store_true", help="check gamma on every orbit member")
    p.add_argument("--skip-resolutions", action="store_true", help="do not re-derive the formula variant choices")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "certify" and args.gamma is not None and not (args.gamma >= 0 and math.isfinite(args.gamma)):
        parser.error(f"--gamma must be a finite non-negative number, got {args.gamma}")
    try:
        return args.func(args)
    except (UsageError, DomainError, ParseError, FormulaNotApplicable) as exc:
        _err(str(exc))
        return EXIT_USAGE
    except CapabilityError as exc:
        _err(str(exc))
        return EXIT_CAPABILITY
    except GraphresError as exc:
        _err(str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
