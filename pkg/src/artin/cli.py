"""Command-line front end.

Exit codes: 0 success, 1 domain refusal, 2 usage error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from typing import Optional

from . import coset_tree as ct
from .deligne import (
    INF,
    DimensionError,
    GraphError,
    check_link_condition,
    is_connected,
    is_reducible,
    is_right_angled,
    is_two_dimensional,
    join_decomposition,
    link,
    load_graph,
    parse_vertex,
    systole,
)
from .dihedral import (
    CentralPower,
    ConjGenPower,
    DihedralArtinGroup,
    SearchCaps,
    classify_element,
    growth_table,
    syllabic_bounds,
)
from .freeword import Word, WordParseError, format_word, parse
from .garside import DeltaOverflowError
from .repro import DEFAULT_SEED, SUITES, run_suite
from .witness import GeometryError, InconclusiveError, PreconditionError, emit_certificate, to_svg

OK, REFUSED, USAGE, INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _group(args) -> DihedralArtinGroup:
    try:
        return DihedralArtinGroup(args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


_json_out = None  # real stdout while the text report is diverted to stderr


def _emit_json(path: Optional[str], data) -> None:
    if path is None:
        return
    text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    if path == "-":
        (_json_out or sys.stdout).write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# --- dihedral ----------------------------------------------------------------


def cmd_nf(args) -> int:
    G = _group(args)
    form = G.normal_form(parse(args.word))
    atoms = [str(a) for a in form.atoms]
    print(f"atoms: {','.join(atoms) if atoms else '(none)'}")
    print(f"N={form.delta_exp}")
    print(f"word: {format_word(form.word())}")
    if args.trace:
        trace = G.trace(parse(args.word))
        print(f"after step 1: {trace.render(1)}")
        print(f"after step 2: {trace.render(2)}")
    _emit_json(args.json, {"m": args.m, "atoms": atoms, "delta_exp": form.delta_exp, "word": format_word(form.word())})
    return OK


def cmd_eq(args) -> int:
    G = _group(args)
    same = G.equal(parse(args.w1), parse(args.w2))
    print("equal" if same else "different")
    _emit_json(args.json, {"m": args.m, "equal": same})
    return OK


def _caps(args) -> SearchCaps:
    try:
        return SearchCaps(args.exp_cap, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_syl(args) -> int:
    G = _group(args)
    b = syllabic_bounds(G, parse(args.word), _caps(args))
    print(f"lower={b.lower} upper={b.upper} exact={'yes' if b.exact else 'no'}")
    print(f"witness: {format_word(b.witness)}")
    _emit_json(args.json, {"lower": b.lower, "upper": b.upper, "exact": b.exact, "witness": format_word(b.witness)})
    return OK


def cmd_classify(args) -> int:
    G = _group(args)
    result = classify_element(G, parse(args.word), args.power_bound)
    if isinstance(result, CentralPower):
        print(f"elliptic: g^{result.power} = Δ^{result.delta_exp} is central")
        data = {"type": "central-power", "power": result.power, "delta_exp": result.delta_exp}
    elif isinstance(result, ConjGenPower):
        power = format_word(Word(((result.s, result.M),)))
        print(f"conjugate of a generator power: g = h {power} h^-1 Δ^{result.delta_exp}, h = {format_word(result.h)}")
        data = {
            "type": "conjugate-generator-power",
            "h": format_word(result.h),
            "s": result.s,
            "M": result.M,
            "delta_exp": result.delta_exp,
        }
    else:
        print(f"loxodromic on the cone-off tree: translation length {result.translation_length} on T")
        data = {"type": "loxodromic", "translation_length": result.translation_length}
    _emit_json(args.json, data)
    return OK


def cmd_growth(args) -> int:
    G = _group(args)
    rows = growth_table(G, parse(args.word), args.nmax, _caps(args))
    for n, lo, hi in rows:
        print(f"{n}\t{lo}\t{hi}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "lower", "upper"])
            writer.writerows(rows)
    return OK


# --- tree --------------------------------------------------------------------


def tree_dot(ball: ct.TreeBall) -> str:
    names = {v: f"n{i}" for i, v in enumerate(ball.dist)}
    lines = [f'graph "T_m{ball.m}_r{ball.radius}" {{']
    for v in ball.dist:
        shape = "circle" if v[0] == "V" else "square"
        lines.append(f'  {names[v]} [shape={shape}, label="{ct.node_label(v)}"];')
    for u, v in ball.edges:
        lines.append(f"  {names[u]} -- {names[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_tree_ball(args) -> int:
    _group(args)
    ball = ct.build_ball(args.m, args.radius)
    print(f"nodes={len(ball.dist)} cosets={len(ball.cosets())} simplices={len(ball.simplices())}")
    print(f"acyclic={'yes' if ball.is_acyclic() else 'no'} interior valences={sorted(ball.interior_valences())}")
    if args.dot:
        _write(args.dot, tree_dot(ball))
    return OK


def cmd_dhat(args) -> int:
    _group(args)
    target = ct.coset_of(args.m, parse(args.word))
    res = ct.dhat_distance(args.m, ct.BASE, target)
    print(f"tree distance={res.tree_distance}")
    print(f"cone-off distance: lower={res.lower} upper={res.upper}")
    _emit_json(args.json, {"tree_distance": res.tree_distance, "lower": res.lower, "upper": res.upper})
    return OK


# --- graphs and links --------------------------------------------------------


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_graph_check(args) -> int:
    graph = load_graph(args.file)
    dim = is_two_dimensional(graph)
    split = join_decomposition(graph)
    report = {
        "rank": len(graph.vertices),
        "connected": is_connected(graph),
        "two_dimensional": dim.ok,
        "irreducible": not is_reducible(graph),
        "right_angled": is_right_angled(graph),
    }
    print(f"dimension-2: {_yes(dim.ok)}" + ("" if dim.ok else f" ({dim.reason})"))
    print(f"irreducible: {_yes(report['irreducible'])}" + ("" if split is None else f" (join {split})"))
    print(f"connected: {_yes(report['connected'])}")
    print(f"right-angled: {_yes(report['right_angled'])}")
    _emit_json(args.json, report)
    return OK


def cmd_links(args) -> int:
    graph = load_graph(args.file)
    try:
        vertex = parse_vertex(args.vertex, graph)
        lk = link(graph, vertex, args.radius)
    except KeyError as exc:
        print(f"artin: {exc.args[0]}", file=sys.stderr)
        return USAGE
    sys_ = systole(lk)
    value = "∞" if sys_ == INF else f"{sys_}π"
    scope = "exact" if lk.exact else "finite ball"
    print(f"{lk.name}: {len(lk.vertices)} vertices, {len(lk.edges)} edges ({scope})")
    print(f"systole: {value}")
    if args.dot:
        _write(args.dot, lk.to_dot())
    return OK


def cmd_cat0_check(args) -> int:
    graph = load_graph(args.file)
    report = check_link_condition(graph, args.radius)
    for check in report.checks:
        print(check.describe())
    print("link condition: " + ("holds" if report.ok else "FAILS"))
    return OK if report.ok else REFUSED


# --- witness -----------------------------------------------------------------


def cmd_witness(args) -> int:
    graph = load_graph(args.file)
    try:
        cert = emit_certificate(graph)
    except PreconditionError as exc:
        print(f"refused ({exc.kind}): {exc}", file=sys.stderr)
        return REFUSED
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    data = cert.to_dict()
    best = data["crossing"]
    print(f"situation {data['situation']} on generators {', '.join(data['generators'])}")
    print(f"vertex {data['vertex']} (m_ab = {data['m_ab']}), witness g = {data['witness_word']}")
    print(f"crossing: {best['cell']} in {best['tile']}·{best['triangle']}, clearance {best['clearance']:.6g}")
    for note in data["notes"]:
        print(f"note: {note}")
    _emit_json(args.json, data)
    if args.svg:
        _write(args.svg, to_svg(cert))
    return OK


def cmd_repro(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    print(f"suite {args.suite}, seed {args.seed}")
    outcomes = run_suite(args.suite, args.seed)
    for outcome in outcomes:
        print(outcome.line())
    return OK if all(o.ok for o in outcomes) else REFUSED


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artin", description="Dihedral Artin groups, Deligne complexes and malnormality witnesses.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def dihedral(name, help_text, words=1):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-m", type=int, required=True, help="coefficient m >= 3")
        for i in range(words):
            p.add_argument("word" if words == 1 else f"w{i + 1}", help="word such as 'a b^-1 a^2'")
        p.add_argument("--json", metavar="PATH", help="also write JSON ('-' for stdout)")
        return p

    p = dihedral("nf", "Garside normal form")
    p.add_argument("--trace", action="store_true", help="print the two rewriting stages")
    p.set_defaults(func=cmd_nf)

    p = dihedral("eq", "decide equality of two words", words=2)
    p.set_defaults(func=cmd_eq)

    for name, func in (("syl", cmd_syl), ("growth", cmd_growth)):
        p = dihedral(name, "syllabic length bounds" if name == "syl" else "bounds on ℓ_S(g^n) for n = 1..nmax")
        p.add_argument("--exp-cap", type=_positive, default=SearchCaps.exponent, help="largest |exponent| searched")
        p.add_argument("--depth", type=_positive, default=SearchCaps.depth, help="largest syllable count searched")
        if name == "growth":
            p.add_argument("--nmax", type=_positive, default=10)
            p.add_argument("--csv", metavar="PATH", help="write columns n, lower, upper")
        p.set_defaults(func=func)

    p = dihedral("classify", "elliptic / conjugate of generator power / loxodromic")
    p.add_argument("--power-bound", type=_positive, help="largest K tried for g^K central (default 2·m!)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tree-ball", help="ball in the coset tree T")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", "--radius", type=_nonneg, required=True)
    p.add_argument("--dot", metavar="PATH", help="write DOT (cosets as circles, simplices as squares)")
    p.set_defaults(func=cmd_tree_ball)

    p = dihedral("dhat", "cone-off distance from 1 to g·1")
    p.set_defaults(func=cmd_dhat)

    p = sub.add_parser("graph", help="defining graph reports")
    gsub = p.add_subparsers(dest="graph_command", parser_class=_Parser)
    gsub.required = True
    g = gsub.add_parser("check", help="dimension, reducibility, right-angledness, connectivity")
    g.add_argument("file")
    g.add_argument("--json", metavar="PATH")
    g.set_defaults(func=cmd_graph_check)

    p = sub.add_parser("links", help="link of a vertex of the fundamental domain")
    p.add_argument("file")
    p.add_argument("--vertex", required=True, help="v_∅ (or v_0), v_a, v_ab")
    p.add_argument("--radius", type=_positive, help="development radius for infinite links")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_links)

    p = sub.add_parser("cat0-check", help="link condition at every vertex of K_Γ")
    p.add_argument("file")
    p.add_argument("--radius", type=_positive)
    p.set_defaults(func=cmd_cat0_check)

    p = sub.add_parser("witness", help="weak-malnormality certificate")
    p.add_argument("file")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("repro", help="run an acceptance suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the fuzzed items")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "json", None) != "-":
            return args.func(args)
        global _json_out
        _json_out = sys.stdout
        try:
            with contextlib.redirect_stdout(sys.stderr):
                return args.func(args)
        finally:
            _json_out = None
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"artin: error: {exc}", file=sys.stderr)
        return USAGE
    except WordParseError as exc:
        print(f"artin: bad word: {exc}", file=sys.stderr)
        return USAGE
    except (GraphError, OSError) as exc:
        print(f"artin: {exc}", file=sys.stderr)
        return USAGE
    except (PreconditionError, DimensionError, ct.EllipticError, ct.BudgetExceededError, DeltaOverflowError) as exc:
        print(f"artin: refused: {exc}", file=sys.stderr)
        return REFUSED
    except (InconclusiveError, GeometryError) as exc:
        print(f"artin: inconclusive: {exc}", file=sys.stderr)
        return INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
