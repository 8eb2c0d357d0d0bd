"""Command-line front end.

Exit codes: 0 success (or every requested axiom holds), 1 an axiom or
rationalization failed, 2 the input could not be parsed or validated,
3 the requested space is out of bounds, 4 unknown figure id.
"""

import argparse
import json
import sys
from math import factorial
from pathlib import Path

from . import __version__
from .asmodel import (
    CLOSED_FORMS,
    CoverageError,
    NotRationalizable,
    as_diagnostics,
    closed_form_rationalization,
    construct_rationalization,
    verify_rationalization,
)
from .axioms import (
    PAIRWISE_AXIOMS,
    POWER_KINDS,
    UNARY_AXIOMS,
    check_axiom,
    find_power_holders,
)
from .ccr import REGISTRY_NAMES, NotLinearError, dodgson_score, get_ccr
from .figures import FIGURE_IDS, relation_summary, render_figure
from .margins import MarginGraph
from .profiles import ProfileFormatError, ProfileSpace, ordered_bell, profile_from_json

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BOUNDS, EXIT_UNKNOWN = 0, 1, 2, 3, 4
CONFIRM_LIMIT = 10**7

ALL_AXIOMS = PAIRWISE_AXIOMS + UNARY_AXIOMS + ("orderability",)


class UsageError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _axiom_name(text):
    norm = text.replace("-", "_").lower()
    for a in ALL_AXIOMS:
        if a.lower() == norm:
            return a
    raise UsageError(f"unknown axiom {text!r}; choose from {', '.join(ALL_AXIOMS)}", EXIT_PARSE)


def _rule(args):
    try:
        return get_ccr(args.ccr, measure=args.measure, policy=args.policy, voter=args.voter)
    except (KeyError, ValueError) as e:
        raise UsageError(str(e).strip("'\""), EXIT_PARSE) from None


def _candidates(n):
    if n < 2:
        raise UsageError("need at least two candidates", EXIT_BOUNDS)
    if n > 26:
        raise UsageError("at most 26 candidates are supported", EXIT_BOUNDS)
    return [chr(ord("a") + k) for k in range(n)]


def _space(f, n_candidates, n_voters, confirmed, out):
    names = _candidates(n_candidates)
    if n_voters < 1:
        raise UsageError("need at least one voter", EXIT_BOUNDS)
    per_voter = factorial(n_candidates) if f.linear_only else ordered_bell(n_candidates)
    size = per_voter**n_voters
    kind = "linear" if f.linear_only else "weak-order"
    if size > CONFIRM_LIMIT:
        print(f"space: {size} {kind} profiles ({per_voter}^{n_voters})", file=out)
        if not confirmed:
            raise UsageError(
                f"space of {size} profiles exceeds {CONFIRM_LIMIT}; rerun with --yes to proceed",
                EXIT_BOUNDS,
            )
    return ProfileSpace(names, n_voters, linear=f.linear_only)


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}", EXIT_PARSE) from None


# -- tally ---------------------------------------------------------------------


def _fmt_value(v):
    return str(v)


def cmd_tally(args, out):
    f = _rule(args)
    text = _read_text(args.input)
    if args.graph:
        try:
            g = MarginGraph.from_json(text)
        except (ValueError, KeyError, TypeError) as e:
            raise UsageError(f"invalid margin graph: {e}", EXIT_PARSE) from None
        try:
            strict = f.on_graph(g)
        except ValueError as e:
            raise UsageError(str(e), EXIT_PARSE) from None
        if args.format == "json":
            doc = {"rule": f.label, "P": [list(p) for p in strict.pairs()]}
            print(json.dumps(doc), file=out)
        else:
            print(f"rule: {f.label} (margin-graph input)", file=out)
            print(f"P: {{{', '.join(f'{x}P{y}' for x, y in strict.pairs())}}}", file=out)
            if args.dot:
                print(g.to_dot(), file=out)
        return EXIT_OK
    try:
        p = profile_from_json(text)
    except ProfileFormatError as e:
        raise UsageError(f"invalid profile: {e}", EXIT_PARSE) from None
    try:
        social = f(p)
    except NotLinearError as e:
        raise UsageError(f"invalid profile: {e}", EXIT_PARSE) from None
    except ValueError as e:
        raise UsageError(str(e), EXIT_PARSE) from None
    summary = relation_summary(social)
    g = MarginGraph.from_profile(p, args.measure)
    doc = {"rule": f.label, "voters": p.n_voters, **summary}
    doc["edges"] = [[x, y, _fmt_value(w)] for x, y, w in g.edges()]
    if f.name in ("dodgson", "majority-dodgson"):
        doc["dodgson_scores"] = {x: dodgson_score(p, x) for x in p.candidates}
    if f.name in CLOSED_FORMS:
        measure = args.measure if f.name in ("ranked-pairs", "split-cycle") else "margin"
        _, rows = as_diagnostics(f.name, p, measure)
        doc["advantage_standard"] = [
            {"x": x, "y": y, "advantage": _fmt_value(a), "standard": _fmt_value(s), "P": w}
            for x, y, a, s, w in rows
        ]
    if args.format == "json":
        print(json.dumps(doc), file=out)
        return EXIT_OK
    print(f"rule: {f.label}", file=out)
    print(f"voters: {p.n_voters}", file=out)
    for key in ("P", "I", "N"):
        print(f"{key}: {{{', '.join(summary[key])}}}", file=out)
    print(f"{args.measure} edges:", file=out)
    for x, y, w in doc["edges"]:
        print(f"  {x}->{y} {w}", file=out)
    if "dodgson_scores" in doc:
        scores = ", ".join(f"{x}:{s}" for x, s in doc["dodgson_scores"].items())
        print(f"dodgson scores: {scores}", file=out)
    if "advantage_standard" in doc:
        print("advantage / standard:", file=out)
        for row in doc["advantage_standard"]:
            mark = "P" if row["P"] else "-"
            print(f"  ({row['x']},{row['y']}) {row['advantage']} vs {row['standard']} -> {mark}",
                  file=out)
    if args.dot:
        print(g.to_dot(), file=out)
    return EXIT_OK


# -- axioms --------------------------------------------------------------------


def cmd_axioms(args, out):
    f = _rule(args)
    if args.all or not args.axiom:
        axioms = list(ALL_AXIOMS)
    else:
        axioms = [_axiom_name(a) for a in args.axiom]
    space = _space(f, args.X, args.V, args.yes, out)
    reports = [check_axiom(f, a, space) for a in axioms]
    powers = {}
    if args.powers:
        for kind in POWER_KINDS:
            powers[kind] = sorted(find_power_holders(f, kind, space))
    if args.format == "json":
        doc = {"rule": f.label, "X": args.X, "V": args.V,
               "reports": [r.to_dict() for r in reports]}
        if powers:
            doc["power_holders"] = powers
        print(json.dumps(doc), file=out)
    else:
        print(f"rule: {f.label}  |X|={args.X}  |V|={args.V}  profiles={len(space)}", file=out)
        for r in reports:
            print(("  ok   " if r.holds else "  FAIL ") + r.axiom, file=out)
            if not r.holds:
                print("       witness: " + json.dumps(r.to_dict()["witness"]), file=out)
        for kind, who in powers.items():
            print(f"  {kind}s: {who}", file=out)
    return EXIT_OK if all(r.holds for r in reports) else EXIT_FAIL


# -- rationalize ---------------------------------------------------------------


def cmd_rationalize(args, out):
    f = _rule(args)
    space = _space(f, args.X, args.V, args.yes, out)
    if args.closed_form:
        if f.name not in CLOSED_FORMS:
            raise UsageError(
                f"no closed form for {f.name}; choose from {', '.join(CLOSED_FORMS)}", EXIT_PARSE
            )
        try:
            r = closed_form_rationalization(f.name, space, args.measure)
        except ValueError as e:
            raise UsageError(str(e), EXIT_PARSE) from None
    else:
        try:
            r = construct_rationalization(f, space=space)
        except NotRationalizable as e:
            print(f"not rationalizable: {e.report.axiom} fails", file=out)
            print(e.report.to_json(), file=out)
            return EXIT_FAIL
    try:
        report = verify_rationalization(f, r, space)
    except CoverageError as e:
        print(f"coverage error: {e}", file=out)
        return EXIT_FAIL
    print(f"rule: {f.label}  group: {r.group.tag}  "
          f"advantage entries: {len(r.advantage)}  standard entries: {len(r.standard)}",
          file=out)
    print(f"verification: {report.verdict}", file=out)
    if not report.holds:
        print(report.to_json(), file=out)
    if args.output:
        Path(args.output).write_text(r.to_json(indent=1) + "\n", encoding="utf-8")
        print(f"tables written to {args.output}", file=out)
    return EXIT_OK if report.holds else EXIT_FAIL


# -- search --------------------------------------------------------------------


def cmd_search(args, out):
    f = _rule(args)
    axiom = _axiom_name(args.axiom)
    for v in range(1, args.V + 1):
        space = _space(f, args.X, v, args.yes, out)
        r = check_axiom(f, axiom, space)
        if not r.holds:
            print(f"counterexample to {axiom} at |X|={args.X}, |V|={v}:", file=out)
            print(r.to_json(indent=1), file=out)
            return EXIT_OK
        print(f"|V|={v}: {axiom} holds on all {len(space)} profiles", file=out)
    print(f"no counterexample to {axiom} up to |V|={args.V}", file=out)
    return EXIT_FAIL


# -- figures -------------------------------------------------------------------


def cmd_figures(args, out):
    ids = FIGURE_IDS if args.id == "all" else (args.id,)
    if args.id == "list":
        print("\n".join(FIGURE_IDS), file=out)
        return EXIT_OK
    for fid in ids:
        if fid not in FIGURE_IDS:
            raise UsageError(
                f"unknown figure {fid!r}; choose from {', '.join(FIGURE_IDS)}, all, list",
                EXIT_UNKNOWN,
            )
    for fid in ids:
        text = render_figure(fid)
        if args.output_dir:
            d = Path(args.output_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{fid}.txt").write_text(text, encoding="utf-8")
        else:
            out.write(text)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _rule_options(p):
    p.add_argument("--ccr", required=True, help=f"rule: {', '.join(REGISTRY_NAMES)}")
    p.add_argument("--measure", choices=("margin", "ratio"), default="margin")
    p.add_argument("--policy", choices=("pareto-indifference", "complete-closure"),
                   default="pareto-indifference", help="Ranked Pairs weak part")
    p.add_argument("--voter", type=int, default=0, help="dictator index")


def _space_options(p):
    p.add_argument("--X", type=int, required=True, help="number of candidates")
    p.add_argument("--V", type=int, required=True, help="number of voters")
    p.add_argument("--yes", action="store_true", help=f"allow spaces above {CONFIRM_LIMIT}")


def build_parser():
    parser = argparse.ArgumentParser(prog="advstd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tally", help="apply a rule to one profile or margin graph")
    t.add_argument("input", help="profile JSON file, or - for stdin")
    _rule_options(t)
    t.add_argument("--graph", action="store_true", help="input is a margin-graph JSON")
    t.add_argument("--dot", action="store_true", help="also print the margin graph as DOT")
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.set_defaults(func=cmd_tally)

    a = sub.add_parser("axioms", help="check axioms over a full profile space")
    _rule_options(a)
    _space_options(a)
    a.add_argument("--axiom", action="append", help="axiom to check (repeatable)")
    a.add_argument("--all", action="store_true", help="check every axiom")
    a.add_argument("--powers", action="store_true", help="also list power holders")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.set_defaults(func=cmd_axioms)

    r = sub.add_parser("rationalize", help="build and verify an advantage/standard model")
    _rule_options(r)
    _space_options(r)
    r.add_argument("--closed-form", action="store_true", help="use the rule's closed form")
    r.add_argument("--output", help="write the tables as JSON")
    r.set_defaults(func=cmd_rationalize)

    s = sub.add_parser("search", help="look for the smallest counterexample to an axiom")
    _rule_options(s)
    _space_options(s)
    s.add_argument("--axiom", required=True)
    s.set_defaults(func=cmd_search)

    fg = sub.add_parser("figures", help="reproduce a worked example")
    fg.add_argument("id", help=f"{', '.join(FIGURE_IDS)}, all or list")
    fg.add_argument("--output-dir", help="write <id>.txt files here instead of stdout")
    fg.set_defaults(func=cmd_figures)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
