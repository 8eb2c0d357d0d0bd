"""Worked examples as data, plus deterministic text renderings of each.

The renderings are compared byte-for-byte against committed golden files,
so every line here must be deterministic.
"""

from .asmodel import as_diagnostics, gillies_standard
from .ccr import (
    covering_relation,
    dodgson_score,
    dodgson_ccr,
    gillies_covering_ccr,
    majority_ccr,
    majority_dodgson_ccr,
    ranked_pairs_all,
    ranked_pairs_ccr,
    split_cycle_defeats,
    split_cycle_defeats_by_cycles,
)
from .choice import ChoiceFunction, check_choice_condition
from .margins import MarginGraph, margin, margin_graph
from .profiles import Profile, context, restrict
from .relations import check_property, decompose

__all__ = [
    "FIGURE_IDS",
    "render_figure",
    "relation_summary",
    "strict_pairs",
    "fig1_profiles",
    "fig3_graph",
    "fig3_profile",
    "fig4_profile",
    "fig5_profile",
    "fig6_graph",
    "fig7_graph",
    "fishburn_profiles",
]


def fig1_profiles():
    """Two profiles agreeing on {a, b}; the second is a Condorcet cycle."""
    c = ["a", "b", "c"]
    left = Profile.from_ballots(c, [(1, "a>b>c"), (1, "b>a>c"), (1, "a>b>c")])
    right = Profile.from_ballots(c, [(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")])
    return left, right


def fig3_graph():
    edges = {("a", "b"): 1, ("b", "c"): 1, ("c", "d"): 1, ("d", "a"): 1, ("d", "b"): 1, ("a", "c"): 1}
    return MarginGraph.from_edges(["a", "b", "c", "d"], edges)


def fig3_profile():
    """Three linear ballots whose majority graph is :func:`fig3_graph`'s edge set."""
    return Profile.from_ballots(
        ["a", "b", "c", "d"], [(1, "a>b>c>d"), (1, "c>d>a>b"), (1, "d>a>b>c")]
    )


def fig4_profile():
    return Profile.from_ballots(["a", "b", "c"], [(5, "a>b>c"), (2, "b>c>a"), (3, "c>a>b")])


def fig5_profile():
    return Profile.from_ballots(["a", "b", "c"], [(4, "a>b>c"), (2, "b>c>a"), (3, "c>a>b")])


def fig6_graph():
    return MarginGraph.from_edges(["a", "b", "c"], {("a", "b"): 3, ("b", "c"): 3, ("c", "a"): 1})


def fig7_graph():
    # weights 9 (a->c) and 5 (d->b) are reconstructed from the drawing
    edges = {
        ("a", "c"): 9,
        ("d", "b"): 5,
        ("b", "a"): 3,
        ("c", "b"): 7,
        ("d", "c"): 11,
        ("a", "d"): 1,
    }
    return MarginGraph.from_edges(["a", "b", "c", "d"], edges)


_FISHBURN_COUNTS = (3, 2, 9, 5, 9, 13, 2)
_FISHBURN_COLUMNS = {
    "R": ("yxzw", "yxzw", "ywzx", "xzyw", "xywz", "zxwy", "zxwy"),
    "R'": ("yxzw", "yzxw", "ywzx", "xzyw", "xywz", "zxwy", "xzwy"),
    "S": ("yxzw", "xzwy", "ywzx", "xzyw", "xywz", "zxwy", "yzxw"),
    "S'": ("yxzw", "zxwy", "ywzx", "xzyw", "xywz", "zxwy", "yxzw"),
}


def fishburn_profiles():
    """The four 43-voter Dodgson profiles, keyed R, R', S, S'."""
    return {
        name: Profile.from_ballots(
            ["x", "y", "z", "w"],
            [(k, ">".join(col)) for k, col in zip(_FISHBURN_COUNTS, cols)],
        )
        for name, cols in _FISHBURN_COLUMNS.items()
    }


# -- formatting ----------------------------------------------------------------


def strict_pairs(r):
    return [f"{x}P{y}" for x, y in decompose(r)[0].pairs()]


def relation_summary(r):
    """P, I and N lists over distinct candidates, each symmetric pair once."""
    strict, ind, non = decompose(r)
    names = r.candidates.names
    sym = lambda rel, tag: [
        f"{x}{tag}{y}"
        for i, x in enumerate(names)
        for y in names[i + 1:]
        if rel.holds(x, y)
    ]
    return {
        "P": [f"{x}P{y}" for x, y in strict.pairs()],
        "I": sym(ind, "I"),
        "N": sym(non, "N"),
    }


def _rel_lines(r, indent="  "):
    s = relation_summary(r)
    return [f"{indent}{k}: {{{', '.join(v)}}}" for k, v in s.items()]


def _set(xs):
    return "{" + ",".join(sorted(xs)) + "}"


def _edges(g):
    return [f"  {x}->{y} {w}" for x, y, w in g.edges()]


def _profile_lines(p):
    return ["  " + line for line in p.describe()]


# -- renderers -----------------------------------------------------------------


def _fig1():
    left, right = fig1_profiles()
    lines = ["fig1: two profiles with the same restriction to {a,b}", "R:"]
    lines += ["  " + f"voter {i}: {r}" for i, r in enumerate(left.rankings)]
    lines += ["R':"]
    lines += ["  " + f"voter {i}: {r}" for i, r in enumerate(right.rankings)]
    lines.append(f"restriction to {{a,b}}: R={restrict(left, ('a', 'b'))} R'={restrict(right, ('a', 'b'))}")
    lines.append("majority relation on R:")
    lines += _rel_lines(majority_ccr(left))
    lines.append("majority relation on R':")
    lines += _rel_lines(majority_ccr(right))
    lines.append(f"majority on R' acyclic: {check_property(majority_ccr(right), 'acyclic')}")
    return lines


def _fig3():
    g = fig3_graph()
    cov = covering_relation(g)
    p = fig3_profile()
    lines = ["fig3: majority graph and covering relation", "majority edges:"]
    lines += [f"  {x}->{y}" for x, y, _ in g.edges()]
    lines.append("covering relation:")
    lines += _rel_lines(cov)
    lines.append(f"covering complete: {check_property(cov, 'complete')}")
    lines.append("realizing profile:")
    lines += _profile_lines(p)
    lines.append(f"same covering from profile: {gillies_covering_ccr(p) == cov}")
    lines.append(f"standard for (a,b): {gillies_standard(context(p, ('a', 'b')), 'a', 'b')}")
    return lines


def _fig4():
    p = fig4_profile()
    g = margin_graph(p)
    cov = gillies_covering_ccr(p)
    c = ChoiceFunction(cov)
    beta = check_choice_condition(c, "beta")
    lines = ["fig4: covering whose strict part is not negatively transitive", "profile:"]
    lines += _profile_lines(p)
    lines.append("margin edges:")
    lines += _edges(g)
    lines.append("covering relation:")
    lines += _rel_lines(cov)
    lines.append(f"strict part negatively transitive: {check_property(cov, 'negatively_transitive')}")
    lines.append(f"M({{b,c}}) = {_set(c({'b', 'c'}))}")
    lines.append(f"M({{a,b,c}}) = {_set(c({'a', 'b', 'c'}))}")
    w = beta.detail
    lines.append(f"beta: {beta.verdict} (Y={_set(w['Y'])}, Z={_set(w['Z'])})")
    lines.append(
        f"path independence: {check_choice_condition(c, 'path_independence').verdict}"
    )
    lines.append(f"standard for (b,c): {gillies_standard(context(p, ('b', 'c')), 'b', 'c')}")
    return lines


def _fig5():
    p = fig5_profile()
    g = margin_graph(p)
    lines = ["fig5: Ranked Pairs", "profile:"]
    lines += _profile_lines(p)
    lines.append("margin edges:")
    lines += _edges(g)
    lines.append(f"locked: {{{', '.join(strict_pairs(ranked_pairs_all(g)))}}}")
    lines.append("social relation:")
    lines += _rel_lines(ranked_pairs_ccr()(p))
    lines.append("advantage / standard:")
    _, rows = as_diagnostics("ranked-pairs", p)
    lines += [f"  ({x},{y}) advantage {a} standard {s} -> {'P' if w else '-'}" for x, y, a, s, w in rows]
    return lines


def _fig6():
    g = fig6_graph()
    sc = split_cycle_defeats(g)
    c = ChoiceFunction(sc)
    lines = ["fig6: margin graph against path independence", "margin edges:"]
    lines += _edges(g)
    lines.append(f"split cycle defeats: {{{', '.join(strict_pairs(sc))}}}")
    for ys in ({"a", "b", "c"}, {"a", "b"}, {"a", "c"}, {"b", "c"}):
        lines.append(f"C({_set(ys)}) = {_set(c(ys))}")
    lines.append(f"path independence: {check_choice_condition(c, 'path_independence').verdict}")
    return lines


def _fig7():
    g = fig7_graph()
    sc = split_cycle_defeats(g)
    rp = ranked_pairs_all(g)
    lines = [
        "fig7: Split Cycle",
        "note: weights a->c 9 and d->b 5 are reconstructed from the drawing",
        "margin edges:",
    ]
    lines += _edges(g)
    lines.append(f"split cycle defeats: {{{', '.join(strict_pairs(sc))}}}")
    lines.append(f"cycle definition agrees: {split_cycle_defeats_by_cycles(g) == sc}")
    lines.append(f"ranked pairs: {{{', '.join(strict_pairs(rp))}}}")
    lines.append(f"ranked pairs minus split cycle: {{{', '.join(strict_pairs(rp - sc))}}}")
    lines.append("covering relation:")
    lines += _rel_lines(covering_relation(g))
    return lines


def _verdict(r, x, y):
    if r.holds(x, y) and not r.holds(y, x):
        return f"{x}P{y}"
    if r.holds(y, x) and not r.holds(x, y):
        return f"{y}P{x}"
    return f"{x}I{y}" if r.holds(x, y) else f"{x}N{y}"


def _ex38():
    ps = fishburn_profiles()
    r = ps["R"]
    lines = ["ex3.8: Dodgson is not orderable", "profile R:"]
    lines += _profile_lines(r)
    lines.append("margins in R:")
    for x, y in (("x", "y"), ("x", "w"), ("y", "z"), ("y", "w"), ("z", "x"), ("z", "w")):
        lines.append(f"  margin({x},{y}) = {margin(r, x, y)}")
    for name, p in ps.items():
        scores = ", ".join(f"{x}:{dodgson_score(p, x)}" for x in p.candidates)
        lines.append(f"{name}: scores {scores}; restriction {restrict(p, ('x', 'z'))}; "
                     f"dodgson {_verdict(dodgson_ccr(p), 'x', 'z')}")
    rp, sp = "R'", "S'"
    ctx = {k: context(v, ("x", "z")) for k, v in ps.items()}
    res = {k: restrict(v, ("x", "z")) for k, v in ps.items()}
    lines.append(f"R and R' share a context: {ctx['R'] == ctx[rp]}")
    lines.append(f"S and S' share a context: {ctx['S'] == ctx[sp]}")
    lines.append(f"R and S share a restriction: {res['R'] == res['S']}")
    lines.append(f"R' and S' share a restriction: {res[rp] == res[sp]}")
    return lines


def _ex39():
    ps = fishburn_profiles()
    lines = ["ex3.9: Majority Dodgson is not orderable"]
    for name, p in ps.items():
        lines.append(f"{name}: majority dodgson {_verdict(majority_dodgson_ccr(p), 'x', 'z')}")
    return lines


_RENDERERS = {
    "fig1": _fig1,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
    "ex3.8": _ex38,
    "ex3.9": _ex39,
}
FIGURE_IDS = tuple(_RENDERERS)


def render_figure(fid):
    """Text rendering of one example; raises KeyError for unknown ids."""
    if fid not in _RENDERERS:
        raise KeyError(fid)
    return "\n".join(_RENDERERS[fid]()) + "\n"
