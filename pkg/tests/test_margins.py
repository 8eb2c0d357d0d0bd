from fractions import Fraction
from itertools import product

import pytest

from advstd.figures import fig3_graph, fig4_profile, fig5_profile, fig6_graph, fig7_graph, fishburn_profiles
from advstd.margins import (
    MarginGraph,
    majority_cycles,
    majority_paths,
    margin,
    margin_graph,
    max_split_over_paths,
    ratio,
    ratio_granularity,
    ratio_values,
    splitting_number,
    widest_path_matrix,
)
from advstd.profiles import PairRestriction, Profile, permute_candidates, permute_voters

ABC = ["a", "b", "c"]


def test_fig5_margins():
    p = fig5_profile()
    assert (margin(p, "a", "b"), margin(p, "b", "c"), margin(p, "c", "a")) == (5, 3, 1)
    assert margin_graph(p).edges() == [("a", "b", 5), ("b", "c", 3), ("c", "a", 1)]


def test_fig4_margin_graph():
    assert margin_graph(fig4_profile()).edges() == [("a", "b", 6), ("b", "c", 4)]


def test_43_voter_margin():
    assert margin(fishburn_profiles()["R"], "x", "y") == 15


def test_all_indifferent_margin():
    p = Profile.from_ballots(ABC, [(4, "a~b~c")])
    assert margin(p, "a", "b") == 0 and ratio(p, "a", "b") == 1
    assert margin_graph(p).edges() == []


def test_ratio_cases():
    q = PairRestriction("x", "y", ">" * 70 + "<" * 30)
    assert ratio(q, "x", "y") == Fraction(7, 3)
    q = PairRestriction("x", "y", ">" + "~" * 99)
    assert ratio(q, "x", "y") == 100
    assert ratio(q, "y", "x") == Fraction(1, 100)
    assert ratio(PairRestriction("x", "y", "~~~"), "x", "y") == 1
    assert ratio(q, "x", "y", refined=True) == 101


def test_ratio_and_margin_antisymmetry():
    for syms in product("><~", repeat=4):
        q = PairRestriction("x", "y", syms)
        assert margin(q, "x", "y") == -margin(q, "y", "x")
        assert ratio(q, "x", "y") * ratio(q, "y", "x") == 1


def test_ratio_value_set():
    # two voters: 1/2, 1, 2 from the unopposed cases; 1/1 from a split
    assert ratio_values(2) == [Fraction(1, 2), Fraction(1), Fraction(2)]
    assert ratio_granularity(2) == Fraction(1, 2)
    vals = ratio_values(3)
    assert Fraction(2) in vals and Fraction(1, 2) in vals and Fraction(3) in vals


def test_graph_validation():
    with pytest.raises(ValueError):
        MarginGraph(["a", "b"], [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        MarginGraph.from_edges(["a", "b"], {("a", "a"): 1})
    with pytest.raises(ValueError):
        MarginGraph.from_edges(["a", "b"], {("a", "b"): Fraction(1, 2)}, "ratio")


def test_graph_json_round_trip():
    for g in (fig7_graph(), MarginGraph.from_edges(ABC, {("a", "b"): Fraction(3, 2)}, "ratio")):
        assert MarginGraph.from_json(g.to_json()) == g
    assert '"a" -> "c" [label="9"]' in fig7_graph().to_dot()


def test_paths():
    assert ("d", "a") in list(majority_paths(fig3_graph(), "d", "a"))
    assert list(majority_paths(fig7_graph(), "b", "a")) == [("b", "a")]
    empty = MarginGraph.from_edges(ABC, {})
    assert list(majority_paths(empty, "a", "b")) == []


def test_path_repetition_rule():
    g = fig3_graph()
    for s in "abcd":
        for t in "abcd":
            for path in majority_paths(g, s, t):
                inner = path[:-1] if s == t else path
                assert len(set(inner)) == len(inner)


def test_cycles_of_fig3():
    cycles = {tuple(c) for c in majority_cycles(fig3_graph())}
    assert ("a", "b", "c", "d", "a") in cycles and ("a", "c", "d", "a") in cycles


def test_splitting_numbers():
    g5 = margin_graph(fig5_profile())
    assert splitting_number(g5, ("a", "b", "c", "a")) == 1
    assert splitting_number(fig7_graph(), ("a", "c", "b", "a")) == 3
    assert splitting_number(g5, ("a", "b")) == 5
    with pytest.raises(ValueError):
        splitting_number(g5, ("b", "a"))


def test_max_split():
    assert max_split_over_paths(fig7_graph(), "b", "a") == 3
    assert max_split_over_paths(fig6_graph(), "b", "a") == 1
    assert max_split_over_paths(MarginGraph.from_edges(ABC, {}), "a", "b") == 0
    empty_ratio = MarginGraph.from_edges(ABC, {}, "ratio")
    assert max_split_over_paths(empty_ratio, "a", "b") == 1


def test_widest_path_matches_enumeration():
    for g in (fig3_graph(), fig6_graph(), fig7_graph(), margin_graph(fig5_profile())):
        w = widest_path_matrix(g)
        names = g.candidates.names
        for i, s in enumerate(names):
            for j, t in enumerate(names):
                if s != t:
                    assert w[i][j] == max_split_over_paths(g, s, t)


def test_margin_graph_symmetries():
    p = Profile.from_ballots(ABC, [(1, "a>b>c"), (1, "b~c>a"), (1, "c>a>b")])
    assert margin_graph(permute_voters(p, [2, 0, 1])) == margin_graph(p)
    pi = {"a": "c", "b": "a", "c": "b"}
    assert margin_graph(permute_candidates(p, pi)) == margin_graph(p).permuted(pi)
