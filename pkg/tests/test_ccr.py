import random
from itertools import permutations

import pytest

from advstd.ccr import (
    NotLinearError,
    TieBreaker,
    baigent_witness_ccr,
    baigent_witness_literal,
    copeland_ccr,
    copeland_scores,
    covering_relation,
    dictatorship_ccr,
    dodgson_ccr,
    dodgson_score,
    dodgson_score_bfs,
    get_ccr,
    gillies_covering_ccr,
    majority_ccr,
    majority_dodgson_ccr,
    ranked_pairs_all,
    ranked_pairs_ccr,
    ranked_pairs_locked,
    split_cycle_ccr,
    split_cycle_defeats,
    split_cycle_defeats_by_cycles,
    unanimity_ccr,
)
from advstd.figures import (
    fig3_graph,
    fig4_profile,
    fig5_profile,
    fig6_graph,
    fig7_graph,
    fishburn_profiles,
    strict_pairs,
)
from advstd.margins import MarginGraph, margin_graph
from advstd.profiles import Profile, enumerate_profiles
from advstd.relations import check_property, decompose, transitive_closure

ABC = ["a", "b", "c"]


def pairs(r):
    return set(decompose(r)[0].pairs())


def test_majority_on_cycle_profile():
    p = Profile.from_ballots(ABC, [(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")])
    assert pairs(majority_ccr(p)) == {("a", "b"), ("b", "c"), ("c", "a")}


def test_unanimity_and_dictatorship():
    p = Profile.from_ballots(ABC, [(1, "a>b>c"), (1, "a>c>b")])
    u = unanimity_ccr(p)
    assert pairs(u) == {("a", "b"), ("a", "c")}
    assert not u.holds("b", "c") and not u.holds("c", "b")
    assert dictatorship_ccr(1)(p) == p.rankings[1].relation


def test_copeland():
    p5 = fig5_profile()
    assert copeland_scores(p5) == [0, 0, 0]
    assert copeland_scores(fig4_profile()) == [1, 0, -1]
    r = copeland_ccr(p5)
    assert all(r.holds(x, y) for x in ABC for y in ABC)
    assert pairs(copeland_ccr(fig4_profile())) == {("a", "b"), ("b", "c"), ("a", "c")}


def test_covering_fig3_incomplete():
    cov = covering_relation(fig3_graph())
    assert not check_property(cov, "complete")
    assert check_property(cov, "transitive")


def test_covering_fig4():
    cov = gillies_covering_ccr(fig4_profile())
    assert pairs(cov) == {("a", "b")}
    assert not check_property(cov, "negatively_transitive")


def test_covering_of_fig7():
    assert pairs(covering_relation(fig7_graph())) == {("d", "c")}


def test_ranked_pairs_fig7():
    locked = {("d", "c"), ("d", "b"), ("c", "b"), ("a", "c"), ("a", "d")}
    assert pairs(ranked_pairs_all(fig7_graph())) == locked
    assert set(ranked_pairs_locked(fig7_graph()).pairs()) == locked


def test_ranked_pairs_fig5_closure():
    locked = ranked_pairs_all(margin_graph(fig5_profile()))
    assert pairs(locked) == {("a", "b"), ("b", "c")}
    assert ("a", "c") in set(transitive_closure(locked).pairs())


def test_ranked_pairs_symmetric_ties_drop_out():
    g = MarginGraph.from_edges(ABC, {("a", "b"): 2, ("b", "c"): 2, ("c", "a"): 2})
    assert pairs(ranked_pairs_all(g)) == set()
    t = TieBreaker(ABC, [("a", "b"), ("b", "c"), ("c", "a"),
                         ("b", "a"), ("c", "b"), ("a", "c")])
    assert set(ranked_pairs_locked(g, t).pairs()) == {("a", "b"), ("b", "c")}


def test_ranked_pairs_is_intersection_over_tiebreakers():
    g = MarginGraph.from_edges(
        ["a", "b", "c", "d"],
        {("a", "b"): 2, ("b", "c"): 2, ("c", "a"): 2, ("d", "a"): 2, ("c", "d"): 4},
    )
    names = g.candidates.names
    all_pairs = [(x, y) for x in names for y in names if x != y]
    expected = None
    for perm in permutations([e for e in all_pairs if g.weight(*e) > 0]):
        rest = [e for e in all_pairs if e not in perm]
        locked = set(ranked_pairs_locked(g, TieBreaker(names, list(perm) + rest)).pairs())
        expected = locked if expected is None else expected & locked
    assert set(ranked_pairs_all(g).pairs()) == expected


def test_tiebreaker_validation():
    with pytest.raises(ValueError):
        TieBreaker(ABC, [("a", "b")])


def test_ranked_pairs_policies():
    p = Profile.from_ballots(ABC, [(1, "a~b~c"), (1, "a>b~c")])
    pi = ranked_pairs_ccr("pareto-indifference")(p)
    cc = ranked_pairs_ccr("complete-closure")(p)
    assert pairs(pi) == pairs(cc) == {("a", "b"), ("a", "c")}
    assert pi.holds("b", "c") and pi.holds("c", "b")
    assert check_property(cc, "complete")
    with pytest.raises(ValueError):
        ranked_pairs_ccr("nope")


def test_split_cycle_fig7():
    sc = split_cycle_defeats(fig7_graph())
    assert strict_pairs(sc) == ["aPc", "cPb", "dPb", "dPc"]
    rp = ranked_pairs_all(fig7_graph())
    assert strict_pairs(rp - sc) == ["aPd"]


def test_split_cycle_definitions_agree():
    rng = random.Random(7)
    for _ in range(200):
        names = ["a", "b", "c", "d"]
        edges = {}
        for i, x in enumerate(names):
            for y in names[i + 1:]:
                w = rng.choice([0, 1, 3, 5])
                if w:
                    edges[(x, y) if rng.random() < 0.5 else (y, x)] = w
        g = MarginGraph.from_edges(names, edges)
        assert split_cycle_defeats(g) == split_cycle_defeats_by_cycles(g)


def test_split_cycle_fig6_and_acyclic():
    sc = split_cycle_defeats(fig6_graph())
    assert strict_pairs(sc) == ["aPb", "bPc"]
    assert check_property(sc, "acyclic")


def test_split_cycle_ratio_matches_margin_on_two_voters(space2):
    rule_m, rule_r = split_cycle_ccr("margin"), split_cycle_ccr("ratio")
    for p in list(space2)[::5]:
        assert pairs(rule_m(p)) == pairs(rule_r(p))


def test_graph_rules_ignore_realization():
    # rescaling every margin changes the graph but not the strict part
    p = Profile.from_ballots(ABC, [(1, "a>b>c"), (1, "b>c>a"), (1, "c>a>b")])
    q = Profile.from_ballots(ABC, [(2, "a>b>c"), (2, "b>c>a"), (2, "c>a>b"), (1, "a~b~c")])
    assert margin_graph(p) != margin_graph(q)
    for rule in (gillies_covering_ccr, ranked_pairs_ccr(), split_cycle_ccr()):
        strict = decompose(rule(p))[0]
        assert strict == decompose(rule.on_graph(margin_graph(p)))[0]
        assert pairs(rule(q)) == pairs(rule(p))


def test_dodgson_scores_on_43_voters():
    ps = fishburn_profiles()
    assert (dodgson_score(ps["R"], "x"), dodgson_score(ps["R"], "z")) == (3, 4)
    assert dodgson_score(ps["R'"], "z") == 2
    d = {k: dodgson_ccr(p) for k, p in ps.items()}
    assert d["R"].holds("x", "z") and not d["R"].holds("z", "x")
    assert d["R'"].holds("z", "x") and not d["R'"].holds("x", "z")
    assert d["S"].holds("z", "x") and not d["S"].holds("x", "z")
    assert d["S'"].holds("x", "z") and not d["S'"].holds("z", "x")


def test_dodgson_condorcet_winner_scores_zero():
    p = Profile.from_ballots(ABC, [(2, "a>b>c"), (1, "b>c>a")])
    assert dodgson_score(p, "a") == 0
    assert dodgson_score(p, "c") == dodgson_score_bfs(p, "c")


def test_dodgson_matches_bfs_small():
    for p in enumerate_profiles(ABC, 3, linear=True):
        for x in ABC:
            assert dodgson_score(p, x) == dodgson_score_bfs(p, x)


def test_dodgson_rejects_weak_ballots():
    p = Profile.from_ballots(ABC, [(1, "a~b>c")])
    with pytest.raises(NotLinearError):
        dodgson_ccr(p)
    with pytest.raises(NotLinearError):
        majority_dodgson_ccr(p)


def test_baigent_matches_literal_oracle():
    for v in (2, 3, 4, 5):
        for p in list(enumerate_profiles(ABC, v, linear=True))[:: (1 if v < 5 else 3)]:
            assert baigent_witness_ccr(p) == baigent_witness_literal(p)


def test_baigent_cases():
    a = Profile.from_ballots(ABC, [(2, "a>b>c"), (1, "b>a>c")])
    assert pairs(baigent_witness_ccr(a)) == {("a", "b"), ("b", "c"), ("a", "c")}
    b = Profile.from_ballots(ABC, [(3, "a>b>c"), (2, "a>c>b")])
    assert pairs(baigent_witness_ccr(b)) == {("a", "b"), ("b", "c"), ("a", "c")}
    other = Profile.from_ballots(ABC, [(2, "a>b>c"), (2, "a>c>b")])
    assert pairs(baigent_witness_ccr(other)) == {("a", "b"), ("a", "c")}


def test_registry():
    assert get_ccr("covering") is gillies_covering_ccr
    assert get_ccr("baigent") is baigent_witness_ccr
    rp = get_ccr("ranked-pairs", measure="ratio", policy="complete-closure")
    assert rp.label == "ranked-pairs[policy=complete-closure,measure=ratio]"
    assert rp.key == ranked_pairs_ccr("complete-closure", "ratio").key
    with pytest.raises(KeyError):
        get_ccr("borda")


def test_majority_has_no_graph_only_restriction():
    with pytest.raises(ValueError):
        dictatorship_ccr(0).on_graph(fig7_graph())
