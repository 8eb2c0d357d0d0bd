import json
from math import comb

import pytest

from advstd.figures import fig1_profiles, fishburn_profiles
from advstd.profiles import (
    PairRestriction,
    Profile,
    ProfileFormatError,
    ProfileSpace,
    context,
    enumerate_profiles,
    enumerate_weak_orders,
    ordered_bell,
    permute_candidates,
    permute_voters,
    profile_from_json,
    profile_to_dict,
    profile_to_json,
    recombine,
    restrict,
)
from advstd.relations import WeakOrder

ABC = ["a", "b", "c"]


def stirling2(n, k):
    # independent oracle: explicit inclusion-exclusion formula
    from math import factorial

    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def fubini(n):
    from math import factorial

    return sum(factorial(k) * stirling2(n, k) for k in range(n + 1)) if n else 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_weak_order_counts(n):
    names = "abcd"[:n]
    orders = list(enumerate_weak_orders(names))
    assert len(orders) == len(set(orders)) == fubini(n) == ordered_bell(n)
    assert [len(orders) for n in ()] == []


def test_weak_order_small_cases():
    assert len(list(enumerate_weak_orders(["a"]))) == 1
    assert sorted(str(o) for o in enumerate_weak_orders(["a", "b"])) == ["a>b", "a~b", "b>a"]


@pytest.mark.parametrize(
    "names,v,linear,expected",
    [("ab", 2, False, 9), ("abc", 2, False, 169), ("abc", 2, True, 36), ("abc", 3, False, 2197)],
)
def test_profile_counts(names, v, linear, expected):
    ps = list(enumerate_profiles(list(names), v, linear=linear))
    assert len(ps) == expected == len(set(ps))
    assert len(ProfileSpace(list(names), v, linear=linear)) == expected


def test_space_order_matches_enumeration():
    s = ProfileSpace(ABC, 2)
    assert list(s) == list(enumerate_profiles(ABC, 2))
    for k, idx in enumerate(s.indices()):
        assert s.position(idx) == k
        assert s.index_of(s.profile(idx)) == idx


def test_fig1_restrictions_agree():
    left, right = fig1_profiles()
    q = restrict(left, ("a", "b"))
    assert q.symbols == (">", "<", ">")
    assert restrict(right, ("a", "b")) == q


def test_all_indifferent_restriction():
    p = Profile.from_ballots(ABC, [(3, "a~b~c")])
    assert restrict(p, ("a", "c")).symbols == ("~",) * 3


def test_restriction_orientation():
    left, _ = fig1_profiles()
    q = restrict(left, ("a", "b"))
    assert restrict(left, ("b", "a")) == q.swapped()
    assert q.swapped().oriented("a", "b") == q
    assert (q.support, q.opposition) == (2, 1)


def test_shared_contexts_of_four_profiles():
    ps = fishburn_profiles()
    assert context(ps["R"], ("x", "z")) == context(ps["R'"], ("x", "z"))
    assert context(ps["S"], ("x", "z")) == context(ps["S'"], ("x", "z"))
    assert context(ps["R"], ("x", "z")) != context(ps["S"], ("x", "z"))


def test_context_detects_other_pairs():
    p = Profile.from_ballots(ABC, [(1, "a>b>c")])
    q = Profile.from_ballots(ABC, [(1, "a>c>b")])
    assert context(p, ("a", "b")) != context(q, ("a", "b"))


def test_recombine_round_trip(space2):
    for p in list(space2)[::7]:
        for pair in (("a", "b"), ("c", "a")):
            rebuilt = recombine(context(p, pair), restrict(p, pair))
            assert tuple(r.mask for r in rebuilt.relations) == tuple(r.mask for r in p.rankings)


def test_pair_machinery_rejects_equal_candidates():
    p = Profile.from_ballots(ABC, [(1, "a>b>c")])
    with pytest.raises(ValueError):
        restrict(p, ("a", "a"))
    with pytest.raises(ValueError):
        PairRestriction("a", "a", ">")


def test_permute_voters():
    left, _ = fig1_profiles()
    assert permute_voters(left, [0, 1, 2]) == left
    swapped = permute_voters(left, [1, 0, 2])
    assert [str(r) for r in swapped.rankings] == ["b>a>c", "a>b>c", "a>b>c"]
    assert permute_voters(left, [2, 1, 0]) == left


def test_permute_voters_composition():
    p = Profile.from_ballots(ABC, [(1, "a>b>c"), (1, "b>c>a"), (1, "c>a~b")])
    s, t = [1, 2, 0], [1, 0, 2]
    # R^s then ^t reads voter s(t(i))
    both = permute_voters(permute_voters(p, s), t)
    assert both == permute_voters(p, [s[t[i]] for i in range(3)])


def test_permute_candidates():
    p = Profile.from_ballots(ABC, [(1, "a>b>c")])
    ident = {x: x for x in ABC}
    swap = {"a": "b", "b": "a", "c": "c"}
    assert permute_candidates(p, ident) == p
    assert str(permute_candidates(p, swap).rankings[0]) == "b>a>c"
    assert permute_candidates(permute_candidates(p, swap), swap) == p
    rot = {"a": "b", "b": "c", "c": "a"}
    twice = permute_candidates(permute_candidates(p, rot), rot)
    assert twice == permute_candidates(p, {x: rot[rot[x]] for x in ABC})


def test_json_round_trip_is_canonical():
    p = Profile.from_ballots(ABC, [(2, "a>b~c"), (1, "c>a>b"), (1, "a>b~c")])
    text = profile_to_json(p)
    assert profile_from_json(text) == p
    assert profile_to_json(profile_from_json(text)) == text
    doc = profile_to_dict(p)
    assert doc["ballots"][0] == {"count": 2, "ranking": [["a"], ["b", "c"]]}


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        {"candidates": ["a", "b"]},
        {"candidates": ["a", "a"], "ballots": [{"count": 1, "ranking": [["a"]]}]},
        {"candidates": ["a", "b"], "ballots": [{"count": 0, "ranking": [["a"], ["b"]]}]},
        {"candidates": ["a", "b"], "ballots": [{"count": 1, "ranking": [["a"]]}]},
        {"candidates": ["a", "b"], "ballots": [{"count": 1, "ranking": [["a"], ["a", "b"]]}]},
        {"candidates": ["a", "b"], "ballots": []},
    ],
)
def test_bad_profiles_rejected(doc):
    text = doc if isinstance(doc, str) else json.dumps(doc)
    with pytest.raises(ProfileFormatError):
        profile_from_json(text)


def test_ballot_diagnostics_name_the_ballot():
    doc = {"candidates": ["a", "b"], "ballots": [
        {"count": 1, "ranking": [["a"], ["b"]]},
        {"count": 1, "ranking": [["a"], ["z"]]},
    ]}
    with pytest.raises(ProfileFormatError, match="ballot 1"):
        profile_from_json(json.dumps(doc))


def test_profile_rejects_foreign_orders():
    w = WeakOrder.from_linear(["a", "b"], ["a", "b"])
    with pytest.raises(ValueError):
        Profile(ABC, [w])
