from fractions import Fraction

import pytest

from advstd.asmodel import (
    INTEGERS,
    POSITIVE_RATIONALS,
    CoverageError,
    NotRationalizable,
    Rationalization,
    as_diagnostics,
    check_group_laws,
    closed_form_functions,
    closed_form_rationalization,
    construct_rationalization,
    gillies_standard,
    group_for_measure,
    ranked_pairs_standard,
    split_cycle_standard,
    tabulate_rationalization,
    verify_rationalization,
)
from advstd.axioms import check_orderability, check_pairwise_axiom
from advstd.ccr import (
    copeland_ccr,
    gillies_covering_ccr,
    majority_ccr,
    ranked_pairs_ccr,
    split_cycle_ccr,
    unanimity_ccr,
)
from advstd.figures import fig4_profile, fig5_profile
from advstd.profiles import Profile, PairRestriction, ProfileSpace, context

ABC = ["a", "b", "c"]
INT_SAMPLES = [-3, -1, 0, 1, 2, 5]
RAT_SAMPLES = [Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 3)]


@pytest.mark.parametrize("group,samples", [(INTEGERS, INT_SAMPLES), (POSITIVE_RATIONALS, RAT_SAMPLES)])
def test_group_laws(group, samples):
    assert all(v is None for v in check_group_laws(group, samples).values())


def test_group_law_checker_finds_violations():
    assert check_group_laws(POSITIVE_RATIONALS, [Fraction(-1)])["closure"] is not None


def test_group_basics():
    assert group_for_measure("ratio") is POSITIVE_RATIONALS
    assert group_for_measure("margin") is INTEGERS
    assert POSITIVE_RATIONALS.compose(Fraction(2), Fraction(1, 2)) == 1
    assert POSITIVE_RATIONALS.inverse(Fraction(7, 3)) == Fraction(3, 7)
    assert POSITIVE_RATIONALS.decode(POSITIVE_RATIONALS.encode(Fraction(7, 3))) == Fraction(7, 3)
    assert INTEGERS.compose(3, INTEGERS.inverse(3)) == INTEGERS.identity


def test_majority_closed_form_verifies(space2):
    r = closed_form_rationalization("majority", space2)
    assert verify_rationalization(majority_ccr, r, space2).holds


def test_negative_standard_is_rejected(space2):
    group, adv, _ = closed_form_functions("majority")
    r = tabulate_rationalization(space2, group, adv, lambda x, y, ctx: -1)
    report = verify_rationalization(majority_ccr, r, space2)
    assert not report.holds and report.detail["condition"] == "standard-floor"


def test_wrong_standard_is_caught(space2):
    group, adv, _ = closed_form_functions("majority")
    r = tabulate_rationalization(space2, group, adv, lambda x, y, ctx: 1)
    report = verify_rationalization(majority_ccr, r, space2)
    assert not report.holds and report.profiles


def test_broken_antisymmetry_is_caught(space2):
    r = closed_form_rationalization("majority", space2)
    key = next(iter(r.advantage))
    r.advantage[key] += 1
    assert verify_rationalization(majority_ccr, r, space2).detail["condition"] == "advantage-inverse"


def test_coverage_error(space2):
    r = Rationalization(INTEGERS)
    with pytest.raises(CoverageError):
        verify_rationalization(majority_ccr, r, space2)


@pytest.mark.parametrize(
    "name,measure,f",
    [
        ("gillies", "margin", gillies_covering_ccr),
        ("ranked-pairs", "margin", ranked_pairs_ccr()),
        ("ranked-pairs", "ratio", ranked_pairs_ccr(measure="ratio")),
        ("split-cycle", "margin", split_cycle_ccr()),
        ("split-cycle", "ratio", split_cycle_ccr("ratio")),
    ],
)
def test_closed_forms_verify(space2, name, measure, f):
    r = closed_form_rationalization(name, space2, measure)
    assert verify_rationalization(f, r, space2).holds


def test_closed_form_measure_checks():
    with pytest.raises(ValueError):
        closed_form_functions("gillies", "ratio")
    with pytest.raises(KeyError):
        closed_form_functions("copeland")


def test_gillies_standard_fig4():
    ctx = context(fig4_profile(), ("b", "c"))
    assert gillies_standard(ctx, "b", "c") == 10
    assert gillies_standard(context(fig4_profile(), ("a", "b")), "a", "b") == 0


def test_ranked_pairs_standard_fig5():
    p = fig5_profile()
    # weight 4 locks c->a ahead of b->c; weight 3 can tie with b->c and lose
    assert ranked_pairs_standard(context(p, ("c", "a")), "c", "a") == 3
    # weight 1 ties with c->a, which can lock first and close b->c->a
    assert ranked_pairs_standard(context(p, ("a", "b")), "a", "b") == 1


def test_split_cycle_standard_fig5():
    p = fig5_profile()
    assert split_cycle_standard(context(p, ("c", "a")), "c", "a") == 3
    # b->c->a survives in the context of (a,b)
    assert split_cycle_standard(context(p, ("a", "b")), "a", "b") == 1


def test_diagnostics_match_rule():
    p = fig5_profile()
    group, rows = as_diagnostics("ranked-pairs", p)
    rel = ranked_pairs_ccr()(p)
    for x, y, a, s, wins in rows:
        assert wins == (rel.holds(x, y) and not rel.holds(y, x))


@pytest.mark.parametrize("f", [majority_ccr, unanimity_ccr, gillies_covering_ccr, split_cycle_ccr()])
def test_constructed_rationalization_verifies(space2, f):
    r = construct_rationalization(f, space=space2)
    assert r.group is INTEGERS
    assert verify_rationalization(f, r, space2).holds


def test_construct_refuses_copeland(space2):
    assert not check_pairwise_axiom(copeland_ccr, "weak_IIA", space2).holds
    assert check_orderability(copeland_ccr, space2).holds
    with pytest.raises(NotRationalizable) as err:
        construct_rationalization(copeland_ccr, ABC, 2)
    assert err.value.report.axiom == "weak_IIA"


def test_json_round_trip(space2):
    for r in (
        construct_rationalization(majority_ccr, space=space2),
        closed_form_rationalization("split-cycle", space2, "ratio"),
    ):
        back = Rationalization.from_json(r.to_json())
        assert back.group is r.group
        assert back.advantage == r.advantage and back.standard == r.standard


def test_advantage_lookup_orients():
    space = ProfileSpace(["a", "b"], 2)
    r = closed_form_rationalization("majority", space)
    q = PairRestriction("a", "b", ">~")
    assert r.advantage_of("a", "b", q) == 1 and r.advantage_of("b", "a", q) == -1
    p = Profile.from_ballots(["a", "b"], [(1, "a>b"), (1, "a~b")])
    assert r.standard_of("a", "b", context(p, ("a", "b"))) == 0
