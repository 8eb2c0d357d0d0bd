"""Collective choice rules, exhaustive axiom checks and the Advantage-Standard model."""

__version__ = "0.1.0"

from .relations import CandidateSet, Relation, WeakOrder, check_property, decompose
from .profiles import (
    PairRestriction,
    Preprofile,
    Profile,
    ProfileSpace,
    context,
    enumerate_profiles,
    enumerate_weak_orders,
    profile_from_json,
    profile_to_json,
    restrict,
)
from .margins import MarginGraph, margin, margin_graph, ratio
from .ccr import CCRHandle, TieBreaker, dodgson_score, get_ccr
from .axioms import (
    AxiomReport,
    ProfileList,
    check_axiom,
    check_orderability,
    check_pairwise_axiom,
    check_unary_axiom,
    find_decisive_coalitions,
    find_power_holders,
)
from .asmodel import (
    INTEGERS,
    POSITIVE_RATIONALS,
    NotRationalizable,
    Rationalization,
    construct_rationalization,
    verify_rationalization,
)
from .choice import ChoiceFunction, check_choice_condition, choose
