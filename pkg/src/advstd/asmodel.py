"""The Advantage-Standard model.

A rule is AS rationalizable when x beats y exactly when x's advantage
over y, which depends only on how voters rank the pair, exceeds a
standard, which depends only on the rest of the profile.  Advantage and
standard take values in a totally ordered group.

Tables here are materialised over finite profile spaces, so checking a
rationalization is an exact, finite computation.
"""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from operator import add, mul, neg

from .axioms import (
    AxiomReport,
    _context_groups,
    check_orderability,
    check_pairwise_axiom,
    dominance_digraphs,
)
from .ccr import _rp_all_mask
from .margins import (
    MarginGraph,
    margin,
    max_split_over_paths,
    ratio,
    ratio_granularity,
    ratio_values,
)
from .profiles import PairRestriction, Preprofile, ProfileSpace, context, restrict
from .relations import Relation, _as_candidates

__all__ = [
    "OrderedGroup",
    "INTEGERS",
    "POSITIVE_RATIONALS",
    "GROUPS",
    "group_for_measure",
    "check_group_laws",
    "Rationalization",
    "NotRationalizable",
    "CoverageError",
    "verify_rationalization",
    "construct_rationalization",
    "tabulate_rationalization",
    "gillies_standard",
    "ranked_pairs_standard",
    "split_cycle_standard",
    "closed_form_rationalization",
    "closed_form_functions",
    "CLOSED_FORMS",
    "as_diagnostics",
]


# -- ordered groups ------------------------------------------------------------


@dataclass(frozen=True)
class OrderedGroup:
    """A totally ordered group given by its operations."""

    tag: str
    identity: object
    _op: object = field(repr=False)
    _inv: object = field(repr=False)
    _member: object = field(repr=False)

    def compose(self, a, b):
        return self._op(a, b)

    def inverse(self, a):
        return self._inv(a)

    def contains(self, a):
        return self._member(a)

    def compare(self, a, b):
        return (a > b) - (a < b)

    def less(self, a, b):
        return a < b

    def encode(self, a):
        if isinstance(a, Fraction):
            return str(a) if a.denominator != 1 else str(a.numerator)
        return a

    def decode(self, v):
        return Fraction(v) if self.tag == "positive-rational-multiplicative" else int(v)


def _is_int(a):
    return isinstance(a, int) and not isinstance(a, bool)


def _is_pos_rational(a):
    return isinstance(a, (int, Fraction)) and not isinstance(a, bool) and a > 0


INTEGERS = OrderedGroup("integer-additive", 0, add, neg, _is_int)
POSITIVE_RATIONALS = OrderedGroup(
    "positive-rational-multiplicative", Fraction(1), mul, lambda a: 1 / Fraction(a), _is_pos_rational
)
GROUPS = {g.tag: g for g in (INTEGERS, POSITIVE_RATIONALS)}


def group_for_measure(measure):
    return POSITIVE_RATIONALS if measure == "ratio" else INTEGERS


def check_group_laws(group, samples):
    """Check the ordered-group laws on every combination of ``samples``.

    Returns a dict from law name to the first counterexample tuple, or
    None when the law held on the whole sample.
    """
    e = group.identity
    op, inv = group.compose, group.inverse
    laws = {}

    def first(cases, ok):
        for case in cases:
            if not ok(*case):
                return case
        return None

    triples = list(product(samples, repeat=3))
    pairs = list(product(samples, repeat=2))
    laws["closure"] = first(pairs, lambda a, b: group.contains(op(a, b)) and group.contains(inv(a)))
    laws["associativity"] = first(triples, lambda a, b, c: op(op(a, b), c) == op(a, op(b, c)))
    laws["identity"] = first([(a,) for a in samples], lambda a: op(a, e) == a == op(e, a))
    laws["inverse"] = first([(a,) for a in samples], lambda a: op(a, inv(a)) == e == op(inv(a), a))
    laws["total_order"] = first(
        pairs, lambda a, b: (a <= b or b <= a) and (not (a <= b and b <= a) or a == b)
    )
    laws["translation_invariance"] = first(
        triples,
        lambda a, b, c: not a <= b or (op(c, a) <= op(c, b) and op(a, c) <= op(b, c)),
    )
    laws["inverse_below_identity"] = first(
        [(a,) for a in samples], lambda a: not e < a or inv(a) < e
    )
    return laws


# -- rationalizations ----------------------------------------------------------


class NotRationalizable(Exception):
    """Raised when a rule fails a precondition of the construction."""

    def __init__(self, report):
        super().__init__(f"{report.rule} fails {report.axiom}")
        self.report = report


class CoverageError(KeyError):
    """A verification needed a table entry that is missing."""


def _context_digest(ctx):
    text = _context_canonical(ctx)
    return hashlib.sha256(json.dumps(text).encode()).hexdigest()[:16]


def _context_canonical(ctx):
    return [[list(pr) for pr in r.pairs()] for r in ctx.relations]


@dataclass
class Rationalization:
    """Advantage and standard tables over one finite space."""

    group: OrderedGroup
    advantage: dict = field(default_factory=dict)
    standard: dict = field(default_factory=dict)

    def advantage_of(self, x, y, q):
        try:
            return self.advantage[(x, y, q.oriented(x, y))]
        except KeyError:
            raise CoverageError(f"no advantage entry for ({x},{y}) at {q}") from None

    def standard_of(self, x, y, ctx):
        try:
            return self.standard[(x, y, ctx)]
        except KeyError:
            raise CoverageError(f"no standard entry for ({x},{y}) in this context") from None

    def condition_violations(self):
        """First violation of the antisymmetry or floor condition, or None."""
        g = self.group
        for (x, y, q), a in self.advantage.items():
            other = self.advantage.get((y, x, q.swapped()))
            if other is None or a != g.inverse(other):
                return {"condition": "advantage-inverse", "pair": (x, y), "restriction": str(q)}
        for (x, y, ctx), s in self.standard.items():
            if s < g.identity:
                return {"condition": "standard-floor", "pair": (x, y), "standard": g.encode(s)}
        return None

    def to_dict(self):
        g = self.group
        contexts = {}
        std = []
        for (x, y, ctx), s in self.standard.items():
            d = _context_digest(ctx)
            contexts[d] = _context_canonical(ctx)
            std.append({"x": x, "y": y, "context": d, "value": g.encode(s)})
        adv = [
            {"x": x, "y": y, "restriction": str(q), "value": g.encode(a)}
            for (x, y, q), a in self.advantage.items()
        ]
        candidates = None
        for _, _, ctx in self.standard:
            candidates = list(ctx.candidates.names)
            break
        return {
            "group": g.tag,
            "candidates": candidates,
            "advantage": adv,
            "standard": std,
            "contexts": contexts,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, doc):
        g = GROUPS[doc["group"]]
        c = _as_candidates(doc["candidates"])
        ctxs = {
            d: Preprofile(c, (Relation.from_pairs(c, map(tuple, pairs)) for pairs in voters))
            for d, voters in doc["contexts"].items()
        }
        adv = {
            (e["x"], e["y"], PairRestriction(e["x"], e["y"], e["restriction"])): g.decode(e["value"])
            for e in doc["advantage"]
        }
        std = {(e["x"], e["y"], ctxs[e["context"]]): g.decode(e["value"]) for e in doc["standard"]}
        return cls(g, adv, std)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


class _Splitter:
    """Memoised restriction / context objects for profiles of a space."""

    def __init__(self, space):
        self.space = space
        self.names = space.candidates.names
        self._q = {}
        self._c = {}

    def parts(self, idx, p):
        sp = self.space
        rk = sp.restriction_key(idx, p)
        ck = sp.context_key(idx, p)
        q = self._q.get((p, rk))
        if q is None:
            q = self._q[(p, rk)] = sp.decode_restriction(p, rk)
        c = self._c.get(ck)
        if c is None:
            cand = sp.candidates
            c = self._c[ck] = Preprofile(cand, (Relation(cand, m) for m in ck))
        return q, c


def verify_rationalization(f, r, space):
    """Check that ``r`` rationalizes ``f`` on every profile of ``space``.

    Raises :class:`CoverageError` if the tables lack an entry the space
    needs.  Returns an :class:`AxiomReport` named ``AS_rationalization``.
    """
    bad = r.condition_violations()
    if bad is not None:
        pair = bad.pop("pair")
        return AxiomReport("AS_rationalization", False, f.label, (), pair, bad)
    g = r.group
    out = space.outcomes(f)
    n = len(space.candidates)
    names = space.candidates.names
    split = _Splitter(space)
    for k, idx in enumerate(space.indices()):
        mask = out[k]
        for p, (i, j) in enumerate(space.pairs):
            q, ctx = split.parts(idx, p)
            for a, b in ((i, j), (j, i)):
                x, y = names[a], names[b]
                strict = (mask >> (a * n + b)) & 1 and not (mask >> (b * n + a)) & 1
                adv = r.advantage_of(x, y, q)
                std = r.standard_of(x, y, ctx)
                if bool(strict) != (adv > std):
                    return AxiomReport(
                        "AS_rationalization",
                        False,
                        f.label,
                        (space.profile(idx),),
                        (x, y),
                        {"advantage": g.encode(adv), "standard": g.encode(std),
                         "strict": bool(strict)},
                    )
    return AxiomReport("AS_rationalization", True, f.label)


def _space_for(candidates, n_voters, f, space):
    if space is not None:
        return space
    return ProfileSpace(_as_candidates(candidates), n_voters, linear=f.linear_only)


def construct_rationalization(f, candidates=None, n_voters=None, space=None):
    """Integer-valued rationalization built from orderability witnesses.

    For each ordered pair the restrictions that ever yield strict
    preference are layered from the dominance digraph's topological order
    (one restriction per layer, numbered from 1).  Advantage is the layer
    number, its negation for the reversed pair, and 0 otherwise.  The
    standard in a context is one less than the lowest layer that yields
    strict preference there, or the number of layers if none does.
    """
    space = _space_for(candidates, n_voters, f, space)
    report = check_pairwise_axiom(f, "weak_IIA", space)
    if not report.holds:
        raise NotRationalizable(report)
    report = check_orderability(f, space)
    if not report.holds:
        raise NotRationalizable(report)

    names = space.candidates.names
    layers = {}
    for (x, y), dg in dominance_digraphs(f, space).items():
        layers[(x, y)] = {q: k + 1 for k, q in enumerate(dg.ordering())}

    r = Rationalization(INTEGERS)
    for p, (i, j) in enumerate(space.pairs):
        x, y = names[i], names[j]
        fwd, bwd = layers[(x, y)], layers[(y, x)]
        keys = {space.restriction_key(idx, p) for idx in space.indices()}
        for rk in keys:
            q = space.decode_restriction(p, rk)
            a = fwd.get(rk, 0) - bwd.get(rk, 0)
            r.advantage[(x, y, q)] = a
            r.advantage[(y, x, q.swapped())] = -a
        for a, b in ((i, j), (j, i)):
            lay = layers[(names[a], names[b])]
            top = len(lay)
            for ck, (yes, _) in _context_groups(f, space, p, a, b).items():
                lows = [lay[q] for q in yes]
                ctx = Preprofile(space.candidates, (Relation(space.candidates, m) for m in ck))
                r.standard[(names[a], names[b], ctx)] = min(lows) - 1 if lows else top
    return r


# -- closed forms --------------------------------------------------------------


def gillies_standard(ctx, x, y):
    """0 if every v majority-preferred to x is also majority-preferred to y, else |V|."""
    for v in ctx.candidates:
        if v in (x, y):
            continue
        if margin(ctx, v, x) > 0 and not margin(ctx, v, y) > 0:
            return ctx.n_voters
    return 0


def _locks(g, x, y):
    c = g.candidates
    i, j = c.index(x), c.index(y)
    return bool((_rp_all_mask(g) >> (i * g.n + j)) & 1)


def ranked_pairs_standard(ctx, x, y, measure="margin"):
    """Least added weight at which Ranked Pairs locks x -> y, shifted down one step.

    Margin: min k - 1 over positive integers k; k = (largest context
    weight + 1) always locks, so the search is finite.  Ratio: min
    k - m over the attainable ratio values k, with m the smallest gap
    between them.  If no attainable ratio locks, the largest attainable
    value is returned; no advantage can exceed it.
    """
    g = MarginGraph.from_profile(ctx, measure)
    if measure == "margin":
        top = max((w for _, _, w in g.edges()), default=0)
        for k in range(1, top + 2):
            if _locks(g.with_edge(x, y, k), x, y):
                return k - 1
        raise AssertionError("an edge heavier than every other must lock")
    values = ratio_values(ctx.n_voters)
    m = ratio_granularity(ctx.n_voters)
    for k in values:
        if k > 1 and _locks(g.with_edge(x, y, k), x, y):
            return k - m
    return values[-1]


def split_cycle_standard(ctx, x, y, measure="margin"):
    """Strongest splitting number over majority paths from y back to x."""
    return max_split_over_paths(MarginGraph.from_profile(ctx, measure), y, x)


def _advantage_fn(measure):
    if measure == "ratio":
        return lambda x, y, q: ratio(q, x, y)
    return lambda x, y, q: margin(q, x, y)


CLOSED_FORMS = ("majority", "gillies", "ranked-pairs", "split-cycle")


def closed_form_functions(name, measure="margin"):
    """(group, advantage(x, y, Q), standard(x, y, context)) for a built-in rule."""
    if name == "majority":
        if measure != "margin":
            raise ValueError("the majority closed form uses margins")
        return INTEGERS, _advantage_fn("margin"), lambda x, y, ctx: 0
    if name == "gillies":
        if measure != "margin":
            raise ValueError("the covering closed form uses margins")
        return INTEGERS, _advantage_fn("margin"), lambda x, y, ctx: gillies_standard(ctx, x, y)
    if name == "ranked-pairs":
        return (
            group_for_measure(measure),
            _advantage_fn(measure),
            lambda x, y, ctx: ranked_pairs_standard(ctx, x, y, measure),
        )
    if name == "split-cycle":
        return (
            group_for_measure(measure),
            _advantage_fn(measure),
            lambda x, y, ctx: split_cycle_standard(ctx, x, y, measure),
        )
    raise KeyError(f"no closed-form rationalization for {name!r}")


def tabulate_rationalization(space, group, advantage, standard):
    """Materialise advantage / standard functions over every key of ``space``."""
    r = Rationalization(group)
    names = space.candidates.names
    split = _Splitter(space)
    for idx in space.indices():
        for p, (i, j) in enumerate(space.pairs):
            q, ctx = split.parts(idx, p)
            for a, b in ((i, j), (j, i)):
                x, y = names[a], names[b]
                qo = q.oriented(x, y)
                if (x, y, qo) not in r.advantage:
                    r.advantage[(x, y, qo)] = advantage(x, y, qo)
                if (x, y, ctx) not in r.standard:
                    r.standard[(x, y, ctx)] = standard(x, y, ctx)
    return r


def closed_form_rationalization(name, space, measure="margin"):
    group, adv, std = closed_form_functions(name, measure)
    return tabulate_rationalization(space, group, adv, std)


def as_diagnostics(name, profile, measure="margin"):
    """Per ordered pair: (x, y, advantage, standard, x beats y) for one profile."""
    group, adv, std = closed_form_functions(name, measure)
    rows = []
    for x in profile.candidates:
        for y in profile.candidates:
            if x == y:
                continue
            a = adv(x, y, restrict(profile, (x, y)))
            s = std(x, y, context(profile, (x, y)))
            rows.append((x, y, a, s, a > s))
    return group, rows
