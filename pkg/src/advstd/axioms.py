"""Exhaustive axiom checkers over finite profile spaces.

Every checker walks profiles in canonical order and reports the first
violation it meets, so witnesses are deterministic and small.  A space is
either a :class:`~advstd.profiles.ProfileSpace` (every profile for given
|X| and |V|) or a :class:`ProfileList` wrapping an arbitrary collection.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations, product

from .profiles import PairRestriction, ProfileSpace, profile_from_dict, profile_to_dict
from .relations import (
    _check_mask,
    _as_candidates,
    diagonal_mask,
    full_mask,
    strict_mask,
    transpose_mask,
)

__all__ = [
    "AxiomReport",
    "ProfileList",
    "DominanceDigraph",
    "PAIRWISE_AXIOMS",
    "UNARY_AXIOMS",
    "POWER_KINDS",
    "COALITION_KINDS",
    "default_space",
    "check_pairwise_axiom",
    "check_unary_axiom",
    "check_axiom",
    "find_power_holders",
    "find_decisive_coalitions",
    "dominance_digraphs",
    "check_orderability",
    "orderability_brute_force",
]

PAIRWISE_AXIOMS = ("IIA", "weak_IIA", "PN_weak_IIA", "PI_weak_IIA")
ORDER_AXIOMS = {
    "completeness": "complete",
    "transitivity": "transitive",
    "acyclicity": "acyclic",
    "negative_transitivity": "negatively_transitive",
    "quasi_transitivity": "quasi_transitive",
    "reflexivity": "reflexive",
}
UNARY_AXIOMS = (
    "pareto",
    "strong_pareto",
    "pareto_indifference",
    "SNI",
    "anonymity",
    "neutrality",
) + tuple(ORDER_AXIOMS)
POWER_KINDS = ("dictator", "inverse_dictator", "weak_dictator", "vetoer")
COALITION_KINDS = ("weakly_decisive", "almost_weakly_decisive")


# -- reports -------------------------------------------------------------------


@dataclass
class AxiomReport:
    """Outcome of one check, with a replayable witness when it fails."""

    axiom: str
    holds: bool
    rule: str = ""
    profiles: tuple = ()
    pair: tuple = None
    detail: dict = field(default_factory=dict)

    @property
    def verdict(self):
        return "holds" if self.holds else "fails"

    def __bool__(self):
        return self.holds

    def to_dict(self):
        doc = {"axiom": self.axiom, "verdict": self.verdict}
        if self.rule:
            doc["rule"] = self.rule
        if not self.holds:
            w = {"profiles": [profile_to_dict(p) for p in self.profiles]}
            w["pair"] = list(self.pair) if self.pair is not None else None
            w.update(self.detail)
            doc["witness"] = w
        elif self.detail:
            doc["detail"] = self.detail
        return doc

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc):
        w = doc.get("witness") or {}
        extra = {k: v for k, v in w.items() if k not in ("profiles", "pair")}
        pair = w.get("pair")
        return cls(
            doc["axiom"],
            doc["verdict"] == "holds",
            doc.get("rule", ""),
            tuple(profile_from_dict(p) for p in w.get("profiles", [])),
            tuple(pair) if pair else None,
            extra if w else doc.get("detail", {}),
        )

    def replay(self, f):
        """True when the witness still exhibits a violation under ``f``."""
        if self.holds:
            raise ValueError("a report that holds has no witness to replay")
        return _replay(self, f)

    def summary(self):
        mark = "holds" if self.holds else "FAILS"
        line = f"{self.axiom}: {mark}"
        if not self.holds and self.pair is not None:
            line += f" (pair {self.pair[0]},{self.pair[1]})"
        return line


# -- spaces --------------------------------------------------------------------


class ProfileList:
    """An explicit profile collection usable wherever a space is expected."""

    def __init__(self, profiles):
        self._profiles = list(profiles)
        if not self._profiles:
            raise ValueError("empty profile collection")
        first = self._profiles[0]
        for p in self._profiles:
            if p.candidates != first.candidates or p.n_voters != first.n_voters:
                raise ValueError("profiles must share candidates and voter count")
        self.candidates = first.candidates
        self.n_voters = first.n_voters
        self.linear = all(p.is_linear for p in self._profiles)
        n = len(self.candidates)
        self.pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        self._outcomes = {}

    def __len__(self):
        return len(self._profiles)

    def indices(self):
        return range(len(self._profiles))

    def profile(self, idx):
        return self._profiles[idx]

    def __iter__(self):
        return iter(self._profiles)

    def position(self, idx):
        return idx

    def outcomes(self, f):
        out = self._outcomes.get(f.key)
        if out is None:
            out = [f(p).mask for p in self._profiles]
            self._outcomes[f.key] = out
        return out

    def restriction_key(self, idx, p):
        i, j = self.pairs[p]
        key = []
        for r in self._profiles[idx].rankings:
            a, b = r.ranks[i], r.ranks[j]
            key.append(0 if a < b else 1 if b < a else 2)
        return tuple(key)

    def context_key(self, idx, p):
        i, j = self.pairs[p]
        n = len(self.candidates)
        clear = ~((1 << (i * n + j)) | (1 << (j * n + i)))
        return tuple(r.mask & clear for r in self._profiles[idx].rankings)

    def decode_restriction(self, p, key, oriented=None):
        i, j = self.pairs[p]
        names = self.candidates.names
        q = PairRestriction(names[i], names[j], [(">", "<", "~")[s] for s in key])
        return q.oriented(*oriented) if oriented is not None else q


def default_space(candidates, n_voters, f=None):
    """Full weak-order space, or the linear one for rules needing linear ballots."""
    linear = bool(f is not None and f.linear_only)
    return ProfileSpace(_as_candidates(candidates), n_voters, linear=linear)


def _bit(mask, i, j, n):
    return (mask >> (i * n + j)) & 1


def _strict_bit(mask, i, j, n):
    return _bit(mask, i, j, n) and not _bit(mask, j, i, n)


# -- pairwise axioms -----------------------------------------------------------


def _state(mask, i, j, n):
    return (_bit(mask, i, j, n), _bit(mask, j, i, n))


def _pairwise_violation(axiom, s, t):
    """Does (R with state s, R' with state t) violate ``axiom`` for (x, y)?

    States are (x f y, y f x) bits for the oriented pair.
    """
    if axiom == "IIA":
        return s != t
    x_over_y = s[0] and not s[1]
    if not x_over_y:
        return False
    if axiom == "weak_IIA":
        return bool(t[1] and not t[0])
    if axiom == "PN_weak_IIA":
        return bool(t[1])
    if axiom == "PI_weak_IIA":
        return not t[0]
    raise ValueError(f"unknown pairwise axiom {axiom!r}")


def check_pairwise_axiom(f, axiom, space):
    """Check an independence-style axiom over ``space``.

    Profiles are grouped by their restriction to each pair; within a group
    the axiom's implication is tested between every two observed outcomes.
    """
    if axiom not in PAIRWISE_AXIOMS:
        raise ValueError(f"unknown pairwise axiom {axiom!r}; expected one of {PAIRWISE_AXIOMS}")
    out = space.outcomes(f)
    n = len(space.candidates)
    names = space.candidates.names
    seen = [dict() for _ in space.pairs]
    for k, idx in enumerate(space.indices()):
        mask = out[k]
        for p, (i, j) in enumerate(space.pairs):
            s = _state(mask, i, j, n)
            group = seen[p].setdefault(space.restriction_key(idx, p), {})
            if s in group:
                continue
            for t, k0 in group.items():
                for (a, b), fwd in (((i, j), True), ((j, i), False)):
                    s_o = s if fwd else s[::-1]
                    t_o = t if fwd else t[::-1]
                    if _pairwise_violation(axiom, t_o, s_o):
                        first, second = k0, k
                    elif _pairwise_violation(axiom, s_o, t_o):
                        first, second = k, k0
                    else:
                        continue
                    idxs = list(space.indices())
                    return AxiomReport(
                        axiom,
                        False,
                        f.label,
                        (space.profile(idxs[first]), space.profile(idxs[second])),
                        (names[a], names[b]),
                    )
            group[s] = k
    return AxiomReport(axiom, True, f.label)


# -- unary axioms --------------------------------------------------------------


def _perm_mask(mask, perm, n):
    out = 0
    for i in range(n):
        for j in range(n):
            if (mask >> (i * n + j)) & 1:
                out |= 1 << (perm[i] * n + perm[j])
    return out


def _order_masks(space):
    """Per-profile lists of (weak, strict) ballot masks."""
    if isinstance(space, ProfileSpace):
        n = len(space.candidates)
        table = [(o.mask, strict_mask(o.mask, n)) for o in space.orders]
        return lambda idx: [table[w] for w in idx]
    n = len(space.candidates)
    return lambda idx: [
        (r.mask, strict_mask(r.mask, n)) for r in space.profile(idx).rankings
    ]


def _first_pair(mask, n, names):
    for i in range(n):
        for j in range(n):
            if (mask >> (i * n + j)) & 1:
                return (names[i], names[j])
    return None


def _pareto_family(f, axiom, space):
    out = space.outcomes(f)
    n = len(space.candidates)
    names = space.candidates.names
    full = full_mask(n)
    masks = _order_masks(space)
    for k, idx in enumerate(space.indices()):
        ballots = masks(idx)
        fm = out[k]
        fs = strict_mask(fm, n)
        if axiom == "pareto":
            need = full
            for _, s in ballots:
                need &= s
            bad = need & ~fs
        elif axiom == "strong_pareto":
            weak, some = full, 0
            for w, s in ballots:
                weak &= w
                some |= s
            bad = (weak & some) & ~fs
        else:
            ind = full
            for w, _ in ballots:
                ind &= w & transpose_mask(w, n)
            bad = ind & ~(fm & transpose_mask(fm, n))
        if bad:
            return AxiomReport(axiom, False, f.label, (space.profile(idx),), _first_pair(bad, n, names))
    return AxiomReport(axiom, True, f.label)


def _sni(f, space):
    out = space.outcomes(f)
    n = len(space.candidates)
    names = space.candidates.names
    achieved = 0
    for mask in out:
        achieved |= strict_mask(mask, n)
    missing = full_mask(n) & ~diagonal_mask(n) & ~achieved
    if missing:
        return AxiomReport("SNI", False, f.label, (), _first_pair(missing, n, names),
                           {"note": "no profile in the space yields this strict preference"})
    return AxiomReport("SNI", True, f.label)


def _anonymity(f, space):
    from .profiles import permute_voters

    out = space.outcomes(f)
    v = space.n_voters
    gens = [tuple([1, 0] + list(range(2, v)))] if v > 1 else []
    if v > 2:
        gens.append(tuple(list(range(1, v)) + [0]))
    fast = isinstance(space, ProfileSpace)
    for k, idx in enumerate(space.indices()):
        for tau in gens:
            if fast:
                image = out[space.position(tuple(idx[t] for t in tau))]
            else:
                image = f(permute_voters(space.profile(idx), tau)).mask
            if image != out[k]:
                p = space.profile(idx)
                return AxiomReport("anonymity", False, f.label, (p, permute_voters(p, tau)),
                                   None, {"voter_permutation": list(tau)})
    return AxiomReport("anonymity", True, f.label)


def _neutrality(f, space):
    from .profiles import permute_candidates

    out = space.outcomes(f)
    names = space.candidates.names
    n = len(names)
    gens = []
    if n > 1:
        gens.append([1, 0] + list(range(2, n)))
    if n > 2:
        gens.append(list(range(1, n)) + [0])
    fast = isinstance(space, ProfileSpace)
    maps = [{names[i]: names[perm[i]] for i in range(n)} for perm in gens]
    tables = [space.order_permutation_table(pi) for pi in maps] if fast else []
    for k, idx in enumerate(space.indices()):
        for g, perm in enumerate(gens):
            if fast:
                image = out[space.position(tuple(tables[g][w] for w in idx))]
            else:
                image = f(permute_candidates(space.profile(idx), maps[g])).mask
            if image != _perm_mask(out[k], perm, n):
                p = space.profile(idx)
                return AxiomReport("neutrality", False, f.label,
                                   (p, permute_candidates(p, maps[g])), None,
                                   {"candidate_permutation": maps[g]})
    return AxiomReport("neutrality", True, f.label)


def _order_violation_pair(mask, n, prop, names):
    full = full_mask(n)
    t = transpose_mask(mask, n)
    if prop == "complete":
        return _first_pair(full & ~(mask | t), n, names)
    if prop == "reflexive":
        return _first_pair(diagonal_mask(n) & ~mask, n, names)
    rel = mask if prop == "transitive" else strict_mask(mask, n)
    for i, j, k in product(range(n), repeat=3):
        if prop in ("transitive", "quasi_transitive"):
            if _bit(rel, i, j, n) and _bit(rel, j, k, n) and not _bit(rel, i, k, n):
                return (names[i], names[k])
        elif prop == "negatively_transitive":
            if not _bit(rel, i, j, n) and not _bit(rel, j, k, n) and _bit(rel, i, k, n):
                return (names[i], names[k])
    if prop == "acyclic":
        for i in range(n):
            for j in range(n):
                if _bit(rel, i, j, n):
                    return (names[i], names[j])
    return None


def _order_property(f, axiom, space):
    prop = ORDER_AXIOMS[axiom]
    out = space.outcomes(f)
    n = len(space.candidates)
    names = space.candidates.names
    checked = {}
    for k, idx in enumerate(space.indices()):
        mask = out[k]
        ok = checked.get(mask)
        if ok is None:
            ok = checked[mask] = _check_mask(mask, n, prop)
        if not ok:
            pair = _order_violation_pair(mask, n, prop, names)
            return AxiomReport(axiom, False, f.label, (space.profile(idx),), pair)
    return AxiomReport(axiom, True, f.label)


def check_unary_axiom(f, axiom, space):
    """Check a single-profile (or symmetry / existence) axiom over ``space``."""
    if axiom in ("pareto", "strong_pareto", "pareto_indifference"):
        return _pareto_family(f, axiom, space)
    if axiom == "SNI":
        return _sni(f, space)
    if axiom == "anonymity":
        return _anonymity(f, space)
    if axiom == "neutrality":
        return _neutrality(f, space)
    if axiom in ORDER_AXIOMS:
        return _order_property(f, axiom, space)
    raise ValueError(f"unknown axiom {axiom!r}; expected one of {UNARY_AXIOMS}")


def check_axiom(f, axiom, space):
    """Dispatch on the axiom name, including ``orderability``."""
    if axiom in PAIRWISE_AXIOMS:
        return check_pairwise_axiom(f, axiom, space)
    if axiom == "orderability":
        return check_orderability(f, space)
    return check_unary_axiom(f, axiom, space)


# -- agent power ---------------------------------------------------------------


def find_power_holders(f, kind, space):
    """Voters holding the given kind of power on every profile of ``space``."""
    if kind not in POWER_KINDS:
        raise ValueError(f"unknown power kind {kind!r}; expected one of {POWER_KINDS}")
    out = space.outcomes(f)
    n = len(space.candidates)
    masks = _order_masks(space)
    alive = set(range(space.n_voters))
    for k, idx in enumerate(space.indices()):
        fm = out[k]
        fs = strict_mask(fm, n)
        for i, (_, s) in enumerate(masks(idx)):
            if i not in alive:
                continue
            if kind == "dictator":
                ok = not (s & ~fs)
            elif kind == "inverse_dictator":
                ok = not (transpose_mask(s, n) & ~fs)
            elif kind == "weak_dictator":
                ok = not (s & ~fm)
            else:
                ok = not (s & transpose_mask(fs, n))
            if not ok:
                alive.discard(i)
        if not alive:
            break
    return alive


def find_decisive_coalitions(f, kind, space):
    """Nonempty coalitions that are (almost) weakly decisive throughout ``space``.

    Weakly decisive: whenever every member strictly prefers x to y, x f y.
    Almost weakly decisive: the same, but only when every non-member
    strictly prefers y to x.
    """
    if kind not in COALITION_KINDS:
        raise ValueError(f"unknown coalition kind {kind!r}; expected one of {COALITION_KINDS}")
    out = space.outcomes(f)
    n = len(space.candidates)
    v = space.n_voters
    full = full_mask(n)
    masks = _order_masks(space)
    coalitions = [c for size in range(1, v + 1) for c in combinations(range(v), size)]
    alive = set(coalitions)
    for k, idx in enumerate(space.indices()):
        fm = out[k]
        strict = [s for _, s in masks(idx)]
        for c in list(alive):
            need = full
            for i in c:
                need &= strict[i]
            if kind == "almost_weakly_decisive":
                for j in range(v):
                    if j not in c:
                        need &= transpose_mask(strict[j], n)
            if need & ~fm:
                alive.discard(c)
        if not alive:
            break
    return {frozenset(c) for c in alive}


# -- orderability --------------------------------------------------------------


@dataclass
class DominanceDigraph:
    """Dominance arcs among the restrictions in P+(x, y).

    An arc Q -> Q' records a shared context in which Q yields xPy and Q'
    does not; any admissible ordering must put Q' strictly below Q.
    """

    pair: tuple
    vertices: list
    arcs: dict

    def successors(self, q):
        return sorted(b for a, b in self.arcs if a == q)

    def find_cycle(self):
        color = {v: 0 for v in self.vertices}
        succ = {v: [] for v in self.vertices}
        for a, b in sorted(self.arcs):
            succ[a].append(b)
        stack = []

        def visit(u):
            color[u] = 1
            stack.append(u)
            for w in succ[u]:
                if color[w] == 1:
                    return stack[stack.index(w):]
                if color[w] == 0:
                    found = visit(w)
                    if found:
                        return found
            stack.pop()
            color[u] = 2
            return None

        for v in self.vertices:
            if color[v] == 0:
                found = visit(v)
                if found:
                    return found
        return None

    @property
    def is_acyclic(self):
        return self.find_cycle() is None

    def ordering(self):
        """Vertices from lowest to highest, respecting every arc.

        Kahn's algorithm on reversed arcs, always taking the smallest
        available key so the result is deterministic.
        """
        indeg = {v: 0 for v in self.vertices}
        below = {v: [] for v in self.vertices}
        for a, b in self.arcs:
            # b must sit below a
            below[b].append(a)
            indeg[a] += 1
        ready = sorted(v for v in self.vertices if indeg[v] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in below[v]:
                indeg[a] -= 1
                if indeg[a] == 0:
                    ready.append(a)
                    ready.sort()
        if len(order) != len(self.vertices):
            raise ValueError("dominance digraph has a cycle")
        return order


def _orientations(space):
    for p, (i, j) in enumerate(space.pairs):
        yield p, i, j
        yield p, j, i


def _context_groups(f, space, p, i, j):
    """Per context: restriction keys yielding iPj and those not yielding it."""
    out = space.outcomes(f)
    n = len(space.candidates)
    groups = {}
    for k, idx in enumerate(space.indices()):
        ck = space.context_key(idx, p)
        rk = space.restriction_key(idx, p)
        yes, no = groups.setdefault(ck, ({}, {}))
        target = yes if _strict_bit(out[k], i, j, n) else no
        target.setdefault(rk, k)
    return groups


def dominance_digraphs(f, space):
    """One :class:`DominanceDigraph` per ordered pair, keyed by name pair."""
    names = space.candidates.names
    result = {}
    for p, i, j in _orientations(space):
        groups = _context_groups(f, space, p, i, j)
        plus = set()
        for yes, _ in groups.values():
            plus.update(yes)
        arcs = {}
        for yes, no in groups.values():
            for a, ka in yes.items():
                for b, kb in no.items():
                    if b in plus:
                        arcs.setdefault((a, b), (ka, kb))
        result[(names[i], names[j])] = DominanceDigraph(
            (names[i], names[j]), sorted(plus), arcs
        )
    return result


def check_orderability(f, space):
    """Decide orderability by acyclicity of every dominance digraph.

    On success the report's ``detail["orderings"]`` maps each pair to its
    restrictions listed from dominated to dominating.  On failure the
    witness holds, for each arc of a cycle, the yielding profile followed
    by the non-yielding profile sharing its context.
    """
    digraphs = dominance_digraphs(f, space)
    idxs = list(space.indices())
    orderings = {}
    for (x, y), g in digraphs.items():
        p = _pair_index(space, x, y)
        cycle = g.find_cycle()
        if cycle is not None:
            profiles = []
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                ka, kb = g.arcs[(a, b)]
                profiles += [space.profile(idxs[ka]), space.profile(idxs[kb])]
            detail = {
                "cycle": [str(space.decode_restriction(p, q, (x, y))) for q in cycle]
            }
            return AxiomReport("orderability", False, f.label, tuple(profiles), (x, y), detail)
        orderings[f"{x},{y}"] = [
            str(space.decode_restriction(p, q, (x, y))) for q in g.ordering()
        ]
    return AxiomReport("orderability", True, f.label, detail={"orderings": orderings})


def _pair_index(space, x, y):
    c = space.candidates
    i, j = sorted((c.index(x), c.index(y)))
    return space.pairs.index((i, j))


def _weak_orders_on(items):
    # every total preorder as a rank dict, via dense rank vectors
    m = len(items)
    for ranks in product(range(m), repeat=m):
        used = set(ranks)
        if used == set(range(len(used))):
            yield dict(zip(items, ranks))


def orderability_brute_force(f, space, pair, max_size=6):
    """Definition-level orderability check for one ordered pair.

    Tries every transitive complete relation on P+(x, y) and tests the
    defining implication on every two profiles sharing a context.  Returns
    None when P+(x, y) is larger than ``max_size``.
    """
    x, y = pair
    c = space.candidates
    i, j = c.index(x), c.index(y)
    p = _pair_index(space, x, y)
    groups = _context_groups(f, space, p, i, j)
    plus = sorted({q for yes, _ in groups.values() for q in yes})
    if len(plus) > max_size:
        return None
    constraints = [(set(yes), set(no)) for yes, no in groups.values()]
    for rank in _weak_orders_on(plus):
        ok = True
        for yes, no in constraints:
            for a in yes:
                if any(b in rank and rank[a] <= rank[b] for b in no):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


# -- replay --------------------------------------------------------------------


def _replay(report, f):
    axiom = report.axiom
    ps = report.profiles
    if axiom in PAIRWISE_AXIOMS:
        from .profiles import restrict

        r1, r2 = ps
        x, y = report.pair
        if restrict(r1, (x, y)) != restrict(r2, (x, y)):
            return False
        s, t = f(r1), f(r2)
        return _pairwise_violation(axiom, (s.holds(x, y), s.holds(y, x)),
                                   (t.holds(x, y), t.holds(y, x)))
    if axiom in ("pareto", "strong_pareto", "pareto_indifference"):
        r = ps[0]
        x, y = report.pair
        out = f(r)
        if axiom == "pareto":
            return all(b.prefers(x, y) for b in r.rankings) and not (
                out.holds(x, y) and not out.holds(y, x))
        if axiom == "strong_pareto":
            return (
                all(not b.prefers(y, x) for b in r.rankings)
                and any(b.prefers(x, y) for b in r.rankings)
                and not (out.holds(x, y) and not out.holds(y, x))
            )
        return all(b.indifferent(x, y) for b in r.rankings) and not (
            out.holds(x, y) and out.holds(y, x))
    if axiom == "anonymity":
        return f(ps[0]) != f(ps[1])
    if axiom == "neutrality":
        pi = report.detail["candidate_permutation"]
        return f(ps[0]).permuted(pi) != f(ps[1])
    if axiom in ORDER_AXIOMS:
        return not f(ps[0]).is_(ORDER_AXIOMS[axiom])
    if axiom == "orderability":
        return _replay_cycle(report, f)
    if axiom == "SNI":
        return None
    raise ValueError(f"cannot replay {axiom!r}")


def _replay_cycle(report, f):
    from .profiles import context, restrict

    x, y = report.pair
    ps = report.profiles
    arcs = [(ps[k], ps[k + 1]) for k in range(0, len(ps), 2)]
    for k, (a, b) in enumerate(arcs):
        if context(a, (x, y)) != context(b, (x, y)):
            return False
        fa, fb = f(a), f(b)
        if not (fa.holds(x, y) and not fa.holds(y, x)):
            return False
        if fb.holds(x, y) and not fb.holds(y, x):
            return False
        nxt = arcs[(k + 1) % len(arcs)][0]
        if restrict(b, (x, y)) != restrict(nxt, (x, y)):
            return False
    return True
