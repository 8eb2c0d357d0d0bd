"""Collective choice rules: profiles in, social relations out.

Every rule is wrapped in a :class:`CCRHandle` so the axiom checkers and
the command line can treat them uniformly.  Rules that only look at the
margin graph (Gillies Covering, Ranked Pairs, Split Cycle) also expose a
graph-level function returning the strict part.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Optional

from .margins import (
    MarginGraph,
    majority_cycles,
    margin_graph,
    widest_path_matrix,
)
from .profiles import Profile
from .relations import (
    Relation,
    WeakOrder,
    diagonal_mask,
    full_mask,
    transpose_mask,
)

__all__ = [
    "CCRHandle",
    "TieBreaker",
    "majority_ccr",
    "unanimity_ccr",
    "dictatorship_ccr",
    "copeland_ccr",
    "copeland_scores",
    "gillies_covering_ccr",
    "covering_relation",
    "ranked_pairs_locked",
    "ranked_pairs_all",
    "ranked_pairs_ccr",
    "split_cycle_defeats",
    "split_cycle_defeats_by_cycles",
    "split_cycle_ccr",
    "dodgson_score",
    "dodgson_score_bfs",
    "dodgson_scores",
    "dodgson_ccr",
    "majority_dodgson_ccr",
    "baigent_witness_ccr",
    "baigent_witness_literal",
    "get_ccr",
    "REGISTRY_NAMES",
    "NotLinearError",
]


class NotLinearError(ValueError):
    """A rule defined only for linear ballots received ties."""


@dataclass(frozen=True)
class CCRHandle:
    """A named, parameterised collective choice rule."""

    name: str
    func: Callable[[Profile], Relation] = field(compare=False, repr=False)
    params: tuple = ()
    linear_only: bool = False
    graph_func: Optional[Callable[[MarginGraph], Relation]] = field(
        default=None, compare=False, repr=False
    )

    def __call__(self, profile):
        if self.linear_only and not profile.is_linear:
            raise NotLinearError(f"{self.name} needs linear ballots")
        return self.func(profile)

    @property
    def key(self):
        return (self.name,) + self.params

    @property
    def label(self):
        if not self.params:
            return self.name
        args = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}[{args}]"

    def on_graph(self, g):
        if self.graph_func is None:
            raise ValueError(f"{self.name} is not determined by the margin graph alone")
        return self.graph_func(g)


def _unanimous_mask(p, n):
    m = full_mask(n)
    for r in p.rankings:
        m &= r.mask
    return m


def _unanimous_indifference_mask(p, n):
    m = _unanimous_mask(p, n)
    return m & transpose_mask(m, n)


def _edges_mask(g):
    n = g.n
    mask = 0
    for i, j in g.edge_indices():
        mask |= 1 << (i * n + j)
    return mask


# -- simple rules ------------------------------------------------------------


def _majority(p):
    m = p.margin_matrix()
    n = len(m)
    mask = 0
    for i in range(n):
        for j in range(n):
            if m[i][j] >= 0:
                mask |= 1 << (i * n + j)
    return Relation(p.candidates, mask)


majority_ccr = CCRHandle("majority", _majority)


def _unanimity(p):
    return Relation(p.candidates, _unanimous_mask(p, len(p.candidates)))


unanimity_ccr = CCRHandle("unanimity", _unanimity)


def dictatorship_ccr(voter=0):
    def rule(p):
        if voter >= p.n_voters:
            raise ValueError(f"no voter {voter} in a {p.n_voters}-voter profile")
        return p.rankings[voter].relation

    return CCRHandle("dictatorship", rule, (("voter", voter),))


def copeland_scores(p):
    m = p.margin_matrix()
    n = len(m)
    return [sum(1 for j in range(n) if m[i][j] > 0) - sum(1 for j in range(n) if m[i][j] < 0)
            for i in range(n)]


def _copeland(p):
    s = copeland_scores(p)
    n = len(s)
    mask = 0
    for i in range(n):
        for j in range(n):
            if s[i] >= s[j]:
                mask |= 1 << (i * n + j)
    return Relation(p.candidates, mask)


copeland_ccr = CCRHandle("copeland", _copeland)


# -- Gillies covering ----------------------------------------------------------


def _covering_mask(edges, n):
    def beats(u, v):
        return (edges >> (u * n + v)) & 1

    mask = 0
    for x in range(n):
        for y in range(n):
            if beats(x, y) and all(beats(v, y) for v in range(n) if beats(v, x)):
                mask |= 1 << (x * n + y)
            elif all(
                beats(v, x) == beats(v, y) and beats(x, v) == beats(y, v) for v in range(n)
            ):
                mask |= 1 << (x * n + y)
    return mask


def covering_relation(g):
    """Gillies covering relation (strict covering plus matching neighbourhoods)."""
    return Relation(g.candidates, _covering_mask(_edges_mask(g), g.n))


def _gillies(p):
    return covering_relation(margin_graph(p))


gillies_covering_ccr = CCRHandle("gillies", _gillies, graph_func=covering_relation)


# -- Ranked Pairs --------------------------------------------------------------


class TieBreaker:
    """A strict priority over ordered candidate pairs; earlier wins ties."""

    def __init__(self, candidates, priority=None):
        names = candidates.names if hasattr(candidates, "names") else tuple(candidates)
        all_pairs = [(x, y) for x in names for y in names if x != y]
        if priority is None:
            priority = all_pairs
        priority = [tuple(p) for p in priority]
        if sorted(priority) != sorted(all_pairs):
            raise ValueError("a tie-breaker must list every ordered pair exactly once")
        self.names = names
        self.priority = priority
        self._rank = {p: k for k, p in enumerate(priority)}

    def rank(self, x, y):
        return self._rank[(x, y)]


def _reaches(locked_succ, src, dst):
    stack, seen = [src], {src}
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for v in locked_succ[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def _lock_sequence(order, n, start=0):
    mask = start
    succ = [[j for j in range(n) if (mask >> (i * n + j)) & 1] for i in range(n)]
    for a, b in order:
        if not _reaches(succ, b, a):
            mask |= 1 << (a * n + b)
            succ[a].append(b)
    return mask


def ranked_pairs_locked(g, t=None):
    """Edges locked by Ranked Pairs under one tie-breaker (no closure taken)."""
    if t is None:
        t = TieBreaker(g.candidates)
    names = g.candidates.names
    order = sorted(
        g.edge_indices(),
        key=lambda e: (-g.weights[e[0]][e[1]], t.rank(names[e[0]], names[e[1]])),
    )
    return Relation(g.candidates, _lock_sequence(order, g.n))


def _weight_groups(g):
    groups = {}
    for i, j in g.edge_indices():
        groups.setdefault(g.weights[i][j], []).append((i, j))
    return [groups[w] for w in sorted(groups, reverse=True)]


def _rp_all_mask(g):
    n = g.n
    groups = _weight_groups(g)
    full = full_mask(n)

    @lru_cache(maxsize=None)
    def finish(k, locked):
        # intersection of final locked sets over every ordering of groups k..
        if k == len(groups):
            return locked
        out = full
        for perm in permutations(groups[k]):
            out &= finish(k + 1, _lock_sequence(perm, n, locked))
            if out == locked:
                break
        return out

    return finish(0, 0)


def ranked_pairs_all(g):
    """Edges locked under every tie-breaking order.

    Only orderings inside groups of equal weight are enumerated; the order
    across different weights is fixed.  States reached by different
    orderings are shared, so the search is usually far smaller than the
    product of group factorials.
    """
    return Relation(g.candidates, _rp_all_mask(g))


def ranked_pairs_ccr(policy="pareto-indifference", measure="margin"):
    """Ranked Pairs with a chosen weak part.

    ``complete-closure``: x f y iff (y, x) is not locked.
    ``pareto-indifference``: x f y iff (x, y) is locked or every voter is
    indifferent between x and y.
    """
    if policy not in ("complete-closure", "pareto-indifference"):
        raise ValueError(f"unknown Ranked Pairs policy {policy!r}")

    def graph_rule(g):
        return ranked_pairs_all(g)

    def rule(p):
        n = len(p.candidates)
        strict = _rp_all_mask(margin_graph(p, measure))
        if policy == "complete-closure":
            return Relation(p.candidates, full_mask(n) & ~transpose_mask(strict, n))
        return Relation(p.candidates, strict | _unanimous_indifference_mask(p, n))

    return CCRHandle(
        "ranked-pairs",
        rule,
        (("policy", policy), ("measure", measure)),
        graph_func=graph_rule,
    )


# -- Split Cycle ---------------------------------------------------------------


def split_cycle_defeats(g):
    """Split Cycle defeats via the path formulation.

    x defeats y iff x -> y is an edge whose weight beats the strongest
    majority path from y back to x.
    """
    n = g.n
    s = widest_path_matrix(g)
    mask = 0
    for i, j in g.edge_indices():
        if g.weights[i][j] > s[j][i]:
            mask |= 1 << (i * n + j)
    return Relation(g.candidates, mask)


def split_cycle_defeats_by_cycles(g):
    """Split Cycle defeats straight from the cycle definition.

    An edge x -> y survives unless some majority cycle through both x and
    y has a splitting number at least the edge's weight.
    """
    c = g.candidates
    n = g.n
    cycles = []
    for cyc in majority_cycles(g):
        idx = [c.index(v) for v in cyc]
        split = min(g.weights[a][b] for a, b in zip(idx, idx[1:]))
        cycles.append((set(idx), split))
    mask = 0
    for i, j in g.edge_indices():
        w = g.weights[i][j]
        if all(w > split for verts, split in cycles if i in verts and j in verts):
            mask |= 1 << (i * n + j)
    return Relation(c, mask)


def split_cycle_ccr(measure="margin"):
    """Split Cycle; weak part adds unanimous indifference to the defeats."""

    def rule(p):
        n = len(p.candidates)
        strict = split_cycle_defeats(margin_graph(p, measure)).mask
        return Relation(p.candidates, strict | _unanimous_indifference_mask(p, n))

    return CCRHandle(
        "split-cycle", rule, (("measure", measure),), graph_func=split_cycle_defeats
    )


# -- Dodgson -------------------------------------------------------------------


def _require_linear(p):
    if not p.is_linear:
        raise NotLinearError("Dodgson scores are only defined for linear ballots")


def _needs(m, i):
    n = len(m)
    return tuple(max(0, (-m[i][j]) // 2 + 1) if j != i else 0 for j in range(n))


def dodgson_score(p, x):
    """Fewest adjacent inversions making ``x`` the Condorcet winner.

    Only swaps that raise x matter: raising x by k places in one ballot
    costs k and moves x past exactly the k candidates above it.  The search
    is a minimum-cost cover of the per-opponent deficits, voter by voter,
    with raises kept non-increasing inside a ballot type.
    """
    _require_linear(p)
    c = p.candidates
    xi = c.index(x)
    need0 = _needs(p.margin_matrix(), xi)
    if not any(need0):
        return 0
    # one entry per voter: candidate indices above x, nearest first
    voters = []
    for r, count in p.ballot_types():
        order = sorted(range(len(c)), key=lambda k: r.ranks[k])
        pos = order.index(xi)
        above = tuple(reversed(order[:pos]))
        voters.extend([above] * count)
    voters.sort()
    nv = len(voters)
    # how many later voters could still flip x past each opponent
    avail = [[0] * len(c) for _ in range(nv + 1)]
    for v in range(nv - 1, -1, -1):
        avail[v] = list(avail[v + 1])
        for y in voters[v]:
            avail[v][y] += 1

    inf = float("inf")

    @lru_cache(maxsize=None)
    def best(v, needs, cap):
        if not any(needs):
            return 0
        if any(needs[y] > avail[v][y] for y in range(len(needs))):
            return inf
        above = voters[v]
        last = max((k for k, y in enumerate(above) if needs[y]), default=-1)
        top = min(cap, last + 1)
        same_next = v + 1 < nv and voters[v + 1] == above
        result = inf
        for k in range(top, -1, -1):
            new = list(needs)
            for y in above[:k]:
                if new[y]:
                    new[y] -= 1
            nxt_cap = k if same_next else len(c)
            cost = k + best(v + 1, tuple(new), nxt_cap)
            if cost < result:
                result = cost
        return result

    score = best(0, need0, len(c))
    best.cache_clear()
    return score


def dodgson_scores(p):
    return {x: dodgson_score(p, x) for x in p.candidates}


def _is_condorcet_winner(ballots, xi, n):
    for y in range(n):
        if y == xi:
            continue
        m = 0
        for b in ballots:
            m += 1 if b.index(xi) < b.index(y) else -1
        if m <= 0:
            return False
    return True


def dodgson_score_bfs(p, x, limit=None):
    """Dodgson score by breadth-first search over raw adjacent swaps.

    Any voter may swap any two neighbouring candidates.  States are
    ballot multisets, which is sound because Condorcet winners do not
    depend on voter names.
    """
    _require_linear(p)
    c = p.candidates
    n = len(c)
    xi = c.index(x)
    start = tuple(sorted(tuple(sorted(range(n), key=lambda k: r.ranks[k])) for r in p.rankings))
    if _is_condorcet_winner(start, xi, n):
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        state, d = frontier.popleft()
        if limit is not None and d >= limit:
            continue
        for v in range(len(state)):
            if v and state[v] == state[v - 1]:
                continue
            b = state[v]
            for k in range(n - 1):
                nb = b[:k] + (b[k + 1], b[k]) + b[k + 2:]
                new = tuple(sorted(state[:v] + (nb,) + state[v + 1:]))
                if new in seen:
                    continue
                if _is_condorcet_winner(new, xi, n):
                    return d + 1
                seen.add(new)
                frontier.append((new, d + 1))
    raise ValueError(f"{x} cannot be made a Condorcet winner within the limit")


def _dodgson(p):
    scores = [dodgson_score(p, x) for x in p.candidates]
    n = len(scores)
    mask = 0
    for i in range(n):
        for j in range(n):
            if scores[i] <= scores[j]:
                mask |= 1 << (i * n + j)
    return Relation(p.candidates, mask)


dodgson_ccr = CCRHandle("dodgson", _dodgson, linear_only=True)


def _majority_dodgson(p):
    scores = [dodgson_score(p, x) for x in p.candidates]
    m = p.margin_matrix()
    n = len(scores)
    mask = 0
    for i in range(n):
        for j in range(n):
            if scores[i] == scores[j] or (scores[i] <= scores[j] and m[i][j] > 0):
                mask |= 1 << (i * n + j)
    return Relation(p.candidates, mask)


majority_dodgson_ccr = CCRHandle("majority-dodgson", _majority_dodgson, linear_only=True)


# -- Baigent-style witness -----------------------------------------------------


def _linear_mask(order, n):
    # order: candidate indices best first
    mask = 0
    for a in range(n):
        for b in range(a, n):
            mask |= 1 << (order[a] * n + order[b])
    return mask


def _baigent_mask(p):
    n = len(p.candidates)
    if n < 3:
        raise ValueError("the witness rule needs at least three candidates")
    types = p.ballot_types()
    if len(types) == 2 and types[0][0].is_linear and types[1][0].is_linear:
        (a, ca), (b, cb) = sorted(types, key=lambda t: -t[1])
        top = sorted(range(n), key=lambda k: a.ranks[k])
        other = sorted(range(n), key=lambda k: b.ranks[k])
        swap_top = [top[1], top[0]] + top[2:]
        swap_bottom = top[:-2] + [top[-1], top[-2]]
        if cb == 1 and ca >= 2 and other == swap_top:
            return _linear_mask(top, n)
        if ca > cb > 1 and other == swap_bottom:
            return _linear_mask(top, n)
    return _unanimous_mask(p, n)


def _baigent(p):
    return Relation(p.candidates, _baigent_mask(p))


baigent_witness_ccr = CCRHandle("baigent-witness", _baigent)


def baigent_witness_literal(p):
    """The witness rule evaluated by brute-force pattern search.

    Tries every voter or two-block partition and every enumeration of the
    candidates, exactly as the rule is stated.  Slow; used to cross-check
    :data:`baigent_witness_ccr`.
    """
    c = p.candidates
    n = len(c)
    if n < 3:
        raise ValueError("the witness rule needs at least three candidates")
    voters = range(p.n_voters)
    for z in permutations(range(n)):
        # case (a): everybody but i ranks z_{n-1}, z_n, z_1..z_{n-2}; i swaps the top
        maj = WeakOrder(c, _ranks_of([z[n - 2], z[n - 1]] + list(z[: n - 2]), n))
        dev = WeakOrder(c, _ranks_of([z[n - 1], z[n - 2]] + list(z[: n - 2]), n))
        for i in voters:
            others = [p.rankings[k] for k in voters if k != i]
            if others and p.rankings[i] == dev and all(r == maj for r in others):
                # a lone deviant needs the rest to form a block of two or more
                if len(others) >= 2:
                    return Relation(c, maj.mask)
    for z in permutations(range(n)):
        top = WeakOrder(c, _ranks_of(list(z), n))
        low = WeakOrder(c, _ranks_of(list(z[: n - 2]) + [z[n - 1], z[n - 2]], n))
        for size in range(2, p.n_voters):
            for c2 in combinations(voters, size):
                c1 = [k for k in voters if k not in c2]
                if not len(c1) > len(c2) > 1:
                    continue
                if all(p.rankings[k] == top for k in c1) and all(
                    p.rankings[k] == low for k in c2
                ):
                    return Relation(c, top.mask)
    return Relation(c, _unanimous_mask(p, n))


def _ranks_of(order, n):
    ranks = [0] * n
    for pos, k in enumerate(order):
        ranks[k] = pos
    return ranks


# -- registry ------------------------------------------------------------------

REGISTRY_NAMES = (
    "majority",
    "unanimity",
    "dictatorship",
    "copeland",
    "gillies",
    "ranked-pairs",
    "split-cycle",
    "dodgson",
    "majority-dodgson",
    "baigent-witness",
)

_ALIASES = {"covering": "gillies", "gillies-covering": "gillies", "baigent": "baigent-witness"}


def get_ccr(name, measure="margin", policy="pareto-indifference", voter=0):
    """Look up a rule by its command-line name."""
    name = _ALIASES.get(name, name)
    if name == "majority":
        return majority_ccr
    if name == "unanimity":
        return unanimity_ccr
    if name == "dictatorship":
        return dictatorship_ccr(voter)
    if name == "copeland":
        return copeland_ccr
    if name == "gillies":
        return gillies_covering_ccr
    if name == "ranked-pairs":
        return ranked_pairs_ccr(policy, measure)
    if name == "split-cycle":
        return split_cycle_ccr(measure)
    if name == "dodgson":
        return dodgson_ccr
    if name == "majority-dodgson":
        return majority_dodgson_ccr
    if name == "baigent-witness":
        return baigent_witness_ccr
    raise KeyError(f"unknown rule {name!r}; choose from {', '.join(REGISTRY_NAMES)}")


def diagonal_relation(candidates):
    return Relation(candidates, diagonal_mask(len(candidates)))
