"""Profiles of voter weak orders and the machinery to enumerate them.

A :class:`Profile` maps each voter (indexed ``0..|V|-1``) to a
:class:`~advstd.relations.WeakOrder`.  Two extractors split a profile
along a candidate pair: :func:`restrict` keeps only how voters rank the
pair, :func:`context` deletes exactly that information.  The two pieces
together determine the profile.
"""

import json
from collections import Counter
from itertools import product
from math import comb

from .relations import CandidateSet, Relation, WeakOrder, _as_candidates

__all__ = [
    "Profile",
    "Preprofile",
    "PairRestriction",
    "ProfileSpace",
    "restrict",
    "context",
    "recombine",
    "enumerate_weak_orders",
    "enumerate_profiles",
    "ordered_bell",
    "permute_voters",
    "permute_candidates",
    "profile_from_json",
    "profile_to_json",
    "profile_from_dict",
    "profile_to_dict",
    "ProfileFormatError",
]


class ProfileFormatError(ValueError):
    """Raised when a profile document cannot be parsed or validated."""


class Profile:
    """Voter-indexed tuple of weak orders over a shared candidate set."""

    __slots__ = ("candidates", "rankings", "_margins")

    def __init__(self, candidates, rankings):
        candidates = _as_candidates(candidates)
        rankings = tuple(rankings)
        if not rankings:
            raise ValueError("a profile needs at least one voter")
        for r in rankings:
            if not isinstance(r, WeakOrder) or r.candidates != candidates:
                raise ValueError("every ranking must be a weak order on the candidates")
        self.candidates = candidates
        self.rankings = rankings
        self._margins = None

    @classmethod
    def _trusted(cls, candidates, rankings):
        p = cls.__new__(cls)
        p.candidates = candidates
        p.rankings = rankings
        p._margins = None
        return p

    @classmethod
    def from_ballots(cls, candidates, ballots):
        """Build from ``(count, ranking)`` pairs.

        A ranking is either a string like ``"a>b~c"`` or a list of
        indifference classes.  Counts expand in declaration order.
        """
        candidates = _as_candidates(candidates)
        rankings = []
        for count, ranking in ballots:
            if isinstance(ranking, str):
                classes = [cl.split("~") for cl in ranking.split(">")]
            else:
                classes = ranking
            wo = WeakOrder.from_classes(candidates, classes)
            rankings.extend([wo] * count)
        return cls(candidates, rankings)

    @property
    def n_voters(self):
        return len(self.rankings)

    def __len__(self):
        return len(self.rankings)

    def ranking(self, i):
        return self.rankings[i]

    @property
    def is_linear(self):
        return all(r.is_linear for r in self.rankings)

    def ballot_types(self):
        """Distinct rankings with multiplicities, in order of first appearance."""
        counts = Counter(self.rankings)
        seen = []
        for r in self.rankings:
            if r not in seen:
                seen.append(r)
        return [(r, counts[r]) for r in seen]

    def margin_matrix(self):
        """``m[i][j]`` = voters ranking i over j minus voters ranking j over i."""
        if self._margins is None:
            n = len(self.candidates)
            m = [[0] * n for _ in range(n)]
            for r in self.rankings:
                ranks = r.ranks
                for i in range(n):
                    ri = ranks[i]
                    row = m[i]
                    for j in range(n):
                        rj = ranks[j]
                        if ri < rj:
                            row[j] += 1
                        elif rj < ri:
                            row[j] -= 1
            self._margins = tuple(tuple(row) for row in m)
        return self._margins

    def __eq__(self, other):
        return (
            isinstance(other, Profile)
            and self.candidates == other.candidates
            and self.rankings == other.rankings
        )

    def __hash__(self):
        return hash((self.candidates.names, tuple(r.ranks for r in self.rankings)))

    def __repr__(self):
        body = ", ".join(str(r) for r in self.rankings)
        return f"Profile([{body}])"

    def describe(self):
        """Compact ``count: ranking`` lines."""
        return [f"{c}: {r}" for r, c in self.ballot_types()]


class Preprofile:
    """Voter-indexed tuple of arbitrary relations (e.g. a pair-deleted context)."""

    __slots__ = ("candidates", "relations", "_hash")

    def __init__(self, candidates, relations):
        self.candidates = _as_candidates(candidates)
        self.relations = tuple(relations)
        for r in self.relations:
            if r.candidates != self.candidates:
                raise ValueError("relations must share the preprofile's candidates")
        self._hash = hash((self.candidates.names, tuple(r.mask for r in self.relations)))

    @property
    def n_voters(self):
        return len(self.relations)

    def margin(self, x, y):
        c = self.candidates
        i, j = c.index(x), c.index(y)
        return self.margin_index(i, j)

    def margin_index(self, i, j):
        pro = con = 0
        for r in self.relations:
            a, b = r.holds_index(i, j), r.holds_index(j, i)
            if a and not b:
                pro += 1
            elif b and not a:
                con += 1
        return pro - con

    def strict_counts_index(self, i, j):
        pro = con = 0
        for r in self.relations:
            a, b = r.holds_index(i, j), r.holds_index(j, i)
            if a and not b:
                pro += 1
            elif b and not a:
                con += 1
        return pro, con

    def __eq__(self, other):
        return (
            isinstance(other, Preprofile)
            and self.candidates == other.candidates
            and tuple(r.mask for r in self.relations)
            == tuple(r.mask for r in other.relations)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Preprofile({list(self.relations)!r})"


_SYMBOLS = (">", "<", "~")


class PairRestriction:
    """How each voter ranks one ordered pair ``(x, y)``.

    ``symbols[i]`` is ``'>'`` when voter i strictly prefers x, ``'<'`` when
    they strictly prefer y and ``'~'`` when indifferent.
    """

    __slots__ = ("x", "y", "symbols")

    def __init__(self, x, y, symbols):
        if x == y:
            raise ValueError("a pair restriction needs two distinct candidates")
        symbols = tuple(symbols)
        bad = [s for s in symbols if s not in _SYMBOLS]
        if bad:
            raise ValueError(f"unknown restriction symbols {bad}")
        self.x, self.y, self.symbols = x, y, symbols

    def swapped(self):
        flip = {">": "<", "<": ">", "~": "~"}
        return PairRestriction(self.y, self.x, (flip[s] for s in self.symbols))

    def oriented(self, x, y):
        """The same information expressed relative to the ordered pair (x, y)."""
        if (x, y) == (self.x, self.y):
            return self
        if (x, y) == (self.y, self.x):
            return self.swapped()
        raise ValueError(f"restriction is on {{{self.x},{self.y}}}, not {{{x},{y}}}")

    @property
    def support(self):
        return self.symbols.count(">")

    @property
    def opposition(self):
        return self.symbols.count("<")

    @property
    def n_voters(self):
        return len(self.symbols)

    def __eq__(self, other):
        return (
            isinstance(other, PairRestriction)
            and (self.x, self.y, self.symbols) == (other.x, other.y, other.symbols)
        )

    def __hash__(self):
        return hash((self.x, self.y, self.symbols))

    def __str__(self):
        return "".join(self.symbols)

    def __repr__(self):
        return f"PairRestriction({self.x},{self.y}: {''.join(self.symbols)})"


def _check_pair(p, pair):
    x, y = pair
    if x == y:
        raise ValueError("pair machinery needs two distinct candidates")
    p.candidates.index(x)
    p.candidates.index(y)
    return x, y


def restrict(p, pair):
    """Per-voter projection of ``p`` onto the pair."""
    x, y = _check_pair(p, pair)
    c = p.candidates
    i, j = c.index(x), c.index(y)
    symbols = []
    for r in p.rankings:
        a, b = r.ranks[i], r.ranks[j]
        symbols.append(">" if a < b else "<" if b < a else "~")
    return PairRestriction(x, y, symbols)


def context(p, pair):
    """Preprofile obtained by deleting both ordered pairs on ``pair`` from every voter."""
    x, y = _check_pair(p, pair)
    c = p.candidates
    n = len(c)
    i, j = c.index(x), c.index(y)
    clear = ~((1 << (i * n + j)) | (1 << (j * n + i)))
    return Preprofile(c, (Relation(c, r.mask & clear) for r in p.rankings))


def recombine(ctx, q):
    """Inverse of the (context, restriction) split; returns a Preprofile."""
    c = ctx.candidates
    n = len(c)
    i, j = c.index(q.x), c.index(q.y)
    if len(ctx.relations) != len(q.symbols):
        raise ValueError("context and restriction disagree on the number of voters")
    rels = []
    for r, s in zip(ctx.relations, q.symbols):
        m = r.mask
        if s in (">", "~"):
            m |= 1 << (i * n + j)
        if s in ("<", "~"):
            m |= 1 << (j * n + i)
        rels.append(Relation(c, m))
    return Preprofile(c, rels)


def ordered_bell(n):
    """Number of weak orders on n labelled items (Fubini numbers)."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def enumerate_weak_orders(candidates, linear=False):
    """Every weak order on the candidates once, lexicographic in rank vectors."""
    candidates = _as_candidates(candidates)
    n = len(candidates)
    for ranks in product(range(n), repeat=n):
        levels = set(ranks)
        if len(levels) != max(ranks) + 1:
            continue
        if linear and len(levels) != n:
            continue
        yield WeakOrder(candidates, ranks)


def enumerate_profiles(candidates, n_voters, linear=False):
    """All profiles, lexicographic over per-voter weak-order indices."""
    candidates = _as_candidates(candidates)
    if n_voters < 1:
        raise ValueError("need at least one voter")
    orders = list(enumerate_weak_orders(candidates, linear=linear))
    for combo in product(orders, repeat=n_voters):
        yield Profile._trusted(candidates, combo)


def permute_voters(p, tau):
    """Profile with ``R^tau(i) = R(tau(i))``; ``tau`` is a sequence or dict."""
    n = p.n_voters
    image = [tau[i] for i in range(n)]
    if sorted(image) != list(range(n)):
        raise ValueError("tau is not a permutation of the voters")
    return Profile._trusted(p.candidates, tuple(p.rankings[t] for t in image))


def permute_candidates(p, pi):
    """Profile with every ballot replaced by its image under ``pi`` (name -> name)."""
    names = p.candidates.names
    if sorted(pi[c] for c in names) != sorted(names):
        raise ValueError("pi is not a permutation of the candidates")
    return Profile._trusted(p.candidates, tuple(r.permuted(pi) for r in p.rankings))


# -- serialization ---------------------------------------------------------


def profile_to_dict(p):
    ballots = []
    for r in p.rankings:
        classes = r.classes
        if ballots and ballots[-1]["ranking"] == classes:
            ballots[-1]["count"] += 1
        else:
            ballots.append({"count": 1, "ranking": classes})
    return {"candidates": list(p.candidates.names), "ballots": ballots}


def profile_to_json(p):
    return json.dumps(profile_to_dict(p), separators=(", ", ": "))


def profile_from_dict(doc):
    if not isinstance(doc, dict):
        raise ProfileFormatError("profile document must be a JSON object")
    try:
        cands = doc["candidates"]
        ballots = doc["ballots"]
    except KeyError as exc:
        raise ProfileFormatError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(cands, list) or not cands:
        raise ProfileFormatError("'candidates' must be a nonempty list")
    try:
        candidates = CandidateSet(cands)
    except ValueError as exc:
        raise ProfileFormatError(str(exc)) from None
    rankings = []
    for k, b in enumerate(ballots):
        where = f"ballot {k}"
        if not isinstance(b, dict) or "ranking" not in b:
            raise ProfileFormatError(f"{where}: expected an object with a 'ranking'")
        count = b.get("count", 1)
        if not isinstance(count, int) or count < 1:
            raise ProfileFormatError(f"{where}: count must be a positive integer")
        ranking = b["ranking"]
        if not isinstance(ranking, list) or not all(isinstance(c, list) for c in ranking):
            raise ProfileFormatError(f"{where}: ranking must be a list of lists")
        try:
            wo = WeakOrder.from_classes(candidates, ranking)
        except (ValueError, KeyError) as exc:
            raise ProfileFormatError(f"{where}: {exc}") from None
        rankings.extend([wo] * count)
    if not rankings:
        raise ProfileFormatError("profile has no voters")
    return Profile(candidates, rankings)


def profile_from_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileFormatError(f"line {exc.lineno}: {exc.msg}") from None
    return profile_from_dict(doc)


# -- enumerated spaces -----------------------------------------------------


class ProfileSpace:
    """The full (or linear-only) profile space for a candidate set and |V|.

    Profiles are addressed by their tuple of weak-order indices, in the
    same lexicographic order as :func:`enumerate_profiles`.  Per-order
    lookup tables make restriction and context keys cheap to compute,
    which the exhaustive axiom checks rely on.
    """

    def __init__(self, candidates, n_voters, linear=False):
        self.candidates = _as_candidates(candidates)
        if n_voters < 1:
            raise ValueError("need at least one voter")
        self.n_voters = n_voters
        self.linear = linear
        self.orders = list(enumerate_weak_orders(self.candidates, linear=linear))
        self._order_index = {o.ranks: k for k, o in enumerate(self.orders)}
        n = len(self.candidates)
        self.pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        # res_code[k][p]: 0 -> i over j, 1 -> j over i, 2 -> tie, for pair p = (i, j)
        self.res_code = []
        self.ctx_code = []
        for o in self.orders:
            rc, cc = [], []
            for i, j in self.pairs:
                a, b = o.ranks[i], o.ranks[j]
                rc.append(0 if a < b else 1 if b < a else 2)
                cc.append(o.mask & ~((1 << (i * n + j)) | (1 << (j * n + i))))
            self.res_code.append(tuple(rc))
            self.ctx_code.append(tuple(cc))
        self._outcomes = {}
        self._indices = None

    def __len__(self):
        return len(self.orders) ** self.n_voters

    @property
    def size(self):
        return len(self)

    def indices(self):
        if self._indices is None:
            self._indices = list(product(range(len(self.orders)), repeat=self.n_voters))
        return self._indices

    def profile(self, idx):
        return Profile._trusted(self.candidates, tuple(self.orders[k] for k in idx))

    def __iter__(self):
        for idx in self.indices():
            yield self.profile(idx)

    def position(self, idx):
        k = len(self.orders)
        pos = 0
        for w in idx:
            pos = pos * k + w
        return pos

    def index_of(self, p):
        return tuple(self._order_index[r.ranks] for r in p.rankings)

    def outcomes(self, f):
        """Relation masks of ``f`` on every profile, cached per rule key."""
        key = f.key
        out = self._outcomes.get(key)
        if out is None:
            if f.linear_only and not self.linear:
                raise ValueError(f"{f.name} is only defined on linear profiles")
            out = [f(self.profile(idx)).mask for idx in self.indices()]
            self._outcomes[key] = out
        return out

    def restriction_key(self, idx, p):
        rc = self.res_code
        return tuple(rc[w][p] for w in idx)

    def context_key(self, idx, p):
        cc = self.ctx_code
        return tuple(cc[w][p] for w in idx)

    def decode_restriction(self, p, key, oriented=None):
        i, j = self.pairs[p]
        names = self.candidates.names
        q = PairRestriction(names[i], names[j], (_SYMBOLS[s] for s in key))
        if oriented is not None:
            q = q.oriented(*oriented)
        return q

    def voter_permutation_generators(self):
        v = self.n_voters
        if v == 1:
            return []
        gens = [tuple([1, 0] + list(range(2, v)))]
        if v > 2:
            gens.append(tuple(list(range(1, v)) + [0]))
        return gens

    def candidate_permutation_generators(self):
        names = self.candidates.names
        n = len(names)
        if n == 1:
            return []
        gens = [dict(zip(names, (names[1], names[0]) + names[2:]))]
        if n > 2:
            gens.append(dict(zip(names, names[1:] + names[:1])))
        return gens

    def order_permutation_table(self, pi):
        """Index map sending each weak order to its image under ``pi``."""
        return [self._order_index[o.permuted(pi).ranks] for o in self.orders]

    def __repr__(self):
        kind = "linear" if self.linear else "weak"
        return (
            f"ProfileSpace({list(self.candidates.names)}, |V|={self.n_voters}, "
            f"{kind}, {len(self)} profiles)"
        )
