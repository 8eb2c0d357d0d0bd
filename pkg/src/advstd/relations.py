"""Finite binary relations over an ordered candidate set.

A relation is stored as an integer bitmask over the n*n ordered pairs of
its candidate set; bit ``i * n + j`` is set when candidate ``i`` stands in
the relation to candidate ``j``.  The diagonal is stored like any other
pair, so reflexivity is a property to check rather than an assumption.
"""

from functools import lru_cache
from itertools import permutations

import numpy as np

__all__ = [
    "CandidateSet",
    "Relation",
    "WeakOrder",
    "PROPERTIES",
    "decompose",
    "check_property",
    "transitive_closure",
    "transpose_mask",
]


class CandidateSet:
    """An ordered collection of distinct candidate names."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(str(c) for c in names)
        if not names:
            raise ValueError("a candidate set needs at least one candidate")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate candidate names in {names!r}")
        self.names = names
        self._index = {c: i for i, c in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __getitem__(self, i):
        return self.names[i]

    def __eq__(self, other):
        return isinstance(other, CandidateSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"CandidateSet({list(self.names)!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown candidate {name!r}") from None


def _as_candidates(c):
    return c if isinstance(c, CandidateSet) else CandidateSet(c)


@lru_cache(maxsize=None)
def _transpose_table(n):
    size = 1 << (n * n)
    table = [0] * size
    for mask in range(size):
        out = 0
        m = mask
        while m:
            low = m & -m
            bit = low.bit_length() - 1
            i, j = divmod(bit, n)
            out |= 1 << (j * n + i)
            m ^= low
        table[mask] = out
    return table


def transpose_mask(mask, n):
    """Converse of a relation bitmask: bit (i, j) moves to (j, i)."""
    if n <= 4:
        return _transpose_table(n)[mask]
    out = 0
    m = mask
    while m:
        low = m & -m
        bit = low.bit_length() - 1
        i, j = divmod(bit, n)
        out |= 1 << (j * n + i)
        m ^= low
    return out


@lru_cache(maxsize=None)
def diagonal_mask(n):
    return sum(1 << (i * n + i) for i in range(n))


@lru_cache(maxsize=None)
def full_mask(n):
    return (1 << (n * n)) - 1


class Relation:
    """Immutable binary relation on a :class:`CandidateSet`."""

    __slots__ = ("candidates", "mask")

    def __init__(self, candidates, mask=0):
        self.candidates = _as_candidates(candidates)
        n = len(self.candidates)
        if mask < 0 or mask >> (n * n):
            raise ValueError("mask has bits outside the candidate square")
        self.mask = mask

    @classmethod
    def from_pairs(cls, candidates, pairs):
        candidates = _as_candidates(candidates)
        n = len(candidates)
        mask = 0
        for x, y in pairs:
            mask |= 1 << (candidates.index(x) * n + candidates.index(y))
        return cls(candidates, mask)

    @classmethod
    def from_matrix(cls, candidates, matrix):
        candidates = _as_candidates(candidates)
        n = len(candidates)
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {matrix.shape}")
        mask = 0
        for i, j in zip(*np.nonzero(matrix)):
            mask |= 1 << (int(i) * n + int(j))
        return cls(candidates, mask)

    @classmethod
    def full(cls, candidates):
        candidates = _as_candidates(candidates)
        return cls(candidates, full_mask(len(candidates)))

    @classmethod
    def identity(cls, candidates):
        candidates = _as_candidates(candidates)
        return cls(candidates, diagonal_mask(len(candidates)))

    @property
    def n(self):
        return len(self.candidates)

    def holds_index(self, i, j):
        return (self.mask >> (i * len(self.candidates) + j)) & 1 == 1

    def holds(self, x, y):
        c = self.candidates
        return self.holds_index(c.index(x), c.index(y))

    __call__ = holds

    def __contains__(self, pair):
        x, y = pair
        return self.holds(x, y)

    def pairs(self):
        """Member pairs as (name, name) tuples, in canonical order."""
        names = self.candidates.names
        n = len(names)
        return [
            (names[i], names[j])
            for i in range(n)
            for j in range(n)
            if (self.mask >> (i * n + j)) & 1
        ]

    def to_matrix(self):
        n = self.n
        bits = [(self.mask >> k) & 1 for k in range(n * n)]
        return np.array(bits, dtype=bool).reshape(n, n)

    def converse(self):
        return Relation(self.candidates, transpose_mask(self.mask, self.n))

    def _same_domain(self, other):
        if self.candidates != other.candidates:
            raise ValueError("relations are over different candidate sets")

    def __or__(self, other):
        self._same_domain(other)
        return Relation(self.candidates, self.mask | other.mask)

    def __and__(self, other):
        self._same_domain(other)
        return Relation(self.candidates, self.mask & other.mask)

    def __sub__(self, other):
        self._same_domain(other)
        return Relation(self.candidates, self.mask & ~other.mask)

    def __le__(self, other):
        self._same_domain(other)
        return self.mask & ~other.mask == 0

    def __eq__(self, other):
        return (
            isinstance(other, Relation)
            and self.mask == other.mask
            and self.candidates == other.candidates
        )

    def __hash__(self):
        return hash((self.candidates.names, self.mask))

    def __len__(self):
        return bin(self.mask).count("1")

    def __repr__(self):
        body = ", ".join(f"{x}{y}" for x, y in self.pairs())
        return f"Relation({{{body}}})"

    def permuted(self, mapping):
        """Image under a candidate permutation given as a name -> name dict."""
        return Relation.from_pairs(
            self.candidates, ((mapping[x], mapping[y]) for x, y in self.pairs())
        )

    def restricted(self, subset):
        """Restriction to a subset of candidates, as a relation on that subset."""
        sub = CandidateSet([c for c in self.candidates if c in set(subset)])
        return Relation.from_pairs(
            sub, ((x, y) for x, y in self.pairs() if x in sub and y in sub)
        )

    # convenience views
    @property
    def strict(self):
        return decompose(self)[0]

    @property
    def indifference(self):
        return decompose(self)[1]

    @property
    def noncomparability(self):
        return decompose(self)[2]

    def is_(self, prop):
        return check_property(self, prop)


def strict_mask(mask, n):
    return mask & ~transpose_mask(mask, n)


def decompose(r):
    """Split ``r`` into its strict part, indifference part and noncomparability.

    Strict: xRy and not yRx.  Indifference: both directions.  Noncomparability:
    neither direction; this includes (x, x) whenever r is not reflexive there.
    """
    n = r.n
    t = transpose_mask(r.mask, n)
    strict = r.mask & ~t
    indiff = r.mask & t
    noncomp = full_mask(n) & ~(r.mask | t)
    c = r.candidates
    return Relation(c, strict), Relation(c, indiff), Relation(c, noncomp)


def _is_transitive(mask, n):
    for i in range(n):
        for j in range(n):
            if not (mask >> (i * n + j)) & 1:
                continue
            for k in range(n):
                if (mask >> (j * n + k)) & 1 and not (mask >> (i * n + k)) & 1:
                    return False
    return True


def _has_cycle(mask, n):
    # Kahn's algorithm on the strict graph; self-loops count as cycles.
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if (mask >> (i * n + j)) & 1:
                if i == j:
                    return True
                succ[i].append(j)
                indeg[j] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    seen = 0
    while stack:
        i = stack.pop()
        seen += 1
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                stack.append(j)
    return seen < n


def _check_mask(mask, n, prop):
    if prop == "reflexive":
        d = diagonal_mask(n)
        return mask & d == d
    if prop == "complete":
        return (mask | transpose_mask(mask, n)) == full_mask(n)
    if prop == "transitive":
        return _is_transitive(mask, n)
    p = strict_mask(mask, n)
    if prop == "acyclic":
        return not _has_cycle(p, n)
    if prop == "quasi_transitive":
        return _is_transitive(p, n)
    if prop == "negatively_transitive":
        # not xPy and not yPz  =>  not xPz
        notp = full_mask(n) & ~p
        for i in range(n):
            for j in range(n):
                if not (notp >> (i * n + j)) & 1:
                    continue
                for k in range(n):
                    if (notp >> (j * n + k)) & 1 and (p >> (i * n + k)) & 1:
                        return False
        return True
    raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")


PROPERTIES = (
    "reflexive",
    "complete",
    "transitive",
    "acyclic",
    "negatively_transitive",
    "quasi_transitive",
)


def check_property(r, prop):
    """Truth of an order-theoretic property of ``r``.

    ``acyclic``, ``negatively_transitive`` and ``quasi_transitive`` are
    evaluated on the strict part of ``r``.
    """
    return _check_mask(r.mask, r.n, prop)


def closure_mask(mask, n):
    reach = mask
    for k in range(n):
        for i in range(n):
            if (reach >> (i * n + k)) & 1:
                row_k = (reach >> (k * n)) & ((1 << n) - 1)
                reach |= row_k << (i * n)
    return reach


def transitive_closure(r):
    """Smallest transitive relation containing ``r`` (Warshall)."""
    return Relation(r.candidates, closure_mask(r.mask, r.n))


class WeakOrder:
    """A transitive and complete relation, kept as a rank vector.

    ``ranks[i]`` is the 0-based position of candidate ``i``'s indifference
    class, counting from the top; ranks are dense (every level in
    ``0..max`` is used).
    """

    __slots__ = ("candidates", "ranks", "_mask")

    def __init__(self, candidates, ranks):
        self.candidates = _as_candidates(candidates)
        ranks = tuple(int(r) for r in ranks)
        if len(ranks) != len(self.candidates):
            raise ValueError("one rank per candidate required")
        levels = sorted(set(ranks))
        if levels != list(range(len(levels))):
            relabel = {r: k for k, r in enumerate(levels)}
            ranks = tuple(relabel[r] for r in ranks)
        self.ranks = ranks
        self._mask = None

    @classmethod
    def from_classes(cls, candidates, classes):
        """Build from an ordered list of indifference classes, best first."""
        candidates = _as_candidates(candidates)
        ranks = [None] * len(candidates)
        for level, cls_ in enumerate(classes):
            for c in cls_:
                i = candidates.index(c)
                if ranks[i] is not None:
                    raise ValueError(f"candidate {c!r} appears twice")
                ranks[i] = level
        if None in ranks:
            missing = [c for c, r in zip(candidates, ranks) if r is None]
            raise ValueError(f"ranking omits candidates {missing}")
        if any(len(c) == 0 for c in classes):
            raise ValueError("indifference classes must be nonempty")
        return cls(candidates, ranks)

    @classmethod
    def from_linear(cls, candidates, order):
        return cls.from_classes(candidates, [[c] for c in order])

    @classmethod
    def from_relation(cls, r):
        if not (check_property(r, "complete") and check_property(r, "transitive")):
            raise ValueError("relation is not a weak order")
        n = r.n
        # rank = number of candidates strictly above
        above = [
            sum(1 for j in range(n) if r.holds_index(j, i) and not r.holds_index(i, j))
            for i in range(n)
        ]
        return cls(r.candidates, above)

    @property
    def mask(self):
        if self._mask is None:
            n = len(self.ranks)
            m = 0
            for i, ri in enumerate(self.ranks):
                for j, rj in enumerate(self.ranks):
                    if ri <= rj:
                        m |= 1 << (i * n + j)
            self._mask = m
        return self._mask

    @property
    def relation(self):
        return Relation(self.candidates, self.mask)

    @property
    def classes(self):
        names = self.candidates.names
        out = [[] for _ in range(max(self.ranks) + 1)]
        for i, r in enumerate(self.ranks):
            out[r].append(names[i])
        return out

    @property
    def is_linear(self):
        return len(set(self.ranks)) == len(self.ranks)

    def prefers(self, x, y):
        c = self.candidates
        return self.ranks[c.index(x)] < self.ranks[c.index(y)]

    def indifferent(self, x, y):
        c = self.candidates
        return self.ranks[c.index(x)] == self.ranks[c.index(y)]

    def permuted(self, mapping):
        c = self.candidates
        ranks = [0] * len(c)
        for i, name in enumerate(c.names):
            ranks[c.index(mapping[name])] = self.ranks[i]
        return WeakOrder(c, ranks)

    def __eq__(self, other):
        return (
            isinstance(other, WeakOrder)
            and self.ranks == other.ranks
            and self.candidates == other.candidates
        )

    def __hash__(self):
        return hash((self.candidates.names, self.ranks))

    def __str__(self):
        return ">".join("~".join(cls_) for cls_ in self.classes)

    def __repr__(self):
        return f"WeakOrder({self})"


def all_relations(candidates):
    """Every relation on the candidate set (2**(n*n) of them)."""
    candidates = _as_candidates(candidates)
    n = len(candidates)
    for mask in range(1 << (n * n)):
        yield Relation(candidates, mask)


def candidate_permutations(candidates):
    """All candidate permutations as name -> name dicts, identity first."""
    names = _as_candidates(candidates).names
    for image in permutations(names):
        yield dict(zip(names, image))
