"""Margin and Ratio measures, margin graphs and majority paths.

Weights of a :class:`MarginGraph` live in one of two measures: ``"margin"``
(integers, ``w(x,y) = -w(y,x)``) or ``"ratio"`` (exact positive
rationals, ``w(x,y) * w(y,x) = 1``).  In both, there is an edge from x to
y exactly when ``w(x,y) > w(y,x)``.
"""

import json
from fractions import Fraction
from itertools import combinations

from .profiles import PairRestriction, Preprofile, Profile
from .relations import Relation, _as_candidates

__all__ = [
    "MEASURES",
    "MarginGraph",
    "margin",
    "ratio",
    "strict_counts",
    "margin_graph",
    "majority_paths",
    "majority_cycles",
    "splitting_number",
    "max_split_over_paths",
    "widest_path_matrix",
    "ratio_values",
    "ratio_granularity",
    "identity_weight",
]

MEASURES = ("margin", "ratio")


def identity_weight(measure):
    if measure == "margin":
        return 0
    if measure == "ratio":
        return Fraction(1)
    raise ValueError(f"unknown measure {measure!r}; expected one of {MEASURES}")


def strict_counts(p, x, y):
    """(# voters strictly preferring x to y, # strictly preferring y to x)."""
    if x == y:
        raise ValueError("margins are only defined for distinct candidates")
    if isinstance(p, PairRestriction):
        q = p.oriented(x, y)
        return q.support, q.opposition
    c = p.candidates
    i, j = c.index(x), c.index(y)
    if isinstance(p, Preprofile):
        return p.strict_counts_index(i, j)
    if isinstance(p, Profile):
        pro = con = 0
        for r in p.rankings:
            a, b = r.ranks[i], r.ranks[j]
            if a < b:
                pro += 1
            elif b < a:
                con += 1
        return pro, con
    raise TypeError(f"cannot take margins of {type(p).__name__}")


def margin(p, x, y):
    """Supporters of x over y minus supporters of y over x."""
    pro, con = strict_counts(p, x, y)
    return pro - con


def _ratio_from_counts(pro, con, n_voters, refined=False):
    if pro and con:
        return Fraction(pro, con)
    if pro:
        return Fraction(n_voters + pro) if refined else Fraction(n_voters)
    if con:
        return Fraction(1, n_voters + con) if refined else Fraction(1, n_voters)
    return Fraction(1)


def ratio(p, x, y, refined=False):
    """Four-case Ratio measure as an exact :class:`~fractions.Fraction`.

    With ``refined=True`` the unopposed cases use ``|V| + support`` (and its
    reciprocal) instead of ``|V|``.
    """
    pro, con = strict_counts(p, x, y)
    return _ratio_from_counts(pro, con, p.n_voters, refined)


def ratio_values(n_voters, refined=False):
    """Every value Ratio can take with ``n_voters`` voters, sorted."""
    vals = set()
    for pro in range(n_voters + 1):
        for con in range(n_voters + 1 - pro):
            vals.add(_ratio_from_counts(pro, con, n_voters, refined))
    return sorted(vals)


def ratio_granularity(n_voters, refined=False):
    """Smallest gap between two distinct Ratio values."""
    vals = ratio_values(n_voters, refined)
    if len(vals) < 2:
        return Fraction(1)
    return min(b - a for a, b in zip(vals, vals[1:]))


class MarginGraph:
    """Complete weight table over ordered candidate pairs.

    ``weights[i][j]`` is the measure of i against j; the diagonal holds
    the measure's identity.
    """

    __slots__ = ("candidates", "weights", "measure")

    def __init__(self, candidates, weights, measure="margin"):
        self.candidates = _as_candidates(candidates)
        identity_weight(measure)
        n = len(self.candidates)
        weights = tuple(tuple(row) for row in weights)
        if len(weights) != n or any(len(row) != n for row in weights):
            raise ValueError(f"weights must be a {n}x{n} table")
        e = identity_weight(measure)
        for i in range(n):
            if weights[i][i] != e:
                raise ValueError("diagonal weights must be the identity")
            for j in range(n):
                w, v = weights[i][j], weights[j][i]
                if measure == "margin" and w != -v:
                    raise ValueError("margin weights must be antisymmetric")
                if measure == "ratio" and (w <= 0 or w * v != 1):
                    raise ValueError("ratio weights must be positive reciprocals")
        self.weights = weights
        self.measure = measure

    @classmethod
    def from_edges(cls, candidates, edges, measure="margin"):
        """Build from ``{(x, y): weight}`` with each edge's weight above identity."""
        candidates = _as_candidates(candidates)
        n = len(candidates)
        e = identity_weight(measure)
        w = [[e] * n for _ in range(n)]
        for (x, y), k in edges.items():
            i, j = candidates.index(x), candidates.index(y)
            if i == j:
                raise ValueError("self-loops are not allowed in a margin graph")
            if measure == "ratio":
                k = Fraction(k)
                if k <= 1:
                    raise ValueError(f"ratio edge {x}->{y} must exceed 1")
                w[i][j], w[j][i] = k, 1 / k
            else:
                if int(k) != k or k <= 0:
                    raise ValueError(f"margin edge {x}->{y} must be a positive integer")
                w[i][j], w[j][i] = int(k), -int(k)
        return cls(candidates, w, measure)

    @classmethod
    def from_profile(cls, p, measure="margin", refined=False):
        c = p.candidates
        n = len(c)
        e = identity_weight(measure)
        w = [[e] * n for _ in range(n)]
        if isinstance(p, Profile) and measure == "margin":
            return cls(c, p.margin_matrix(), "margin")
        for i, j in combinations(range(n), 2):
            x, y = c[i], c[j]
            if measure == "margin":
                m = margin(p, x, y)
                w[i][j], w[j][i] = m, -m
            else:
                r = ratio(p, x, y, refined)
                w[i][j], w[j][i] = r, 1 / r
        return cls(c, w, measure)

    @property
    def n(self):
        return len(self.candidates)

    def weight(self, x, y):
        c = self.candidates
        return self.weights[c.index(x)][c.index(y)]

    def has_edge_index(self, i, j):
        return self.weights[i][j] > self.weights[j][i]

    def has_edge(self, x, y):
        c = self.candidates
        return self.has_edge_index(c.index(x), c.index(y))

    def edges(self):
        """Edges as ``(x, y, weight)`` in canonical pair order."""
        names = self.candidates.names
        n = len(names)
        return [
            (names[i], names[j], self.weights[i][j])
            for i in range(n)
            for j in range(n)
            if self.has_edge_index(i, j)
        ]

    def edge_indices(self):
        n = self.n
        return [(i, j) for i in range(n) for j in range(n) if self.has_edge_index(i, j)]

    def majority_relation(self):
        """The edge set as a strict relation."""
        n = self.n
        mask = 0
        for i, j in self.edge_indices():
            mask |= 1 << (i * n + j)
        return Relation(self.candidates, mask)

    def with_edge(self, x, y, k):
        """Copy with the pair {x, y} set to an edge x -> y of weight ``k``."""
        c = self.candidates
        i, j = c.index(x), c.index(y)
        w = [list(row) for row in self.weights]
        if self.measure == "ratio":
            k = Fraction(k)
            w[i][j], w[j][i] = k, 1 / k
        else:
            w[i][j], w[j][i] = k, -k
        return MarginGraph(c, w, self.measure)

    def without_pair(self, x, y):
        e = identity_weight(self.measure)
        c = self.candidates
        i, j = c.index(x), c.index(y)
        w = [list(row) for row in self.weights]
        w[i][j] = w[j][i] = e
        return MarginGraph(c, w, self.measure)

    def permuted(self, mapping):
        c = self.candidates
        n = len(c)
        w = [[None] * n for _ in range(n)]
        for i, x in enumerate(c.names):
            for j, y in enumerate(c.names):
                w[c.index(mapping[x])][c.index(mapping[y])] = self.weights[i][j]
        return MarginGraph(c, w, self.measure)

    def __eq__(self, other):
        return (
            isinstance(other, MarginGraph)
            and self.candidates == other.candidates
            and self.measure == other.measure
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.candidates.names, self.measure, self.weights))

    def __repr__(self):
        body = ", ".join(f"{x}->{y}:{w}" for x, y, w in self.edges())
        return f"MarginGraph({body})"

    # -- export ------------------------------------------------------------

    def to_dict(self):
        def enc(w):
            return w if self.measure == "margin" else str(w)

        doc = {
            "nodes": list(self.candidates.names),
            "edges": [{"from": x, "to": y, "weight": enc(w)} for x, y, w in self.edges()],
        }
        if self.measure != "margin":
            doc["measure"] = self.measure
        return doc

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc):
        measure = doc.get("measure", "margin")
        edges = {}
        for e in doc["edges"]:
            w = e["weight"]
            edges[(e["from"], e["to"])] = Fraction(w) if measure == "ratio" else w
        return cls.from_edges(doc["nodes"], edges, measure)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dot(self, name="M"):
        lines = [f"digraph {name} {{"]
        for c in self.candidates.names:
            lines.append(f'  "{c}";')
        for x, y, w in self.edges():
            lines.append(f'  "{x}" -> "{y}" [label="{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def margin_graph(p, measure="margin", refined=False):
    """Margin graph of a profile or preprofile."""
    return MarginGraph.from_profile(p, measure, refined)


# -- majority paths ----------------------------------------------------------


def _succ(g):
    n = g.n
    return [[j for j in range(n) if g.has_edge_index(i, j)] for i in range(n)]


def majority_paths(g, source, target):
    """All majority paths from ``source`` to ``target`` as name tuples.

    Vertices before the last are pairwise distinct and differ from the
    last one, except that the first may equal the last (a cycle).
    """
    c = g.candidates
    s, t = c.index(source), c.index(target)
    succ = _succ(g)
    names = c.names
    path = [s]
    on_path = {s}

    def dfs(u):
        for v in succ[u]:
            if v == t:
                yield tuple(names[k] for k in path) + (names[t],)
            elif v not in on_path:
                path.append(v)
                on_path.add(v)
                yield from dfs(v)
                path.pop()
                on_path.discard(v)

    if s == t:
        # a cycle: the target may only reappear at the end
        yield from dfs(s)
        return
    yield from dfs(s)


def majority_cycles(g):
    """Every simple majority cycle once, as a tuple starting at its lowest index."""
    n = g.n
    names = g.candidates.names
    succ = _succ(g)
    for s in range(n):
        path = [s]
        on_path = {s}

        def dfs(u):
            for v in succ[u]:
                if v == s:
                    yield tuple(names[k] for k in path) + (names[s],)
                elif v > s and v not in on_path:
                    path.append(v)
                    on_path.add(v)
                    yield from dfs(v)
                    path.pop()
                    on_path.discard(v)

        yield from dfs(s)


def splitting_number(g, path):
    """Smallest weight between consecutive vertices of a majority path."""
    if len(path) < 2:
        raise ValueError("a path needs at least one edge")
    ws = []
    for x, y in zip(path, path[1:]):
        if not g.has_edge(x, y):
            raise ValueError(f"{x}->{y} is not an edge")
        ws.append(g.weight(x, y))
    return min(ws)


def max_split_over_paths(g, source, target):
    """Largest splitting number over majority paths, or the identity if none.

    Enumerates paths explicitly; :func:`widest_path_matrix` computes the
    same quantity for all pairs at once.
    """
    best = None
    for path in majority_paths(g, source, target):
        s = splitting_number(g, path)
        if best is None or s > best:
            best = s
    return identity_weight(g.measure) if best is None else best


def widest_path_matrix(g):
    """``s[i][j]`` = strongest bottleneck over majority paths from i to j.

    Floyd-Warshall over (max, min); pairs with no path hold the identity.
    A walk's bottleneck never beats the simple path inside it, so this
    agrees with enumeration over majority paths.
    """
    n = g.n
    none = None
    s = [[g.weights[i][j] if g.has_edge_index(i, j) else none for j in range(n)] for i in range(n)]
    for k in range(n):
        sk = s[k]
        for i in range(n):
            sik = s[i][k]
            if sik is None:
                continue
            si = s[i]
            for j in range(n):
                skj = sk[j]
                if skj is None:
                    continue
                cand = sik if sik < skj else skj
                if si[j] is None or cand > si[j]:
                    si[j] = cand
    e = identity_weight(g.measure)
    return [[e if v is None else v for v in row] for row in s]
