"""Choice functions induced by a social relation, and their consistency conditions."""

from dataclasses import dataclass
from itertools import combinations

from .axioms import AxiomReport
from .relations import Relation, strict_mask

__all__ = [
    "ChoiceFunction",
    "choose",
    "maximal",
    "greatest",
    "nonempty_subsets",
    "check_choice_condition",
    "CHOICE_CONDITIONS",
]

CHOICE_CONDITIONS = ("path_independence", "beta", "gca")


@dataclass(frozen=True)
class ChoiceFunction:
    """Choice from subsets of candidates by maximal or greatest elements."""

    base: Relation
    mode: str = "maximal"

    def __post_init__(self):
        if self.mode not in ("maximal", "greatest"):
            raise ValueError(f"mode must be 'maximal' or 'greatest', not {self.mode!r}")

    def __call__(self, subset):
        return choose(self, subset)


def _subset(r, subset):
    subset = frozenset(subset)
    if not subset:
        raise ValueError("choice is only defined on nonempty sets")
    unknown = subset - set(r.candidates)
    if unknown:
        raise ValueError(f"unknown candidates {sorted(unknown)}")
    return subset


def maximal(r, subset):
    """Elements of ``subset`` not strictly beaten by anything in ``subset``."""
    subset = _subset(r, subset)
    n = r.n
    p = strict_mask(r.mask, n)
    idx = {x: r.candidates.index(x) for x in subset}
    return frozenset(
        x for x in subset if not any((p >> (idx[y] * n + idx[x])) & 1 for y in subset)
    )


def greatest(r, subset):
    """Elements of ``subset`` related by ``r`` to everything in ``subset``."""
    subset = _subset(r, subset)
    return frozenset(x for x in subset if all(r.holds(x, y) for y in subset))


def choose(c, subset):
    if c.mode == "maximal":
        return maximal(c.base, subset)
    return greatest(c.base, subset)


def nonempty_subsets(candidates):
    """Nonempty subsets ordered by size, then by candidate order."""
    names = tuple(candidates)
    for size in range(1, len(names) + 1):
        for combo in combinations(names, size):
            yield frozenset(combo)


def _fmt(s, order):
    return [x for x in order if x in s]


def check_choice_condition(c, condition):
    """Check path independence, Sen's beta or the Generalized Condorcet Axiom.

    Beta is tested on every nested pair Y within Z, not only on
    one-element extensions.  GCA requires that an element chosen from
    every pair it forms with members of Y is chosen from Y.
    """
    names = c.base.candidates.names
    if len(names) > 8:
        raise ValueError("subset sweeps are limited to at most eight candidates")
    subsets = list(nonempty_subsets(names))
    choice = {s: choose(c, s) for s in subsets}
    label = f"{c.mode}-choice"
    if condition == "path_independence":
        for y1 in subsets:
            for y2 in subsets:
                lhs = choice[y1 | y2]
                inner = choice[y1] | choice[y2]
                rhs = choose(c, inner) if inner else frozenset()
                if lhs != rhs:
                    return AxiomReport(
                        condition, False, label, (), None,
                        {"Y1": _fmt(y1, names), "Y2": _fmt(y2, names),
                         "C(Y1|Y2)": _fmt(lhs, names), "C(C(Y1)|C(Y2))": _fmt(rhs, names)},
                    )
        return AxiomReport(condition, True, label)
    if condition == "beta":
        for y in subsets:
            for z in subsets:
                if y < z:
                    cy, cz = choice[y], choice[z]
                    if len(cy & cz) and not cy <= cz:
                        # beta: x, y both chosen from Y and x chosen from Z => y chosen from Z
                        return AxiomReport(
                            condition, False, label, (), None,
                            {"Y": _fmt(y, names), "Z": _fmt(z, names),
                             "C(Y)": _fmt(cy, names), "C(Z)": _fmt(cz, names)},
                        )
        return AxiomReport(condition, True, label)
    if condition == "gca":
        for y in subsets:
            for x in sorted(y, key=names.index):
                if all(x in choice[frozenset((x, v))] for v in y) and x not in choice[y]:
                    return AxiomReport(
                        condition, False, label, (), None,
                        {"Y": _fmt(y, names), "x": x, "C(Y)": _fmt(choice[y], names)},
                    )
        return AxiomReport(condition, True, label)
    raise ValueError(f"unknown choice condition {condition!r}; expected one of {CHOICE_CONDITIONS}")
