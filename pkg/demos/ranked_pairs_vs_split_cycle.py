"""Compare Ranked Pairs, Split Cycle and the covering relation on one margin graph."""

from advstd.ccr import covering_relation, ranked_pairs_all, split_cycle_defeats
from advstd.figures import fig7_graph, strict_pairs
from advstd.margins import max_split_over_paths

g = fig7_graph()
print("edges:", ", ".join(f"{x}->{y} {w}" for x, y, w in g.edges()))

sc = split_cycle_defeats(g)
rp = ranked_pairs_all(g)
print("split cycle:", strict_pairs(sc))
print("ranked pairs:", strict_pairs(rp))
print("only ranked pairs:", strict_pairs(rp - sc))
print("covering:", strict_pairs(covering_relation(g)))

# a->d survives Split Cycle only if it beats every path back from d to a
print("strongest d~>a path:", max_split_over_paths(g, "d", "a"), "vs margin", g.weight("a", "d"))
