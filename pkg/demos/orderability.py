"""Why Dodgson cannot be rationalized: a two-arc cycle among pair restrictions."""

from advstd.axioms import ProfileList, check_orderability, check_pairwise_axiom, dominance_digraphs
from advstd.ccr import copeland_ccr, dodgson_ccr
from advstd.figures import fishburn_profiles
from advstd.profiles import ProfileSpace

space = ProfileList(fishburn_profiles().values())
report = check_orderability(dodgson_ccr, space)
print(report.summary())
print("cycle:", report.detail["cycle"])

g = dominance_digraphs(dodgson_ccr, space)[("z", "x")]
print("arcs for (z,x):", len(g.arcs), "cycle length:", len(g.find_cycle()))

# Copeland is the opposite case: orderable, yet weak IIA fails
small = ProfileSpace(["a", "b", "c"], 2)
print("copeland orderability:", check_orderability(copeland_ccr, small).verdict)
weak = check_pairwise_axiom(copeland_ccr, "weak_IIA", small)
print("copeland weak IIA:", weak.verdict)
for p in weak.profiles:
    print("  ", " | ".join(p.describe()))
