"""Build advantage/standard tables for a rule and check them against the rule."""

from advstd.asmodel import (
    as_diagnostics,
    closed_form_rationalization,
    construct_rationalization,
    verify_rationalization,
)
from advstd.ccr import split_cycle_ccr
from advstd.figures import fig5_profile
from advstd.profiles import ProfileSpace

space = ProfileSpace(["a", "b", "c"], 2)
rule = split_cycle_ccr()

generic = construct_rationalization(rule, space=space)
print("constructed:", len(generic.advantage), "advantages,", len(generic.standard), "standards")
print("verified:", verify_rationalization(rule, generic, space).verdict)

closed = closed_form_rationalization("split-cycle", space, "ratio")
print("ratio closed form:", verify_rationalization(split_cycle_ccr("ratio"), closed, space).verdict)

_, rows = as_diagnostics("split-cycle", fig5_profile())
for x, y, adv, std, wins in rows:
    print(f"  {x} over {y}: advantage {adv}, standard {std}", "-> defeat" if wins else "")
