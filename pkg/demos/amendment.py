"""One amendment step under each method.

A five-member community governed by simple majority. Four members would
like a 4/5 supermajority and one is happy with 1/2.
"""

from fractions import Fraction as F

from constitution import IdealProfile, amendment_ballot, condorcet_amend, conservative_amend, oracle_amend
from constitution.amendment import simple_majority
from constitution.core import delta_grid, format_profile

ideals = IdealProfile((F(4, 5),) * 4 + (F(1, 2),))
rule = simple_majority(5)
print("grid:", [str(x) for x in delta_grid(5)])

for target in delta_grid(5)[1:]:
    ballot = amendment_ballot(ideals, rule.delta, target)
    print(f"ballot for moving 1/2 -> {target}: {format_profile(ballot)}")

# 4/5 gets four approvals, but a 4/5 rule would itself reject that ballot.
for name, step in (("Condorcet", condorcet_amend), ("Conservative", conservative_amend)):
    print(f"{name:>12}: 1/2 -> {step(rule, ideals).result.delta}")

outcome, diagnostic = oracle_amend(rule, ideals)
print("oracle survivors:", [str(x) for x in diagnostic.survivors], "choice:", outcome.result.delta)

# A unanimous community separates the two methods.
everyone = IdealProfile((F(4, 5),) * 5)
print("\nall five want 4/5:")
print("   Condorcet ->", condorcet_amend(rule, everyone).result.delta)
print("Conservative ->", conservative_amend(rule, everyone).result.delta)
