"""Small steps add up to the Condorcet result.

Starting from simple majority, repeated conservative amendments land on
the rule a single Condorcet amendment would have chosen. Checked here
on a batch of seeded random communities.
"""

from collections import Counter

from constitution import Method, condorcet_amend, iterate_to_fixpoint
from constitution.amendment import simple_majority
from constitution.generation import random_profiles

n = 11
start = simple_majority(n)
lengths = Counter()
for ideals in random_profiles(n, 2000, seed=3, distribution="clustered(1/2:0.3,8/11:0.4,10/11:0.3)"):
    path = iterate_to_fixpoint(start, ideals, Method.CONSERVATIVE)
    assert path.terminal == condorcet_amend(start, ideals).result
    lengths[len(path) - 1] += 1

print(f"2000 communities of {n}: conservative iteration always matched one Condorcet step")
for steps in sorted(lengths):
    print(f"  {steps} amendment(s): {lengths[steps]} communities")

ideals = random_profiles(n, 1, seed=9, distribution="clustered(9/11:0.8,1/2:0.2)")[0]
path = iterate_to_fixpoint(start, ideals, Method.CONSERVATIVE)
print("\nexample trajectory:", " -> ".join(str(x) for x in path.deltas))
